/** Pure SVG rendering of a chart document (testable without a DOM).
 *
 * Regions are shaded by decision class with a legend; every study point
 * carries data attributes for drag interaction and a tooltip with its id,
 * p-values and decision label.  The se axis follows the funnel-plot
 * convention (zero at the top).
 */

import type { ChartDocument, ChartPoint } from "./types.js";

export interface RenderOptions {
  width?: number;
  height?: number;
  smeUnits?: boolean;
}

export const MARGIN = { left: 58, right: 240, top: 24, bottom: 46 };

/** Inverse coordinate transform for pointer interaction on a rendered chart. */
export function pixelToData(
  chart: ChartDocument,
  viewBox: { width: number; height: number },
  vx: number,
  vy: number
): { effect: number; se: number } {
  const plotW = viewBox.width - MARGIN.left - MARGIN.right;
  const plotH = viewBox.height - MARGIN.top - MARGIN.bottom;
  const { effect, se } = chart.axes;
  return {
    effect: effect.min + ((vx - MARGIN.left) / plotW) * (effect.max - effect.min),
    se: ((vy - MARGIN.top) / plotH) * se.max,
  };
}

/** Forward transform: data coordinates to viewBox pixels. */
export function dataToPixel(
  chart: ChartDocument,
  viewBox: { width: number; height: number },
  effectValue: number,
  seValue: number
): { x: number; y: number } {
  const plotW = viewBox.width - MARGIN.left - MARGIN.right;
  const plotH = viewBox.height - MARGIN.top - MARGIN.bottom;
  const { effect, se } = chart.axes;
  return {
    x: MARGIN.left + ((effectValue - effect.min) / (effect.max - effect.min)) * plotW,
    y: MARGIN.top + (seValue / se.max) * plotH,
  };
}

function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

function fmt(value: number): string {
  return value.toFixed(2);
}

function pointTooltip(point: ChartPoint): string {
  const p = point.p_values;
  const annotation = point.annotation ? ` (${point.annotation.replaceAll("_", " ")})` : "";
  return (
    `${point.id}: ${point.label}${annotation}\n` +
    `p(H1-)=${p.h1_minus.toPrecision(3)} p(H1+)=${p.h1_plus.toPrecision(3)} ` +
    `p(H2-)=${p.h2_minus.toPrecision(3)} p(H2+)=${p.h2_plus.toPrecision(3)}`
  );
}

export function renderChart(chart: ChartDocument, options: RenderOptions = {}): string {
  const width = options.width ?? 880;
  const height = options.height ?? 560;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const { effect, se } = chart.axes;

  const px = (x: number) => MARGIN.left + ((x - effect.min) / (effect.max - effect.min)) * plotW;
  const py = (s: number) => MARGIN.top + (s / se.max) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
      `class="decision-chart" data-kind="${esc(chart.kind)}" data-variant="${esc(chart.variant)}">`
  );
  parts.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`);

  parts.push('<g class="regions">');
  for (const region of chart.regions) {
    const pts = region.polygon.map(([x, s]) => `${fmt(px(x))},${fmt(py(s))}`).join(" ");
    parts.push(
      `<polygon points="${pts}" fill="${region.fill}" stroke="#ffffff" stroke-width="0.5">` +
        `<title>${esc(region.label)}</title></polygon>`
    );
  }
  parts.push("</g>");

  parts.push('<g class="overlays">');
  for (const line of chart.overlays) {
    const sign = line.direction === "minus" ? 1 : -1;
    let s1 = se.max;
    let x1 = line.intercept + sign * line.slope * s1;
    if (x1 > effect.max) {
      s1 = (effect.max - line.intercept) / (sign * line.slope);
      x1 = effect.max;
    } else if (x1 < effect.min) {
      s1 = (effect.min - line.intercept) / (sign * line.slope);
      x1 = effect.min;
    }
    if (line.intercept < effect.min || line.intercept > effect.max) continue;
    parts.push(
      `<line x1="${fmt(px(line.intercept))}" y1="${fmt(py(0))}" x2="${fmt(px(x1))}" ` +
        `y2="${fmt(py(s1))}" stroke="${line.color}" stroke-width="1.4" stroke-dasharray="6,4">` +
        `<title>${esc(line.label)}</title></line>`
    );
  }
  parts.push("</g>");

  parts.push('<g class="points">');
  for (const point of chart.points) {
    if (point.effect < effect.min || point.effect > effect.max) continue;
    if (point.se < 0 || point.se > se.max) continue;
    parts.push(
      `<circle class="study-point" data-id="${esc(point.id)}" data-effect="${point.effect}" ` +
        `data-se="${point.se}" cx="${fmt(px(point.effect))}" cy="${fmt(py(point.se))}" r="5" ` +
        `fill="#1a1a1a" fill-opacity="0.75" stroke="#000000">` +
        `<title>${esc(pointTooltip(point))}</title></circle>`
    );
    parts.push(
      `<text class="point-label" x="${fmt(px(point.effect) + 7)}" y="${fmt(py(point.se) - 6)}" ` +
        `font-size="11">${esc(point.id)}</text>`
    );
  }
  parts.push("</g>");

  const effectLabel = options.smeUnits ? `${effect.label} (SME units)` : effect.label;
  const seLabel = options.smeUnits ? `${se.label} (SME units)` : se.label;
  parts.push('<g class="axes" stroke="#333333">');
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + plotH}" x2="${MARGIN.left + plotW}" y2="${MARGIN.top + plotH}"/>`
  );
  parts.push(`<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + plotH}"/>`);
  parts.push("</g>");
  parts.push('<g class="tick-labels" font-size="10" fill="#333333">');
  for (let i = 0; i <= 4; i++) {
    const x = effect.min + ((effect.max - effect.min) * i) / 4;
    parts.push(
      `<text x="${fmt(px(x))}" y="${MARGIN.top + plotH + 16}" text-anchor="middle">${esc(
        x.toPrecision(3)
      )}</text>`
    );
    const s = (se.max * i) / 4;
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${fmt(py(s) + 3)}" text-anchor="end">${esc(s.toPrecision(3))}</text>`
    );
  }
  parts.push(
    `<text class="axis-label" x="${MARGIN.left + plotW / 2}" y="${height - 8}" text-anchor="middle" ` +
      `font-size="12">${esc(effectLabel)}</text>`
  );
  parts.push(
    `<text class="axis-label" x="14" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="12" ` +
      `transform="rotate(-90 14 ${MARGIN.top + plotH / 2})">${esc(seLabel)}</text>`
  );
  parts.push("</g>");

  parts.push('<g class="legend" font-size="11">');
  const lx = MARGIN.left + plotW + 16;
  chart.legend.forEach((entry, i) => {
    const y = MARGIN.top + i * 20;
    let label = entry.label;
    if (entry.annotation) label += ` (${entry.annotation.replaceAll("_", " ")})`;
    parts.push(
      `<g class="legend-entry" data-class-id="${entry.class_id}">` +
        `<rect x="${lx}" y="${y}" width="13" height="13" fill="${entry.fill}" stroke="#666666" stroke-width="0.5"/>` +
        `<text x="${lx + 19}" y="${y + 11}">${esc(label)}</text></g>`
    );
  });
  const overlayLegends = new Map<string, string>();
  for (const line of chart.overlays) overlayLegends.set(line.label, line.color);
  let j = 0;
  for (const [label, color] of overlayLegends) {
    const y = MARGIN.top + (chart.legend.length + j) * 20 + 8;
    parts.push(
      `<g class="legend-overlay"><line x1="${lx}" y1="${y + 6}" x2="${lx + 13}" y2="${y + 6}" ` +
        `stroke="${color}" stroke-width="1.4" stroke-dasharray="6,4"/>` +
        `<text x="${lx + 19}" y="${y + 10}">${esc(label)}</text></g>`
    );
    j += 1;
  }
  parts.push("</g>");
  parts.push("</svg>");
  return parts.join("\n");
}
