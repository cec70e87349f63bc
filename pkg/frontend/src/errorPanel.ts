/** What-if Type I error panel: rate-vs-se curve with reference cap lines. */

import type { ErrorGridReport } from "./types.js";

export interface ErrorPanelOptions {
  width?: number;
  height?: number;
  /** horizontal reference caps to draw, e.g. [0.125, 0.17] */
  caps?: number[];
  title?: string;
}

export const DEFAULT_CAPS = [0.125, 0.17];

function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function renderErrorPanel(report: ErrorGridReport, options: ErrorPanelOptions = {}): string {
  const width = options.width ?? 640;
  const height = options.height ?? 320;
  const caps = options.caps ?? DEFAULT_CAPS;
  const margin = { left: 56, right: 20, top: 22, bottom: 42 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const ses = report.grid.map((g) => g.se);
  const seMin = Math.min(...ses);
  const seMax = Math.max(...ses);
  const rateMax = Math.max(report.max_rate, ...caps) * 1.15;

  const px = (se: number) =>
    margin.left + ((Math.log(se) - Math.log(seMin)) / (Math.log(seMax) - Math.log(seMin))) * plotW;
  const py = (rate: number) => margin.top + (1 - rate / rateMax) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="error-panel">`
  );
  parts.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`);
  if (options.title) {
    parts.push(
      `<text x="${margin.left}" y="14" font-size="12" fill="#333333">${esc(options.title)}</text>`
    );
  }

  for (const cap of caps) {
    parts.push(
      `<line class="cap-line" data-cap="${cap}" x1="${margin.left}" y1="${py(cap).toFixed(2)}" ` +
        `x2="${margin.left + plotW}" y2="${py(cap).toFixed(2)}" stroke="#cc0000" ` +
        `stroke-width="1" stroke-dasharray="5,4"/>`
    );
    parts.push(
      `<text class="cap-label" x="${margin.left + plotW - 4}" y="${(py(cap) - 4).toFixed(2)}" ` +
        `font-size="10" fill="#cc0000" text-anchor="end">cap ${cap}</text>`
    );
  }

  const path = report.grid
    .map((g, i) => `${i === 0 ? "M" : "L"}${px(g.se).toFixed(2)},${py(g.rate).toFixed(2)}`)
    .join(" ");
  parts.push(
    `<path class="rate-curve" d="${path}" fill="none" stroke="#1f5fa8" stroke-width="1.8"/>`
  );
  parts.push(
    `<circle class="rate-max" cx="${px(report.argmax_se).toFixed(2)}" cy="${py(report.max_rate).toFixed(2)}" ` +
      `r="3.5" fill="#1f5fa8"><title>max rate ${report.max_rate.toPrecision(4)} at se ${report.argmax_se.toPrecision(
        4
      )}</title></circle>`
  );

  parts.push(
    `<g class="axes" stroke="#333333"><line x1="${margin.left}" y1="${margin.top + plotH}" ` +
      `x2="${margin.left + plotW}" y2="${margin.top + plotH}"/>` +
      `<line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" y2="${margin.top + plotH}"/></g>`
  );
  parts.push('<g class="tick-labels" font-size="10" fill="#333333">');
  for (let i = 0; i <= 4; i++) {
    const se = Math.exp(Math.log(seMin) + ((Math.log(seMax) - Math.log(seMin)) * i) / 4);
    parts.push(
      `<text x="${px(se).toFixed(2)}" y="${margin.top + plotH + 16}" text-anchor="middle">${esc(
        se.toPrecision(2)
      )}</text>`
    );
    const rate = (rateMax * i) / 4;
    parts.push(
      `<text x="${margin.left - 6}" y="${(py(rate) + 3).toFixed(2)}" text-anchor="end">${esc(
        rate.toPrecision(2)
      )}</text>`
    );
  }
  parts.push("</g>");
  parts.push(
    `<text x="${margin.left + plotW / 2}" y="${height - 8}" font-size="11" text-anchor="middle">` +
      `standard error (log scale)</text>`
  );
  parts.push(
    `<text x="12" y="${margin.top + plotH / 2}" font-size="11" text-anchor="middle" ` +
      `transform="rotate(-90 12 ${margin.top + plotH / 2})">Type I rate</text>`
  );
  parts.push("</svg>");
  return parts.join("\n");
}
