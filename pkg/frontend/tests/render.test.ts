import { describe, expect, it } from "vitest";

import { dataToPixel, pixelToData, renderChart } from "../src/chartRender.js";
import { DEFAULT_CAPS, renderErrorPanel } from "../src/errorPanel.js";
import { parseStudyCsv, serializeStudyCsv } from "../src/csv.js";
import { chartFixture, reportFixture } from "./fixtures.js";

describe("renderChart", () => {
  it("renders one legend entry per decision class", () => {
    const svg = renderChart(chartFixture());
    expect(svg.match(/class="legend-entry"/g)?.length).toBe(12);
  });

  it("relabels the legend for the clinical variant", () => {
    const svg = renderChart(chartFixture(true));
    expect(svg).toContain("possibly beneficial (consider using)");
    expect(svg).toContain("(do not use)");
    expect(svg).not.toContain("possibly positive");
  });

  it("marks study points with drag metadata and tooltips", () => {
    const svg = renderChart(chartFixture());
    expect(svg).toContain('class="study-point"');
    expect(svg).toContain('data-id="bench"');
    expect(svg).toContain("likely positive");
    expect(svg).toContain("p(H1-)=0.00200");
  });

  it("switches axis labels with the SME-units toggle", () => {
    expect(renderChart(chartFixture(), { smeUnits: false })).not.toContain("SME units");
    const svg = renderChart(chartFixture(), { smeUnits: true });
    expect(svg).toContain("effect size (SME units)");
    expect(svg).toContain("standard error (SME units)");
  });

  it("escapes markup in labels", () => {
    const chart = chartFixture();
    chart.points[0].id = "a<b&c";
    const svg = renderChart(chart);
    expect(svg).toContain("a&lt;b&amp;c");
    expect(svg).not.toContain("a<b&c");
  });

  it("pixel and data transforms are inverse", () => {
    const chart = chartFixture();
    const viewBox = { width: 880, height: 560 };
    const pixel = dataToPixel(chart, viewBox, 0.33, 0.21);
    const data = pixelToData(chart, viewBox, pixel.x, pixel.y);
    expect(data.effect).toBeCloseTo(0.33, 10);
    expect(data.se).toBeCloseTo(0.21, 10);
  });
});

describe("renderErrorPanel", () => {
  it("draws the 0.125 and 0.17 cap reference lines", () => {
    const svg = renderErrorPanel(reportFixture(), { caps: DEFAULT_CAPS });
    expect(svg).toContain('data-cap="0.125"');
    expect(svg).toContain('data-cap="0.17"');
    expect(svg).toContain("cap 0.125");
    expect(svg).toContain("cap 0.17");
  });

  it("draws the rate curve and its maximum", () => {
    const svg = renderErrorPanel(reportFixture());
    expect(svg).toContain('class="rate-curve"');
    expect(svg).toContain('class="rate-max"');
  });
});

describe("study CSV", () => {
  it("round trips rows", () => {
    const rows = [
      { id: "a", effect: 0.3, se: 0.2, df: 18, sme: 0.25 },
      { id: "b", effect: -0.1, se: 0.4, df: 22, sme: null },
    ];
    expect(parseStudyCsv(serializeStudyCsv(rows))).toEqual(rows);
  });

  it("names the offending row and column", () => {
    expect(() => parseStudyCsv("id,effect,se,df\na,0.1,0.2,18\nb,0.2,0,18\n")).toThrow(
      /row 3: se must be positive/
    );
    expect(() => parseStudyCsv("id,effect,df\na,0.1,18\n")).toThrow(/missing column: se/);
  });
});
