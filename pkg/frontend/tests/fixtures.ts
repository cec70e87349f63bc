/** Hand-built chart/report fixtures for DOM-free unit tests. */

import type { ChartDocument, ErrorGridReport, LegendEntry } from "../src/types.js";

export function legend12(clinical = false): LegendEntry[] {
  const word = clinical ? "beneficial" : "positive";
  const annotate = (uses: boolean) =>
    clinical ? (uses ? "consider_using" : "do_not_use") : null;
  return [
    { class_id: 0, label: "unclear", fill: "#f2f2f2", annotation: annotate(false) },
    { class_id: 1, label: "possibly negative", fill: "#f3cdc8", annotation: annotate(false) },
    { class_id: 2, label: `possibly ${word}`, fill: "#c8d9f3", annotation: annotate(true) },
    { class_id: 3, label: "likely negative", fill: "#e8a49e", annotation: annotate(false) },
    { class_id: 4, label: "very likely negative", fill: "#d96c62", annotation: annotate(false) },
    { class_id: 5, label: "most likely negative", fill: "#c0392b", annotation: annotate(false) },
    { class_id: 6, label: "likely trivial", fill: "#d5e8d4", annotation: annotate(false) },
    { class_id: 7, label: "very likely trivial", fill: "#a8d5a2", annotation: annotate(false) },
    { class_id: 8, label: "most likely trivial", fill: "#74b266", annotation: annotate(false) },
    { class_id: 9, label: `likely ${word}`, fill: "#a9c6e8", annotation: annotate(true) },
    { class_id: 10, label: `very likely ${word}`, fill: "#6f9fd8", annotation: annotate(true) },
    { class_id: 11, label: `most likely ${word}`, fill: "#3465a8", annotation: annotate(true) },
  ];
}

export function chartFixture(clinical = false): ChartDocument {
  return {
    kind: "mbd",
    variant: clinical ? "clinical" : "non_clinical",
    axes: {
      effect: { min: -0.8, max: 0.8, label: "effect size" },
      se: { min: 0, max: 0.4, label: "standard error" },
    },
    regions: [
      {
        class_id: 0,
        label: "unclear",
        fill: "#f2f2f2",
        annotation: null,
        polygon: [
          [-0.8, 0.12],
          [0.8, 0.12],
          [0.8, 0.4],
          [-0.8, 0.4],
        ],
      },
      {
        class_id: 8,
        label: "most likely trivial",
        fill: "#74b266",
        annotation: null,
        polygon: [
          [-0.1, 0.0],
          [0.1, 0.0],
          [0.0, 0.07],
        ],
      },
    ],
    overlays: [
      {
        alpha: 0.125,
        direction: "minus",
        intercept: 0,
        slope: 1.19,
        color: "#cc0000",
        label: "one-sided t-test at 0.125",
      },
    ],
    points: [
      {
        id: "bench",
        effect: 0.48,
        se: 0.24,
        df: 22,
        class_id: 9,
        label: "likely positive",
        annotation: null,
        p_values: { h1_minus: 0.002, h1_plus: 0.998, h2_minus: 0.23, h2_plus: 0.77 },
      },
    ],
    legend: legend12(clinical),
  };
}

export function reportFixture(): ErrorGridReport {
  const grid = [];
  for (let i = 0; i < 40; i++) {
    const se = 0.002 * Math.pow(1000, i / 39);
    grid.push({ se, rate: 0.12 * Math.exp(-Math.pow(Math.log(se / 0.4), 2)) });
  }
  return {
    substantive: [9, 10, 11],
    grid,
    max_rate: Math.max(...grid.map((g) => g.rate)),
    argmax_se: 0.4,
  };
}
