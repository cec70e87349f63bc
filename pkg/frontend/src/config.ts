/** Configuration state: defaults, validation, export/import, request building.
 *
 * All statistics are computed server-side; these helpers only validate
 * edits before dispatch and build the request bodies, so the UI never
 * contains decision logic of its own.
 */

import type { AnalysisConfig, RegionsRequest, SessionState, StudyRow } from "./types.js";

export const DEFAULT_CONFIG: AnalysisConfig = {
  theta1: -0.2,
  theta2: 0.2,
  alphas: [0.25, 0.05, 0.005],
  labels: ["likely", "very likely", "most likely"],
  variant: "non_clinical",
  equivalence_rule: "max_p",
  vocabulary: "default",
};

export function initialState(): SessionState {
  return {
    config: structuredClone(DEFAULT_CONFIG),
    rows: [],
    kind: "mbd",
    boundaryDf: 18,
    smeUnits: false,
    lastChart: null,
    lastReport: null,
  };
}

/** Validation problems for a candidate configuration; empty means valid. */
export function validateConfig(config: AnalysisConfig): string[] {
  const problems: string[] = [];
  if (!Number.isFinite(config.theta1) || !Number.isFinite(config.theta2)) {
    problems.push("range bounds must be finite numbers");
  } else if (!(config.theta1 < config.theta2)) {
    problems.push("theta1 must be strictly less than theta2");
  }
  if (!config.alphas.length) {
    problems.push("at least one alpha level is required");
  }
  for (const a of config.alphas) {
    if (!(a > 0 && a < 1)) {
      problems.push("alpha levels must lie strictly between 0 and 1");
      break;
    }
  }
  for (let i = 1; i < config.alphas.length; i++) {
    if (!(config.alphas[i] < config.alphas[i - 1])) {
      problems.push("alpha levels must be strictly decreasing");
      break;
    }
  }
  if (config.labels.length && config.labels.length !== config.alphas.length) {
    problems.push("one label per alpha level is required");
  }
  if (config.variant !== "non_clinical" && config.variant !== "clinical") {
    problems.push("variant must be non_clinical or clinical");
  }
  if (config.equivalence_rule !== "max_p" && config.equivalence_rule !== "sum_p") {
    problems.push("equivalence rule must be max_p or sum_p");
  }
  if (config.viewport) {
    const v = config.viewport;
    if (!(v.effect_min < v.effect_max) || !(v.se_max > 0)) {
      problems.push("viewport must satisfy effect_min < effect_max and se_max > 0");
    }
  }
  return problems;
}

/** Canonical JSON export (stable key order) for saving a session config. */
export function exportConfig(config: AnalysisConfig): string {
  const ordered: Record<string, unknown> = {
    theta1: config.theta1,
    theta2: config.theta2,
    alphas: config.alphas,
    labels: config.labels,
    variant: config.variant,
    equivalence_rule: config.equivalence_rule,
    vocabulary: config.vocabulary,
  };
  if (config.viewport) ordered.viewport = config.viewport;
  return JSON.stringify(ordered, null, 2) + "\n";
}

/** Parse and validate an exported configuration; throws on any problem. */
export function importConfig(text: string): AnalysisConfig {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new Error(`config is not valid JSON: ${String(err)}`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new Error("config must be a JSON object");
  }
  const base = structuredClone(DEFAULT_CONFIG);
  const merged: AnalysisConfig = { ...base, ...(doc as Partial<AnalysisConfig>) };
  const problems = validateConfig(merged);
  if (problems.length) {
    throw new Error(problems.join("; "));
  }
  return merged;
}

/** Rows as sent to the service: scaled to SME units when the toggle is on. */
export function effectiveRows(state: Pick<SessionState, "rows" | "smeUnits">): StudyRow[] {
  if (!state.smeUnits) {
    return state.rows.map((r) => ({ ...r }));
  }
  return state.rows.map((row) => {
    const sme = row.sme ?? 1.0;
    return { id: row.id, effect: row.effect / sme, se: row.se / sme, df: row.df, sme: 1.0 };
  });
}

/** Config as sent to the service: the range becomes [-1, 1] in SME units. */
export function effectiveConfig(state: Pick<SessionState, "config" | "smeUnits">): AnalysisConfig {
  const config = structuredClone(state.config);
  if (state.smeUnits) {
    config.theta1 = -1.0;
    config.theta2 = 1.0;
    delete config.viewport;
  }
  return config;
}

/** The exact /v1/regions request body for the current session state. */
export function regionsRequest(state: SessionState): RegionsRequest {
  return {
    config: effectiveConfig(state),
    kind: state.kind,
    rows: effectiveRows(state),
    df: state.boundaryDf,
  };
}
