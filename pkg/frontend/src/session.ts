/** Session orchestration: every statistic comes from the service.
 *
 * The UI never computes a decision itself; a point's displayed label is
 * exactly the /v1/decide response for the rows and configuration the
 * session currently holds.
 */

import type { ApiClient } from "./api.js";
import type {
  AnalysisConfig,
  ChartDocument,
  DecisionOut,
  ErrorGridReport,
  SessionState,
  StudyRow,
} from "./types.js";
import { effectiveConfig, effectiveRows, regionsRequest, validateConfig } from "./config.js";

export async function refreshChart(state: SessionState, api: ApiClient): Promise<ChartDocument> {
  const problems = validateConfig(state.config);
  if (problems.length) throw new Error(problems.join("; "));
  const chart = await api.regions(regionsRequest(state));
  state.lastChart = chart;
  return chart;
}

/** Decision per study row id, straight from /v1/decide. */
export async function decisionLabels(
  state: Pick<SessionState, "config" | "rows" | "smeUnits">,
  api: ApiClient
): Promise<Map<string, DecisionOut>> {
  const rows = effectiveRows(state);
  if (!rows.length) return new Map();
  const decisions = await api.decide(rows, effectiveConfig(state));
  return new Map(decisions.map((d) => [d.id, d]));
}

/** Drag interaction: update a row in place and re-decide it live. */
export async function movePoint(
  state: SessionState,
  api: ApiClient,
  id: string,
  effect: number,
  se: number
): Promise<DecisionOut | undefined> {
  const row = state.rows.find((r) => r.id === id);
  if (!row || se <= 0) return undefined;
  if (state.smeUnits) {
    const sme = row.sme ?? 1.0;
    row.effect = effect * sme;
    row.se = se * sme;
  } else {
    row.effect = effect;
    row.se = se;
  }
  const labels = await decisionLabels(state, api);
  return labels.get(id);
}

export interface WhatIfParams {
  trueEffect: number;
  df: number;
  seMin: number;
  seMax: number;
  points: number;
  substantive: string;
}

export function defaultWhatIf(config: AnalysisConfig): WhatIfParams {
  const s = (config.theta2 - config.theta1) / 2;
  return {
    trueEffect: 0,
    df: 18,
    seMin: 0.01 * s,
    seMax: 10 * s,
    points: 120,
    substantive: config.variant === "clinical" ? "consider-using" : "likely-positive+",
  };
}

export async function runWhatIf(
  state: SessionState,
  api: ApiClient,
  params: WhatIfParams
): Promise<ErrorGridReport> {
  const report = await api.errorRates({
    config: effectiveConfig(state),
    true_effect: params.trueEffect,
    df: params.df,
    se_grid: { min: params.seMin, max: params.seMax, points: params.points },
    substantive: params.substantive,
  });
  state.lastReport = report;
  return report;
}

export function addRow(state: SessionState, row: StudyRow): string[] {
  const problems: string[] = [];
  if (!row.id) problems.push("id must not be empty");
  if (state.rows.some((r) => r.id === row.id)) problems.push(`duplicate id: ${row.id}`);
  if (!(row.se > 0)) problems.push("se must be positive");
  if (!(row.df > 0)) problems.push("df must be positive");
  if (!Number.isFinite(row.effect)) problems.push("effect must be a number");
  if (row.sme != null && !(row.sme > 0)) problems.push("sme must be positive");
  if (!problems.length) state.rows.push(row);
  return problems;
}
