/** Shared types mirroring the /v1 JSON API. */

export type Variant = "non_clinical" | "clinical";
export type EquivalenceRule = "max_p" | "sum_p";

export interface ViewportSpec {
  effect_min: number;
  effect_max: number;
  se_max: number;
}

export interface AnalysisConfig {
  theta1: number;
  theta2: number;
  alphas: number[];
  labels: string[];
  variant: Variant;
  equivalence_rule: EquivalenceRule;
  vocabulary: string | Record<string, string>;
  viewport?: ViewportSpec;
}

export interface StudyRow {
  id: string;
  effect: number;
  se: number;
  df: number;
  sme?: number | null;
}

export interface PValues {
  h1_minus: number;
  h1_plus: number;
  h2_minus: number;
  h2_plus: number;
}

export interface DecisionOut {
  id: string;
  p_values: PValues;
  levels: Record<keyof PValues, number>;
  class_id: number;
  range: string;
  level_index: number | null;
  label: string;
  clinical_annotation: string | null;
}

export interface LegendEntry {
  class_id: number;
  label: string;
  fill: string;
  annotation: string | null;
}

export interface RegionOut extends LegendEntry {
  polygon: [number, number][];
}

export interface OverlayLine {
  alpha: number;
  direction: "minus" | "plus";
  intercept: number;
  slope: number;
  color: string;
  label: string;
}

export interface ChartPoint {
  id: string;
  effect: number;
  se: number;
  df: number;
  class_id: number;
  label: string;
  annotation: string | null;
  p_values: PValues;
}

export interface ChartDocument {
  kind: string;
  variant: Variant;
  axes: {
    effect: { min: number; max: number; label: string };
    se: { min: number; max: number; label: string };
  };
  regions: RegionOut[];
  overlays: OverlayLine[];
  points: ChartPoint[];
  legend: LegendEntry[];
}

export interface RegionsRequest {
  config: AnalysisConfig;
  kind: string;
  rows: StudyRow[];
  df: number;
}

export interface ErrorGridPoint {
  se: number;
  rate: number;
}

export interface ErrorGridReport {
  substantive: number[];
  grid: ErrorGridPoint[];
  max_rate: number;
  argmax_se: number;
}

export interface SessionState {
  config: AnalysisConfig;
  rows: StudyRow[];
  kind: string;
  boundaryDf: number;
  smeUnits: boolean;
  lastChart: ChartDocument | null;
  lastReport: ErrorGridReport | null;
}
