/** Typed client for the /v1 JSON API with latest-request-wins semantics. */

import type {
  AnalysisConfig,
  ChartDocument,
  DecisionOut,
  ErrorGridReport,
  RegionsRequest,
  StudyRow,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function readError(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (typeof body.detail === "string") return body.detail;
    if (Array.isArray(body.detail)) {
      return body.detail
        .map((d: { field?: string; message?: string }) => `${d.field ?? "?"}: ${d.message ?? "invalid"}`)
        .join("; ");
    }
  } catch {
    /* fall through */
  }
  return `request failed with status ${response.status}`;
}

export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(private base: string = "") {}

  /** Abort any previous request on the same channel: latest config wins. */
  private async post<T>(channel: string, path: string, body: unknown): Promise<T> {
    this.inflight.get(channel)?.abort();
    const controller = new AbortController();
    this.inflight.set(channel, controller);
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal: controller.signal,
    });
    if (!response.ok) {
      throw new ApiError(response.status, await readError(response));
    }
    return (await response.json()) as T;
  }

  async defaults(): Promise<AnalysisConfig> {
    const response = await fetch(this.base + "/v1/defaults");
    if (!response.ok) throw new ApiError(response.status, await readError(response));
    return (await response.json()) as AnalysisConfig;
  }

  async decide(rows: StudyRow[], config: AnalysisConfig): Promise<DecisionOut[]> {
    const body = await this.post<{ decisions: DecisionOut[] }>("decide", "/v1/decide", {
      rows,
      config,
    });
    return body.decisions;
  }

  async regions(request: RegionsRequest): Promise<ChartDocument> {
    return this.post<ChartDocument>("regions", "/v1/regions", request);
  }

  async errorRates(body: {
    config: AnalysisConfig;
    true_effect: number;
    df: number;
    se_grid: { min: number; max: number; points: number };
    substantive?: string;
  }): Promise<ErrorGridReport> {
    return this.post<ErrorGridReport>("error-rates", "/v1/error-rates", body);
  }
}
