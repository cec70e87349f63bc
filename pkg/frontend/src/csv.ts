/** Study-table CSV import/export using the service ingestion schema:
 * header `id,effect,se,df[,sme]`, dot decimals, LF or CRLF. */

import type { StudyRow } from "./types.js";

const REQUIRED = ["id", "effect", "se", "df"] as const;

export function parseStudyCsv(text: string): StudyRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (!lines.length) throw new Error("missing header row");
  const header = lines[0].split(",").map((h) => h.trim());
  for (const col of REQUIRED) {
    if (!header.includes(col)) throw new Error(`missing column: ${col}`);
  }
  for (const col of header) {
    if (!(REQUIRED as readonly string[]).includes(col) && col !== "sme") {
      throw new Error(`unexpected column: ${col}`);
    }
  }
  const idx = Object.fromEntries(header.map((h, i) => [h, i]));
  const rows: StudyRow[] = [];
  lines.slice(1).forEach((line, k) => {
    const lineNo = k + 2;
    const cells = line.split(",").map((c) => c.trim());
    if (cells.length !== header.length) {
      throw new Error(`row ${lineNo}: expected ${header.length} cells, got ${cells.length}`);
    }
    const num = (col: string): number => {
      const value = Number(cells[idx[col]]);
      if (!Number.isFinite(value)) throw new Error(`row ${lineNo}: ${col} must be a number`);
      return value;
    };
    const id = cells[idx.id];
    if (!id) throw new Error(`row ${lineNo}: id must not be empty`);
    const se = num("se");
    if (se <= 0) throw new Error(`row ${lineNo}: se must be positive`);
    const df = num("df");
    if (df <= 0) throw new Error(`row ${lineNo}: df must be positive`);
    let sme: number | null = null;
    if ("sme" in idx && cells[idx.sme] !== "") {
      sme = num("sme");
      if (sme <= 0) throw new Error(`row ${lineNo}: sme must be positive`);
    }
    rows.push({ id, effect: num("effect"), se, df, sme });
  });
  return rows;
}

export function serializeStudyCsv(rows: StudyRow[]): string {
  const hasSme = rows.some((r) => r.sme != null);
  const header = hasSme ? "id,effect,se,df,sme" : "id,effect,se,df";
  const body = rows.map((r) => {
    const cells = [r.id, String(r.effect), String(r.se), String(r.df)];
    if (hasSme) cells.push(r.sme == null ? "" : String(r.sme));
    return cells.join(",");
  });
  return [header, ...body].join("\n") + "\n";
}
