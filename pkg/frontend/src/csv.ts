/**
 * Sweep-CSV parsing and schema validation.
 *
 * The producer writes '#'-prefixed metadata lines, then a header row and
 * one data row per grid point. Numeric cells parse to numbers; empty cells
 * stay null (a mapping without an analytic column, or a non-applicable d).
 */

export type Cell = string | number | null;

export interface SweepRow {
  family: string;
  mapping: string;
  index_policy: string;
  N: number;
  M: number;
  [column: string]: Cell;
}

export interface SweepTable {
  metadata: string[];
  columns: string[];
  rows: SweepRow[];
}

const NUMERIC_COLUMNS = new Set([
  "N",
  "M",
  "k",
  "d",
  "n_qubits",
  "n_strings",
  "n_rz",
  "n_cnot",
  "n_bwcp_groups",
  "n_rz_analytic",
  "n_cnot_analytic",
]);

export class CsvError extends Error {}

export function parseSweepCsv(text: string): SweepTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  const metadata = lines.filter((line) => line.startsWith("#"));
  const body = lines.filter((line) => !line.startsWith("#"));
  if (body.length === 0) {
    throw new CsvError("empty CSV: no header row");
  }
  const columns = body[0].split(",");
  const rows: SweepRow[] = [];
  for (const line of body.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `row has ${cells.length} cells, header has ${columns.length}: ${line}`,
      );
    }
    const row: Record<string, Cell> = {};
    columns.forEach((column, i) => {
      const raw = cells[i];
      if (NUMERIC_COLUMNS.has(column)) {
        row[column] = raw === "" ? null : Number(raw);
      } else {
        row[column] = raw;
      }
    });
    rows.push(row as SweepRow);
  }
  if (rows.length === 0) {
    throw new CsvError("empty CSV: header but no data rows");
  }
  return { metadata, columns, rows };
}

/** Throw naming the first missing column a recipe needs. */
export function requireColumns(table: SweepTable, needed: string[]): void {
  for (const column of needed) {
    if (!table.columns.includes(column)) {
      throw new CsvError(`missing column: ${column}`);
    }
  }
}

/** Keep only rows whose status is ok (failed grid points become gaps). */
export function okRows(table: SweepTable): SweepRow[] {
  return table.rows.filter((row) => row.status === "ok");
}
