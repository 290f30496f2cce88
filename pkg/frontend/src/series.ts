/**
 * Turn sweep rows into plottable series.
 *
 * A series is one (mapping, index policy) pair; points are (x, y) with
 * y null where the grid has no value. Missing points stay gaps -- nothing
 * interpolates across them. Ratio series divide every point by the
 * one-hot-particle-register (U1Q) value at the same grid point.
 */

import { CsvError, SweepRow } from "./csv.js";

export interface Series {
  key: string;
  mapping: string;
  indexPolicy: string;
  points: { x: number; y: number | null }[];
}

export const BASELINE = "U1Q";

export function seriesLabel(mapping: string, indexPolicy: string): string {
  if (!indexPolicy) return mapping;
  return `${mapping} (${indexPolicy === "min_hamming" ? "min Hamming" : "max Hamming"})`;
}

function groupKeys(rows: SweepRow[]): { mapping: string; indexPolicy: string }[] {
  const seen = new Map<string, { mapping: string; indexPolicy: string }>();
  for (const row of rows) {
    const key = `${row.mapping}|${row.index_policy}`;
    if (!seen.has(key)) {
      seen.set(key, { mapping: row.mapping, indexPolicy: row.index_policy });
    }
  }
  return [...seen.values()].sort((a, b) =>
    `${a.mapping}|${a.indexPolicy}`.localeCompare(`${b.mapping}|${b.indexPolicy}`),
  );
}

export interface SeriesSpec {
  y: string; // column name
  x: "M" | "N";
  fixed: { N?: number; M?: number };
}

/** Extract one series per (mapping, policy) over the union x-grid. */
export function extractSeries(rows: SweepRow[], spec: SeriesSpec): Series[] {
  const filtered = rows.filter(
    (row) =>
      (spec.fixed.N === undefined || row.N === spec.fixed.N) &&
      (spec.fixed.M === undefined || row.M === spec.fixed.M),
  );
  const grid = [...new Set(filtered.map((row) => row[spec.x] as number))].sort(
    (a, b) => a - b,
  );
  return groupKeys(filtered).map(({ mapping, indexPolicy }) => {
    const mine = new Map<number, number>();
    for (const row of filtered) {
      if (row.mapping === mapping && row.index_policy === indexPolicy) {
        const value = row[spec.y];
        if (typeof value === "number" && Number.isFinite(value)) {
          mine.set(row[spec.x] as number, value);
        }
      }
    }
    return {
      key: seriesLabel(mapping, indexPolicy),
      mapping,
      indexPolicy,
      points: grid.map((x) => ({ x, y: mine.has(x) ? mine.get(x)! : null })),
    };
  });
}

/**
 * Ratio-to-baseline series; every grid point a series occupies must have a
 * baseline row, and the baseline's own ratio is identically one.
 */
export function ratioSeries(rows: SweepRow[], spec: SeriesSpec): Series[] {
  const raw = extractSeries(rows, spec);
  const baseline = raw.find((s) => s.mapping === BASELINE && !s.indexPolicy);
  if (!baseline) {
    throw new CsvError(`ratio panel needs a ${BASELINE} baseline series`);
  }
  const base = new Map(baseline.points.map((p) => [p.x, p.y]));
  return raw.map((series) => ({
    ...series,
    points: series.points.map(({ x, y }) => {
      if (y === null) return { x, y: null };
      const b = base.get(x);
      if (b === null || b === undefined) {
        throw new CsvError(
          `ratio panel: no ${BASELINE} baseline at grid point ${spec.x}=${x}`,
        );
      }
      return { x, y: y / b };
    }),
  }));
}
