/**
 * The four figure layouts.
 *
 * Transition-element figures (fig1, fig2): 3x3 -- rows are CNOT count, Rz
 * count and measurement-group count; the first two columns sweep M at two
 * fixed particle numbers, the third shows counts normalised to the U1Q
 * baseline as a function of N at fixed M.
 *
 * Hamiltonian figures (fig3, fig4): 2x3 -- one row per particle number,
 * columns are CNOT, Rz and group counts versus M. fig4 reads one CSV per
 * row (the second row compares only the first-quantized mappings).
 */

import { CsvError, okRows, parseSweepCsv, requireColumns, SweepRow, SweepTable } from "./csv.js";
import { extractSeries, ratioSeries, Series } from "./series.js";
import { PanelSpec, renderFigure } from "./svg.js";

const QUANTITIES: [string, string][] = [
  ["n_cnot", "CNOT gates"],
  ["n_rz", "Rz gates"],
  ["n_bwcp_groups", "commuting groups"],
];

export interface FigureOptions {
  ratioM?: number; // fixed M for the ratio column (default: largest common M)
  nRows?: number[]; // the two particle numbers shown (default: min/max swept)
}

function sweptNs(rows: SweepRow[]): number[] {
  return [...new Set(rows.map((row) => row.N))].sort((a, b) => a - b);
}

function legendOf(series: Series[][]): { key: string }[] {
  const keys: string[] = [];
  for (const panel of series) {
    for (const s of panel) {
      if (!keys.includes(s.key)) keys.push(s.key);
    }
  }
  return keys.map((key) => ({ key }));
}

export function renderRdmFigure(table: SweepTable, options: FigureOptions = {}): string {
  requireColumns(table, ["mapping", "index_policy", "N", "M", "status", ...QUANTITIES.map(([q]) => q)]);
  const rows = okRows(table);
  if (rows.length === 0) throw new CsvError("no ok rows to plot");
  const ns = sweptNs(rows);
  const [nLow, nHigh] = options.nRows ?? [ns[0], ns[ns.length - 1]];
  const ratioM = options.ratioM ?? Math.max(...rows.map((row) => row.M));
  const panels: PanelSpec[] = [];
  const allSeries: Series[][] = [];
  for (const [column, label] of QUANTITIES) {
    for (const variant of [0, 1, 2]) {
      let series: Series[];
      let title: string;
      let xLabel: string;
      let logY = true;
      let yLabel = label;
      if (variant < 2) {
        const N = variant === 0 ? nLow : nHigh;
        series = extractSeries(rows, { y: column, x: "M", fixed: { N } });
        title = `${label}, N=${N}`;
        xLabel = "modes M";
      } else {
        series = ratioSeries(rows, { y: column, x: "N", fixed: { M: ratioM } });
        title = `${label} / U1Q, M=${ratioM}`;
        xLabel = "particles N";
        yLabel = "ratio to U1Q";
      }
      panels.push({ title, xLabel, yLabel, logY, series });
      allSeries.push(series);
    }
  }
  return renderFigure(panels, 3, legendOf(allSeries));
}

export function renderHamiltonianFigure(
  tables: SweepTable[],
  options: FigureOptions = {},
): string {
  const perRow: SweepRow[][] = [];
  for (const table of tables) {
    requireColumns(table, ["mapping", "N", "M", "status", ...QUANTITIES.map(([q]) => q)]);
    const rows = okRows(table);
    if (rows.length === 0) throw new CsvError("no ok rows to plot");
    for (const N of sweptNs(rows)) {
      perRow.push(rows.filter((row) => row.N === N));
    }
  }
  const wanted = options.nRows;
  const selected = wanted
    ? perRow.filter((rows) => wanted.includes(rows[0].N))
    : perRow;
  if (selected.length === 0) throw new CsvError("no rows match the requested N values");
  const panels: PanelSpec[] = [];
  const allSeries: Series[][] = [];
  for (const rows of selected) {
    for (const [column, label] of QUANTITIES) {
      const series = extractSeries(rows, { y: column, x: "M", fixed: { N: rows[0].N } });
      panels.push({
        title: `${label}, N=${rows[0].N}`,
        xLabel: "sites/modes M",
        yLabel: label,
        logY: true,
        series,
      });
      allSeries.push(series);
    }
  }
  return renderFigure(panels, 3, legendOf(allSeries));
}

export type FigureName = "fig1" | "fig2" | "fig3" | "fig4";

export function renderNamedFigure(
  name: FigureName,
  csvTexts: string[],
  options: FigureOptions = {},
): string {
  const tables = csvTexts.map(parseSweepCsv);
  if (tables.length === 0) throw new CsvError("no CSV inputs given");
  if (name === "fig1" || name === "fig2") {
    return renderRdmFigure(tables[0], options);
  }
  return renderHamiltonianFigure(tables, options);
}
