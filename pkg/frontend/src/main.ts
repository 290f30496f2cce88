/**
 * CLI: render one of the four figure layouts from sweep CSVs.
 *
 *   node dist/main.js fig1 --csv data/fig1_rdm1.csv --out out/
 *   node dist/main.js fig4 --csv data/fig4_ho_n3.csv --csv data/fig4_ho_n6.csv --out out/
 *
 * Options: --ratio-m <M> fixes the ratio column's M (fig1/fig2),
 *          --n <a,b> picks the panel particle numbers.
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { CsvError } from "./csv.js";
import { FigureName, FigureOptions, renderNamedFigure } from "./figures.js";

function usage(): never {
  console.error(
    "usage: main.js <fig1|fig2|fig3|fig4> --csv FILE [--csv FILE2] --out DIR [--ratio-m M] [--n a,b]",
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  const [name, ...rest] = argv;
  if (!name || !["fig1", "fig2", "fig3", "fig4"].includes(name)) usage();
  const csvPaths: string[] = [];
  let outDir = ".";
  const options: FigureOptions = {};
  for (let i = 0; i < rest.length; i += 2) {
    const flag = rest[i];
    const value = rest[i + 1];
    if (value === undefined) usage();
    if (flag === "--csv") csvPaths.push(value);
    else if (flag === "--out") outDir = value;
    else if (flag === "--ratio-m") options.ratioM = Number(value);
    else if (flag === "--n") options.nRows = value.split(",").map(Number);
    else usage();
  }
  if (csvPaths.length === 0) usage();
  let svg: string;
  try {
    svg = renderNamedFigure(
      name as FigureName,
      csvPaths.map((p) => readFileSync(p, "utf8")),
      options,
    );
  } catch (error) {
    if (error instanceof CsvError) {
      console.error(`error: ${error.message}`);
      return 1;
    }
    throw error;
  }
  mkdirSync(outDir, { recursive: true });
  const target = join(outDir, `${name}.svg`);
  writeFileSync(target, svg);
  console.log(`wrote ${target}`);
  return 0;
}

process.exit(main(process.argv.slice(2)));
