// Command line entry: render_figures <csv> <figure-id> <out>
// Exit 0 on success, 1 on any failure; nothing is written unless the
// input validates.

import { readFileSync, writeFileSync } from "node:fs";

import { FIGURE_IDS, figureData, isFigureId } from "./figures.js";
import { parseSweepCsv } from "./schema.js";
import { renderFigure } from "./svg.js";

export const USAGE = "usage: render_figures <csv> <figure-id> <out>";

type Log = (message: string) => void;

export function main(
  argv: string[],
  log: Log = console.log,
  error: Log = console.error,
): number {
  if (argv.length !== 3) {
    error(USAGE);
    return 1;
  }
  const [csvPath, figureId, outPath] = argv as [string, string, string];

  if (!isFigureId(figureId)) {
    error(`unknown figure id "${figureId}" (expected one of: ${FIGURE_IDS.join(", ")})`);
    return 1;
  }

  let text: string;
  try {
    text = readFileSync(csvPath, "utf8");
  } catch (cause) {
    error(`cannot read ${csvPath}: ${(cause as Error).message}`);
    return 1;
  }

  const parsed = parseSweepCsv(text);
  if (!parsed.ok) {
    error(`schema mismatch in ${csvPath}:`);
    for (const line of parsed.errors) error(`  ${line}`);
    return 1;
  }

  const svg = renderFigure(figureData(figureId, parsed.rows));
  try {
    writeFileSync(outPath, svg, "utf8");
  } catch (cause) {
    error(`cannot write ${outPath}: ${(cause as Error).message}`);
    return 1;
  }
  log(`wrote ${outPath}`);
  return 0;
}
