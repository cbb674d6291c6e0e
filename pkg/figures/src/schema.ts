// Strict reader for the sweep CSVs emitted by the lgfmo experiments.
// The header must match the emission schema byte for byte; all validation
// errors are collected with line/column diagnostics instead of throwing.

export const CSV_HEADER =
  "experiment,initial_state,observable,gamma_per_ps,dt_ps,pattern,K,violation";
export const COLUMNS = CSV_HEADER.split(",");

const MAX_REPORTED_ERRORS = 20;

export interface SweepRow {
  experiment: string;
  initialState: string;
  observable: string;
  gammaPerPs: number;
  dtPs: number;
  pattern: string;
  k: number;
  violation: boolean;
}

export type ParseResult =
  | { ok: true; rows: SweepRow[] }
  | { ok: false; errors: string[] };

function headerDiagnostics(found: string): string[] {
  const errors = [`header mismatch: expected "${CSV_HEADER}"`];
  const foundCols = found.split(",");
  const width = Math.max(COLUMNS.length, foundCols.length);
  for (let i = 0; i < width; i++) {
    const want = COLUMNS[i];
    const got = foundCols[i];
    if (want === got) continue;
    if (want === undefined) {
      errors.push(`column ${i + 1}: unexpected extra column "${got}"`);
    } else if (got === undefined) {
      errors.push(`column ${i + 1}: missing column "${want}"`);
    } else {
      errors.push(`column ${i + 1}: expected "${want}", found "${got}"`);
    }
  }
  return errors;
}

function parseNumber(raw: string, column: string, line: number, errors: string[]): number {
  const value = raw === "" ? NaN : Number(raw);
  if (!Number.isFinite(value)) {
    errors.push(`line ${line}: column "${column}": not a finite number: "${raw}"`);
    return NaN;
  }
  return value;
}

export function parseSweepCsv(text: string): ParseResult {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) return { ok: false, errors: ["empty file"] };

  const header = lines[0]!;
  if (header !== CSV_HEADER) return { ok: false, errors: headerDiagnostics(header) };

  const errors: string[] = [];
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = i + 1; // 1-based, header is line 1
    const fields = lines[i]!.split(",");
    if (fields.length !== COLUMNS.length) {
      errors.push(`line ${line}: expected ${COLUMNS.length} fields, found ${fields.length}`);
      continue;
    }
    const [experiment, initialState, observable, gammaRaw, dtRaw, pattern, kRaw, violRaw] =
      fields as [string, string, string, string, string, string, string, string];
    const gammaPerPs = parseNumber(gammaRaw, "gamma_per_ps", line, errors);
    const dtPs = parseNumber(dtRaw, "dt_ps", line, errors);
    const k = parseNumber(kRaw, "K", line, errors);
    if (violRaw !== "true" && violRaw !== "false") {
      errors.push(`line ${line}: column "violation": expected true or false, found "${violRaw}"`);
      continue;
    }
    if ([gammaPerPs, dtPs, k].some(Number.isNaN)) continue;
    rows.push({
      experiment,
      initialState,
      observable,
      gammaPerPs,
      dtPs,
      pattern,
      k,
      violation: violRaw === "true",
    });
  }

  if (errors.length > MAX_REPORTED_ERRORS) {
    const extra = errors.length - MAX_REPORTED_ERRORS;
    errors.length = MAX_REPORTED_ERRORS;
    errors.push(`...and ${extra} more`);
  }
  if (errors.length > 0) return { ok: false, errors };
  if (rows.length === 0) return { ok: false, errors: ["no data rows"] };
  return { ok: true, rows };
}
