/**
 * Parsing and validation of the entropy tool's CSV outputs.
 *
 * Two table shapes exist: sweep tables (entropy versus a swept parameter)
 * and grid tables (per-bin geometry of one format).  Both start with a
 * `#`-prefixed metadata block of `key=value` lines, then an exact header
 * row, then data rows.  Any deviation raises SchemaError naming the
 * offending column, row, or metadata key; nothing is silently coerced.
 */

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export const SWEEP_COLUMNS = [
  "dist",
  "swept_value",
  "exact_bits",
  "approx_tilde_bits",
  "approx_smooth_bits",
  "p_overflow",
  "p_underflow",
] as const;

export const GRID_COLUMNS = ["index", "value", "lower", "upper", "width"] as const;

export const SWEEP_MODES = ["scale", "precision", "exponent"] as const;
export type SweepMode = (typeof SWEEP_MODES)[number];

export interface SweepRow {
  dist: string;
  sweptValue: number;
  exactBits: number;
  approxTildeBits: number;
  approxSmoothBits: number;
  pOverflow: number;
  pUnderflow: number;
}

/** One distribution's slice of a sweep: the producer writes all points of
 * a distribution consecutively, in the order the "# dist=" metadata lists
 * them, so blocks are equal-length row runs. */
export interface SweepBlock {
  dist: string;
  rows: SweepRow[];
}

export interface SweepTable {
  meta: Record<string, string>;
  mode: SweepMode;
  /** Fixed precision of the sweep; 0 when precision is the swept axis. */
  precision: number;
  /** Fixed exponent width of the sweep; 0 when it is the swept axis. */
  exponentBits: number;
  /** Base distribution labels from "# dist=", in block order.  For scale
   * sweeps the per-row dist cell instead names the scaled instance. */
  baseDists: string[];
  blocks: SweepBlock[];
  rows: SweepRow[];
}

export interface GridRow {
  index: number;
  value: number;
  lower: number;
  upper: number;
  width: number;
}

export interface GridTable {
  meta: Record<string, string>;
  precision: number;
  exponentBits: number;
  rows: GridRow[];
}

interface RawCsv {
  meta: Record<string, string>;
  header: string[];
  records: string[][];
}

/** RFC-4180 field scanning: quoted fields may contain commas and "" escapes. */
function splitRecord(line: string, lineNo: number): string[] {
  const fields: string[] = [];
  let field = "";
  let inQuotes = false;
  for (let i = 0; i < line.length; i++) {
    const c = line[i];
    if (inQuotes) {
      if (c === '"') {
        if (line[i + 1] === '"') {
          field += '"';
          i++;
        } else {
          inQuotes = false;
        }
      } else {
        field += c;
      }
    } else if (c === '"') {
      inQuotes = true;
    } else if (c === ",") {
      fields.push(field);
      field = "";
    } else {
      field += c;
    }
  }
  if (inQuotes) {
    throw new SchemaError(`line ${lineNo}: unterminated quoted field`);
  }
  fields.push(field);
  return fields;
}

function parseCsv(text: string): RawCsv {
  const meta: Record<string, string> = {};
  let header: string[] | null = null;
  const records: string[][] = [];
  const lines = text.split("\n").map((l) => (l.endsWith("\r") ? l.slice(0, -1) : l));
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (line === "") continue;
    if (line.startsWith("#")) {
      if (header !== null) {
        throw new SchemaError(`line ${i + 1}: metadata after the header row`);
      }
      const body = line.replace(/^#\s*/, "");
      const eq = body.indexOf("=");
      if (eq <= 0) {
        throw new SchemaError(`line ${i + 1}: metadata is not "# key=value": ${line}`);
      }
      meta[body.slice(0, eq)] = body.slice(eq + 1);
      continue;
    }
    if (header === null) {
      header = splitRecord(line, i + 1);
    } else {
      records.push(splitRecord(line, i + 1));
    }
  }
  if (header === null) {
    throw new SchemaError("no header row found");
  }
  return { meta, header, records };
}

function checkHeader(header: string[], expected: readonly string[]): void {
  for (const name of expected) {
    if (!header.includes(name)) {
      throw new SchemaError(`missing column "${name}"`);
    }
  }
  for (const name of header) {
    if (!expected.includes(name)) {
      throw new SchemaError(`unexpected column "${name}"`);
    }
  }
  for (let i = 0; i < expected.length; i++) {
    if (header[i] !== expected[i]) {
      throw new SchemaError(
        `column order mismatch: expected "${expected[i]}" at position ${i}, found "${header[i]}"`,
      );
    }
  }
}

function parseNumber(raw: string, column: string, rowNo: number): number {
  const v = raw.trim() === "" ? NaN : Number(raw);
  if (!Number.isFinite(v)) {
    throw new SchemaError(`row ${rowNo}: column "${column}" is not a finite number: "${raw}"`);
  }
  return v;
}

function requireIntMeta(meta: Record<string, string>, key: string): number {
  const raw = meta[key];
  if (raw === undefined) {
    throw new SchemaError(`missing metadata "# ${key}="`);
  }
  const v = Number(raw);
  if (!Number.isInteger(v)) {
    throw new SchemaError(`metadata "${key}" is not an integer: "${raw}"`);
  }
  return v;
}

export function readSweepCsv(text: string, source = "<sweep csv>"): SweepTable {
  const ctx = (msg: string) => new SchemaError(`${source}: ${msg}`);
  let raw: RawCsv;
  try {
    raw = parseCsv(text);
    checkHeader(raw.header, SWEEP_COLUMNS);
  } catch (e) {
    if (e instanceof SchemaError) throw ctx(e.message);
    throw e;
  }
  if (raw.records.length === 0) {
    throw ctx("no data rows");
  }
  const modeRaw = raw.meta["mode"];
  if (modeRaw === undefined) {
    throw ctx('missing metadata "# mode="');
  }
  if (!(SWEEP_MODES as readonly string[]).includes(modeRaw)) {
    throw ctx(`unknown sweep mode "${modeRaw}"`);
  }
  const rows: SweepRow[] = [];
  try {
    for (let r = 0; r < raw.records.length; r++) {
      const rec = raw.records[r];
      if (rec.length !== SWEEP_COLUMNS.length) {
        throw new SchemaError(
          `row ${r + 1}: expected ${SWEEP_COLUMNS.length} fields, found ${rec.length}`,
        );
      }
      rows.push({
        dist: rec[0],
        sweptValue: parseNumber(rec[1], "swept_value", r + 1),
        exactBits: parseNumber(rec[2], "exact_bits", r + 1),
        approxTildeBits: parseNumber(rec[3], "approx_tilde_bits", r + 1),
        approxSmoothBits: parseNumber(rec[4], "approx_smooth_bits", r + 1),
        pOverflow: parseNumber(rec[5], "p_overflow", r + 1),
        pUnderflow: parseNumber(rec[6], "p_underflow", r + 1),
      });
    }
    const distMeta = raw.meta["dist"];
    if (distMeta === undefined) {
      throw new SchemaError('missing metadata "# dist="');
    }
    const baseDists = distMeta.split(";");
    if (rows.length % baseDists.length !== 0) {
      throw new SchemaError(
        `row count ${rows.length} is not a multiple of the ` +
          `${baseDists.length} distributions listed in "# dist="`,
      );
    }
    const per = rows.length / baseDists.length;
    const blocks: SweepBlock[] = baseDists.map((dist, i) => ({
      dist,
      rows: rows.slice(i * per, (i + 1) * per),
    }));
    return {
      meta: raw.meta,
      mode: modeRaw as SweepMode,
      precision: requireIntMeta(raw.meta, "precision"),
      exponentBits: requireIntMeta(raw.meta, "exponent_bits"),
      baseDists,
      blocks,
      rows,
    };
  } catch (e) {
    if (e instanceof SchemaError) throw ctx(e.message);
    throw e;
  }
}

export function readGridCsv(text: string, source = "<grid csv>"): GridTable {
  const ctx = (msg: string) => new SchemaError(`${source}: ${msg}`);
  let raw: RawCsv;
  try {
    raw = parseCsv(text);
    checkHeader(raw.header, GRID_COLUMNS);
  } catch (e) {
    if (e instanceof SchemaError) throw ctx(e.message);
    throw e;
  }
  if (raw.records.length === 0) {
    throw ctx("no data rows");
  }
  const rows: GridRow[] = [];
  try {
    for (let r = 0; r < raw.records.length; r++) {
      const rec = raw.records[r];
      if (rec.length !== GRID_COLUMNS.length) {
        throw new SchemaError(
          `row ${r + 1}: expected ${GRID_COLUMNS.length} fields, found ${rec.length}`,
        );
      }
      const row: GridRow = {
        index: parseNumber(rec[0], "index", r + 1),
        value: parseNumber(rec[1], "value", r + 1),
        lower: parseNumber(rec[2], "lower", r + 1),
        upper: parseNumber(rec[3], "upper", r + 1),
        width: parseNumber(rec[4], "width", r + 1),
      };
      if (row.index !== r) {
        throw new SchemaError(`row ${r + 1}: bin index ${row.index} is not contiguous from 0`);
      }
      if (!(row.lower < row.upper) || !(row.width > 0)) {
        throw new SchemaError(`row ${r + 1}: degenerate bin [${row.lower}, ${row.upper}]`);
      }
      rows.push(row);
    }
    const precision = requireIntMeta(raw.meta, "precision");
    const exponentBits = requireIntMeta(raw.meta, "exponent_bits");
    if (precision < 1 || exponentBits < 1) {
      throw new SchemaError(
        `format metadata out of range: precision=${precision}, exponent_bits=${exponentBits}`,
      );
    }
    return { meta: raw.meta, precision, exponentBits, rows };
  } catch (e) {
    if (e instanceof SchemaError) throw ctx(e.message);
    throw e;
  }
}

/** Smallest normal-range exponent of a format with E exponent bits. */
export function eMin(exponentBits: number): number {
  return 1 - 2 ** (exponentBits - 1);
}

/** Largest exponent of a format with E exponent bits. */
export function eMax(exponentBits: number): number {
  return 2 ** (exponentBits - 1);
}
