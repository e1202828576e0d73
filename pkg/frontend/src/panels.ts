/**
 * Shaping parsed CSV tables into renderable panel descriptions.
 *
 * Four panels: entropy vs. scale (one distribution, one or more formats),
 * entropy vs. precision, multi-distribution comparison, and the per-bin
 * width step function against its smooth surrogate.  Each builder
 * validates that the tables it was handed actually carry the quantities
 * the panel plots and fails loudly otherwise.
 */

import { eMax, eMin, GridTable, SchemaError, SweepTable } from "./schema.js";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  /** SVG dash pattern; solid when absent. */
  dash?: string;
}

export interface Marker {
  x: number;
  style: "dashed" | "dotted";
  label: string;
}

export interface PanelData {
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
  series: Series[];
  markers: Marker[];
  hline?: { y: number; label: string };
}

export interface PanelOptions {
  /** Draw vertical markers at 2^e_min (dashed) and 2^e_max (dotted). */
  markers: boolean;
  /** Draw the smooth-approximation line (horizontal or overlay). */
  approxLine: boolean;
}

function requireMode(tables: SweepTable[], mode: string, panel: string): void {
  for (const t of tables) {
    if (t.mode !== mode) {
      throw new SchemaError(
        `${panel} panel needs mode=${mode} sweeps, got mode=${t.mode}`,
      );
    }
  }
}

function formatMarkers(exponentBitsSet: number[]): Marker[] {
  if (exponentBitsSet.length !== 1) return [];
  const e = exponentBitsSet[0];
  return [
    { x: 2 ** eMin(e), style: "dashed", label: `2^${eMin(e)}` },
    { x: 2 ** eMax(e), style: "dotted", label: `2^${eMax(e)}` },
  ];
}

function distinct(values: number[]): number[] {
  return [...new Set(values)];
}

/** Shared shape of the two scale-axis panels; labeling differs per caller. */
function scaleSeries(
  tables: SweepTable[],
  label: (dist: string, table: SweepTable) => string,
): Series[] {
  const series: Series[] = [];
  for (const t of tables) {
    for (const block of t.blocks) {
      series.push({
        label: label(block.dist, t),
        x: block.rows.map((r) => r.sweptValue),
        y: block.rows.map((r) => r.exactBits),
      });
    }
  }
  return series;
}

/** Horizontal smooth-approximation line, only when every row agrees on it. */
function sharedSmoothLine(tables: SweepTable[]): { y: number; label: string } | undefined {
  const values = tables.flatMap((t) => t.rows.map((r) => r.approxSmoothBits));
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  if (hi - lo > 1e-6) return undefined;
  return { y: values[0], label: "smooth approximation" };
}

export function buildScalePanel(tables: SweepTable[], opts: PanelOptions): PanelData {
  requireMode(tables, "scale", "scale");
  const allDists = distinctStrings(tables.flatMap((t) => t.baseDists));
  const manyTables = tables.length > 1;
  const manyDists = allDists.length > 1;
  const series = scaleSeries(tables, (dist, t) => {
    if (!manyTables) return dist;
    if (!manyDists) return `E=${t.exponentBits}`;
    return `${dist} (E=${t.exponentBits})`;
  });
  const eSet = distinct(tables.map((t) => t.exponentBits));
  return {
    title:
      manyTables && !manyDists
        ? `entropy vs. scale: ${allDists[0]}, p=${tables[0].precision}`
        : "entropy vs. scale",
    xLabel: "scale",
    yLabel: "entropy (bits)",
    xLog: true,
    yLog: false,
    series,
    markers: opts.markers ? formatMarkers(eSet) : [],
    hline: opts.approxLine ? sharedSmoothLine(tables) : undefined,
  };
}

export function buildPrecisionPanel(tables: SweepTable[], opts: PanelOptions): PanelData {
  if (tables.length !== 1) {
    throw new SchemaError(`precision panel takes exactly one input, got ${tables.length}`);
  }
  requireMode(tables, "precision", "precision");
  const t = tables[0];
  const series: Series[] = [];
  for (const block of t.blocks) {
    series.push({
      label: block.dist,
      x: block.rows.map((r) => r.sweptValue),
      y: block.rows.map((r) => r.exactBits),
    });
    if (opts.approxLine) {
      series.push({
        label: `${block.dist} (smooth)`,
        x: block.rows.map((r) => r.sweptValue),
        y: block.rows.map((r) => r.approxSmoothBits),
        dash: "6 4",
      });
    }
  }
  return {
    title: `entropy vs. precision, E=${t.exponentBits}`,
    xLabel: "precision (bits)",
    yLabel: "entropy (bits)",
    xLog: false,
    yLog: false,
    series,
    markers: [],
  };
}

export function buildMultidistPanel(tables: SweepTable[], opts: PanelOptions): PanelData {
  requireMode(tables, "scale", "multidist");
  const allDists = distinctStrings(tables.flatMap((t) => t.baseDists));
  if (allDists.length < 2) {
    throw new SchemaError(
      `multidist panel needs at least two distributions, got ${allDists.length}`,
    );
  }
  const seen = new Map<string, number>();
  const series = scaleSeries(tables, (dist) => {
    const n = (seen.get(dist) ?? 0) + 1;
    seen.set(dist, n);
    return n === 1 ? dist : `${dist} #${n}`;
  });
  const eSet = distinct(tables.map((t) => t.exponentBits));
  return {
    title: "entropy vs. scale across distributions",
    xLabel: "scale",
    yLabel: "entropy (bits)",
    xLog: true,
    yLog: false,
    series,
    markers: opts.markers ? formatMarkers(eSet) : [],
    hline: undefined,
  };
}

export function buildBinsizePanel(grid: GridTable, opts: PanelOptions): PanelData {
  // Log-log axes: keep the strictly positive bins (drops the bin touching 0).
  const bins = grid.rows.filter((r) => r.lower > 0);
  if (bins.length === 0) {
    throw new SchemaError("binsize panel: no bins with positive lower edge");
  }
  const step: Series = { label: "bin width", x: [], y: [] };
  for (const b of bins) {
    step.x.push(b.lower, b.upper);
    step.y.push(b.width, b.width);
  }
  const series: Series[] = [step];
  if (opts.approxLine) {
    // (|x| / sqrt(2)) * 2^(1-p): a straight line on log-log axes.
    const c = 2 ** (1 - grid.precision) / Math.SQRT2;
    const x0 = bins[0].lower;
    const x1 = bins[bins.length - 1].upper;
    series.push({
      label: "smooth surrogate",
      x: [x0, x1],
      y: [c * x0, c * x1],
      dash: "6 4",
    });
  }
  return {
    title: `bin width, p=${grid.precision}, E=${grid.exponentBits}`,
    xLabel: "x",
    yLabel: "bin width",
    xLog: true,
    yLog: true,
    series,
    markers: opts.markers ? formatMarkers([grid.exponentBits]) : [],
  };
}

function distinctStrings(values: string[]): string[] {
  return [...new Set(values)];
}
