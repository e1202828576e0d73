/**
 * Self-contained SVG assembly for the figure panels.
 *
 * No drawing libraries: panels are deterministic string output so that a
 * given CSV renders byte-identically on every run.  Axes are linear or
 * log2; log ticks sit on powers of two and are labeled "2^k".
 */

import { Marker, PanelData, Series } from "./panels.js";

export interface RenderOptions {
  width?: number;
  height?: number;
}

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#17becf",
  "#bcbd22",
];

const MARGIN = { left: 64, right: 16, top: 40, bottom: 48 };

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

const fmt2 = (v: number): string => v.toFixed(2);

/** Shortest stable label for a tick value. */
function fmtTick(v: number): string {
  if (Object.is(v, -0)) return "0";
  return String(v);
}

interface Scale {
  (v: number): number;
  ticks: { value: number; label: string }[];
}

function transformer(log: boolean): (v: number) => number {
  return log ? Math.log2 : (v) => v;
}

function linearTicks(lo: number, hi: number, maxCount: number): number[] {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const raw = span / maxCount;
  const mag = 10 ** Math.floor(Math.log10(raw));
  let step = 10 * mag;
  for (const m of [1, 2, 2.5, 5]) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let i = Math.ceil(lo / step); i * step <= hi + 1e-12 * span; i++) {
    ticks.push(i * step);
  }
  return ticks;
}

function buildScale(
  values: number[],
  log: boolean,
  rangeLo: number,
  rangeHi: number,
  padFrac: number,
): Scale {
  const t = transformer(log);
  const ts = values.map(t);
  let lo = Math.min(...ts);
  let hi = Math.max(...ts);
  if (hi === lo) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * padFrac;
  lo -= pad;
  hi += pad;
  const scale = ((v: number) =>
    rangeLo + ((t(v) - lo) / (hi - lo)) * (rangeHi - rangeLo)) as Scale;
  if (log) {
    const span = hi - lo;
    const step = Math.max(1, Math.ceil(span / 7));
    const ticks: { value: number; label: string }[] = [];
    for (let k = Math.ceil(lo); k <= Math.floor(hi); k += step) {
      ticks.push({ value: 2 ** k, label: `2^${k}` });
    }
    scale.ticks = ticks;
  } else {
    scale.ticks = linearTicks(lo, hi, 7).map((v) => ({ value: v, label: fmtTick(v) }));
  }
  return scale;
}

function seriesPath(s: Series, x: Scale, y: Scale): string {
  const parts: string[] = [];
  for (let i = 0; i < s.x.length; i++) {
    parts.push(`${i === 0 ? "M" : "L"}${fmt2(x(s.x[i]))},${fmt2(y(s.y[i]))}`);
  }
  return parts.join("");
}

function markerLines(
  markers: Marker[],
  x: Scale,
  top: number,
  bottom: number,
): string[] {
  const out: string[] = [];
  for (const m of markers) {
    const px = fmt2(x(m.x));
    const dash = m.style === "dashed" ? "6 4" : "2 3";
    out.push(
      `<line x1="${px}" y1="${fmt2(top)}" x2="${px}" y2="${fmt2(bottom)}" ` +
        `stroke="#555555" stroke-width="1" stroke-dasharray="${dash}"/>`,
      `<text x="${fmt2(x(m.x) + 4)}" y="${fmt2(top + 12)}" font-size="10" ` +
        `fill="#555555">${esc(m.label)}</text>`,
    );
  }
  return out;
}

export function renderSvg(panel: PanelData, opts: RenderOptions = {}): string {
  const width = opts.width ?? 720;
  const height = opts.height ?? 440;
  const plotL = MARGIN.left;
  const plotR = width - MARGIN.right;
  const plotT = MARGIN.top;
  const plotB = height - MARGIN.bottom;

  const xs = panel.series.flatMap((s) => s.x);
  for (const m of panel.markers) xs.push(m.x);
  const ys = panel.series.flatMap((s) => s.y);
  if (panel.hline) ys.push(panel.hline.y);
  if (xs.length === 0 || ys.length === 0) {
    throw new Error("panel has no data points to render");
  }
  const x = buildScale(xs, panel.xLog, plotL, plotR, 0.02);
  const y = buildScale(ys, panel.yLog, plotB, plotT, 0.06);

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
      `width="${width}" height="${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`,
  );

  for (const tick of x.ticks) {
    const px = fmt2(x(tick.value));
    out.push(
      `<line x1="${px}" y1="${fmt2(plotT)}" x2="${px}" y2="${fmt2(plotB)}" stroke="#e5e5e5" stroke-width="1"/>`,
      `<text x="${px}" y="${fmt2(plotB + 16)}" font-size="11" fill="#333333" text-anchor="middle">${esc(tick.label)}</text>`,
    );
  }
  for (const tick of y.ticks) {
    const py = fmt2(y(tick.value));
    out.push(
      `<line x1="${fmt2(plotL)}" y1="${py}" x2="${fmt2(plotR)}" y2="${py}" stroke="#e5e5e5" stroke-width="1"/>`,
      `<text x="${fmt2(plotL - 6)}" y="${py}" font-size="11" fill="#333333" text-anchor="end" dominant-baseline="middle">${esc(tick.label)}</text>`,
    );
  }

  out.push(
    `<rect x="${fmt2(plotL)}" y="${fmt2(plotT)}" width="${fmt2(plotR - plotL)}" height="${fmt2(plotB - plotT)}" fill="none" stroke="#333333" stroke-width="1"/>`,
  );

  if (panel.hline) {
    const py = fmt2(y(panel.hline.y));
    out.push(
      `<line x1="${fmt2(plotL)}" y1="${py}" x2="${fmt2(plotR)}" y2="${py}" ` +
        `stroke="#888888" stroke-width="1" stroke-dasharray="8 4"/>`,
      `<text x="${fmt2(plotR - 4)}" y="${fmt2(y(panel.hline.y) - 4)}" font-size="10" ` +
        `fill="#888888" text-anchor="end">${esc(panel.hline.label)}</text>`,
    );
  }

  out.push(...markerLines(panel.markers, x, plotT, plotB));

  panel.series.forEach((s, i) => {
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    out.push(
      `<path d="${seriesPath(s, x, y)}" fill="none" ` +
        `stroke="${PALETTE[i % PALETTE.length]}" stroke-width="1.5"${dash}/>`,
    );
  });

  out.push(
    `<text x="${fmt2(plotL)}" y="${fmt2(plotT - 10)}" font-size="13" font-weight="bold" fill="#111111">${esc(panel.title)}</text>`,
    `<text x="${fmt2((plotL + plotR) / 2)}" y="${fmt2(height - 12)}" font-size="12" fill="#333333" text-anchor="middle">${esc(panel.xLabel)}</text>`,
    `<text x="14" y="${fmt2((plotT + plotB) / 2)}" font-size="12" fill="#333333" text-anchor="middle" transform="rotate(-90 14 ${fmt2((plotT + plotB) / 2)})">${esc(panel.yLabel)}</text>`,
  );

  out.push(...legend(panel.series, plotR, plotT));
  out.push("</svg>");
  return out.join("\n") + "\n";
}

function legend(series: Series[], plotR: number, plotT: number): string[] {
  if (series.length === 0) return [];
  const rowH = 15;
  const sample = 18;
  const charW = 6.2;
  const maxLen = Math.max(...series.map((s) => s.label.length));
  const boxW = sample + 10 + maxLen * charW;
  const boxH = series.length * rowH + 8;
  const bx = plotR - boxW - 8;
  const by = plotT + 8;
  const out = [
    `<rect x="${fmt2(bx)}" y="${fmt2(by)}" width="${fmt2(boxW)}" height="${fmt2(boxH)}" ` +
      `fill="#ffffff" fill-opacity="0.85" stroke="#cccccc" stroke-width="1"/>`,
  ];
  series.forEach((s, i) => {
    const cy = by + 4 + i * rowH + rowH / 2;
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    out.push(
      `<line x1="${fmt2(bx + 4)}" y1="${fmt2(cy)}" x2="${fmt2(bx + 4 + sample)}" y2="${fmt2(cy)}" ` +
        `stroke="${PALETTE[i % PALETTE.length]}" stroke-width="1.5"${dash}/>`,
      `<text x="${fmt2(bx + 4 + sample + 6)}" y="${fmt2(cy)}" font-size="11" fill="#111111" ` +
        `dominant-baseline="middle">${esc(s.label)}</text>`,
    );
  });
  return out;
}
