/**
 * End-to-end panel rendering: CSV paths in, SVG file out.
 *
 * The output file is written only after the whole pipeline (parse,
 * validate, shape, render) has succeeded, so a schema mismatch never
 * leaves a partial image behind.
 */

import { readFileSync, writeFileSync } from "node:fs";

import {
  buildBinsizePanel,
  buildMultidistPanel,
  buildPrecisionPanel,
  buildScalePanel,
  PanelData,
  PanelOptions,
} from "./panels.js";
import { readGridCsv, readSweepCsv, SchemaError } from "./schema.js";
import { renderSvg } from "./svg.js";

export const PANELS = ["scale", "precision", "multidist", "binsize"] as const;
export type PanelKind = (typeof PANELS)[number];

export interface PlotSpec {
  panel: PanelKind;
  inputs: string[];
  output: string;
  markers: boolean;
  approxLine: boolean;
}

function requireSingleInput(spec: PlotSpec): string {
  if (spec.inputs.length !== 1) {
    throw new SchemaError(
      `${spec.panel} panel takes exactly one input CSV, got ${spec.inputs.length}`,
    );
  }
  return spec.inputs[0];
}

export function buildPanel(spec: PlotSpec): PanelData {
  if (spec.inputs.length === 0) {
    throw new SchemaError("no input CSV given");
  }
  const opts: PanelOptions = { markers: spec.markers, approxLine: spec.approxLine };
  switch (spec.panel) {
    case "scale": {
      const tables = spec.inputs.map((p) => readSweepCsv(readFileSync(p, "utf8"), p));
      return buildScalePanel(tables, opts);
    }
    case "multidist": {
      const tables = spec.inputs.map((p) => readSweepCsv(readFileSync(p, "utf8"), p));
      return buildMultidistPanel(tables, opts);
    }
    case "precision": {
      const path = requireSingleInput(spec);
      return buildPrecisionPanel([readSweepCsv(readFileSync(path, "utf8"), path)], opts);
    }
    case "binsize": {
      const path = requireSingleInput(spec);
      return buildBinsizePanel(readGridCsv(readFileSync(path, "utf8"), path), opts);
    }
  }
}

/** Render a panel to its SVG string without touching the filesystem output. */
export function renderPanel(spec: PlotSpec): string {
  return renderSvg(buildPanel(spec));
}

/** Render and write; the file appears only on success. */
export function renderToFile(spec: PlotSpec): void {
  const svg = renderPanel(spec);
  writeFileSync(spec.output, svg, "utf8");
}
