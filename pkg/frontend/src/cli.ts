#!/usr/bin/env node
/**
 * Panel rendering command line.
 *
 *   fpentropy-plots --panel scale --in sweep.csv --out fig.svg
 *
 * `--in` repeats for panels that overlay several sweep files.  Exit
 * codes: 0 success, 2 flag errors, 1 schema or data errors (the message
 * names the offending column, row, or metadata key; no output file is
 * written on failure).
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { PANELS, PanelKind, PlotSpec, renderToFile } from "./render.js";
import { SchemaError } from "./schema.js";

const USAGE =
  "usage: fpentropy-plots --panel {scale|precision|multidist|binsize} " +
  "--in CSV [--in CSV ...] --out SVG [--no-markers] [--no-approx-line]";

export function main(argv: string[], log: (msg: string) => void = console.error): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        panel: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        "no-markers": { type: "boolean", default: false },
        "no-approx-line": { type: "boolean", default: false },
      },
      allowPositionals: false,
    });
  } catch (e) {
    log(`${(e as Error).message}\n${USAGE}`);
    return 2;
  }
  const { values } = parsed;
  if (!values.panel || !(PANELS as readonly string[]).includes(values.panel)) {
    log(`--panel must be one of ${PANELS.join(", ")}\n${USAGE}`);
    return 2;
  }
  if (!values.in || values.in.length === 0 || !values.out) {
    log(`--in and --out are required\n${USAGE}`);
    return 2;
  }
  const spec: PlotSpec = {
    panel: values.panel as PanelKind,
    inputs: values.in,
    output: values.out,
    markers: !values["no-markers"],
    approxLine: !values["no-approx-line"],
  };
  try {
    renderToFile(spec);
  } catch (e) {
    if (e instanceof SchemaError) {
      log(`schema mismatch: ${e.message}`);
      return 1;
    }
    log(`error: ${(e as Error).message}`);
    return 1;
  }
  return 0;
}

const invokedDirectly =
  typeof process.argv[1] === "string" &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
