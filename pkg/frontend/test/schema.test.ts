import { describe, expect, it } from "vitest";

import {
  eMax,
  eMin,
  readGridCsv,
  readSweepCsv,
  SchemaError,
} from "../src/schema.js";
import { fixtureText, SWEEP_HEADER, tinySweep } from "./helpers.js";

describe("sweep csv parsing", () => {
  it("reads a scale sweep with its metadata", () => {
    const t = readSweepCsv(fixtureText("scale_gauss_p3_E4.csv"));
    expect(t.mode).toBe("scale");
    expect(t.precision).toBe(3);
    expect(t.exponentBits).toBe(4);
    expect(t.baseDists).toEqual(["gaussian:sigma=1"]);
    expect(t.blocks).toHaveLength(1);
    expect(t.rows).toHaveLength(41);
    expect(t.rows[0].sweptValue).toBeCloseTo(0.0009765625, 12);
    // scale sweeps name the scaled instance in each row
    expect(t.rows[0].dist).toMatch(/^gaussian:sigma=0\.0009/);
    expect(t.meta["version"]).toMatch(/^\d+\.\d+\.\d+$/);
  });

  it("unquotes distribution labels that contain commas", () => {
    const t = readSweepCsv(fixtureText("multidist_p3_E4.csv"));
    expect(t.baseDists).toContain("uniform:a=-1,b=1");
    expect(t.baseDists).toHaveLength(4);
    expect(t.blocks.map((b) => b.rows.length)).toEqual([25, 25, 25, 25]);
    expect(t.rows).toHaveLength(4 * 25);
    const uniformBlock = t.blocks[3];
    expect(uniformBlock.dist).toBe("uniform:a=-1,b=1");
    expect(uniformBlock.rows[0].dist).toMatch(/^uniform:a=-.*,b=/);
    for (const row of t.rows) {
      expect(Number.isFinite(row.exactBits)).toBe(true);
    }
  });

  it("reads a precision sweep whose swept axis uses the 0 placeholder", () => {
    const t = readSweepCsv(fixtureText("precision_gauss_E5.csv"));
    expect(t.mode).toBe("precision");
    expect(t.precision).toBe(0);
    expect(t.exponentBits).toBe(5);
    expect(t.rows.map((r) => r.sweptValue)).toEqual([1, 2, 3, 4, 5, 6, 7, 8]);
  });

  it("requires the distribution list metadata", () => {
    const noDist = tinySweep({
      meta: ["# mode=scale", "# precision=3", "# exponent_bits=4"],
    });
    expect(() => readSweepCsv(noDist)).toThrow(/missing metadata "# dist="/);
  });

  it("rejects row counts that do not tile the distribution list", () => {
    const bad = tinySweep({
      meta: [
        "# mode=scale",
        "# dist=gaussian:sigma=1;laplace:b=1;logistic:s=1",
        "# precision=3",
        "# exponent_bits=4",
      ],
    });
    expect(() => readSweepCsv(bad)).toThrow(/not a multiple of the 3 distributions/);
  });

  it("names a missing column", () => {
    const broken = tinySweep({
      header: SWEEP_HEADER.replace(",p_underflow", ""),
      rows: ["gaussian:sigma=1,1.0,5.46,5.45,5.46,0.0"],
    });
    expect(() => readSweepCsv(broken)).toThrow(SchemaError);
    expect(() => readSweepCsv(broken)).toThrow(/missing column "p_underflow"/);
  });

  it("names an unexpected column", () => {
    const broken = tinySweep({ header: SWEEP_HEADER + ",extra" });
    expect(() => readSweepCsv(broken)).toThrow(/unexpected column "extra"/);
  });

  it("rejects reordered headers", () => {
    const cols = SWEEP_HEADER.split(",");
    [cols[0], cols[1]] = [cols[1], cols[0]];
    expect(() => readSweepCsv(tinySweep({ header: cols.join(",") }))).toThrow(
      /column order mismatch/,
    );
  });

  it("rejects non-numeric cells with the row number", () => {
    const broken = tinySweep({
      rows: ["gaussian:sigma=1,1.0,oops,5.45,5.46,0.0,0.0"],
    });
    expect(() => readSweepCsv(broken)).toThrow(/row 1: column "exact_bits"/);
  });

  it("rejects an empty table", () => {
    expect(() => readSweepCsv(tinySweep({ rows: [] }))).toThrow(/no data rows/);
  });

  it("requires the sweep mode metadata", () => {
    const noMode = tinySweep({ meta: ["# precision=3", "# exponent_bits=4"] });
    expect(() => readSweepCsv(noMode)).toThrow(/missing metadata "# mode="/);
  });

  it("rejects unknown sweep modes", () => {
    const bad = tinySweep({
      meta: ["# mode=volume", "# precision=3", "# exponent_bits=4"],
    });
    expect(() => readSweepCsv(bad)).toThrow(/unknown sweep mode "volume"/);
  });

  it("prefixes errors with the source path", () => {
    expect(() => readSweepCsv(tinySweep({ rows: [] }), "/data/x.csv")).toThrow(
      /^\/data\/x\.csv: /,
    );
  });
});

describe("grid csv parsing", () => {
  it("reads the bin geometry with its format metadata", () => {
    const g = readGridCsv(fixtureText("grid_p10_E4.csv"));
    expect(g.precision).toBe(10);
    expect(g.exponentBits).toBe(4);
    expect(g.rows).toHaveLength(2 ** (10 + 4));
    const positive = g.rows.filter((r) => r.lower > 0);
    expect(positive).toHaveLength(2 ** (10 + 4) / 2 - 1);
  });

  it("rejects a sweep csv handed to the grid reader, naming the column", () => {
    expect(() => readGridCsv(fixtureText("scale_gauss_p3_E4.csv"))).toThrow(
      /missing column "index"/,
    );
  });

  it("rejects non-contiguous bin indices", () => {
    const text = [
      "# precision=2",
      "# exponent_bits=1",
      "index,value,lower,upper,width",
      "0,-3.0,-3.5,-2.5,1.0",
      "2,-2.0,-2.5,-1.75,0.75",
      "",
    ].join("\n");
    expect(() => readGridCsv(text)).toThrow(/row 2: bin index 2 is not contiguous/);
  });

  it("rejects degenerate bins", () => {
    const text = [
      "# precision=2",
      "# exponent_bits=1",
      "index,value,lower,upper,width",
      "0,-3.0,-2.5,-2.5,0.0",
      "",
    ].join("\n");
    expect(() => readGridCsv(text)).toThrow(/degenerate bin/);
  });

  it("requires format metadata", () => {
    const text = ["index,value,lower,upper,width", "0,1.0,0.5,1.5,1.0", ""].join("\n");
    expect(() => readGridCsv(text)).toThrow(/missing metadata "# precision="/);
  });
});

describe("format exponent range", () => {
  it("matches the two's-bias convention", () => {
    expect(eMin(4)).toBe(-7);
    expect(eMax(4)).toBe(8);
    expect(eMin(1)).toBe(0);
    expect(eMax(1)).toBe(1);
  });
});
