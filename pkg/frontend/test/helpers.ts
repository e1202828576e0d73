import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

export function fixturePath(name: string): string {
  return fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
}

export function fixtureText(name: string): string {
  return readFileSync(fixturePath(name), "utf8");
}

export const SWEEP_HEADER =
  "dist,swept_value,exact_bits,approx_tilde_bits,approx_smooth_bits,p_overflow,p_underflow";

/** A minimal well-formed sweep CSV to mutate in schema tests. */
export function tinySweep(overrides: Partial<{ header: string; rows: string[]; meta: string[] }> = {}): string {
  const meta = overrides.meta ?? [
    "# version=0.1.0",
    "# mode=scale",
    "# dist=gaussian:sigma=1",
    "# precision=3",
    "# exponent_bits=4",
  ];
  const header = overrides.header ?? SWEEP_HEADER;
  const rows = overrides.rows ?? [
    "gaussian:sigma=1,0.5,5.43,5.42,5.46,0.0,0.001",
    "gaussian:sigma=1,1.0,5.46,5.45,5.46,0.0,0.0005",
  ];
  return [...meta, header, ...rows, ""].join("\n");
}
