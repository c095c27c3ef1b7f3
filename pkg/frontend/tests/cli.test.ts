import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { parseArgs, run } from "../src/cli.js";

const SWEEP = [
  "method,model,L,gridIndex,scheduleParam,t_H,infidelity_exactOp,infidelity_lcu," +
    "energyError_exactOp,energyError_lcu,successWeight",
  "hs,hubbard,2,0,0,0,0.5,0.5,0.4,0.4,1",
  "hs,hubbard,2,1,3,9.6,0.0001,0.00012,0.001,0.0011,0.6",
].join("\n") + "\n";

let dir: string;

beforeAll(() => {
  dir = mkdtempSync(join(tmpdir(), "render-"));
  writeFileSync(join(dir, "sweep.csv"), SWEEP, "utf8");
  writeFileSync(join(dir, "empty.csv"), "", "utf8");
});

describe("parseArgs", () => {
  it("collects multiple CSV paths after --csv", () => {
    const args = parseArgs(["render", "energy", "--csv", "a.csv", "b.csv", "--out", "o.svg"]);
    expect(args).toEqual({ figure: "energy", csvPaths: ["a.csv", "b.csv"], outPath: "o.svg" });
  });

  it("rejects unknown flags and missing parts", () => {
    expect(() => parseArgs(["render", "ldos", "--csv", "a.csv", "--fast"])).toThrow(/unknown argument/);
    expect(() => parseArgs(["render", "ldos", "--out", "o.svg"])).toThrow(/usage/);
    expect(() => parseArgs(["describe"])).toThrow(/usage/);
  });
});

describe("run", () => {
  it("writes an SVG and is byte-deterministic across reruns", () => {
    const out1 = join(dir, "one.svg");
    const out2 = join(dir, "two.svg");
    run(["render", "infidelity", "--csv", join(dir, "sweep.csv"), "--out", out1]);
    run(["render", "infidelity", "--csv", join(dir, "sweep.csv"), "--out", out2]);
    const bytes1 = readFileSync(out1);
    expect(bytes1.length).toBeGreaterThan(0);
    expect(bytes1.equals(readFileSync(out2))).toBe(true);
    expect(bytes1.toString("utf8")).toContain("<svg");
  });

  it("rejects unknown figures", () => {
    expect(() => run(["render", "nope", "--csv", "a.csv", "--out", "o.svg"])).toThrow(
      /unknown figure "nope"/,
    );
  });

  it("enforces the per-figure CSV count", () => {
    expect(() =>
      run(["render", "energy", "--csv", join(dir, "sweep.csv"), "--out", join(dir, "e.svg")]),
    ).toThrow(/needs 2 CSV file\(s\)/);
  });

  it("emits no file when a CSV is empty", () => {
    const out = join(dir, "never.svg");
    expect(() => run(["render", "infidelity", "--csv", join(dir, "empty.csv"), "--out", out])).toThrow(
      /empty\.csv: empty CSV/,
    );
    expect(existsSync(out)).toBe(false);
  });
});
