#!/usr/bin/env node
import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { parseCsv } from "./csv.js";
import { FIGURES } from "./figures.js";

const USAGE = `usage: lcusim-render render <figure> --csv <path...> --out <file>

figures:
${Object.entries(FIGURES)
  .map(([name, def]) => `  ${name.padEnd(12)} ${def.usage}`)
  .join("\n")}
`;

interface Args {
  figure: string;
  csvPaths: string[];
  outPath: string;
}

export function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render" || argv.length < 2) {
    throw new Error(USAGE);
  }
  const figure = argv[1]!;
  const csvPaths: string[] = [];
  let outPath = "";
  let index = 2;
  while (index < argv.length) {
    const flag = argv[index];
    if (flag === "--csv") {
      index += 1;
      while (index < argv.length && !argv[index]!.startsWith("--")) {
        csvPaths.push(argv[index]!);
        index += 1;
      }
    } else if (flag === "--out") {
      outPath = argv[index + 1] ?? "";
      index += 2;
    } else {
      throw new Error(`unknown argument "${flag}"\n${USAGE}`);
    }
  }
  if (csvPaths.length === 0 || outPath === "") {
    throw new Error(USAGE);
  }
  return { figure, csvPaths, outPath };
}

/** Render one figure from CSV files to an SVG file. Throws before writing. */
export function run(argv: string[]): string {
  const args = parseArgs(argv);
  const def = FIGURES[args.figure];
  if (def === undefined) {
    throw new Error(`unknown figure "${args.figure}"\n${USAGE}`);
  }
  if (args.csvPaths.length !== def.csvCount) {
    throw new Error(`figure "${args.figure}" needs ${def.csvCount} CSV file(s), got ${args.csvPaths.length}`);
  }
  const tables = args.csvPaths.map((path) => parseCsv(readFileSync(path, "utf8"), basename(path)));
  const svg = def.render(tables);
  writeFileSync(args.outPath, svg, "utf8");
  return args.outPath;
}

const invokedDirectly = process.argv[1] !== undefined && import.meta.url.endsWith(basename(process.argv[1]));
if (invokedDirectly) {
  try {
    const written = run(process.argv.slice(2));
    console.log(`wrote ${written}`);
  } catch (error) {
    console.error(error instanceof Error ? error.message : String(error));
    process.exit(1);
  }
}
