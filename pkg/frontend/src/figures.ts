import { Table, distinct, numberAt, requireColumns, where } from "./csv.js";
import { Scale, decadeBounds, linearScale, linearTicks, logScale, tickLabel } from "./scale.js";
import { line, openSvg, polyline, text } from "./svg.js";

/**
 * Fixed palette (documented, never derived from input order):
 *   exact-route traces   orange  #e8710a
 *   LCU-route traces     blue    #1f77b4
 *   amplified schedule   green   #2ca02c
 *   cosine-power window  purple  #9467bd
 *   reference lines      gray    #888888
 */
export const COLORS = {
  exact: "#e8710a",
  lcu: "#1f77b4",
  gapamp: "#2ca02c",
  cosm: "#9467bd",
  reference: "#888888",
} as const;

const EPSILON = 0.01;
const PANEL_W = 420;
const PANEL_H = 300;
const MARGIN = { left: 64, right: 16, top: 34, bottom: 44 };
const LOG_FLOOR = 1e-16;

interface Series {
  label: string;
  color: string;
  dash?: string;
  points: Array<[number, number]>;
}

interface RefLine {
  label: string;
  y: number;
}

interface Panel {
  title: string;
  series: Series[];
  refLines: RefLine[];
}

interface PanelOptions {
  xLabel: string;
  yLabel: string;
  logY: boolean;
}

function panelGrid(count: number): [number, number] {
  const cols = count > 1 ? 2 : 1;
  return [cols, Math.ceil(count / cols)];
}

/** Shared y-domain over every panel so curves are comparable across L. */
function yDomain(panels: Panel[], logY: boolean): [number, number] {
  const values: number[] = [];
  for (const panel of panels) {
    for (const series of panel.series) {
      for (const [, y] of series.points) {
        values.push(y);
      }
    }
    for (const ref of panel.refLines) {
      values.push(ref.y);
    }
  }
  if (logY) {
    return decadeBounds(values, LOG_FLOOR);
  }
  const hi = Math.max(...values);
  return [0, hi === 0 ? 1 : hi * 1.05];
}

function drawPanel(
  panel: Panel,
  originX: number,
  originY: number,
  yLo: number,
  yHi: number,
  options: PanelOptions,
  withLegend: boolean,
): string {
  const plotX0 = originX + MARGIN.left;
  const plotX1 = originX + PANEL_W - MARGIN.right;
  const plotY0 = originY + MARGIN.top;
  const plotY1 = originY + PANEL_H - MARGIN.bottom;

  const xs = panel.series.flatMap((s) => s.points.map(([x]) => x));
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const xScale = linearScale(xLo, xHi, plotX0, plotX1);
  const yScale: Scale = options.logY
    ? logScale(yLo, yHi, plotY1, plotY0)
    : linearScale(yLo, yHi, plotY1, plotY0);
  const clamp = (v: number) => Math.min(Math.max(v, yLo), yHi);

  let out = "";
  out += text(originX + PANEL_W / 2, originY + 18, panel.title, "middle", 13);
  out += line(plotX0, plotY1, plotX1, plotY1, "#222222");
  out += line(plotX0, plotY0, plotX0, plotY1, "#222222");

  for (const tick of linearTicks(xLo, xHi)) {
    const x = xScale.map(tick);
    out += line(x, plotY1, x, plotY1 + 4, "#222222");
    out += text(x, plotY1 + 16, tickLabel(tick, false), "middle", 10);
  }
  for (const tick of yScale.ticks) {
    const y = yScale.map(tick);
    out += line(plotX0 - 4, y, plotX0, y, "#222222");
    out += text(plotX0 - 7, y + 3, tickLabel(tick, options.logY), "end", 10);
  }
  out += text((plotX0 + plotX1) / 2, originY + PANEL_H - 10, options.xLabel, "middle", 11);
  out += `<g transform="translate(${originX + 14} ${(plotY0 + plotY1) / 2}) rotate(-90)">`;
  out += text(0, 0, options.yLabel, "middle", 11);
  out += "</g>\n";

  for (const ref of panel.refLines) {
    const y = yScale.map(clamp(ref.y));
    out += line(plotX0, y, plotX1, y, COLORS.reference, "6 3");
    out += text(plotX1 - 2, y - 4, ref.label, "end", 10);
  }
  for (const series of panel.series) {
    const pts = series.points.map(
      ([x, y]): [number, number] => [xScale.map(x), yScale.map(clamp(y))],
    );
    out += polyline(pts, series.color, series.dash);
  }
  if (withLegend) {
    let ly = plotY0 + 8;
    for (const series of panel.series) {
      out += line(plotX1 - 74, ly, plotX1 - 58, ly, series.color, series.dash ?? "");
      out += text(plotX1 - 54, ly + 3, series.label, "start", 10);
      ly += 14;
    }
  }
  return out;
}

function renderPanels(panels: Panel[], heading: string, options: PanelOptions): string {
  const [cols, rows] = panelGrid(panels.length);
  const width = cols * PANEL_W;
  const height = rows * PANEL_H + 26;
  const [yLo, yHi] = yDomain(panels, options.logY);
  let out = openSvg(width, height);
  out += text(width / 2, 18, heading, "middle", 15);
  panels.forEach((panel, index) => {
    const originX = (index % cols) * PANEL_W;
    const originY = 26 + Math.floor(index / cols) * PANEL_H;
    out += drawPanel(panel, originX, originY, yLo, yHi, options, index === 0);
  });
  return out + "</svg>\n";
}

function sweepSeries(
  rows: Record<string, string>[],
  yColumn: string,
  label: string,
  color: string,
  dash: string | undefined,
  source: string,
): Series {
  const points = rows
    .map((row): [number, number] => [
      numberAt(row, "t_H", source),
      numberAt(row, yColumn, source),
    ])
    .sort((a, b) => a[0] - b[0]);
  return { label, color, dash, points };
}

function sortedSizes(table: Table): string[] {
  return distinct(table, "L").sort((a, b) => Number(a) - Number(b));
}

/** Per-size panels of exact-operator vs LCU infidelity with the target line. */
export function infidelityFigure(sweep: Table): string {
  const source = "sweep csv";
  requireColumns(sweep, ["method", "L", "t_H", "infidelity_exactOp", "infidelity_lcu"], source);
  const rows = { columns: sweep.columns, rows: where(sweep, "method", "hs") };
  if (rows.rows.length === 0) {
    throw new Error(`${source}: no rows with method "hs"`);
  }
  const panels = sortedSizes(rows).map((size): Panel => {
    const subset = where(rows, "L", size);
    return {
      title: `L = ${size}`,
      series: [
        sweepSeries(subset, "infidelity_exactOp", "exact op", COLORS.exact, "5 3", source),
        sweepSeries(subset, "infidelity_lcu", "LCU", COLORS.lcu, undefined, source),
      ],
      refLines: [{ label: "ε", y: EPSILON }],
    };
  });
  return renderPanels(panels, "Ground-state infidelity under the Gaussian filter", {
    xLabel: "t_H",
    yLabel: "infidelity 1 - F",
    logY: true,
  });
}

const METHOD_STYLE: Record<string, { label: string; color: string; dash?: string }> = {
  hs: { label: "plain", color: COLORS.lcu },
  "hs+gapamp": { label: "amplified", color: COLORS.gapamp },
  geCosM: { label: "cos^M", color: COLORS.cosm, dash: "5 3" },
};

/** Per-size panels comparing schedules (plain, amplified, cosine-power). */
export function methodsFigure(sweep: Table): string {
  const source = "sweep csv";
  requireColumns(sweep, ["method", "L", "t_H", "infidelity_lcu"], source);
  const panels = sortedSizes(sweep).map((size): Panel => {
    const subset = { columns: sweep.columns, rows: where(sweep, "L", size) };
    const series = distinct(subset, "method").map((method) => {
      const style = METHOD_STYLE[method] ?? { label: method, color: "#555555" };
      return sweepSeries(
        where(subset, "method", method), "infidelity_lcu",
        style.label, style.color, style.dash, source,
      );
    });
    return { title: `L = ${size}`, series, refLines: [{ label: "ε", y: EPSILON }] };
  });
  return renderPanels(panels, "Schedule comparison: infidelity vs Hamiltonian time", {
    xLabel: "t_H",
    yLabel: "infidelity 1 - F",
    logY: true,
  });
}

/** Per-size panels of energy error with the spectral-gap reference line. */
export function energyFigure(sweep: Table, gaps: Table): string {
  const source = "sweep csv";
  requireColumns(sweep, ["method", "L", "t_H", "energyError_exactOp", "energyError_lcu"], source);
  requireColumns(gaps, ["L", "deltaS"], "gaps csv");
  const rows = { columns: sweep.columns, rows: where(sweep, "method", "hs") };
  if (rows.rows.length === 0) {
    throw new Error(`${source}: no rows with method "hs"`);
  }
  const panels = sortedSizes(rows).map((size): Panel => {
    const subset = where(rows, "L", size);
    const gapRow = where(gaps, "L", size)[0];
    if (gapRow === undefined) {
      throw new Error(`gaps csv: no deltaS entry for L = ${size}`);
    }
    return {
      title: `L = ${size}`,
      series: [
        sweepSeries(subset, "energyError_exactOp", "exact op", COLORS.exact, "5 3", source),
        sweepSeries(subset, "energyError_lcu", "LCU", COLORS.lcu, undefined, source),
      ],
      refLines: [{ label: "Δs", y: numberAt(gapRow, "deltaS", "gaps csv") }],
    };
  });
  return renderPanels(panels, "Ground-state energy error under the Gaussian filter", {
    xLabel: "t_H",
    yLabel: "|E - E0|",
    logY: true,
  });
}

/** Per-size panels overlaying exact (orange) and LCU (blue) normalized LDOS. */
export function ldosFigure(table: Table): string {
  const source = "ldos csv";
  requireColumns(table, ["L", "omega", "mode", "ldosNormalized"], source);
  const panels = sortedSizes(table).map((size): Panel => {
    const subset = { columns: table.columns, rows: where(table, "L", size) };
    const trace = (mode: string, label: string, color: string, dash?: string): Series => {
      const rows = where(subset, "mode", mode);
      if (rows.length === 0) {
        throw new Error(`${source}: no rows with mode "${mode}" for L = ${size}`);
      }
      const points = rows
        .map((row): [number, number] => [
          numberAt(row, "omega", source),
          numberAt(row, "ldosNormalized", source),
        ])
        .sort((a, b) => a[0] - b[0]);
      return { label, color, dash, points };
    };
    return {
      title: `L = ${size}`,
      series: [
        trace("resolvent-exact", "exact", COLORS.exact),
        trace("resolvent-lcu", "LCU", COLORS.lcu, "5 3"),
      ],
      refLines: [],
    };
  });
  return renderPanels(panels, "Local density of states at the edge site", {
    xLabel: "ω",
    yLabel: "LDOS (normalized)",
    logY: false,
  });
}

export interface FigureDef {
  csvCount: number;
  usage: string;
  render(tables: Table[]): string;
}

export const FIGURES: Record<string, FigureDef> = {
  infidelity: {
    csvCount: 1,
    usage: "infidelity --csv <sweep.csv>",
    render: (tables) => infidelityFigure(tables[0]!),
  },
  methods: {
    csvCount: 1,
    usage: "methods --csv <sweep.csv>",
    render: (tables) => methodsFigure(tables[0]!),
  },
  energy: {
    csvCount: 2,
    usage: "energy --csv <sweep.csv> <gaps.csv>",
    render: (tables) => energyFigure(tables[0]!, tables[1]!),
  },
  ldos: {
    csvCount: 1,
    usage: "ldos --csv <ldos.csv>",
    render: (tables) => ldosFigure(tables[0]!),
  },
};
