// Figure definitions: which CSV column drives the x axis and which
// decorations each figure carries.  fig1 plots K against the measurement
// interval; fig2-fig4 plot K against dephasing strength with the two
// temperature-anchor verticals (2.1 <-> 77 K, 9.1 <-> 298 K).

import type { SweepRow } from "./schema.js";

export const FIGURE_IDS = ["fig1", "fig2", "fig3", "fig4"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

export interface FigureSpec {
  csvPath: string;
  figureId: FigureId;
  outPath: string;
}

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: Point[];
}

export interface VerticalMarker {
  x: number;
  label: string;
}

export interface FigureData {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  verticals: VerticalMarker[];
}

export const TEMPERATURE_MARKERS: VerticalMarker[] = [
  { x: 2.1, label: "77 K" },
  { x: 9.1, label: "298 K" },
];

export function isFigureId(raw: string): raw is FigureId {
  return (FIGURE_IDS as readonly string[]).includes(raw);
}

/** One series per observable, in first-appearance order, points sorted by x. */
function collectSeries(rows: SweepRow[], x: (row: SweepRow) => number): Series[] {
  const byLabel = new Map<string, Point[]>();
  for (const row of rows) {
    let points = byLabel.get(row.observable);
    if (points === undefined) {
      points = [];
      byLabel.set(row.observable, points);
    }
    points.push({ x: x(row), y: row.k });
  }
  return [...byLabel.entries()].map(([label, points]) => ({
    label,
    points: points.slice().sort((a, b) => a.x - b.x),
  }));
}

export function figureData(figureId: FigureId, rows: SweepRow[]): FigureData {
  const state = rows[0]?.initialState ?? "";
  if (figureId === "fig1") {
    return {
      title: `K versus measurement interval (${state})`,
      xLabel: "Δt (ps)",
      yLabel: "K",
      series: collectSeries(rows, (row) => row.dtPs),
      verticals: [],
    };
  }
  return {
    title: `K versus dephasing rate (${state})`,
    xLabel: "γ (1/ps)",
    yLabel: "K",
    series: collectSeries(rows, (row) => row.gammaPerPs),
    verticals: TEMPERATURE_MARKERS,
  };
}
