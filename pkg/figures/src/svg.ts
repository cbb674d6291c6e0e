// Minimal deterministic SVG renderer: one panel per series, shared axis
// ranges, a dotted K = 0 boundary in every panel, and optional labeled
// vertical markers.  Styling defaults are chosen for print legibility;
// identical input data always yields identical bytes.

import type { FigureData, Point, Series, VerticalMarker } from "./figures.js";

const PANEL_COLUMNS = 4;
const PLOT_W = 220;
const PLOT_H = 150;
const MARGIN = { left: 50, right: 14, top: 24, bottom: 36 };
const PANEL_W = MARGIN.left + PLOT_W + MARGIN.right;
const PANEL_H = MARGIN.top + PLOT_H + MARGIN.bottom;
const GAP = 10;
const PAD = 16;
const TITLE_STRIP = 26;
const SIDE_STRIP = 18;
const FONT = "Helvetica, Arial, sans-serif";

/** Round-trip-stable short decimal for coordinates and tick labels. */
export function fmt(value: number): string {
  if (Object.is(value, -0)) value = 0;
  const rounded = Math.round(value * 1e6) / 1e6;
  return String(rounded);
}

function coord(value: number): string {
  return String(Math.round(value * 100) / 100);
}

/** Tick positions covering [lo, hi] on a 1-2-5 ladder, about `count` of them. */
export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / count;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const multiple of [1, 2, 2.5, 5, 10]) {
    step = multiple * power;
    if (step >= rawStep) break;
  }
  const ticks: number[] = [];
  const first = Math.ceil(lo / step - 1e-9) * step;
  for (let value = first; value <= hi + 1e-9 * step; value += step) {
    const rounded = Math.round(value * 1e9) / 1e9;
    ticks.push(rounded === 0 ? 0 : rounded);
  }
  return ticks;
}

interface Range {
  lo: number;
  hi: number;
}

function xRange(series: Series[], verticals: VerticalMarker[]): Range {
  let lo = 0;
  let hi = -Infinity;
  for (const s of series) {
    for (const p of s.points) {
      lo = Math.min(lo, p.x);
      hi = Math.max(hi, p.x);
    }
  }
  for (const v of verticals) hi = Math.max(hi, v.x);
  if (!Number.isFinite(hi)) hi = 1;
  if (hi === lo) hi = lo + 1;
  return { lo, hi };
}

function yRange(series: Series[]): Range {
  let lo = 0;
  let hi = 0;
  for (const s of series) {
    for (const p of s.points) {
      lo = Math.min(lo, p.y);
      hi = Math.max(hi, p.y);
    }
  }
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.06 * (hi - lo);
  return { lo: lo - pad, hi: hi + pad };
}

function scale(range: Range, extent: number, flip: boolean): (value: number) => number {
  const span = range.hi - range.lo;
  return (value) => {
    const frac = (value - range.lo) / span;
    return extent * (flip ? 1 - frac : frac);
  };
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function panelSvg(
  series: Series,
  index: number,
  xr: Range,
  yr: Range,
  verticals: VerticalMarker[],
  annotate: boolean,
): string {
  const col = index % PANEL_COLUMNS;
  const row = Math.floor(index / PANEL_COLUMNS);
  const ox = PAD + SIDE_STRIP + col * (PANEL_W + GAP) + MARGIN.left;
  const oy = PAD + TITLE_STRIP + row * (PANEL_H + GAP) + MARGIN.top;
  const sx = scale(xr, PLOT_W, false);
  const sy = scale(yr, PLOT_H, true);
  const parts: string[] = [];

  parts.push(
    `<g transform="translate(${coord(ox)},${coord(oy)})">`,
    `<rect x="0" y="0" width="${PLOT_W}" height="${PLOT_H}" fill="none" stroke="#222" stroke-width="1"/>`,
    `<text x="${PLOT_W / 2}" y="-8" text-anchor="middle" font-family="${FONT}" font-size="12">${esc(series.label)}</text>`,
  );

  for (const tick of niceTicks(xr.lo, xr.hi)) {
    const x = coord(sx(tick));
    parts.push(
      `<line x1="${x}" y1="${PLOT_H}" x2="${x}" y2="${PLOT_H + 4}" stroke="#222" stroke-width="1"/>`,
      `<text x="${x}" y="${PLOT_H + 15}" text-anchor="middle" font-family="${FONT}" font-size="10">${fmt(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(yr.lo, yr.hi)) {
    const y = coord(sy(tick));
    parts.push(
      `<line x1="-4" y1="${y}" x2="0" y2="${y}" stroke="#222" stroke-width="1"/>`,
      `<text x="-7" y="${y}" text-anchor="end" dominant-baseline="middle" font-family="${FONT}" font-size="10">${fmt(tick)}</text>`,
    );
  }

  // Dotted boundary at K = 0 splitting violation from no-violation.
  const zero = coord(sy(0));
  parts.push(
    `<line x1="0" y1="${zero}" x2="${PLOT_W}" y2="${zero}" stroke="#555" stroke-width="1" stroke-dasharray="2 3"/>`,
  );
  if (annotate && sy(0) > 14) {
    parts.push(
      `<text x="4" y="${coord(sy(0) - 5)}" font-family="${FONT}" font-size="8" fill="#777">no violation</text>`,
    );
  }

  for (const marker of verticals) {
    const x = coord(sx(marker.x));
    parts.push(
      `<line x1="${x}" y1="0" x2="${x}" y2="${PLOT_H}" stroke="#a03232" stroke-width="1" stroke-dasharray="5 3"/>`,
      `<text x="${x}" y="10" text-anchor="middle" font-family="${FONT}" font-size="9" fill="#a03232">${esc(marker.label)}</text>`,
    );
  }

  if (series.points.length === 1) {
    const p = series.points[0]!;
    parts.push(`<circle cx="${coord(sx(p.x))}" cy="${coord(sy(p.y))}" r="2" fill="#16527f"/>`);
  } else {
    const coords = series.points.map((p: Point) => `${coord(sx(p.x))},${coord(sy(p.y))}`);
    parts.push(
      `<polyline points="${coords.join(" ")}" fill="none" stroke="#16527f" stroke-width="1.2"/>`,
    );
  }

  parts.push("</g>");
  return parts.join("\n");
}

export function renderFigure(data: FigureData): string {
  const n = data.series.length;
  const cols = Math.min(PANEL_COLUMNS, Math.max(1, n));
  const rows = Math.max(1, Math.ceil(n / PANEL_COLUMNS));
  const width = 2 * PAD + SIDE_STRIP + cols * PANEL_W + (cols - 1) * GAP;
  const height = 2 * PAD + TITLE_STRIP + rows * PANEL_H + (rows - 1) * GAP + SIDE_STRIP;
  const xr = xRange(data.series, data.verticals);
  const yr = yRange(data.series);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`,
    `<text x="${width / 2}" y="${PAD + 12}" text-anchor="middle" font-family="${FONT}" font-size="14">${esc(data.title)}</text>`,
    `<text x="${width / 2}" y="${height - 6}" text-anchor="middle" font-family="${FONT}" font-size="12">${esc(data.xLabel)}</text>`,
    `<text x="12" y="${height / 2}" text-anchor="middle" font-family="${FONT}" font-size="12" transform="rotate(-90 12 ${height / 2})">${esc(data.yLabel)}</text>`,
  ];
  data.series.forEach((series, index) => {
    parts.push(panelSvg(series, index, xr, yr, data.verticals, index === 0));
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
