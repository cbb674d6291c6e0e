import { describe, expect, it } from "vitest";

import type { FigureData } from "../src/figures.js";
import { fmt, niceTicks, renderFigure } from "../src/svg.js";

function sample(overrides: Partial<FigureData> = {}): FigureData {
  return {
    title: "K versus dephasing rate (mix16)",
    xLabel: "g (1/ps)",
    yLabel: "K",
    series: [
      {
        label: "site1",
        points: [
          { x: 0, y: -0.25 },
          { x: 6, y: -0.01 },
          { x: 12, y: 0.002 },
        ],
      },
      {
        label: "site3",
        points: [
          { x: 0, y: 0.04 },
          { x: 12, y: 0.03 },
        ],
      },
    ],
    verticals: [
      { x: 2.1, label: "77 K" },
      { x: 9.1, label: "298 K" },
    ],
    ...overrides,
  };
}

describe("niceTicks", () => {
  it("covers the range on a 1-2-5 ladder", () => {
    expect(niceTicks(0, 5)).toEqual([0, 1, 2, 3, 4, 5]);
    expect(niceTicks(0, 12)).toEqual([0, 2.5, 5, 7.5, 10]);
    const ticks = niceTicks(-0.3, 0.1);
    expect(ticks).toContain(0);
    expect(ticks[0]!).toBeGreaterThanOrEqual(-0.3);
    expect(ticks[ticks.length - 1]!).toBeLessThanOrEqual(0.1);
  });

  it("degenerates gracefully", () => {
    expect(niceTicks(2, 2)).toEqual([2]);
  });
});

describe("fmt", () => {
  it("never prints float junk or negative zero", () => {
    expect(fmt(-0)).toBe("0");
    expect(fmt(0.30000000000004)).toBe("0.3");
    expect(fmt(2.5)).toBe("2.5");
  });
});

describe("renderFigure", () => {
  it("draws one panel per series", () => {
    const svg = renderFigure(sample());
    expect(svg.match(/<rect x="0" y="0" width="220"/g)).toHaveLength(2);
    expect(svg).toContain(">site1</text>");
    expect(svg).toContain(">site3</text>");
  });

  it("always draws the dotted K = 0 boundary", () => {
    const svg = renderFigure(sample());
    expect(svg.match(/stroke-dasharray="2 3"/g)).toHaveLength(2);
    expect(svg).toContain("no violation");
  });

  it("draws labeled temperature verticals when requested", () => {
    const svg = renderFigure(sample());
    expect(svg).toContain(">77 K</text>");
    expect(svg).toContain(">298 K</text>");
    expect(svg.match(/stroke-dasharray="5 3"/g)).toHaveLength(4);
    const none = renderFigure(sample({ verticals: [] }));
    expect(none).not.toContain("77 K");
  });

  it("is deterministic", () => {
    expect(renderFigure(sample())).toBe(renderFigure(sample()));
  });

  it("escapes markup in labels", () => {
    const svg = renderFigure(
      sample({ title: "a < b & c", series: [{ label: "<q>", points: [{ x: 0, y: 1 }] }] }),
    );
    expect(svg).toContain("a &lt; b &amp; c");
    expect(svg).toContain("&lt;q&gt;");
    expect(svg).not.toContain("<q>");
  });

  it("renders a lone point as a dot instead of a polyline", () => {
    const svg = renderFigure(
      sample({ series: [{ label: "site1", points: [{ x: 1, y: -0.1 }] }], verticals: [] }),
    );
    expect(svg).toContain("<circle");
    expect(svg).not.toContain("<polyline");
  });

  it("keeps the y range anchored to include zero", () => {
    const svg = renderFigure(
      sample({
        series: [{ label: "site3", points: [{ x: 0, y: 0.2 }, { x: 1, y: 0.3 }] }],
        verticals: [],
      }),
    );
    // Boundary present even though all data sits above zero.
    expect(svg).toContain('stroke-dasharray="2 3"');
  });
});
