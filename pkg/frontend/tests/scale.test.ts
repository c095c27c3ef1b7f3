import { describe, expect, it } from "vitest";

import { decadeBounds, linearScale, linearTicks, logScale, tickLabel } from "../src/scale.js";

describe("linearScale", () => {
  it("maps the domain endpoints onto the pixel range", () => {
    const scale = linearScale(0, 10, 100, 300);
    expect(scale.map(0)).toBe(100);
    expect(scale.map(10)).toBe(300);
    expect(scale.map(5)).toBe(200);
  });

  it("supports inverted pixel ranges for y axes", () => {
    const scale = linearScale(0, 1, 300, 100);
    expect(scale.map(1)).toBe(100);
  });
});

describe("linearTicks", () => {
  it("uses a 1-2-5 step", () => {
    expect(linearTicks(0, 10)).toEqual([0, 2, 4, 6, 8, 10]);
    expect(linearTicks(0, 1)).toEqual([0, 0.2, 0.4, 0.6000000000000001, 0.8, 1]);
    expect(linearTicks(0, 437).every((t) => t % 100 === 0)).toBe(true);
  });

  it("degenerates gracefully on a zero span", () => {
    expect(linearTicks(3, 3)).toEqual([3]);
  });
});

describe("logScale", () => {
  it("ticks at every decade inside the domain", () => {
    const scale = logScale(1e-4, 1, 0, 100);
    expect(scale.ticks).toEqual([1e-4, 1e-3, 1e-2, 1e-1, 1]);
    expect(scale.map(1e-4)).toBe(0);
    expect(scale.map(1)).toBe(100);
    expect(scale.map(1e-2)).toBeCloseTo(50, 9);
  });

  it("rejects non-positive bounds", () => {
    expect(() => logScale(0, 1, 0, 100)).toThrow(/positive/);
  });
});

describe("decadeBounds", () => {
  it("pads outward to whole decades", () => {
    expect(decadeBounds([0.004, 0.7])).toEqual([1e-3, 1]);
  });

  it("widens a single-decade range", () => {
    expect(decadeBounds([1, 1])).toEqual([1, 10]);
  });

  it("ignores values at or below the floor", () => {
    expect(decadeBounds([0, 1e-30, 0.5])).toEqual([0.1, 1]);
  });

  it("rejects all-non-positive data", () => {
    expect(() => decadeBounds([0, -1])).toThrow(/no positive values/);
  });
});

describe("tickLabel", () => {
  it("uses exponent labels for far decades and plain ones near unity", () => {
    expect(tickLabel(1e-4, true)).toBe("1e-4");
    expect(tickLabel(10, true)).toBe("10");
    expect(tickLabel(1, true)).toBe("1");
  });

  it("keeps linear labels compact", () => {
    expect(tickLabel(0, false)).toBe("0");
    expect(tickLabel(0.25, false)).toBe("0.25");
    expect(tickLabel(0.6000000000000001, false)).toBe("0.6");
    expect(tickLabel(12000, false)).toBe("1e+4");
  });
});
