/** Pure coordinate scales and tick generation for deterministic rendering. */

/** Exact powers of ten (Math.pow(10, -4) is one ulp off 1e-4). */
export function pow10(exponent: number): number {
  return Number(`1e${exponent}`);
}

export interface Scale {
  /** Map a data value to a pixel coordinate. */
  map(value: number): number;
  ticks: number[];
}

/** Linear scale from [lo, hi] onto [pxLo, pxHi]. */
export function linearScale(lo: number, hi: number, pxLo: number, pxHi: number): Scale {
  const span = hi - lo || 1;
  return {
    map: (value) => pxLo + ((value - lo) / span) * (pxHi - pxLo),
    ticks: linearTicks(lo, hi),
  };
}

/** Log10 scale from [lo, hi] (both > 0) onto [pxLo, pxHi], decade ticks. */
export function logScale(lo: number, hi: number, pxLo: number, pxHi: number): Scale {
  if (lo <= 0 || hi <= 0) {
    throw new Error(`log scale requires positive bounds, got [${lo}, ${hi}]`);
  }
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const span = lhi - llo || 1;
  const ticks: number[] = [];
  for (let k = Math.ceil(llo); k <= Math.floor(lhi); k++) {
    ticks.push(pow10(k));
  }
  return {
    map: (value) => pxLo + ((Math.log10(value) - llo) / span) * (pxHi - pxLo),
    ticks,
  };
}

/** Round tick positions at a 1-2-5 step covering [lo, hi], about 5 ticks. */
export function linearTicks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  if (span <= 0) {
    return [lo];
  }
  const rawStep = span / count;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[3]!;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Positive data range padded outward to full decades, for log axes. */
export function decadeBounds(values: number[], floor = 1e-16): [number, number] {
  const positive = values.filter((v) => v > floor);
  if (positive.length === 0) {
    throw new Error("no positive values for a log axis");
  }
  const lo = pow10(Math.floor(Math.log10(Math.min(...positive))));
  const hi = pow10(Math.ceil(Math.log10(Math.max(...positive))));
  return [lo, hi === lo ? lo * 10 : hi];
}

/** Fixed-notation label for linear ticks, exponent labels for decades. */
export function tickLabel(value: number, log: boolean): string {
  if (log) {
    const exp = Math.round(Math.log10(value));
    return exp >= -2 && exp <= 2 ? String(value) : `1e${exp}`;
  }
  if (value === 0) {
    return "0";
  }
  const magnitude = Math.abs(value);
  if (magnitude >= 1000 || magnitude < 0.01) {
    return value.toExponential(0);
  }
  return String(Number(value.toPrecision(4)));
}
