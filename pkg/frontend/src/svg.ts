/** Minimal deterministic SVG assembly: fixed precision, no ids, no dates. */

export const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

/** Two-decimal pixel coordinates keep output bytes stable and small. */
export function px(value: number): string {
  const rounded = value.toFixed(2);
  return rounded === "-0.00" ? "0.00" : rounded;
}

export function openSvg(width: number, height: number): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>\n`
  );
}

export function polyline(points: Array<[number, number]>, stroke: string, dash = ""): string {
  const attr = dash ? ` stroke-dasharray="${dash}"` : "";
  const path = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
  return `<polyline points="${path}" fill="none" stroke="${stroke}" stroke-width="1.5"${attr}/>\n`;
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke: string, dash = ""): string {
  const attr = dash ? ` stroke-dasharray="${dash}"` : "";
  return (
    `<line x1="${px(x1)}" y1="${px(y1)}" x2="${px(x2)}" y2="${px(y2)}" ` +
    `stroke="${stroke}" stroke-width="1"${attr}/>\n`
  );
}

export function text(
  x: number,
  y: number,
  content: string,
  anchor: "start" | "middle" | "end" = "start",
  size = 11,
): string {
  return (
    `<text x="${px(x)}" y="${px(y)}" ${FONT} font-size="${size}" ` +
    `text-anchor="${anchor}" fill="#222222">${escapeXml(content)}</text>\n`
  );
}

export function escapeXml(raw: string): string {
  return raw
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
