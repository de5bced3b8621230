/** SVG path math for annular sectors.
 *
 * Angles arrive in radians measured from 12 o'clock, increasing
 * clockwise, exactly as the layout document encodes them: the UI never
 * recomputes widths, it only bends the served angles into arcs.
 */

export interface Point {
  x: number;
  y: number;
}

export function polar(cx: number, cy: number, radius: number, angle: number): Point {
  return { x: cx + radius * Math.sin(angle), y: cy - radius * Math.cos(angle) };
}

const EPS = 1e-9;

export function sectorPath(
  cx: number,
  cy: number,
  rIn: number,
  rOut: number,
  start: number,
  end: number,
): string {
  const span = end - start;
  if (span >= 2 * Math.PI - EPS) {
    // full annulus: two half arcs so the path closes cleanly
    const mid = start + Math.PI;
    return sectorPath(cx, cy, rIn, rOut, start, mid) + ' ' + sectorPath(cx, cy, rIn, rOut, mid, end);
  }
  const large = span > Math.PI ? 1 : 0;
  const o0 = polar(cx, cy, rOut, start);
  const o1 = polar(cx, cy, rOut, end);
  const i1 = polar(cx, cy, rIn, end);
  const i0 = polar(cx, cy, rIn, start);
  return (
    `M ${o0.x.toFixed(3)} ${o0.y.toFixed(3)} ` +
    `A ${rOut.toFixed(3)} ${rOut.toFixed(3)} 0 ${large} 1 ${o1.x.toFixed(3)} ${o1.y.toFixed(3)} ` +
    `L ${i1.x.toFixed(3)} ${i1.y.toFixed(3)} ` +
    `A ${rIn.toFixed(3)} ${rIn.toFixed(3)} 0 ${large} 0 ${i0.x.toFixed(3)} ${i0.y.toFixed(3)} Z`
  );
}
