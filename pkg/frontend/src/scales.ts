/** Minimal linear scales and panel plumbing shared by the views. */

export class LinearScale {
  constructor(
    public d0: number,
    public d1: number,
    public r0: number,
    public r1: number,
  ) {}

  apply(x: number): number {
    const t = (x - this.d0) / (this.d1 - this.d0);
    return this.r0 + t * (this.r1 - this.r0);
  }

  invert(px: number): number {
    const t = (px - this.r0) / (this.r1 - this.r0);
    return this.d0 + t * (this.d1 - this.d0);
  }
}

export function extent(values: Iterable<number>): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

export function pad([lo, hi]: [number, number], share = 0.05): [number, number] {
  const margin = (hi - lo) * share;
  return [lo - margin, hi + margin];
}

export interface Panel {
  root: HTMLElement;
  canvas: HTMLCanvasElement;
  ctx: CanvasRenderingContext2D | null;
  svg: SVGSVGElement;
  width: number;
  height: number;
}

const SVG_NS = "http://www.w3.org/2000/svg";

/** Canvas for raster layers (many polylines, density image) with an SVG
 * overlay for axes, contours, brushes and brackets. */
export function createPanel(container: HTMLElement, width: number, height: number): Panel {
  const root = document.createElement("div");
  root.className = "panel-body";
  root.style.position = "relative";
  root.style.width = `${width}px`;
  root.style.height = `${height}px`;

  const canvas = document.createElement("canvas");
  const dpr = typeof devicePixelRatio === "number" ? devicePixelRatio : 1;
  canvas.width = Math.round(width * dpr);
  canvas.height = Math.round(height * dpr);
  canvas.style.cssText = "position:absolute;left:0;top:0;width:100%;height:100%";
  const ctx = canvas.getContext("2d"); // null under jsdom; views must cope
  ctx?.scale(dpr, dpr);

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.style.cssText = "position:absolute;left:0;top:0";

  root.append(canvas, svg);
  container.append(root);
  return { root, canvas, ctx, svg, width, height };
}

export function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

export function clear(el: Element) {
  while (el.firstChild) el.removeChild(el.firstChild);
}

export const COLORS = {
  outerBand: "#a63232",
  innerBand: "#f2a09e",
  median: "#000000",
  member: "rgba(120,120,120,0.25)",
  outlier: "#3a6ea5",
  selected: "#ff3daf",
  contourInner: "#222222",
  contourOuter: "#444444",
  bracket: "#111111",
  clusters: ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"],
};

/** Blue (low) to red (high) through white, as on the density map. */
export function densityColor(t: number): [number, number, number] {
  const u = Math.max(0, Math.min(1, t));
  const lo: [number, number, number] = [59, 76, 192];
  const mid: [number, number, number] = [245, 245, 245];
  const hi: [number, number, number] = [180, 4, 38];
  const mix = (a: [number, number, number], b: [number, number, number], s: number) =>
    [a[0] + (b[0] - a[0]) * s, a[1] + (b[1] - a[1]) * s, a[2] + (b[2] - a[2]) * s] as
      [number, number, number];
  return u < 0.5 ? mix(lo, mid, u * 2) : mix(mid, hi, (u - 0.5) * 2);
}
