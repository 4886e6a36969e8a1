/** Bivariate plane view: density map, HDR contours, member points.
 *
 * The density map renders blue (low) to red (high) on a raster layer;
 * contours and brush feedback live on the SVG overlay.  Dragging brushes a
 * rectangle (or a lasso polygon in lasso mode); a click near a point
 * selects that point's inner-HDR cluster; a click on empty plane selects
 * nothing.  The explained variance is always shown on this diagram.
 */

import { COLORS, LinearScale, Panel, clear, createPanel, densityColor, svgElement } from "../scales.js";
import type { ExplorerStore } from "../state.js";
import type { Predicate } from "../types.js";

const CLICK_TOLERANCE_PX = 4;
const PICK_RADIUS_PX = 10;

export class PlaneView {
  readonly panel: Panel;
  lassoMode = false;
  private x!: LinearScale;
  private y!: LinearScale;
  private selected = new Set<number>();
  private densityLayer: HTMLCanvasElement | null = null;
  private drag: { path: [number, number][] } | null = null;

  constructor(container: HTMLElement, private readonly store: ExplorerStore,
              width = 480, height = 420) {
    this.panel = createPanel(container, width, height);
    this.rebuild();
    this.bindBrush();
    store.subscribe((reason) => {
      if (reason === "document") this.rebuild();
      if (reason !== "report") this.render();
    });
    this.render();
  }

  selectedIndices(): number[] {
    return [...this.selected].sort((a, b) => a - b);
  }

  private rebuild() {
    const grid = this.store.doc.density.grid;
    const [x0, x1, y0, y1] = grid.bounds;
    this.x = new LinearScale(x0, x1, 0, this.panel.width);
    this.y = new LinearScale(y0, y1, this.panel.height, 0);
    this.densityLayer = this.renderDensityLayer();
  }

  /** Offscreen nx-by-ny image, one pixel per grid vertex. */
  private renderDensityLayer(): HTMLCanvasElement | null {
    const { values, grid } = this.store.doc.density;
    const canvas = document.createElement("canvas");
    canvas.width = grid.nx;
    canvas.height = grid.ny;
    const ctx = canvas.getContext("2d");
    if (!ctx) return null;
    const image = ctx.createImageData(grid.nx, grid.ny);
    let vmax = 0;
    for (const row of values) for (const v of row) if (v > vmax) vmax = v;
    for (let iy = 0; iy < grid.ny; iy++) {
      // image rows go top-down while the grid's y axis goes up
      const row = values[grid.ny - 1 - iy];
      for (let ix = 0; ix < grid.nx; ix++) {
        const [r, g, b] = densityColor(vmax > 0 ? row[ix] / vmax : 0);
        const at = (iy * grid.nx + ix) * 4;
        image.data[at] = Math.round(r);
        image.data[at + 1] = Math.round(g);
        image.data[at + 2] = Math.round(b);
        image.data[at + 3] = 255;
      }
    }
    ctx.putImageData(image, 0, 0);
    return canvas;
  }

  private bindBrush() {
    const { svg } = this.panel;
    svg.addEventListener("mousedown", (event) => {
      this.drag = { path: [this.local(event)] };
    });
    svg.addEventListener("mousemove", (event) => {
      if (!this.drag) return;
      this.drag.path.push(this.local(event));
      this.render();
    });
    svg.addEventListener("mouseup", () => {
      if (!this.drag) return;
      const path = this.drag.path;
      this.drag = null;
      const [sx, sy] = path[0];
      const [ex, ey] = path[path.length - 1];
      const moved = Math.hypot(ex - sx, ey - sy);
      if (moved <= CLICK_TOLERANCE_PX && path.length < 20) {
        this.handleClick(sx, sy);
        return;
      }
      void this.store.applyBrush(this.lassoMode
        ? this.lassoPredicate(path)
        : this.rectPredicate(sx, sy, ex, ey));
    });
  }

  private rectPredicate(sx: number, sy: number, ex: number, ey: number): Predicate {
    return {
      kind: "pca_rect",
      z1_lo: Math.min(this.x.invert(sx), this.x.invert(ex)),
      z1_hi: Math.max(this.x.invert(sx), this.x.invert(ex)),
      z2_lo: Math.min(this.y.invert(sy), this.y.invert(ey)),
      z2_hi: Math.max(this.y.invert(sy), this.y.invert(ey)),
    };
  }

  private lassoPredicate(path: [number, number][]): Predicate {
    const vertices = path.map(([px, py]) => [this.x.invert(px), this.y.invert(py)]);
    return vertices.length >= 3
      ? { kind: "pca_lasso", vertices }
      : this.rectPredicate(path[0][0], path[0][1], path[0][0], path[0][1]);
  }

  /** Click: pick the cluster of the nearest point, or select nothing. */
  private handleClick(px: number, py: number) {
    const points = this.store.doc.projection.points;
    let best = -1;
    let bestDistance = PICK_RADIUS_PX;
    for (let i = 0; i < points.length; i++) {
      const d = Math.hypot(this.x.apply(points[i][0]) - px,
                           this.y.apply(points[i][1]) - py);
      if (d < bestDistance) {
        best = i;
        bestDistance = d;
      }
    }
    const cluster = best >= 0 ? this.store.doc.clusters[best] : null;
    if (cluster !== null && cluster !== undefined) {
      void this.store.applyBrush({ kind: "cluster_id", id: cluster });
    } else {
      const z1 = this.x.invert(px);
      const z2 = this.y.invert(py);
      void this.store.applyBrush(
        { kind: "pca_rect", z1_lo: z1, z1_hi: z1, z2_lo: z2, z2_hi: z2 });
    }
  }

  private local(event: MouseEvent): [number, number] {
    const rect = this.panel.svg.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  render() {
    const doc = this.store.doc;
    this.selected = this.store.selectionSet();
    const { ctx, width, height } = this.panel;
    if (ctx) {
      ctx.clearRect(0, 0, width, height);
      if (this.densityLayer) {
        ctx.imageSmoothingEnabled = true;
        ctx.drawImage(this.densityLayer, 0, 0, width, height);
      }
      const points = doc.projection.points;
      const outliers = new Set(doc.outliers);
      for (let i = 0; i < points.length; i++) {
        const px = this.x.apply(points[i][0]);
        const py = this.y.apply(points[i][1]);
        const cluster = doc.clusters[i];
        let fill = "#111111";
        if (this.store.clusterColoring && cluster !== null) {
          fill = COLORS.clusters[cluster % COLORS.clusters.length];
        }
        if (this.selected.has(i)) fill = COLORS.selected;
        ctx.beginPath();
        ctx.arc(px, py, this.selected.has(i) ? 3 : 2, 0, 2 * Math.PI);
        ctx.fillStyle = fill;
        ctx.fill();
        if (outliers.has(i)) {
          ctx.beginPath();
          ctx.arc(px, py, 4.5, 0, 2 * Math.PI);
          ctx.strokeStyle = "#000";
          ctx.lineWidth = 0.8;
          ctx.stroke();
        }
      }
      const [mx, my] = doc.median.point;
      ctx.beginPath();
      ctx.arc(this.x.apply(mx), this.y.apply(my), 4, 0, 2 * Math.PI);
      ctx.fillStyle = "#ffffff";
      ctx.fill();
      ctx.strokeStyle = "#000";
      ctx.lineWidth = 1.2;
      ctx.stroke();
    }
    this.renderOverlay();
  }

  private renderOverlay() {
    const { svg, width } = this.panel;
    const doc = this.store.doc;
    clear(svg);
    const contourPath = (polyline: number[][]) =>
      polyline
        .map(([cx, cy], k) =>
          `${k === 0 ? "M" : "L"}${this.x.apply(cx).toFixed(2)},${this.y.apply(cy).toFixed(2)}`)
        .join("") + "Z";
    for (const contour of doc.level_sets.outer.contours) {
      svg.append(svgElement("path", {
        d: contourPath(contour), fill: "none",
        stroke: COLORS.contourOuter, "stroke-width": 1, "stroke-dasharray": "5 3",
      }));
    }
    for (const contour of doc.level_sets.inner.contours) {
      svg.append(svgElement("path", {
        d: contourPath(contour), fill: "none",
        stroke: COLORS.contourInner, "stroke-width": 1.2,
      }));
    }
    const label = svgElement("text", {
      x: width - 8, y: 16, "text-anchor": "end", class: "view-label",
    });
    label.textContent =
      `explained variance ${(doc.explained_variance * 100).toFixed(1)}%`;
    svg.append(label);

    if (this.drag && this.drag.path.length > 1) {
      const path = this.drag.path;
      if (this.lassoMode) {
        svg.append(svgElement("path", {
          d: path.map(([px, py], k) => `${k === 0 ? "M" : "L"}${px},${py}`).join("") + "Z",
          class: "brush-lasso",
        }));
      } else {
        const [sx, sy] = path[0];
        const [ex, ey] = path[path.length - 1];
        svg.append(svgElement("rect", {
          x: Math.min(sx, ex), y: Math.min(sy, ey),
          width: Math.abs(ex - sx), height: Math.abs(ey - sy),
          class: "brush-rect",
        }));
      }
    }
  }
}
