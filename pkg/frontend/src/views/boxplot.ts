/** Functional boxplot view: bands, median, outliers, selected curves.
 *
 * Draw order (bottom to top): member curves, outer band, inner band,
 * median, outlier curves, selected curves.  Dragging brushes a time/value
 * box that selects members with a sample inside it.
 */

import { COLORS, LinearScale, Panel, clear, createPanel, pad, svgElement } from "../scales.js";
import type { ExplorerStore } from "../state.js";

export class BoxplotView {
  readonly panel: Panel;
  private x!: LinearScale;
  private y!: LinearScale;
  private selected = new Set<number>();
  private drag: { x0: number; y0: number; x1: number; y1: number } | null = null;

  constructor(container: HTMLElement, private readonly store: ExplorerStore,
              width = 640, height = 360) {
    this.panel = createPanel(container, width, height);
    this.rebuildScales();
    this.bindBrush();
    store.subscribe((reason) => {
      if (reason === "document") this.rebuildScales();
      if (reason !== "report") this.render();
    });
    this.render();
  }

  selectedIndices(): number[] {
    return [...this.selected].sort((a, b) => a - b);
  }

  private rebuildScales() {
    const doc = this.store.doc;
    const time = doc.ensemble.time;
    let lo = Infinity;
    let hi = -Infinity;
    for (const curve of doc.ensemble.curves) {
      for (const v of curve) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
    for (const v of doc.bands.outer.upper) if (v > hi) hi = v;
    for (const v of doc.bands.outer.lower) if (v < lo) lo = v;
    const [y0, y1] = pad([lo, hi]);
    this.x = new LinearScale(time[0], time[time.length - 1], 36, this.panel.width - 8);
    this.y = new LinearScale(y0, y1, this.panel.height - 20, 8);
  }

  private bindBrush() {
    const { svg } = this.panel;
    svg.addEventListener("mousedown", (event) => {
      const [px, py] = this.local(event);
      this.drag = { x0: px, y0: py, x1: px, y1: py };
    });
    svg.addEventListener("mousemove", (event) => {
      if (!this.drag) return;
      [this.drag.x1, this.drag.y1] = this.local(event);
      this.render();
    });
    svg.addEventListener("mouseup", () => {
      if (!this.drag) return;
      const { x0, y0, x1, y1 } = this.drag;
      this.drag = null;
      const t_lo = Math.min(this.x.invert(x0), this.x.invert(x1));
      const t_hi = Math.max(this.x.invert(x0), this.x.invert(x1));
      const v_lo = Math.min(this.y.invert(y0), this.y.invert(y1));
      const v_hi = Math.max(this.y.invert(y0), this.y.invert(y1));
      void this.store.applyBrush({ kind: "time_box", t_lo, t_hi, v_lo, v_hi });
    });
  }

  private local(event: MouseEvent): [number, number] {
    const rect = this.panel.svg.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  render() {
    const doc = this.store.doc;
    this.selected = this.store.selectionSet();
    const { ctx, width, height } = this.panel;
    const time = doc.ensemble.time;
    const outliers = new Set(doc.outliers);

    if (ctx) {
      ctx.clearRect(0, 0, width, height);
      const curvePath = (values: number[]) => {
        ctx.beginPath();
        for (let k = 0; k < time.length; k++) {
          const px = this.x.apply(time[k]);
          const py = this.y.apply(values[k]);
          if (k === 0) ctx.moveTo(px, py);
          else ctx.lineTo(px, py);
        }
      };
      const bandPath = (lower: number[], upper: number[]) => {
        ctx.beginPath();
        for (let k = 0; k < time.length; k++) {
          ctx.lineTo(this.x.apply(time[k]), this.y.apply(upper[k]));
        }
        for (let k = time.length - 1; k >= 0; k--) {
          ctx.lineTo(this.x.apply(time[k]), this.y.apply(lower[k]));
        }
        ctx.closePath();
        ctx.fill();
      };

      ctx.lineWidth = 1;
      ctx.strokeStyle = COLORS.member;
      for (let i = 0; i < doc.ensemble.curves.length; i++) {
        if (outliers.has(i)) continue;
        curvePath(doc.ensemble.curves[i]);
        ctx.stroke();
      }
      ctx.fillStyle = COLORS.outerBand;
      bandPath(doc.bands.outer.lower, doc.bands.outer.upper);
      ctx.fillStyle = COLORS.innerBand;
      bandPath(doc.bands.inner.lower, doc.bands.inner.upper);

      ctx.strokeStyle = COLORS.median;
      ctx.lineWidth = 1.8;
      curvePath(doc.median.curve);
      ctx.stroke();

      ctx.lineWidth = 1;
      ctx.strokeStyle = COLORS.outlier;
      ctx.setLineDash([4, 3]);
      for (const i of doc.outliers) {
        curvePath(doc.ensemble.curves[i]);
        ctx.stroke();
      }
      ctx.setLineDash([]);

      ctx.strokeStyle = COLORS.selected;
      ctx.lineWidth = 1.4;
      for (const i of this.selected) {
        curvePath(doc.ensemble.curves[i]);
        ctx.stroke();
      }
    }

    this.renderOverlay();
  }

  private renderOverlay() {
    const { svg, width, height } = this.panel;
    clear(svg);
    svg.append(svgElement("rect", {
      x: 36, y: 8, width: width - 44, height: height - 28,
      fill: "none", stroke: "#999", "stroke-width": 0.5,
    }));
    const label = svgElement("text", {
      x: width - 10, y: 16, "text-anchor": "end", class: "view-label",
    });
    label.textContent =
      `bands ${Math.round(this.store.doc.bands.inner.coverage * 100)}% / ` +
      `${Math.round(this.store.doc.bands.outer.coverage * 100)}%`;
    svg.append(label);
    if (this.drag) {
      const { x0, y0, x1, y1 } = this.drag;
      svg.append(svgElement("rect", {
        x: Math.min(x0, x1), y: Math.min(y0, y1),
        width: Math.abs(x1 - x0), height: Math.abs(y1 - y0),
        class: "brush-rect",
      }));
    }
  }
}
