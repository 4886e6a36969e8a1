/** Parallel-coordinates view of the input parameters.
 *
 * One vertical axis per parameter; member polylines on the raster layer
 * with selected members in pink.  Bracket symbols mark the selection's
 * min/max on every axis (hidden for empty selections); the panel beside
 * the axes lists the server's concentration scores, ranked.  Dragging
 * along an axis brushes a parameter range.
 */

import { COLORS, LinearScale, Panel, clear, createPanel, extent, pad, svgElement } from "../scales.js";
import type { ExplorerStore } from "../state.js";

const AXIS_TOP = 24;
const AXIS_BOTTOM = 16;

export class ParallelCoordsView {
  readonly panel: Panel;
  readonly reportPanel: HTMLElement;
  private axisX: number[] = [];
  private axisScale: LinearScale[] = [];
  private selected = new Set<number>();
  private drag: { axis: number; y0: number; y1: number } | null = null;

  constructor(container: HTMLElement, private readonly store: ExplorerStore,
              width = 640, height = 280) {
    this.panel = createPanel(container, width, height);
    this.reportPanel = document.createElement("div");
    this.reportPanel.className = "sensitivity-report";
    container.append(this.reportPanel);
    this.rebuildScales();
    this.bindBrush();
    store.subscribe((reason) => {
      if (reason === "document") this.rebuildScales();
      if (reason === "report") this.renderReport();
      else this.render();
    });
    this.render();
    this.renderReport();
  }

  selectedIndices(): number[] {
    return [...this.selected].sort((a, b) => a - b);
  }

  bracketExtents(): Record<string, [number, number]> | null {
    if (this.selected.size === 0) return null;
    const { names, values } = this.store.doc.ensemble.params;
    const out: Record<string, [number, number]> = {};
    names.forEach((name, j) => {
      let lo = Infinity;
      let hi = -Infinity;
      for (const i of this.selected) {
        const v = values[i][j];
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
      out[name] = [lo, hi];
    });
    return out;
  }

  private rebuildScales() {
    const { names, values } = this.store.doc.ensemble.params;
    const n = names.length;
    const { width, height } = this.panel;
    this.axisX = names.map((_, j) => 40 + (j * (width - 80)) / Math.max(n - 1, 1));
    this.axisScale = names.map((_, j) => {
      const [lo, hi] = pad(extent(values.map((row) => row[j])));
      return new LinearScale(lo, hi, height - AXIS_BOTTOM, AXIS_TOP);
    });
  }

  private bindBrush() {
    const { svg } = this.panel;
    svg.addEventListener("mousedown", (event) => {
      const [px, py] = this.local(event);
      let best = 0;
      for (let j = 1; j < this.axisX.length; j++) {
        if (Math.abs(this.axisX[j] - px) < Math.abs(this.axisX[best] - px)) best = j;
      }
      if (Math.abs(this.axisX[best] - px) <= 14) {
        this.drag = { axis: best, y0: py, y1: py };
      }
    });
    svg.addEventListener("mousemove", (event) => {
      if (!this.drag) return;
      this.drag.y1 = this.local(event)[1];
      this.render();
    });
    svg.addEventListener("mouseup", () => {
      if (!this.drag) return;
      const { axis, y0, y1 } = this.drag;
      this.drag = null;
      const scale = this.axisScale[axis];
      const lo = Math.min(scale.invert(y0), scale.invert(y1));
      const hi = Math.max(scale.invert(y0), scale.invert(y1));
      void this.store.applyBrush({
        kind: "param_range",
        param: this.store.doc.ensemble.params.names[axis],
        lo,
        hi,
      });
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
    const { values } = doc.ensemble.params;

    if (ctx) {
      ctx.clearRect(0, 0, width, height);
      const polyline = (row: number[]) => {
        ctx.beginPath();
        row.forEach((v, j) => {
          const px = this.axisX[j];
          const py = this.axisScale[j].apply(v);
          if (j === 0) ctx.moveTo(px, py);
          else ctx.lineTo(px, py);
        });
      };
      ctx.lineWidth = 1;
      ctx.strokeStyle = COLORS.member;
      for (let i = 0; i < values.length; i++) {
        if (this.selected.has(i)) continue;
        polyline(values[i]);
        ctx.stroke();
      }
      ctx.strokeStyle = COLORS.selected;
      ctx.lineWidth = 1.4;
      for (const i of this.selected) {
        polyline(values[i]);
        ctx.stroke();
      }
    }
    this.renderOverlay();
  }

  private renderOverlay() {
    const { svg, height } = this.panel;
    const doc = this.store.doc;
    clear(svg);
    doc.ensemble.params.names.forEach((name, j) => {
      const px = this.axisX[j];
      svg.append(svgElement("line", {
        x1: px, y1: AXIS_TOP, x2: px, y2: height - AXIS_BOTTOM,
        stroke: "#555", "stroke-width": 1,
      }));
      const label = svgElement("text", {
        x: px, y: AXIS_TOP - 8, "text-anchor": "middle", class: "axis-label",
      });
      label.textContent = name;
      svg.append(label);
    });

    const brackets = this.bracketExtents();
    if (brackets) {
      doc.ensemble.params.names.forEach((name, j) => {
        const [lo, hi] = brackets[name];
        const px = this.axisX[j];
        const scale = this.axisScale[j];
        for (const [value, flip] of [[hi, 1], [lo, -1]] as const) {
          const py = scale.apply(value);
          svg.append(svgElement("path", {
            d: `M${px - 8},${py + 4 * flip} L${px - 8},${py} L${px + 8},${py} `
              + `L${px + 8},${py + 4 * flip}`,
            fill: "none", stroke: COLORS.bracket, "stroke-width": 1.5,
            class: "bracket",
          }));
        }
      });
    }

    if (this.drag) {
      const { axis, y0, y1 } = this.drag;
      svg.append(svgElement("rect", {
        x: this.axisX[axis] - 7, y: Math.min(y0, y1),
        width: 14, height: Math.abs(y1 - y0),
        class: "brush-rect",
      }));
    }
  }

  renderReport() {
    clear(this.reportPanel);
    const report = this.store.lastReport?.sensitivity ?? null;
    const title = document.createElement("div");
    title.className = "report-title";
    title.textContent = "parameter sensitivity";
    this.reportPanel.append(title);
    if (this.store.lastError) {
      const err = document.createElement("div");
      err.className = "report-error";
      err.textContent = this.store.lastError;
      this.reportPanel.append(err);
      return;
    }
    if (!report) {
      const empty = document.createElement("div");
      empty.className = "report-empty";
      empty.textContent = "select at least 3 members";
      this.reportPanel.append(empty);
      return;
    }
    report.ranking.forEach((name, rank) => {
      const row = document.createElement("div");
      row.className = "report-row";
      const score = report.scores[name];
      row.textContent =
        `${rank + 1}. ${name}  ${score === null ? "n/a" : score.toFixed(3)}`;
      this.reportPanel.append(row);
    });
  }
}
