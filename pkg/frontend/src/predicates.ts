/** Client-side predicate evaluation.
 *
 * Semantics mirror the analysis service exactly (same comparisons, same
 * boundary rules), so brushing can run locally per mouse move and the
 * server stays authoritative only for sensitivity reports.  The
 * differential acceptance test asserts exact index-set agreement.
 */

import type { AnalysisDocument, CombineMode, Predicate, SelectionStep } from "./types.js";

const COVERAGE_TOLERANCE = 1e-9;

function onSegment(px: number, py: number, ax: number, ay: number,
                   bx: number, by: number): boolean {
  const cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
  if (cross !== 0) return false;
  return Math.min(ax, bx) <= px && px <= Math.max(ax, bx)
    && Math.min(ay, by) <= py && py <= Math.max(ay, by);
}

/** Even-odd containment with inclusive boundary. */
export function pointInPolygon(px: number, py: number, vertices: number[][]): boolean {
  let inside = false;
  const n = vertices.length;
  for (let k = 0; k < n; k++) {
    const [ax, ay] = vertices[k];
    const [bx, by] = vertices[(k + 1) % n];
    if (onSegment(px, py, ax, ay, bx, by)) return true;
    if ((ay > py) !== (by > py)) {
      const xCross = ax + ((py - ay) * (bx - ax)) / (by - ay);
      if (px < xCross) inside = !inside;
    }
  }
  return inside;
}

function bandFor(doc: AnalysisDocument, coverage: number) {
  if (Math.abs(coverage - 0.5) < COVERAGE_TOLERANCE) return doc.bands.inner;
  if (Math.abs(coverage - doc.config.outer_coverage) < COVERAGE_TOLERANCE) {
    return doc.bands.outer;
  }
  throw new Error(`no band at coverage ${coverage}`);
}

export function evaluatePredicate(doc: AnalysisDocument, pred: Predicate): number[] {
  const points = doc.projection.points;
  const m = points.length;
  const hits: number[] = [];
  switch (pred.kind) {
    case "pca_rect":
      for (let i = 0; i < m; i++) {
        const [z1, z2] = points[i];
        if (z1 >= pred.z1_lo && z1 <= pred.z1_hi && z2 >= pred.z2_lo && z2 <= pred.z2_hi) {
          hits.push(i);
        }
      }
      return hits;
    case "pca_lasso": {
      let vertices = pred.vertices;
      const last = vertices[vertices.length - 1];
      if (vertices.length > 1 && last[0] === vertices[0][0] && last[1] === vertices[0][1]) {
        vertices = vertices.slice(0, -1);
      }
      if (vertices.length < 3) throw new Error("lasso polygon needs 3 vertices");
      for (let i = 0; i < m; i++) {
        if (pointInPolygon(points[i][0], points[i][1], vertices)) hits.push(i);
      }
      return hits;
    }
    case "time_box": {
      const time = doc.ensemble.time;
      for (let i = 0; i < m; i++) {
        const curve = doc.ensemble.curves[i];
        for (let k = 0; k < time.length; k++) {
          if (time[k] >= pred.t_lo && time[k] <= pred.t_hi
              && curve[k] >= pred.v_lo && curve[k] <= pred.v_hi) {
            hits.push(i);
            break;
          }
        }
      }
      return hits;
    }
    case "param_range": {
      const names = doc.ensemble.params.names;
      const col = names.indexOf(pred.param);
      if (col < 0) throw new Error(`unknown parameter ${pred.param}`);
      const values = doc.ensemble.params.values;
      for (let i = 0; i < m; i++) {
        if (values[i][col] >= pred.lo && values[i][col] <= pred.hi) hits.push(i);
      }
      return hits;
    }
    case "band_tail": {
      const t = doc.ensemble.time.length;
      if (pred.at < 0 || pred.at >= t) {
        throw new Error(`sample index ${pred.at} outside [0, ${t})`);
      }
      const band = bandFor(doc, pred.coverage);
      for (let i = 0; i < m; i++) {
        const value = doc.ensemble.curves[i][pred.at];
        if (pred.side === "upper" ? value > band.upper[pred.at]
                                  : value < band.lower[pred.at]) {
          hits.push(i);
        }
      }
      return hits;
    }
    case "outlier_flag":
      return [...doc.outliers];
    case "cluster_id": {
      const count = doc.level_sets.inner.region_count;
      if (pred.id < 0 || pred.id >= count) {
        throw new Error(`cluster id ${pred.id} outside [0, ${count})`);
      }
      for (let i = 0; i < m; i++) {
        if (doc.clusters[i] === pred.id) hits.push(i);
      }
      return hits;
    }
  }
}

function combine(current: Set<number>, hits: number[], mode: CombineMode): Set<number> {
  const hitSet = new Set(hits);
  switch (mode) {
    case "new":
      return hitSet;
    case "intersect":
      return new Set([...current].filter((i) => hitSet.has(i)));
    case "union":
      return new Set([...current, ...hits]);
    case "subtract":
      return new Set([...current].filter((i) => !hitSet.has(i)));
  }
}

/** Apply steps to the full-ensemble baseline; empty steps select everyone. */
export function evaluateSteps(doc: AnalysisDocument, steps: SelectionStep[]): number[] {
  const m = doc.projection.points.length;
  let current = new Set<number>(Array.from({ length: m }, (_, i) => i));
  for (const step of steps) {
    current = combine(current, evaluatePredicate(doc, step.predicate), step.mode);
  }
  return [...current].sort((a, b) => a - b);
}
