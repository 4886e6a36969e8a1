import { ApiClient } from "../src/api.js";
import { ExplorerStore } from "../src/state.js";
import type { AnalysisDocument, Predicate, SelectionStep } from "../src/types.js";
import { BoxplotView } from "../src/views/boxplot.js";
import { ParallelCoordsView } from "../src/views/parallel.js";
import { PlaneView } from "../src/views/plane.js";
import { BASE } from "./constants.js";

export interface Harness {
  api: ApiClient;
  store: ExplorerStore;
  boxplot: BoxplotView;
  plane: PlaneView;
  parallel: ParallelCoordsView;
}

export async function makeHarness(): Promise<Harness> {
  const api = new ApiClient(BASE);
  const { doc } = await api.getAnalysis({});
  const store = new ExplorerStore(doc, api);
  const host = document.createElement("div");
  document.body.append(host);
  const boxplot = new BoxplotView(host, store);
  const plane = new PlaneView(host, store);
  const parallel = new ParallelCoordsView(host, store);
  return { api, store, boxplot, plane, parallel };
}

export async function waitFor(check: () => boolean, timeoutMs = 10_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (check()) return;
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
  throw new Error("condition not met in time");
}

/** Deterministic 32-bit PRNG for gesture generation. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function bounds(values: Iterable<number>): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

export function randomPredicate(doc: AnalysisDocument, rand: () => number): Predicate {
  const points = doc.projection.points;
  const [xLo, xHi] = bounds(points.map((p) => p[0]));
  const [yLo, yHi] = bounds(points.map((p) => p[1]));
  const span = ([lo, hi]: [number, number]): [number, number] => {
    const a = lo + rand() * (hi - lo);
    const b = lo + rand() * (hi - lo);
    return [Math.min(a, b), Math.max(a, b)];
  };
  const kinds = ["pca_rect", "pca_lasso", "time_box", "param_range",
                 "band_tail", "outlier_flag", "cluster_id"] as const;
  const kind = kinds[Math.floor(rand() * kinds.length)];
  switch (kind) {
    case "pca_rect": {
      const [z1_lo, z1_hi] = span([xLo, xHi]);
      const [z2_lo, z2_hi] = span([yLo, yHi]);
      return { kind, z1_lo, z1_hi, z2_lo, z2_hi };
    }
    case "pca_lasso": {
      const n = 3 + Math.floor(rand() * 4);
      const cx = xLo + rand() * (xHi - xLo);
      const cy = yLo + rand() * (yHi - yLo);
      const radius = 0.2 + rand() * 0.6;
      const rx = radius * (xHi - xLo);
      const ry = radius * (yHi - yLo);
      const vertices = Array.from({ length: n }, (_, k) => {
        const angle = (2 * Math.PI * k) / n + rand() * 0.5;
        return [cx + rx * Math.cos(angle), cy + ry * Math.sin(angle)];
      });
      return { kind, vertices };
    }
    case "time_box": {
      const [t_lo, t_hi] = span(bounds(doc.ensemble.time));
      let vLo = Infinity;
      let vHi = -Infinity;
      for (const curve of doc.ensemble.curves) {
        for (const v of curve) {
          if (v < vLo) vLo = v;
          if (v > vHi) vHi = v;
        }
      }
      const [v_lo, v_hi] = span([vLo, vHi]);
      return { kind, t_lo, t_hi, v_lo, v_hi };
    }
    case "param_range": {
      const names = doc.ensemble.params.names;
      const j = Math.floor(rand() * names.length);
      const [lo, hi] = span(bounds(doc.ensemble.params.values.map((row) => row[j])));
      return { kind, param: names[j], lo, hi };
    }
    case "band_tail": {
      const side = rand() < 0.5 ? "upper" : "lower";
      const coverage = rand() < 0.5 ? 0.5 : doc.config.outer_coverage;
      const at = Math.floor(rand() * doc.ensemble.time.length);
      return { kind, side, coverage, at };
    }
    case "outlier_flag":
      return { kind };
    case "cluster_id": {
      const count = Math.max(doc.level_sets.inner.region_count, 1);
      return { kind, id: Math.floor(rand() * count) };
    }
  }
}

export function randomSteps(doc: AnalysisDocument, rand: () => number): SelectionStep[] {
  const modes = ["new", "intersect", "union", "subtract"] as const;
  const count = 1 + Math.floor(rand() * 3);
  return Array.from({ length: count }, (_, k) => ({
    predicate: randomPredicate(doc, rand),
    mode: k === 0 ? "new" : modes[Math.floor(rand() * modes.length)],
  }));
}
