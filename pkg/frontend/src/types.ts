/** Wire formats of the analysis service; mirrors the server's JSON exactly. */

export interface GridSpec {
  nx: number;
  ny: number;
  bounds: [number, number, number, number]; // z1_min, z1_max, z2_min, z2_max
}

export interface LevelSetPayload {
  coverage: number;
  threshold: number;
  contours: number[][][]; // closed polylines of [x, y] vertices
  region_count: number;
  inside_members: boolean[];
}

export interface BandPayload {
  coverage: number;
  lower: number[];
  upper: number[];
}

export interface AnalysisDocument {
  format_version: number;
  explained_variance: number;
  plane: { mean_curve: number[]; basis: number[][]; variance_spectrum: number[] };
  projection: { points: number[][]; residual_norms: number[] };
  density: { grid: GridSpec; bandwidth: number; cell_area: number; values: number[][] };
  sample_densities: number[];
  level_sets: { inner: LevelSetPayload; outer: LevelSetPayload };
  median: { point: number[]; grid_index: number[]; curve: number[] };
  bands: { inner: BandPayload; outer: BandPayload };
  outliers: number[];
  clusters: (number | null)[];
  config: { nx: number; ny: number; outer_coverage: number; bandwidth: number | null };
  ensemble_hash: string;
  ensemble: {
    name: string;
    time: number[];
    params: { names: string[]; values: number[][] };
    curves: number[][];
  };
}

export interface EnsembleMeta {
  name: string;
  members: number;
  params: number;
  samples: number;
  param_names: string[];
  time: number[];
}

export type Predicate =
  | { kind: "pca_rect"; z1_lo: number; z1_hi: number; z2_lo: number; z2_hi: number }
  | { kind: "pca_lasso"; vertices: number[][] }
  | { kind: "time_box"; t_lo: number; t_hi: number; v_lo: number; v_hi: number }
  | { kind: "param_range"; param: string; lo: number; hi: number }
  | { kind: "band_tail"; side: "upper" | "lower"; coverage: number; at: number }
  | { kind: "outlier_flag" }
  | { kind: "cluster_id"; id: number };

export type CombineMode = "new" | "intersect" | "union" | "subtract";

export interface SelectionStep {
  predicate: Predicate;
  mode: CombineMode;
}

export interface SensitivityPayload {
  scores: Record<string, number | null>;
  ranking: string[];
}

export interface SelectionResponse {
  indices: number[];
  brackets: Record<string, [number, number]> | null;
  sensitivity: SensitivityPayload | null;
}

export interface AnalysisQuery {
  outer?: number;
  grid?: string;
  bandwidth?: number;
}
