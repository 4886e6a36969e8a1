/** Shared explorer state: one selection driving all linked views.
 *
 * Brushes are translated to predicates by the views, combined here per the
 * active combine mode, evaluated locally for zero-latency highlighting,
 * and posted to the server for the authoritative sensitivity report.
 * Views never receive partial states: every change funnels through
 * notify() with the reason attached.
 */

import type { ApiClient } from "./api.js";
import { evaluateSteps } from "./predicates.js";
import type {
  AnalysisDocument,
  CombineMode,
  Predicate,
  SelectionResponse,
  SelectionStep,
} from "./types.js";

export type ChangeReason = "selection" | "document" | "report" | "settings";
export type Listener = (reason: ChangeReason) => void;

export class ExplorerStore {
  doc: AnalysisDocument;
  steps: SelectionStep[] = [];
  indices: number[] = [];
  combineMode: CombineMode = "new";
  clusterColoring = false;
  lastReport: SelectionResponse | null = null;
  lastError: string | null = null;

  private readonly api: ApiClient;
  private readonly listeners = new Set<Listener>();

  constructor(doc: AnalysisDocument, api: ApiClient) {
    this.doc = doc;
    this.api = api;
    this.indices = evaluateSteps(doc, []);
  }

  get outerCoverage(): number {
    return this.doc.config.outer_coverage;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(reason: ChangeReason) {
    for (const listener of this.listeners) listener(reason);
  }

  setCombineMode(mode: CombineMode) {
    this.combineMode = mode;
    this.notify("settings");
  }

  setClusterColoring(on: boolean) {
    this.clusterColoring = on;
    this.notify("settings");
  }

  /** Combine a brush predicate into the selection and propagate it. */
  applyBrush(predicate: Predicate, mode: CombineMode = this.combineMode): Promise<void> {
    const steps = mode === "new"
      ? [{ predicate, mode }]
      : [...this.steps, { predicate, mode }];
    return this.applySteps(steps);
  }

  clearSelection(): Promise<void> {
    return this.applySteps([]);
  }

  /** Replace the whole provenance (used by brushes and selection files). */
  async applySteps(steps: SelectionStep[]): Promise<void> {
    this.indices = evaluateSteps(this.doc, steps);
    this.steps = steps;
    this.lastError = null;
    this.notify("selection");
    try {
      const report = await this.api.postSelection(steps, {
        outer: this.outerCoverage,
      });
      if (report !== null) {
        this.lastReport = report;
        this.notify("report");
      }
    } catch (err) {
      this.lastError = String(err);
      this.notify("report");
    }
  }

  /** Fetch the analysis at a new outer coverage and swap the document in.
   * The inner band and projection are unchanged by construction; the outer
   * band, contours and outliers re-render from the new document. */
  async setOuterCoverage(coverage: number): Promise<void> {
    if (!(coverage > 0.5 && coverage < 1.0)) {
      throw new RangeError(`outer coverage must be in (0.5, 1), got ${coverage}`);
    }
    const { doc } = await this.api.getAnalysis({ outer: coverage });
    this.doc = doc;
    try {
      this.indices = evaluateSteps(doc, this.steps);
    } catch {
      // a provenance step can reference the previous outer coverage; keep
      // the selected members and drop the stale steps
      this.steps = [];
    }
    this.notify("document");
    this.notify("selection");
  }

  selectionSet(): Set<number> {
    return new Set(this.indices);
  }

  downloadPayload(): string {
    return JSON.stringify(
      { predicates: this.steps, indices: this.indices },
      null,
      2,
    );
  }
}
