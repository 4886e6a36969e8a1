/** HTTP client with a byte-preserving analysis cache.
 *
 * Analyses are cached by their query string and stored as raw response
 * text, so returning to a previous coverage replays the identical
 * document.  At most one analysis request is in flight; a newer request
 * aborts the older one.  Selection posts are fire-and-replace: stale
 * responses are dropped via a generation counter.
 */

import type {
  AnalysisDocument,
  AnalysisQuery,
  EnsembleMeta,
  SelectionResponse,
  SelectionStep,
} from "./types.js";

export interface AnalysisFetch {
  doc: AnalysisDocument;
  text: string;
  fromCache: boolean;
}

function queryString(query: AnalysisQuery): string {
  const parts: string[] = [];
  if (query.outer !== undefined) parts.push(`outer=${query.outer}`);
  if (query.grid !== undefined) parts.push(`grid=${query.grid}`);
  if (query.bandwidth !== undefined) parts.push(`bandwidth=${query.bandwidth}`);
  return parts.length ? `?${parts.join("&")}` : "";
}

export class ApiClient {
  private readonly base: string;
  private readonly cache = new Map<string, { doc: AnalysisDocument; text: string }>();
  private inflight: AbortController | null = null;
  private selectionGeneration = 0;

  constructor(base = "") {
    this.base = base.replace(/\/$/, "");
  }

  async getEnsemble(): Promise<EnsembleMeta> {
    const response = await fetch(`${this.base}/api/ensemble`);
    if (!response.ok) throw new Error(`ensemble metadata: HTTP ${response.status}`);
    return response.json();
  }

  async getAnalysis(query: AnalysisQuery = {}): Promise<AnalysisFetch> {
    const key = queryString(query);
    const cached = this.cache.get(key);
    if (cached) return { ...cached, fromCache: true };

    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const response = await fetch(`${this.base}/api/analysis${key}`, {
      signal: controller.signal,
    });
    if (this.inflight === controller) this.inflight = null;
    if (!response.ok) {
      throw new Error(`analysis: HTTP ${response.status} ${await response.text()}`);
    }
    const text = await response.text();
    const doc = JSON.parse(text) as AnalysisDocument;
    this.cache.set(key, { doc, text });
    return { doc, text, fromCache: false };
  }

  /** Resolves to null when a newer selection post superseded this one. */
  async postSelection(
    steps: SelectionStep[],
    query: AnalysisQuery = {},
  ): Promise<SelectionResponse | null> {
    const generation = ++this.selectionGeneration;
    const response = await fetch(`${this.base}/api/selection${queryString(query)}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ predicates: steps }),
    });
    if (!response.ok) {
      throw new Error(`selection: HTTP ${response.status} ${await response.text()}`);
    }
    const body = (await response.json()) as SelectionResponse;
    return generation === this.selectionGeneration ? body : null;
  }
}
