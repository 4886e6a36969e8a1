/** Explorer bootstrap: fetch the analysis, build the three linked views
 * and the control strip (combine mode, outer-coverage slider, lasso and
 * cluster-color toggles, selection download). */

import { ApiClient } from "./api.js";
import { ExplorerStore } from "./state.js";
import type { CombineMode } from "./types.js";
import { BoxplotView } from "./views/boxplot.js";
import { ParallelCoordsView } from "./views/parallel.js";
import { PlaneView } from "./views/plane.js";

function panelSection(parent: HTMLElement, title: string): HTMLElement {
  const section = document.createElement("section");
  section.className = "panel";
  const heading = document.createElement("h2");
  heading.textContent = title;
  section.append(heading);
  parent.append(section);
  return section;
}

export async function bootstrap(root: HTMLElement, base = ""): Promise<{
  store: ExplorerStore;
  boxplot: BoxplotView;
  plane: PlaneView;
  parallel: ParallelCoordsView;
}> {
  const api = new ApiClient(base);
  const { doc } = await api.getAnalysis({});
  const store = new ExplorerStore(doc, api);

  const controls = document.createElement("div");
  controls.className = "controls";
  root.append(controls);

  const modeSelect = document.createElement("select");
  for (const mode of ["new", "intersect", "union", "subtract"]) {
    const option = document.createElement("option");
    option.value = mode;
    option.textContent = `combine: ${mode}`;
    modeSelect.append(option);
  }
  modeSelect.addEventListener("change", () => {
    store.setCombineMode(modeSelect.value as CombineMode);
  });
  controls.append(modeSelect);

  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0.51";
  slider.max = "0.99";
  slider.step = "0.01";
  slider.value = String(store.outerCoverage);
  const sliderLabel = document.createElement("span");
  sliderLabel.textContent = `outer ${Math.round(store.outerCoverage * 100)}%`;
  slider.addEventListener("change", () => {
    const coverage = Number(slider.value);
    void store.setOuterCoverage(coverage).then(() => {
      sliderLabel.textContent = `outer ${Math.round(store.outerCoverage * 100)}%`;
    });
  });
  controls.append(slider, sliderLabel);

  const lassoToggle = document.createElement("label");
  const lassoBox = document.createElement("input");
  lassoBox.type = "checkbox";
  lassoToggle.append(lassoBox, document.createTextNode(" lasso"));
  controls.append(lassoToggle);

  const clusterToggle = document.createElement("label");
  const clusterBox = document.createElement("input");
  clusterBox.type = "checkbox";
  clusterBox.addEventListener("change", () => store.setClusterColoring(clusterBox.checked));
  clusterToggle.append(clusterBox, document.createTextNode(" color clusters"));
  controls.append(clusterToggle);

  const clearButton = document.createElement("button");
  clearButton.textContent = "clear selection";
  clearButton.addEventListener("click", () => void store.clearSelection());
  controls.append(clearButton);

  const download = document.createElement("button");
  download.textContent = "download selection.json";
  download.addEventListener("click", () => {
    const blob = new Blob([store.downloadPayload()], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "selection.json";
    link.click();
    URL.revokeObjectURL(link.href);
  });
  controls.append(download);

  const grid = document.createElement("div");
  grid.className = "view-grid";
  root.append(grid);

  const boxplot = new BoxplotView(
    panelSection(grid, `functional boxplot — ${doc.ensemble.name}`), store);
  const plane = new PlaneView(panelSection(grid, "bivariate plane"), store);
  const parallel = new ParallelCoordsView(
    panelSection(grid, "input parameters"), store);
  lassoBox.addEventListener("change", () => {
    plane.lassoMode = lassoBox.checked;
  });

  return { store, boxplot, plane, parallel };
}

declare global {
  interface Window {
    ensembleLens?: unknown;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const root = document.getElementById("app") as HTMLElement;
  bootstrap(root)
    .then((handles) => {
      window.ensembleLens = handles;
    })
    .catch((err) => {
      root.textContent = `failed to load analysis: ${err}`;
    });
}
