"""Static figure rendering of analysis results.

Used by the command line to drop a vector image of the functional boxplot
next to the analysis document.  Figures are reproducible: a fixed hash salt
and no embedded date keep the SVG output stable across runs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import AnalysisResult

OUTER_FILL = "#a63232"
INNER_FILL = "#f2a09e"
MEDIAN_COLOR = "black"
OUTLIER_COLOR = "#3a6ea5"

plt.rcParams["svg.hashsalt"] = "ensemble-lens"


def plot_functional_boxplot(result: AnalysisResult, ax=None):
    """Bands, median and outlier curves of one analysis on a single axes."""
    if ax is None:
        _, ax = plt.subplots(figsize=(8, 5))
    time = result.ensemble.time
    box = result.boxplot
    ax.fill_between(time, box.outer_band.lower, box.outer_band.upper,
                    color=OUTER_FILL, lw=0,
                    label=f"{box.outer_band.coverage:.0%} band")
    ax.fill_between(time, box.inner_band.lower, box.inner_band.upper,
                    color=INNER_FILL, lw=0,
                    label=f"{box.inner_band.coverage:.0%} band")
    for i in box.outliers:
        ax.plot(time, result.ensemble.curves[i], color=OUTLIER_COLOR,
                lw=0.7, ls="--", alpha=0.8,
                label="outliers" if i == box.outliers[0] else None)
    ax.plot(time, box.median_curve, color=MEDIAN_COLOR, lw=1.6, label="median")
    ax.set_xlabel("t")
    ax.set_ylabel("y(t)")
    ax.set_title(
        f"{result.ensemble.name}  "
        f"(explained variance {box.explained_variance:.1%})"
    )
    ax.legend(loc="best", fontsize=8)
    return ax


def plot_pca_plane(result: AnalysisResult, ax=None):
    """Density map (blue = low, red = high), HDR contours and member points."""
    if ax is None:
        _, ax = plt.subplots(figsize=(6, 5))
    grid = result.field.grid
    ax.imshow(result.field.values, origin="lower", cmap="coolwarm",
              extent=(grid.bounds[0], grid.bounds[1], grid.bounds[2], grid.bounds[3]),
              aspect="auto")
    for level_set, style in ((result.outer_set, ":"), (result.inner_set, "-")):
        for contour in level_set.contours:
            ax.plot(contour[:, 0], contour[:, 1], color="black", ls=style, lw=1.0)
    pts = result.points
    ax.plot(pts[:, 0], pts[:, 1], ".", color="black", ms=2.5, alpha=0.6)
    out = result.outliers
    if out.size:
        ax.plot(pts[out, 0], pts[out, 1], "o", mfc="none", mec="black", ms=6)
    ax.plot(*result.median.point, "k*", ms=10)
    ax.set_xlabel("component 1")
    ax.set_ylabel("component 2")
    ax.set_title(f"explained variance {result.boxplot.explained_variance:.1%}")
    return ax


def save_boxplot(result: AnalysisResult, path) -> None:
    """Render the functional boxplot to a file (format from the extension)."""
    ax = plot_functional_boxplot(result)
    fig = ax.figure
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
    plt.close(fig)
