"""Back-projection of HDR boundaries into curve space: bands and boxplot.

Every vertex of a level set's contours corresponds to a curve via the
plane's affine reconstruction map; the functional band of that level is the
pointwise min/max envelope over all those curves.  The envelope curves are
quantile-like summaries and need not be existing ensemble members.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContainmentViolationError, EmptyLevelSetError
from .hdr import DensityField, HdrLevelSet, MedianPoint, median_point
from .pca import PcaPlane, explained_variance, reconstruct

CONTAINMENT_SLACK = 1e-9


@dataclass(frozen=True)
class FunctionalBand:
    """Pointwise envelope of the curves reconstructed from one HDR boundary."""

    coverage: float
    lower: np.ndarray  # (T,)
    upper: np.ndarray  # (T,)


@dataclass(frozen=True)
class FunctionalBoxplot:
    """Median curve, nested quantile bands, outliers and cluster labels."""

    median_curve: np.ndarray
    inner_band: FunctionalBand
    outer_band: FunctionalBand
    outliers: np.ndarray
    clusters: list[int | None]
    explained_variance: float


def band_from_levelset(plane: PcaPlane, level_set: HdrLevelSet,
                       region: int | None = None) -> FunctionalBand:
    """Envelope over the reconstructed vertices of all contours of one level.

    Disjoint contours of the level are pooled into a single envelope; pass
    ``region`` to restrict the band to the contours enclosing one labeled
    region (multimodal variant).
    """
    contours = level_set.contours
    if region is not None:
        contours = [c for c in contours if _contour_region(c, level_set) == region]
    if not contours:
        raise EmptyLevelSetError(
            f"level set at coverage {level_set.coverage} has no contour"
        )
    vertices = np.vstack([_vertices(c) for c in contours])
    curves = plane.mean_curve + vertices @ plane.basis
    return FunctionalBand(
        coverage=level_set.coverage,
        lower=curves.min(axis=0),
        upper=curves.max(axis=0),
    )


def _vertices(contour: np.ndarray) -> np.ndarray:
    """Contour vertices without the closing duplicate; tolerates degenerate
    single-vertex contours."""
    contour = np.atleast_2d(np.asarray(contour, dtype=float))
    if len(contour) > 1 and np.array_equal(contour[0], contour[-1]):
        return contour[:-1]
    return contour


def _contour_region(contour: np.ndarray, level_set: HdrLevelSet) -> int:
    """Region bounded by a contour: every contour vertex lies on a grid edge
    whose super-threshold endpoint is at most one cell away, so the label is
    read off the 3x3 vertex neighborhood of the first contour vertex."""
    labels = level_set.region_labels
    grid = level_set.grid
    ix, iy = grid.nearest_vertex(contour[0])
    patch = labels[max(iy - 1, 0):iy + 2, max(ix - 1, 0):ix + 2]
    found = patch[patch >= 0]
    return int(found[0]) if found.size else -1


def median_curve(plane: PcaPlane, median_pt: MedianPoint) -> np.ndarray:
    """Curve of the highest-density plane point."""
    return reconstruct(plane, median_pt.point)


def assemble_boxplot(plane: PcaPlane, field: DensityField,
                     inner_set: HdrLevelSet, outer_set: HdrLevelSet,
                     outliers: np.ndarray,
                     clusters: list[int | None]) -> FunctionalBoxplot:
    """Assemble the functional boxplot and enforce its nesting invariants.

    A containment failure here indicates an upstream bug, not a data
    condition, and raises :class:`ContainmentViolationError`.
    """
    inner_band = band_from_levelset(plane, inner_set)
    outer_band = band_from_levelset(plane, outer_set)
    median = median_curve(plane, median_point(field))

    slack = CONTAINMENT_SLACK
    if ((inner_band.lower < outer_band.lower - slack).any()
            or (inner_band.upper > outer_band.upper + slack).any()):
        raise ContainmentViolationError("inner band escapes the outer band")
    if ((median < inner_band.lower - slack).any()
            or (median > inner_band.upper + slack).any()):
        raise ContainmentViolationError("median curve escapes the inner band")

    return FunctionalBoxplot(
        median_curve=median,
        inner_band=inner_band,
        outer_band=outer_band,
        outliers=np.asarray(outliers, dtype=int),
        clusters=list(clusters),
        explained_variance=explained_variance(plane),
    )
