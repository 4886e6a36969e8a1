"""Kernel density estimation and Highest Density Regions on the plane.

The member cloud on the bivariate plane is smoothed with an isotropic
Gaussian kernel (bandwidth from Silverman's rule unless overridden).  A
coverage-p HDR keeps the members whose estimated density reaches the
empirical (1-p)-quantile of all member densities, so the region carries the
p densest share of the sample.  Disjoint components of the inner (p = 0.5)
region expose multimodality and define clusters; members below the outer
threshold are flagged as outliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contours import label_components, marching_squares
from .errors import (
    DegeneratePointsError,
    InvalidBandwidthError,
    InvalidCoverageError,
)

DEFAULT_GRID = 100
MIN_GRID = 8
GRID_MARGIN_BANDWIDTHS = 3.0
INNER_COVERAGE = 0.5
DEFAULT_OUTER_COVERAGE = 0.95


@dataclass(frozen=True)
class GridSpec:
    """Regular vertex grid covering a rectangle of the plane."""

    nx: int
    ny: int
    bounds: tuple[float, float, float, float]  # (z1_min, z1_max, z2_min, z2_max)

    def __post_init__(self):
        if self.nx < MIN_GRID or self.ny < MIN_GRID:
            raise ValueError(f"grid must be at least {MIN_GRID}x{MIN_GRID}")
        x0, x1, y0, y1 = self.bounds
        if not (x1 > x0 and y1 > y0):
            raise ValueError(f"degenerate grid bounds {self.bounds}")

    @property
    def xs(self) -> np.ndarray:
        x0, x1, _, _ = self.bounds
        return np.linspace(x0, x1, self.nx)

    @property
    def ys(self) -> np.ndarray:
        _, _, y0, y1 = self.bounds
        return np.linspace(y0, y1, self.ny)

    @property
    def cell_area(self) -> float:
        x0, x1, y0, y1 = self.bounds
        return (x1 - x0) / (self.nx - 1) * (y1 - y0) / (self.ny - 1)

    def nearest_vertex(self, point) -> tuple[int, int]:
        """(ix, iy) of the grid vertex closest to a plane point."""
        x0, x1, y0, y1 = self.bounds
        dx = (x1 - x0) / (self.nx - 1)
        dy = (y1 - y0) / (self.ny - 1)
        ix = int(round((point[0] - x0) / dx))
        iy = int(round((point[1] - y0) / dy))
        return min(max(ix, 0), self.nx - 1), min(max(iy, 0), self.ny - 1)


@dataclass(frozen=True)
class DensityField:
    """KDE values at every grid vertex; values[iy, ix] sits at (xs[ix], ys[iy])."""

    grid: GridSpec
    values: np.ndarray
    bandwidth: float

    @property
    def cell_area(self) -> float:
        return self.grid.cell_area


@dataclass(frozen=True)
class HdrLevelSet:
    """One coverage level: threshold, contours, labeled regions, membership."""

    coverage: float
    threshold: float
    contours: list[np.ndarray]
    region_labels: np.ndarray       # (ny, nx) component id or -1
    region_count: int
    inside_members: np.ndarray      # (M,) bool, density >= threshold
    grid: GridSpec


@dataclass(frozen=True)
class MedianPoint:
    """Grid vertex where the density field peaks."""

    point: np.ndarray  # (2,)
    ix: int
    iy: int


def grid_from_points(points: np.ndarray, h: float,
                     nx: int = DEFAULT_GRID, ny: int = DEFAULT_GRID) -> GridSpec:
    """Data bounding box expanded by 3h per side, so the grid captures
    essentially all kernel mass and normalization checks are meaningful."""
    points = np.asarray(points, dtype=float)
    margin = GRID_MARGIN_BANDWIDTHS * h
    x0, y0 = points.min(axis=0) - margin
    x1, y1 = points.max(axis=0) + margin
    return GridSpec(nx=nx, ny=ny, bounds=(float(x0), float(x1), float(y0), float(y1)))


def silverman_bandwidth(points: np.ndarray) -> float:
    """Isotropic Silverman bandwidth h = M^(-1/6) * rms(s1, s2).

    For d = 2 the Silverman prefactor (4/(d+2))^(1/(d+4)) equals 1, so the
    rule reduces to the RMS of the per-axis sample standard deviations
    scaled by M^(-1/6).
    """
    points = np.asarray(points, dtype=float)
    m = points.shape[0]
    if m < 3:
        raise DegeneratePointsError(f"need at least 3 points, got {m}")
    s1, s2 = points.std(axis=0, ddof=1)
    if s1 == 0.0 and s2 == 0.0:
        raise DegeneratePointsError("all plane points identical; bandwidth undefined")
    return float(m ** (-1.0 / 6.0) * math.sqrt((s1 * s1 + s2 * s2) / 2.0))


def kde_grid(points: np.ndarray, grid: GridSpec, h: float) -> DensityField:
    """Gaussian KDE evaluated at every grid vertex.

    values[iy, ix] = (1/M) sum_i exp(-|v - X_i|^2 / (2 h^2)) / (2 pi h^2)
    with the isotropic bandwidth matrix H = h^2 I.
    """
    if h <= 0:
        raise InvalidBandwidthError(f"bandwidth must be positive, got {h}")
    points = np.asarray(points, dtype=float)
    m = points.shape[0]
    # The isotropic kernel factorizes per axis, turning the vertex sum into
    # one (ny, M) x (M, nx) product.
    gx = np.exp(-0.5 * ((grid.xs[:, None] - points[None, :, 0]) / h) ** 2)
    gy = np.exp(-0.5 * ((grid.ys[:, None] - points[None, :, 1]) / h) ** 2)
    values = (gy @ gx.T) / (m * 2.0 * math.pi * h * h)
    return DensityField(grid=grid, values=values, bandwidth=float(h))


def sample_densities(points: np.ndarray, h: float) -> np.ndarray:
    """KDE evaluated at the member points themselves (self-term included)."""
    if h <= 0:
        raise InvalidBandwidthError(f"bandwidth must be positive, got {h}")
    points = np.asarray(points, dtype=float)
    m = points.shape[0]
    sq = ((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
    return np.exp(-0.5 * sq / (h * h)).sum(axis=1) / (m * 2.0 * math.pi * h * h)


def hdr_threshold(densities: np.ndarray, coverage: float) -> float:
    """Empirical HDR threshold: the order statistic d_(k), k = floor((1-p)M)+1.

    At least a p share of members then sits at or above the threshold.  The
    floor is taken with a 1e-9 nudge so exactly integral (1-p)*M values are
    not pushed down a rank by floating-point rounding.
    """
    if not 0.0 < coverage < 1.0:
        raise InvalidCoverageError(f"coverage must be in (0, 1), got {coverage}")
    densities = np.asarray(densities, dtype=float)
    m = densities.shape[0]
    if m < 3:
        raise InvalidCoverageError(f"need at least 3 densities, got {m}")
    rank = int(math.floor((1.0 - coverage) * m + 1e-9))
    rank = min(rank, m - 1)
    return float(np.sort(densities)[rank])


def extract_level_set(field: DensityField, threshold: float,
                      densities: np.ndarray, points: np.ndarray,
                      coverage: float) -> HdrLevelSet:
    """Contours, labeled regions, and member flags of one super-level set."""
    grid = field.grid
    contours = marching_squares(field.values, grid.xs, grid.ys, threshold)
    labels, count = label_components(field.values >= threshold)
    inside = np.asarray(densities, dtype=float) >= threshold
    return HdrLevelSet(
        coverage=float(coverage),
        threshold=float(threshold),
        contours=contours,
        region_labels=labels,
        region_count=count,
        inside_members=inside,
        grid=grid,
    )


def classify_outliers(densities: np.ndarray, outer_threshold: float) -> np.ndarray:
    """Members whose density falls strictly below the outer threshold, ascending."""
    densities = np.asarray(densities, dtype=float)
    return np.flatnonzero(densities < outer_threshold)


def median_point(field: DensityField) -> MedianPoint:
    """Grid argmax of the density; ties resolved to the smallest row-major index."""
    flat = int(np.argmax(field.values))
    iy, ix = divmod(flat, field.grid.nx)
    point = np.array([field.grid.xs[ix], field.grid.ys[iy]])
    return MedianPoint(point=point, ix=ix, iy=iy)


def cluster_assignments(level_set: HdrLevelSet, points: np.ndarray) -> list[int | None]:
    """Region id of each member inside the level set, None for the rest.

    A member inside by density can sit nearest to a just-below-threshold
    vertex; it then takes the label of the closest labeled vertex instead,
    so every inside member belongs to a cluster.
    """
    points = np.asarray(points, dtype=float)
    labels = level_set.region_labels
    grid = level_set.grid
    labeled = np.argwhere(labels >= 0)
    assignments: list[int | None] = []
    for i, point in enumerate(points):
        if not level_set.inside_members[i]:
            assignments.append(None)
            continue
        ix, iy = grid.nearest_vertex(point)
        label = int(labels[iy, ix])
        if label < 0 and labeled.size:
            d2 = (labeled[:, 0] - iy) ** 2 + (labeled[:, 1] - ix) ** 2
            jy, jx = labeled[np.argmin(d2)]
            label = int(labels[jy, jx])
        assignments.append(label if label >= 0 else None)
    return assignments
