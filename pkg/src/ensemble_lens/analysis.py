"""End-to-end analysis pipeline and its serialized document form.

``run_analysis`` chains the stages (PCA plane, projection, KDE, HDR level
sets, outliers, clusters, functional boxplot) and bundles every product.
``document``/``document_bytes`` serialize the bundle deterministically: same
ensemble and config give byte-identical JSON, floats written in shortest
round-trip form.  ``result_from_document`` rebuilds the bundle, so a stored
analysis.json is as good as a fresh run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .contours import label_components
from .ensemble import AugmentedEnsemble
from .errors import InvalidCoverageError
from .functional import FunctionalBand, FunctionalBoxplot, assemble_boxplot
from .hdr import (
    DEFAULT_GRID,
    DEFAULT_OUTER_COVERAGE,
    INNER_COVERAGE,
    MIN_GRID,
    DensityField,
    GridSpec,
    HdrLevelSet,
    MedianPoint,
    classify_outliers,
    cluster_assignments,
    extract_level_set,
    grid_from_points,
    hdr_threshold,
    kde_grid,
    median_point,
    sample_densities,
    silverman_bandwidth,
)
from .io import content_hash
from .pca import PcaPlane, ProjectionSet, explained_variance, fit_pca, project_all

FORMAT_VERSION = 1


@dataclass(frozen=True)
class AnalysisConfig:
    """Grid resolution, outer coverage and optional bandwidth override."""

    nx: int = DEFAULT_GRID
    ny: int = DEFAULT_GRID
    outer_coverage: float = DEFAULT_OUTER_COVERAGE
    bandwidth: float | None = None

    def __post_init__(self):
        if not INNER_COVERAGE < self.outer_coverage < 1.0:
            raise InvalidCoverageError(
                f"outer coverage must be in ({INNER_COVERAGE}, 1), got {self.outer_coverage}"
            )
        if self.nx < MIN_GRID or self.ny < MIN_GRID:
            raise ValueError(f"grid must be at least {MIN_GRID}x{MIN_GRID}")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise ValueError(f"bandwidth override must be positive, got {self.bandwidth}")


@dataclass(frozen=True)
class AnalysisResult:
    """Everything one analysis run produced, still in numeric form."""

    ensemble: AugmentedEnsemble
    config: AnalysisConfig
    plane: PcaPlane
    projection: ProjectionSet
    bandwidth: float
    field: DensityField
    densities: np.ndarray
    inner_set: HdrLevelSet
    outer_set: HdrLevelSet
    median: MedianPoint
    boxplot: FunctionalBoxplot
    ensemble_hash: str

    @property
    def points(self) -> np.ndarray:
        return self.projection.points

    @property
    def outliers(self) -> np.ndarray:
        return self.boxplot.outliers

    @property
    def clusters(self) -> list[int | None]:
        return self.boxplot.clusters

    def band(self, coverage: float) -> FunctionalBand:
        """Functional band for a coverage this analysis computed."""
        if abs(coverage - INNER_COVERAGE) < 1e-9:
            return self.boxplot.inner_band
        if abs(coverage - self.config.outer_coverage) < 1e-9:
            return self.boxplot.outer_band
        raise InvalidCoverageError(
            f"no band at coverage {coverage}; have {INNER_COVERAGE} "
            f"and {self.config.outer_coverage}"
        )


def run_analysis(ensemble: AugmentedEnsemble,
                 config: AnalysisConfig | None = None) -> AnalysisResult:
    """Run the full pipeline on a validated ensemble."""
    config = config or AnalysisConfig()
    plane = fit_pca(ensemble.curves)
    projection = project_all(plane, ensemble.curves)
    points = projection.points

    h = config.bandwidth if config.bandwidth is not None else silverman_bandwidth(points)
    grid = grid_from_points(points, h, nx=config.nx, ny=config.ny)
    field = kde_grid(points, grid, h)
    densities = sample_densities(points, h)

    inner_threshold = hdr_threshold(densities, INNER_COVERAGE)
    outer_threshold = hdr_threshold(densities, config.outer_coverage)
    inner_set = extract_level_set(field, inner_threshold, densities, points, INNER_COVERAGE)
    outer_set = extract_level_set(field, outer_threshold, densities, points,
                                  config.outer_coverage)
    outliers = classify_outliers(densities, outer_threshold)
    clusters = cluster_assignments(inner_set, points)
    median = median_point(field)
    boxplot = assemble_boxplot(plane, field, inner_set, outer_set, outliers, clusters)

    return AnalysisResult(
        ensemble=ensemble,
        config=config,
        plane=plane,
        projection=projection,
        bandwidth=h,
        field=field,
        densities=densities,
        inner_set=inner_set,
        outer_set=outer_set,
        median=median,
        boxplot=boxplot,
        ensemble_hash=content_hash(ensemble),
    )


def _floats(arr) -> list:
    return [float(x) for x in np.asarray(arr).ravel()]


def _matrix(arr) -> list[list[float]]:
    return [[float(x) for x in row] for row in np.asarray(arr)]


def _level_set_payload(level_set: HdrLevelSet) -> dict:
    return {
        "coverage": float(level_set.coverage),
        "threshold": float(level_set.threshold),
        "contours": [_matrix(c) for c in level_set.contours],
        "region_count": int(level_set.region_count),
        "inside_members": [bool(b) for b in level_set.inside_members],
    }


def _band_payload(band: FunctionalBand) -> dict:
    return {
        "coverage": float(band.coverage),
        "lower": _floats(band.lower),
        "upper": _floats(band.upper),
    }


def document(result: AnalysisResult) -> dict:
    """JSON-ready analysis document with a fixed key order."""
    ensemble = result.ensemble
    grid = result.field.grid
    return {
        "format_version": FORMAT_VERSION,
        "explained_variance": explained_variance(result.plane),
        "plane": {
            "mean_curve": _floats(result.plane.mean_curve),
            "basis": _matrix(result.plane.basis),
            "variance_spectrum": _floats(result.plane.variance_spectrum),
        },
        "projection": {
            "points": _matrix(result.projection.points),
            "residual_norms": _floats(result.projection.residual_norms),
        },
        "density": {
            "grid": {"nx": grid.nx, "ny": grid.ny, "bounds": list(grid.bounds)},
            "bandwidth": float(result.bandwidth),
            "cell_area": float(grid.cell_area),
            "values": _matrix(result.field.values),
        },
        "sample_densities": _floats(result.densities),
        "level_sets": {
            "inner": _level_set_payload(result.inner_set),
            "outer": _level_set_payload(result.outer_set),
        },
        "median": {
            "point": _floats(result.median.point),
            "grid_index": [result.median.ix, result.median.iy],
            "curve": _floats(result.boxplot.median_curve),
        },
        "bands": {
            "inner": _band_payload(result.boxplot.inner_band),
            "outer": _band_payload(result.boxplot.outer_band),
        },
        "outliers": [int(i) for i in result.boxplot.outliers],
        "clusters": result.boxplot.clusters,
        "config": {
            "nx": result.config.nx,
            "ny": result.config.ny,
            "outer_coverage": result.config.outer_coverage,
            "bandwidth": result.config.bandwidth,
        },
        "ensemble_hash": result.ensemble_hash,
        "ensemble": {
            "name": ensemble.name,
            "time": _floats(ensemble.time),
            "params": {
                "names": list(ensemble.param_names),
                "values": _matrix(ensemble.params),
            },
            "curves": _matrix(ensemble.curves),
        },
    }


def document_bytes(result: AnalysisResult) -> bytes:
    """Canonical serialized form; identical configs give identical bytes."""
    return (json.dumps(document(result), allow_nan=False,
                       separators=(",", ":")) + "\n").encode("utf-8")


def _band_from_payload(data: dict) -> FunctionalBand:
    return FunctionalBand(
        coverage=data["coverage"],
        lower=np.array(data["lower"]),
        upper=np.array(data["upper"]),
    )


def _level_set_from_payload(data: dict, field: DensityField) -> HdrLevelSet:
    labels, count = label_components(field.values >= data["threshold"])
    return HdrLevelSet(
        coverage=data["coverage"],
        threshold=data["threshold"],
        contours=[np.array(c) for c in data["contours"]],
        region_labels=labels,
        region_count=count,
        inside_members=np.array(data["inside_members"], dtype=bool),
        grid=field.grid,
    )


def result_from_document(doc: dict) -> AnalysisResult:
    """Rebuild an analysis (including its ensemble) from a parsed document."""
    ens = doc["ensemble"]
    ensemble = AugmentedEnsemble(
        name=ens["name"],
        time=np.array(ens["time"]),
        curves=np.array(ens["curves"]),
        param_names=tuple(ens["params"]["names"]),
        params=np.array(ens["params"]["values"]),
    )
    cfg = doc["config"]
    config = AnalysisConfig(
        nx=cfg["nx"], ny=cfg["ny"],
        outer_coverage=cfg["outer_coverage"], bandwidth=cfg["bandwidth"],
    )
    plane = PcaPlane(
        mean_curve=np.array(doc["plane"]["mean_curve"]),
        basis=np.array(doc["plane"]["basis"]),
        variance_spectrum=np.array(doc["plane"]["variance_spectrum"]),
    )
    projection = ProjectionSet(
        points=np.array(doc["projection"]["points"]),
        residual_norms=np.array(doc["projection"]["residual_norms"]),
    )
    g = doc["density"]["grid"]
    grid = GridSpec(nx=g["nx"], ny=g["ny"], bounds=tuple(g["bounds"]))
    field = DensityField(
        grid=grid,
        values=np.array(doc["density"]["values"]),
        bandwidth=doc["density"]["bandwidth"],
    )
    inner_set = _level_set_from_payload(doc["level_sets"]["inner"], field)
    outer_set = _level_set_from_payload(doc["level_sets"]["outer"], field)
    median = MedianPoint(
        point=np.array(doc["median"]["point"]),
        ix=doc["median"]["grid_index"][0],
        iy=doc["median"]["grid_index"][1],
    )
    boxplot = FunctionalBoxplot(
        median_curve=np.array(doc["median"]["curve"]),
        inner_band=_band_from_payload(doc["bands"]["inner"]),
        outer_band=_band_from_payload(doc["bands"]["outer"]),
        outliers=np.array(doc["outliers"], dtype=int),
        clusters=[c if c is None else int(c) for c in doc["clusters"]],
        explained_variance=doc["explained_variance"],
    )
    return AnalysisResult(
        ensemble=ensemble,
        config=config,
        plane=plane,
        projection=projection,
        bandwidth=doc["density"]["bandwidth"],
        field=field,
        densities=np.array(doc["sample_densities"]),
        inner_set=inner_set,
        outer_set=outer_set,
        median=median,
        boxplot=boxplot,
        ensemble_hash=doc["ensemble_hash"],
    )
