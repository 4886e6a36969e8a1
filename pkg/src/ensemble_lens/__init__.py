"""Analysis engine for parameter-augmented ensembles of curves.

Computes PCA-plane functional boxplots (median, quantile bands, outliers,
clusters) via kernel density estimation and Highest Density Regions, and
propagates member selections between functional outputs and input
parameters for visual sensitivity analysis.
"""

__version__ = "0.1.0"

from .analysis import (
    AnalysisConfig,
    AnalysisResult,
    document,
    document_bytes,
    result_from_document,
    run_analysis,
)
from .ensemble import AugmentedEnsemble, Violation, validate
from .functional import (
    FunctionalBand,
    FunctionalBoxplot,
    assemble_boxplot,
    band_from_levelset,
    median_curve,
)
from .generators import gen_campbell1d, gen_oscillating_tangents, generate
from .hdr import (
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
from .io import content_hash, export_ensemble, load_ensemble
from .pca import (
    PcaPlane,
    ProjectionSet,
    explained_variance,
    fit_pca,
    project,
    project_all,
    reconstruct,
)
from .selection import (
    BandTail,
    ClusterId,
    OutlierFlag,
    ParamRange,
    PcaLasso,
    PcaRect,
    Selection,
    TimeBox,
    evaluate_predicate,
    evaluate_provenance,
    refine,
)
from .sensitivity import (
    SensitivityReport,
    concentration_scores,
    selection_bracket_overlays,
)

__all__ = [name for name in dir() if not name.startswith("_")]
