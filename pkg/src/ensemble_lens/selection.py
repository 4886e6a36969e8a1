"""Shared selection model: predicates over curves, plane and parameters.

A selection is an immutable sorted set of member indices plus the ordered
provenance of (predicate, combine mode) steps that produced it.  Because all
views index members the same way, one selection drives the functional
boxplot, the plane and the parameter axes simultaneously.  Re-evaluating the
provenance from scratch always reproduces the stored indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensemble import AugmentedEnsemble
from .errors import (
    InvalidClusterError,
    InvalidCoverageError,
    TimeOutOfRangeError,
    UnknownParamError,
)

COMBINE_MODES = ("new", "intersect", "union", "subtract")


@dataclass(frozen=True)
class PcaRect:
    """Axis-aligned rectangle on the plane, boundary inclusive."""

    z1_lo: float
    z1_hi: float
    z2_lo: float
    z2_hi: float

    def __post_init__(self):
        if self.z1_lo > self.z1_hi or self.z2_lo > self.z2_hi:
            raise ValueError("rectangle ranges need lo <= hi")


@dataclass(frozen=True)
class PcaLasso:
    """Closed polygon on the plane, boundary inclusive."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) > 1 and verts[0] == verts[-1]:
            verts = verts[:-1]
        if len(verts) < 3:
            raise ValueError("lasso polygon needs at least 3 distinct vertices")
        object.__setattr__(self, "vertices", verts)


@dataclass(frozen=True)
class TimeBox:
    """Hits members with some sample inside the time/value box (no
    interpolation between samples)."""

    t_lo: float
    t_hi: float
    v_lo: float
    v_hi: float

    def __post_init__(self):
        if self.t_lo > self.t_hi or self.v_lo > self.v_hi:
            raise ValueError("time box ranges need lo <= hi")


@dataclass(frozen=True)
class ParamRange:
    """Closed interval on one named input parameter."""

    param: str
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("parameter range needs lo <= hi")


@dataclass(frozen=True)
class BandTail:
    """Members strictly beyond a functional band envelope at one sample."""

    side: str          # "upper" | "lower"
    coverage: float    # which band: 0.5 or the analysis' outer coverage
    at: int            # time sample index

    def __post_init__(self):
        if self.side not in ("upper", "lower"):
            raise ValueError(f"band tail side must be upper or lower, got {self.side!r}")


@dataclass(frozen=True)
class OutlierFlag:
    """Members outside the outer HDR."""


@dataclass(frozen=True)
class ClusterId:
    """Members assigned to one inner-HDR region."""

    id: int


Predicate = PcaRect | PcaLasso | TimeBox | ParamRange | BandTail | OutlierFlag | ClusterId


@dataclass(frozen=True)
class Selection:
    """Sorted unique member indices with their predicate provenance."""

    indices: tuple[int, ...]
    provenance: tuple[tuple[Predicate, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(int(i) for i in self.indices))))

    def __len__(self):
        return len(self.indices)


def all_members(n_members: int) -> Selection:
    return Selection(indices=tuple(range(n_members)))


def _point_on_segment(px, py, ax, ay, bx, by) -> bool:
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if cross != 0.0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def point_in_polygon(px: float, py: float, vertices) -> bool:
    """Even-odd containment with inclusive boundary."""
    inside = False
    n = len(vertices)
    for k in range(n):
        ax, ay = vertices[k]
        bx, by = vertices[(k + 1) % n]
        if _point_on_segment(px, py, ax, ay, bx, by):
            return True
        if (ay > py) != (by > py):
            x_cross = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < x_cross:
                inside = not inside
    return inside


def evaluate_predicate(ensemble: AugmentedEnsemble, analysis, pred: Predicate) -> np.ndarray:
    """Member indices matched by one predicate, ascending.

    ``analysis`` provides the plane points, bands, outliers and clusters
    (anything produced by ``run_analysis`` or rebuilt from a document).
    """
    m = ensemble.n_members
    if isinstance(pred, PcaRect):
        z = analysis.points
        mask = (
            (z[:, 0] >= pred.z1_lo) & (z[:, 0] <= pred.z1_hi)
            & (z[:, 1] >= pred.z2_lo) & (z[:, 1] <= pred.z2_hi)
        )
        return np.flatnonzero(mask)
    if isinstance(pred, PcaLasso):
        z = analysis.points
        hits = [i for i in range(m) if point_in_polygon(z[i, 0], z[i, 1], pred.vertices)]
        return np.array(hits, dtype=int)
    if isinstance(pred, TimeBox):
        t_mask = (ensemble.time >= pred.t_lo) & (ensemble.time <= pred.t_hi)
        if not t_mask.any():
            return np.array([], dtype=int)
        window = ensemble.curves[:, t_mask]
        hit = ((window >= pred.v_lo) & (window <= pred.v_hi)).any(axis=1)
        return np.flatnonzero(hit)
    if isinstance(pred, ParamRange):
        if pred.param not in ensemble.param_names:
            raise UnknownParamError(
                f"unknown parameter {pred.param!r}; have {list(ensemble.param_names)}"
            )
        col = ensemble.param_names.index(pred.param)
        values = ensemble.params[:, col]
        return np.flatnonzero((values >= pred.lo) & (values <= pred.hi))
    if isinstance(pred, BandTail):
        if not 0 <= pred.at < ensemble.n_samples:
            raise TimeOutOfRangeError(
                f"sample index {pred.at} outside [0, {ensemble.n_samples})"
            )
        band = analysis.band(pred.coverage)
        if pred.side == "upper":
            return np.flatnonzero(ensemble.curves[:, pred.at] > band.upper[pred.at])
        return np.flatnonzero(ensemble.curves[:, pred.at] < band.lower[pred.at])
    if isinstance(pred, OutlierFlag):
        return np.asarray(analysis.outliers, dtype=int)
    if isinstance(pred, ClusterId):
        count = analysis.inner_set.region_count
        if not 0 <= pred.id < count:
            raise InvalidClusterError(f"cluster id {pred.id} outside [0, {count})")
        hits = [i for i, c in enumerate(analysis.clusters) if c == pred.id]
        return np.array(hits, dtype=int)
    raise TypeError(f"unsupported predicate {type(pred).__name__}")


def refine(ensemble: AugmentedEnsemble, analysis, sel: Selection,
           pred: Predicate, mode: str) -> Selection:
    """Combine a predicate into a selection and append it to the provenance."""
    if mode not in COMBINE_MODES:
        raise ValueError(f"combine mode must be one of {COMBINE_MODES}, got {mode!r}")
    hits = set(int(i) for i in evaluate_predicate(ensemble, analysis, pred))
    current = set(sel.indices)
    if mode == "new":
        result = hits
    elif mode == "intersect":
        result = current & hits
    elif mode == "union":
        result = current | hits
    else:
        result = current - hits
    return Selection(indices=tuple(sorted(result)),
                     provenance=sel.provenance + ((pred, mode),))


def evaluate_provenance(ensemble: AugmentedEnsemble, analysis,
                        steps) -> Selection:
    """Selection produced by applying steps to the full-ensemble baseline.

    An empty step list therefore selects every member.
    """
    sel = all_members(ensemble.n_members)
    for pred, mode in steps:
        sel = refine(ensemble, analysis, sel, pred, mode)
    return sel


_KIND_TO_CLS = {
    "pca_rect": PcaRect,
    "pca_lasso": PcaLasso,
    "time_box": TimeBox,
    "param_range": ParamRange,
    "band_tail": BandTail,
    "outlier_flag": OutlierFlag,
    "cluster_id": ClusterId,
}
_CLS_TO_KIND = {cls: kind for kind, cls in _KIND_TO_CLS.items()}


def predicate_to_dict(pred: Predicate) -> dict:
    kind = _CLS_TO_KIND[type(pred)]
    out = {"kind": kind}
    if isinstance(pred, PcaLasso):
        out["vertices"] = [list(v) for v in pred.vertices]
    else:
        for name in pred.__dataclass_fields__:
            out[name] = getattr(pred, name)
    return out


def predicate_from_dict(data: dict) -> Predicate:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError(f"predicate must be an object with a 'kind', got {data!r}")
    kind = data["kind"]
    cls = _KIND_TO_CLS.get(kind)
    if cls is None:
        raise ValueError(f"unknown predicate kind {kind!r}")
    fields = {k: v for k, v in data.items() if k != "kind"}
    if cls is PcaLasso:
        fields["vertices"] = tuple(tuple(v) for v in fields.get("vertices", ()))
    try:
        return cls(**fields)
    except TypeError as exc:
        raise ValueError(f"bad fields for predicate {kind!r}: {exc}") from None


def steps_to_dict(steps) -> dict:
    return {
        "predicates": [
            {"predicate": predicate_to_dict(pred), "mode": mode} for pred, mode in steps
        ]
    }


def steps_from_dict(data: dict) -> list[tuple[Predicate, str]]:
    if not isinstance(data, dict) or not isinstance(data.get("predicates"), list):
        raise ValueError("selection document needs a 'predicates' list")
    steps = []
    for item in data["predicates"]:
        if not isinstance(item, dict) or "predicate" not in item:
            raise ValueError(f"each step needs a 'predicate' object, got {item!r}")
        mode = item.get("mode", "intersect")
        if mode not in COMBINE_MODES:
            raise ValueError(f"combine mode must be one of {COMBINE_MODES}, got {mode!r}")
        steps.append((predicate_from_dict(item["predicate"]), mode))
    return steps
