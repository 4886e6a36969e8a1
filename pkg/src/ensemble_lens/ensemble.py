"""Data model for parameter-augmented ensembles of curves.

An augmented ensemble pairs, for each of its M members, a vector of N input
parameters with a functional output sampled on a time axis shared by all
members.  Member order is the canonical index space: every view (curves,
plane points, parameter axes) addresses members by the same 0..M-1 index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRangeError

MIN_MEMBERS = 3


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by :func:`validate`."""

    kind: str
    message: str
    member: int | None = None
    column: int | None = None
    sample: int | None = None

    def __str__(self):
        where = []
        if self.member is not None:
            where.append(f"member {self.member}")
        if self.sample is not None:
            where.append(f"sample {self.sample}")
        if self.column is not None:
            where.append(f"column {self.column}")
        suffix = f" ({', '.join(where)})" if where else ""
        return f"{self.kind}: {self.message}{suffix}"


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class AugmentedEnsemble:
    """M members, each an N-vector of input parameters plus a length-T curve.

    Construction only coerces to read-only float arrays; invariants are
    checked by :func:`validate` so that broken data can be represented and
    reported rather than crashing half-way through a load.
    """

    name: str
    time: np.ndarray          # (T,) shared sampling axis
    curves: np.ndarray        # (M, T) one row per member
    param_names: tuple[str, ...]
    params: np.ndarray        # (M, N) one row per member

    def __post_init__(self):
        object.__setattr__(self, "time", _frozen_array(self.time))
        object.__setattr__(self, "curves", _frozen_array(np.atleast_2d(self.curves)))
        object.__setattr__(self, "params", _frozen_array(np.atleast_2d(self.params)))
        object.__setattr__(self, "param_names", tuple(self.param_names))

    @property
    def n_members(self) -> int:
        return self.curves.shape[0]

    @property
    def n_samples(self) -> int:
        return self.time.shape[0]

    @property
    def n_params(self) -> int:
        return len(self.param_names)

    def member(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(parameter vector, curve)`` views for member ``i``.

        Indices are stable for the lifetime of the ensemble; negative or
        out-of-range indices raise :class:`IndexOutOfRangeError`.
        """
        if not 0 <= i < self.n_members:
            raise IndexOutOfRangeError(
                f"member index {i} outside [0, {self.n_members})"
            )
        return self.params[i], self.curves[i]


def validate(ensemble: AugmentedEnsemble) -> list[Violation]:
    """Enumerate every invariant violation; an empty list means valid.

    Violations are data, not failures: the report names member/column/sample
    coordinates so a caller can locate each offending cell.
    """
    report: list[Violation] = []
    time = ensemble.time
    curves = ensemble.curves
    params = ensemble.params
    names = ensemble.param_names

    if time.ndim != 1 or time.shape[0] < 2:
        report.append(Violation("time_axis", f"time axis needs >= 2 samples, got {time.size}"))
    else:
        bad = np.flatnonzero(np.diff(time) <= 0)
        for k in bad:
            report.append(Violation(
                "time_axis",
                f"not strictly increasing at sample {k + 1} "
                f"({time[k]!r} -> {time[k + 1]!r})",
                sample=int(k + 1),
            ))

    if curves.shape[1] != time.shape[0]:
        report.append(Violation(
            "shape",
            f"curves have {curves.shape[1]} samples but time axis has {time.shape[0]}",
        ))

    if params.shape[0] != curves.shape[0]:
        report.append(Violation(
            "shape",
            f"parameter table has {params.shape[0]} rows, curve matrix has {curves.shape[0]}",
        ))

    if len(names) == 0:
        report.append(Violation("param_names", "at least one parameter required"))
    if params.ndim != 2 or params.shape[1] != len(names):
        report.append(Violation(
            "shape",
            f"parameter table has {params.shape[1] if params.ndim == 2 else '?'} columns "
            f"but {len(names)} names",
        ))
    seen: dict[str, int] = {}
    for j, name in enumerate(names):
        if not name:
            report.append(Violation("param_names", "empty parameter name", column=j))
        if name in seen:
            report.append(Violation(
                "param_names",
                f"duplicate parameter name {name!r} (columns {seen[name]} and {j})",
                column=j,
            ))
        else:
            seen[name] = j

    if curves.shape[0] < MIN_MEMBERS:
        report.append(Violation(
            "too_few_members",
            f"need at least {MIN_MEMBERS} members, got {curves.shape[0]}",
        ))

    for i, k in zip(*np.nonzero(~np.isfinite(curves))):
        report.append(Violation(
            "non_finite", f"curve value {curves[i, k]!r}", member=int(i), sample=int(k)
        ))
    for i, j in zip(*np.nonzero(~np.isfinite(params))):
        report.append(Violation(
            "non_finite", f"parameter value {params[i, j]!r}", member=int(i), column=int(j)
        ))

    return report
