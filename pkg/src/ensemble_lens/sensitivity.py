"""Visual-sensitivity scores: how concentrated a selection is per parameter.

A selection propagated onto a parameter axis that collapses to a narrow
range signals an influential parameter; a selection as dispersed as the
whole ensemble signals an irrelevant one.  The concentration score
quantifies this as 1 - IQR(selected)/IQR(all): 0 for no concentration,
1 for a constant, negative when the selection is more dispersed than the
population (reported raw, not clamped).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensemble import AugmentedEnsemble
from .errors import SelectionTooSmallError
from .selection import Selection

MIN_SELECTION = 3


@dataclass(frozen=True)
class SensitivityReport:
    """Per-parameter concentration scores and their descending rank order."""

    param_names: tuple[str, ...]
    scores: tuple[float | None, ...]   # None when the population IQR is zero
    ranking: tuple[int, ...]           # column indices of defined scores

    def ranked_names(self) -> tuple[str, ...]:
        return tuple(self.param_names[j] for j in self.ranking)


def _iqr(values: np.ndarray) -> float:
    q1, q3 = np.quantile(values, [0.25, 0.75])
    return float(q3 - q1)


def concentration_scores(ensemble: AugmentedEnsemble, sel: Selection) -> SensitivityReport:
    """Score every parameter against a selection of at least 3 members.

    Quantiles interpolate linearly between order statistics, so the score is
    invariant under affine rescaling of a parameter column.  Ties in the
    ranking keep parameter column order.
    """
    if len(sel) < MIN_SELECTION:
        raise SelectionTooSmallError(
            f"need at least {MIN_SELECTION} selected members, got {len(sel)}"
        )
    idx = np.array(sel.indices, dtype=int)
    scores: list[float | None] = []
    for j in range(ensemble.n_params):
        column = ensemble.params[:, j]
        iqr_all = _iqr(column)
        if iqr_all == 0.0:
            scores.append(None)
            continue
        scores.append(1.0 - _iqr(column[idx]) / iqr_all)
    defined = [j for j, s in enumerate(scores) if s is not None]
    ranking = sorted(defined, key=lambda j: (-scores[j], j))
    return SensitivityReport(
        param_names=ensemble.param_names,
        scores=tuple(scores),
        ranking=tuple(ranking),
    )


def selection_bracket_overlays(ensemble: AugmentedEnsemble, sel: Selection) -> np.ndarray:
    """Per-parameter (min, max) extent of the selected members, for drawing
    bracket symbols on the parameter axes."""
    if len(sel) < 1:
        raise SelectionTooSmallError("bracket overlays need a non-empty selection")
    rows = ensemble.params[np.array(sel.indices, dtype=int)]
    return np.column_stack([rows.min(axis=0), rows.max(axis=0)])
