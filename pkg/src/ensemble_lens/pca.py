"""Bivariate PCA plane: fit, project, reconstruct, explained variance.

Curves are centered (no per-sample scaling) and the top two variance
directions of the sample covariance (1/(M-1) normalization) define the
plane.  Each curve maps to the 2-D point of its coefficients on the two
orthonormal basis curves; the plane point (0, 0) is the mean curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEnsembleError, LengthMismatchError

DEGENERACY_RTOL = 1e-14


@dataclass(frozen=True)
class PcaPlane:
    """Mean curve, two orthonormal basis curves and the variance spectrum."""

    mean_curve: np.ndarray          # (T,)
    basis: np.ndarray               # (2, T), rows orthonormal
    variance_spectrum: np.ndarray   # all min(M-1, T) covariance eigenvalues, descending

    @property
    def n_samples(self) -> int:
        return self.mean_curve.shape[0]

    @property
    def explained_variance(self) -> float:
        return explained_variance(self)


@dataclass(frozen=True)
class ProjectionSet:
    """Plane coordinates and off-plane residual norms, in member order."""

    points: np.ndarray          # (M, 2)
    residual_norms: np.ndarray  # (M,)


def _fix_signs(basis: np.ndarray) -> np.ndarray:
    """Deterministic sign convention: largest-|.| component positive.

    Ties on the largest magnitude fall back to making the first nonzero
    component positive, so two fits of the same data are bitwise equal.
    """
    out = basis.copy()
    for row in out:
        mags = np.abs(row)
        peak = mags.max()
        winners = np.flatnonzero(mags == peak)
        if winners.size == 1:
            pivot = row[winners[0]]
        else:
            nonzero = np.flatnonzero(row)
            pivot = row[nonzero[0]] if nonzero.size else 1.0
        if pivot < 0:
            row *= -1.0
    return out


def fit_pca(curves: np.ndarray) -> PcaPlane:
    """Fit the two-component PCA plane of an (M, T) curve matrix.

    Raises :class:`DegenerateEnsembleError` when all curves coincide up to
    the relative tolerance (there is no variance to decompose).
    """
    curves = np.asarray(curves, dtype=float)
    m, t = curves.shape
    mean_curve = curves.mean(axis=0)
    centered = curves - mean_curve

    # Rank of centered data is at most M-1; the spectrum keeps min(M-1, T)
    # covariance eigenvalues so its sum equals the total sample variance.
    _, svals, vt = np.linalg.svd(centered, full_matrices=False)
    spectrum = (svals**2) / (m - 1)
    spectrum = np.maximum(spectrum, 0.0)[: min(m - 1, t)]

    scale = np.abs(curves).max(initial=0.0)
    if spectrum.sum() <= DEGENERACY_RTOL * scale * scale:
        raise DegenerateEnsembleError(
            "all curves identical up to tolerance; no variance to decompose"
        )

    basis = _fix_signs(vt[:2])
    return PcaPlane(mean_curve=mean_curve, basis=basis, variance_spectrum=spectrum)


def explained_variance(plane: PcaPlane) -> float:
    """Share of total variance captured by the two plane directions."""
    total = plane.variance_spectrum.sum()
    if total <= 0:
        raise DegenerateEnsembleError("variance spectrum sums to zero")
    return float(plane.variance_spectrum[:2].sum() / total)


def project(plane: PcaPlane, curve: np.ndarray) -> tuple[np.ndarray, float]:
    """Coordinates of one curve on the plane plus its off-plane residual norm."""
    curve = np.asarray(curve, dtype=float)
    if curve.shape != plane.mean_curve.shape:
        raise LengthMismatchError(
            f"curve has {curve.shape[0]} samples, plane expects {plane.n_samples}"
        )
    centered = curve - plane.mean_curve
    point = plane.basis @ centered
    residual = centered - point @ plane.basis
    return point, float(np.linalg.norm(residual))


def project_all(plane: PcaPlane, curves: np.ndarray) -> ProjectionSet:
    """Row-wise :func:`project`, preserving member order."""
    curves = np.asarray(curves, dtype=float)
    if curves.shape[1] != plane.n_samples:
        raise LengthMismatchError(
            f"curves have {curves.shape[1]} samples, plane expects {plane.n_samples}"
        )
    centered = curves - plane.mean_curve
    points = centered @ plane.basis.T
    residuals = np.linalg.norm(centered - points @ plane.basis, axis=1)
    return ProjectionSet(points=points, residual_norms=residuals)


def reconstruct(plane: PcaPlane, point) -> np.ndarray:
    """Curve corresponding to a plane point: mean + z1*b1 + z2*b2."""
    z = np.asarray(point, dtype=float)
    return plane.mean_curve + z @ plane.basis
