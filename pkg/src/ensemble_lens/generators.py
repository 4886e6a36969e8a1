"""Deterministic synthetic benchmark ensembles.

Both generators draw their parameters from a SplitMix64 stream so that
(kind, n, seed, t_samples) fully determines every byte of the output, across
runs and platforms.  Draws are consumed in member order, parameters left to
right; parallel generation would reorder the stream and is not offered.
"""

from __future__ import annotations

import math

import numpy as np

from .ensemble import AugmentedEnsemble

MIN_MEMBERS = 3
MIN_T_SAMPLES = 8

OSCILLATING_PARAM_RANGE = (-7.0, 7.0)
CAMPBELL_PARAM_RANGE = (-1.0, 5.0)
CAMPBELL_K1 = 60.0
CAMPBELL_K2 = 0.002
CAMPBELL_DENOM_EPS = 1e-12
DEFAULT_MEMBERS = 400

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit SplitMix generator; uniform doubles via the top 53 bits."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_uint64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + self.next_float() * (hi - lo)


def _draw_params(n: int, n_params: int, seed: int, lo: float, hi: float) -> np.ndarray:
    rng = SplitMix64(seed)
    return np.array([[rng.uniform(lo, hi) for _ in range(n_params)] for _ in range(n)])


def _check_spec(n: int, t_samples: int = MIN_T_SAMPLES):
    if n < MIN_MEMBERS:
        raise ValueError(f"need at least {MIN_MEMBERS} members, got {n}")
    if t_samples < MIN_T_SAMPLES:
        raise ValueError(f"need at least {MIN_T_SAMPLES} time samples, got {t_samples}")


def oscillating_curve(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """One oscillating-tangents curve: atan(X1) cos(t) + atan(X2) sin(t)."""
    return math.atan(x[0]) * np.cos(t) + math.atan(x[1]) * np.sin(t)


def gen_oscillating_tangents(n: int, seed: int, t_samples: int = 100) -> AugmentedEnsemble:
    """Sinusoids y(t) = atan(X1) cos(t) + atan(X2) sin(t), X uniform on [-7, 7].

    The time grid is t_k = 2 pi k / t_samples for k = 0..t_samples-1: the
    periodic endpoint 2 pi would duplicate sample 0 and is excluded.
    """
    _check_spec(n, t_samples)
    lo, hi = OSCILLATING_PARAM_RANGE
    params = _draw_params(n, 2, seed, lo, hi)
    t = 2.0 * math.pi * np.arange(t_samples) / t_samples
    amp = np.arctan(params)
    curves = np.outer(amp[:, 0], np.cos(t)) + np.outer(amp[:, 1], np.sin(t))
    return AugmentedEnsemble(
        name=f"oscillating-tangents-n{n}-seed{seed}",
        time=t,
        curves=curves,
        param_names=("X1", "X2"),
        params=params,
    )


def campbell_curve(x: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """One Campbell curve: a Gaussian peak travelling with X2 plus an
    exponential tail whose growth rate follows X1."""
    x1, x2, x3, x4 = x
    denom = CAMPBELL_K1 * x1 * x1 + x3 * x3
    if denom < CAMPBELL_DENOM_EPS:
        peak = np.zeros_like(tau)
    else:
        peak = x1 * np.exp(-((tau - 10.0 * x2) ** 2) / denom)
    return 10.0 + peak + x2 * x4 * np.exp(CAMPBELL_K2 * x1 * tau)


def gen_campbell1d(n: int, seed: int) -> AugmentedEnsemble:
    """Campbell curves on tau = -90..90 (step 1), X1..X4 uniform on [-1, 5]."""
    _check_spec(n)
    lo, hi = CAMPBELL_PARAM_RANGE
    params = _draw_params(n, 4, seed, lo, hi)
    tau = np.arange(-90.0, 91.0)
    curves = np.array([campbell_curve(x, tau) for x in params])
    return AugmentedEnsemble(
        name=f"campbell1d-n{n}-seed{seed}",
        time=tau,
        curves=curves,
        param_names=("X1", "X2", "X3", "X4"),
        params=params,
    )


GENERATORS = {
    "oscillating-tangents": gen_oscillating_tangents,
    "campbell1d": gen_campbell1d,
}


def generate(kind: str, n: int, seed: int, t_samples: int = 100) -> AugmentedEnsemble:
    """Dispatch by kind name (hyphenated, as on the command line)."""
    if kind not in GENERATORS:
        raise ValueError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}")
    if kind == "oscillating-tangents":
        return gen_oscillating_tangents(n, seed, t_samples)
    return gen_campbell1d(n, seed)
