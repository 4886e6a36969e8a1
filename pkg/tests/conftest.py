import numpy as np
import pytest

from ensemble_lens import AugmentedEnsemble


def make_rank2_ensemble(rng, m=40, t=30):
    """Curves that lie exactly in a random 2-D affine subspace."""
    mean = rng.normal(size=t)
    u = rng.normal(size=t)
    u /= np.linalg.norm(u)
    v = rng.normal(size=t)
    v -= (v @ u) * u
    v /= np.linalg.norm(v)
    coeff = rng.normal(scale=[2.0, 0.7], size=(m, 2))
    curves = mean + coeff[:, :1] * u + coeff[:, 1:] * v
    params = rng.uniform(size=(m, 2))
    return AugmentedEnsemble(
        name="rank2",
        time=np.arange(float(t)),
        curves=curves,
        param_names=("a", "b"),
        params=params,
    )


def make_cloud_ensemble(rng, m=200, t=12, spread=1.0, modes=1):
    """Full-rank ensemble whose plane projection is a Gaussian (mixture) cloud."""
    centers = rng.uniform(-4.0, 4.0, size=(modes, t))
    which = rng.integers(modes, size=m)
    curves = centers[which] + rng.normal(scale=spread, size=(m, t))
    params = rng.uniform(size=(m, 3))
    return AugmentedEnsemble(
        name="cloud",
        time=np.arange(float(t)),
        curves=curves,
        param_names=("p0", "p1", "p2"),
        params=params,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
