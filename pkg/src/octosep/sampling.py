"""Seedable generation of octonionic Cholesky factors and Wishart matrices.

A sample is an upper-triangular factor T whose strictly-upper entries are
octonions with 8 independent standard-Gaussian components and whose
diagonal entries are square roots of Gamma variates (shape-scale
parameterization, scale 2):

    plain   variant: shape a + 4 (i - 1),      i = 1..dim, requires a > 0
    shifted variant: shape a + 1 + 4 (i - 1),  i = 1..dim, requires a > -1

The Wishart matrix is W = T^dagger T, Hermitian with nonnegative real
diagonal.

Reproducibility: every sample has its own RNG stream derived from the
master seed and the sample index by a keyed split
(numpy SeedSequence(entropy=seed, spawn_key=(stream,)) feeding PCG64),
so results are bit-identical regardless of batching, worker count, or
scheduling.  Within one sample, draw order is fixed: the strictly-upper
Gaussian block first (row-major), then the diagonal Gamma vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrices import OctoMatrix, gram

__all__ = [
    "GAMMA_VARIANTS",
    "InvalidShape",
    "SimulationConfig",
    "WishartSample",
    "stream_rng",
    "sample_cholesky",
    "sample_wishart",
    "sample_gaussian_wishart_2",
    "cholesky_batch",
    "gaussian_wishart_2_batch",
]

GAMMA_VARIANTS = ("plain", "shifted")


class InvalidShape(ValueError):
    """A Gamma shape parameter is not strictly positive."""


@dataclass(frozen=True)
class SimulationConfig:
    """Parameters of one Monte Carlo run."""

    a: float
    samples: int
    seed: int
    gamma_variant: str = "plain"
    dim: int = 4
    workers: int = 1

    def __post_init__(self):
        if self.gamma_variant not in GAMMA_VARIANTS:
            raise ValueError(f"gamma_variant must be one of {GAMMA_VARIANTS}")
        if self.dim not in (2, 3, 4):
            raise ValueError("dim must be 2, 3 or 4")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        shapes = self.gamma_shapes()
        if np.any(shapes <= 0.0):
            raise InvalidShape(
                f"Gamma shapes {shapes.tolist()} must all be positive "
                f"(a={self.a}, variant={self.gamma_variant})"
            )

    def gamma_shapes(self):
        """Diagonal Gamma shapes for this variant, i = 1..dim."""
        offset = 1.0 if self.gamma_variant == "shifted" else 0.0
        return self.a + offset + 4.0 * np.arange(self.dim)

    def to_dict(self):
        return {
            "a": self.a,
            "samples": self.samples,
            "seed": self.seed,
            "gamma_variant": self.gamma_variant,
            "dim": self.dim,
            "workers": self.workers,
        }


@dataclass(frozen=True)
class WishartSample:
    """One Hermitian Wishart matrix with its RNG provenance."""

    matrix: OctoMatrix
    provenance: tuple = field(default=(0, 0))  # (seed, stream index)


def stream_rng(seed, stream):
    """Independent generator for (seed, stream); the reproducibility contract."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stream,)))


def _fill_cholesky(out, rng, shapes, iu, ju):
    dim = out.shape[0]
    m = len(iu)
    out[iu, ju, :] = rng.standard_normal((m, 8))
    out[np.arange(dim), np.arange(dim), 0] = np.sqrt(rng.gamma(shapes, 2.0))


def cholesky_batch(cfg, start, count):
    """Factors for streams start..start+count-1, stacked as (count, dim, dim, 8)."""
    shapes = cfg.gamma_shapes()
    dim = cfg.dim
    iu, ju = np.triu_indices(dim, k=1)
    out = np.zeros((count, dim, dim, 8))
    for i in range(count):
        rng = stream_rng(cfg.seed, start + i)
        _fill_cholesky(out[i], rng, shapes, iu, ju)
    return out


def sample_cholesky(cfg, stream):
    """The upper-triangular factor for one (seed, stream); deterministic."""
    return OctoMatrix(cholesky_batch(cfg, stream, 1)[0])


def sample_wishart(cfg, stream):
    """W = T^dagger T for the stream's factor; Hermitian by construction."""
    t = cholesky_batch(cfg, stream, 1)[0]
    return WishartSample(OctoMatrix(gram(t)), provenance=(cfg.seed, stream))


def gaussian_wishart_2_batch(n, seed, start, count):
    """Stacked 2x2 Wisharts W = X^dagger X, X an n x 2 octonion-Gaussian matrix."""
    w = np.zeros((count, 2, 2, 8))
    for i in range(count):
        rng = stream_rng(seed, start + i)
        x = rng.standard_normal((n, 2, 8))
        w[i] = _gram_tall(x)
    return w


def _gram_tall(x):
    """X^dagger X for a single (n, 2, 8) stack, via the octonion product table."""
    from .octonion import oconj, omul

    n = x.shape[0]
    out = np.zeros((2, 2, 8))
    for i in range(2):
        for j in range(i, 2):
            acc = np.zeros(8)
            for k in range(n):
                acc += omul(oconj(x[k, i]), x[k, j])
            out[i, j] = acc
            if j > i:
                out[j, i, 0] = acc[0]
                out[j, i, 1:] = -acc[1:]
    return out


def sample_gaussian_wishart_2(n, seed, stream):
    """One 2x2 Gaussian-Wishart sample for the eigenvalue-density study."""
    if n < 1:
        raise ValueError("n must be at least 1")
    w = gaussian_wishart_2_batch(n, seed, stream, 1)[0]
    return WishartSample(OctoMatrix(w), provenance=(seed, stream))
