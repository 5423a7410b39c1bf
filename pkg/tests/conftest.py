"""Shared instance generators for the test suite. All randomness is seeded."""

from __future__ import annotations

import numpy as np

from transportkernels import Histogram, WeightSpec


def random_histogram(rng: np.random.Generator, d: int, mass: int) -> Histogram:
    return Histogram(tuple(int(v) for v in rng.multinomial(mass, np.ones(d) / d)))


def random_pair(rng: np.random.Generator, d: int, mass: int) -> tuple[Histogram, Histogram]:
    return random_histogram(rng, d, mass), random_histogram(rng, d, mass)


def random_psd_weight(rng: np.random.Generator, d: int, normalize: bool = False) -> WeightSpec:
    """Entrywise nonnegative positive semidefinite K = H^T H, optionally unit-diagonal."""
    h = rng.random((d, d)) + 0.1
    k = h.T @ h
    if normalize:
        dg = np.sqrt(np.diag(k))
        k = k / np.outer(dg, dg)
    return WeightSpec.from_weight(k)


def random_cost(rng: np.random.Generator, d: int, scale: float = 2.0) -> WeightSpec:
    return WeightSpec.from_cost(rng.random((d, d)) * scale)


def integer_monge_cost(rng: np.random.Generator, d: int, lam: int) -> WeightSpec:
    """m_ij = f(i) + g(j) - lam*i*j with integer f, g; Monge for lam >= 0."""
    f = rng.integers(0, 40, size=d)
    g = rng.integers(0, 40, size=d)
    i = np.arange(1, d + 1)
    m = f[:, None] + g[None, :] - lam * np.outer(i, i)
    return WeightSpec.from_cost(m.astype(float))
