"""Shared helpers for the test suite."""

import numpy as np

from fermient import CorrelationMatrix


def random_correlation(rng: np.random.Generator, dim: int) -> CorrelationMatrix:
    """Random valid correlation matrix: unitary conjugation of nu in [0, 1]."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(z)
    nu = rng.uniform(0.0, 1.0, size=dim)
    mat = (q * nu) @ q.conj().T
    return CorrelationMatrix((mat + mat.conj().T) / 2.0)


def bernoulli_convolution(occupations) -> np.ndarray:
    """Charge distribution by direct convolution of Bernoulli factors."""
    p = np.array([1.0])
    for nu in occupations:
        p = np.convolve(p, [1.0 - nu, nu])
    return p
