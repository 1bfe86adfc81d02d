"""Free-fermion correlation matrices for lattice regions.

A Fermi-sea ground state is fully characterized by its two-point function
C[i][j] = <a^dag_j a_i>. Restricting C to the sites of a region A gives a
Hermitian matrix with spectrum in [0, 1] that determines every entanglement
and counting-statistics quantity downstream. Three ground-state kernels are
provided:

* ``sine_kernel_1d``  -- infinite 1d lattice filled up to momentum k_F;
* ``square_sea_2d``   -- 2d lattice with the square sea [-k_F, k_F]^2,
  a separable product of 1d factors;
* ``finite_ring``     -- tight-binding ring with the lowest-|k| modes filled,
  useful for cross-checks against the exact Fock-space oracle.

Regions are lists of integer lattice coordinates; the continuum limit is
represented by the lattice kernel with unit spacing.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import InvalidCorrelationError

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class RegionSpec:
    """Ordered set of lattice sites forming region A.

    Parameters
    ----------
    dimension : int
        1 or 2.
    sites : tuple
        Distinct integer coordinates (ints in 1d, (x, y) pairs in 2d).
    scale : int
        Linear size L used by sweep harnesses; defaults to the site count
        in 1d constructions.
    """

    dimension: int
    sites: tuple
    scale: int

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.dimension}")
        sites = tuple(
            tuple(int(c) for c in s) if self.dimension == 2 else int(s)
            for s in self.sites
        )
        if not sites:
            raise ValueError("region must contain at least one site")
        if len(set(sites)) != len(sites):
            raise ValueError("region sites must be distinct")
        if self.dimension == 2 and any(len(s) != 2 for s in sites):
            raise ValueError("2d sites must be (x, y) pairs")
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")
        object.__setattr__(self, "sites", sites)

    @classmethod
    def interval(cls, length: int) -> "RegionSpec":
        """Contiguous 1d interval {0, ..., length - 1}."""
        return cls(dimension=1, sites=tuple(range(length)), scale=length)

    @classmethod
    def square(cls, side: int) -> "RegionSpec":
        """Axis-aligned side x side square of lattice sites."""
        sites = tuple((x, y) for x in range(side) for y in range(side))
        return cls(dimension=2, sites=sites, scale=side)

    def __len__(self):
        return len(self.sites)


def _check_kf(k_f: float) -> float:
    k_f = float(k_f)
    if not 0.0 < k_f <= np.pi:
        raise ValueError(f"k_F must lie in (0, pi], got {k_f}")
    return k_f


@dataclass(frozen=True)
class SineKernel1D:
    """1d Fermi sea [-k_F, k_F]; half filling is k_F = pi/2."""

    k_f: float

    def __post_init__(self):
        object.__setattr__(self, "k_f", _check_kf(self.k_f))


@dataclass(frozen=True)
class SquareSea2D:
    """2d square Fermi sea [-k_F, k_F]^2."""

    k_f: float

    def __post_init__(self):
        object.__setattr__(self, "k_f", _check_kf(self.k_f))


@dataclass(frozen=True)
class FiniteRing:
    """n_sites-site ring with the n_filled lowest-|k| momentum modes filled."""

    n_sites: int
    n_filled: int

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be positive")
        if not 0 <= self.n_filled <= self.n_sites:
            raise ValueError("n_filled must lie in [0, n_sites]")


FermiSeaSpec = Union[SineKernel1D, SquareSea2D, FiniteRing]


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Hermitian two-point matrix of a region, spectrum in [0, 1]."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidCorrelationError(f"expected a square matrix, got shape {m.shape}")
        dev = float(np.abs(m - m.conj().T).max())
        if dev > HERMITICITY_TOL:
            raise InvalidCorrelationError(f"matrix is not Hermitian: max deviation {dev:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _sine_factor(coords: np.ndarray, k_f: float) -> np.ndarray:
    """1d sine-kernel factor sin(k_F d)/(pi d), diagonal k_F/pi."""
    d = coords[:, None] - coords[None, :]
    safe = np.where(d == 0, 1, d)
    return np.where(d == 0, k_f / np.pi, np.sin(k_f * d) / (np.pi * safe))


def sine_kernel_1d(region: RegionSpec, k_f: float) -> CorrelationMatrix:
    """Ground-state correlation matrix of a 1d lattice Fermi sea.

    Entries are C[i][j] = sin(k_F (x_i - x_j)) / (pi (x_i - x_j)) off the
    diagonal and k_F/pi on it, for the region's site coordinates.

    Parameters
    ----------
    region : RegionSpec
        1d region.
    k_f : float
        Fermi momentum in (0, pi].
    """
    k_f = _check_kf(k_f)
    if region.dimension != 1:
        raise ValueError("sine_kernel_1d requires a 1d region")
    coords = np.asarray(region.sites, dtype=np.int64)
    return CorrelationMatrix(_sine_factor(coords, k_f))


def square_sea_2d(region: RegionSpec, k_f: float) -> CorrelationMatrix:
    """Correlation matrix of the 2d square Fermi sea [-k_F, k_F]^2.

    The kernel factorizes into a product of 1d sine-kernel factors along
    each axis, so the spectrum again lies in [0, 1].
    """
    k_f = _check_kf(k_f)
    if region.dimension != 2:
        raise ValueError("square_sea_2d requires a 2d region")
    coords = np.asarray(region.sites, dtype=np.int64)
    return CorrelationMatrix(
        _sine_factor(coords[:, 0], k_f) * _sine_factor(coords[:, 1], k_f)
    )


def ring_momenta(n_sites: int, n_filled: int) -> np.ndarray:
    """Occupied momenta of the filled ring, in fill order.

    Modes are filled by ascending |k| with the +|k| member of each Kramers
    pair taken before -|k| (deterministic tie-break at the Fermi level).
    Momentum ordering is resolved on exact integer indices so the tie-break
    cannot be upset by floating-point rounding.
    """
    idx = np.arange(n_sites)
    signed = np.where(idx <= n_sites // 2, idx, idx - n_sites)
    order = np.lexsort((signed < 0, np.abs(signed)))
    return 2.0 * np.pi * signed[order[:n_filled]] / n_sites


def finite_ring(n_sites: int, n_filled: int, region: RegionSpec) -> CorrelationMatrix:
    """Correlation matrix of a partially filled tight-binding ring.

    C[i][j] = (1/n_sites) sum over occupied k of exp(i k (x_i - x_j)), with
    the occupied set defined by :func:`ring_momenta`. In the limit
    n_sites -> infinity at fixed filling n_filled/n_sites = k_F/pi this
    converges entrywise to :func:`sine_kernel_1d`.
    """
    FiniteRing(n_sites, n_filled)  # reuse the field validation
    if region.dimension != 1:
        raise ValueError("finite_ring requires a 1d region")
    coords = np.asarray(region.sites, dtype=np.int64)
    if coords.min() < 0 or coords.max() >= n_sites:
        raise ValueError("region sites must lie in {0, ..., n_sites - 1}")
    if n_filled == 0:
        return CorrelationMatrix(np.zeros((len(coords), len(coords)), dtype=np.complex128))
    ks = ring_momenta(n_sites, n_filled)
    d = coords[:, None] - coords[None, :]
    lo, hi = int(d.min()), int(d.max())
    span = np.arange(lo, hi + 1)
    table = np.zeros(span.size, dtype=np.complex128)
    # chunk over momenta to bound the (span x momenta) intermediate
    for block in np.array_split(ks, max(1, ks.size // 512)):
        table += np.exp(1j * np.multiply.outer(span, block)).sum(axis=1)
    table /= n_sites
    return CorrelationMatrix(table[d - lo])


def build_correlation(sea: FermiSeaSpec, region: RegionSpec) -> CorrelationMatrix:
    """Dispatch a Fermi-sea spec to the matching kernel builder."""
    if isinstance(sea, SineKernel1D):
        return sine_kernel_1d(region, sea.k_f)
    if isinstance(sea, SquareSea2D):
        return square_sea_2d(region, sea.k_f)
    if isinstance(sea, FiniteRing):
        return finite_ring(sea.n_sites, sea.n_filled, region)
    raise TypeError(f"unknown Fermi-sea spec {sea!r}")
