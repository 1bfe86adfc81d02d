"""Exact Fock-space engine for small fermion systems (up to 14 modes).

This module is the ground truth the fast spectral path is validated
against: states are explicit amplitude vectors over all 2^m occupation
bitstrings, reduced density matrices are built by brute-force partial
trace, and the accessible entropy is assembled directly from the
particle-number sector decomposition.

Conventions
-----------
* Mode 0 is the least significant bit of the basis index.
* A basis ket is the ascending-order product of creation operators, so
  a^dag_i applied to a bitstring picks up the parity of the occupied
  modes below i.
* Region A is always the contiguous low-bit prefix, modes 0..m_A-1. With
  these two choices the occupation-basis partial trace is sign-consistent
  for number-conserving states, and all entropies are independent of the
  ordering (checked by a permutation test in the test suite).
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import xlogy

from . import fcs
from ._accel import annihilation_matrix, popcount, slater_amplitudes
from .errors import NumberConservationError, NumericalFailureError
from .fcs import ChargeDistribution
from .kernel import CorrelationMatrix

#: hard cap keeping full-suite brute-force runs in the seconds range
MAX_MODES = 14
#: norm / support / off-block tolerances for state validation
STATE_TOL = 1e-12
#: sectors with probability below this floor carry no defined entropy
SECTOR_PROB_FLOOR = 1e-14
#: weight allowed in sectors that exceed the global particle number
NEGATIVE_SECTOR_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FockState:
    """Normalized amplitude vector over the 2^m occupation basis.

    ``fixed_n`` asserts that the state is an eigenstate of the total number
    operator; amplitudes outside the corresponding Hamming-weight shell must
    vanish.
    """

    n_modes: int
    amplitudes: np.ndarray
    fixed_n: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.n_modes <= MAX_MODES:
            raise ValueError(f"n_modes must lie in [1, {MAX_MODES}]")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n_modes,):
            raise ValueError(f"expected {1 << self.n_modes} amplitudes, got shape {amps.shape}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > STATE_TOL:
            raise ValueError(f"state norm {norm!r} differs from 1 beyond tolerance")
        if self.fixed_n is not None:
            if not 0 <= self.fixed_n <= self.n_modes:
                raise ValueError("fixed_n must lie in [0, n_modes]")
            off_shell = popcount(np.arange(amps.size)) != self.fixed_n
            leak = float(np.abs(amps[off_shell]).max()) if off_shell.any() else 0.0
            if leak > STATE_TOL:
                raise ValueError(f"amplitude {leak:.3e} outside the N={self.fixed_n} shell")
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True, eq=False)
class SectorDecomposition:
    """Charge probabilities and per-sector entanglement entropies of rho_A.

    ``sector_entropies[n]`` is the von Neumann entropy of the normalized
    n-particle block; it is set to 0 where the sector probability is below
    SECTOR_PROB_FLOOR (no block to normalize).
    """

    probabilities: ChargeDistribution
    sector_entropies: np.ndarray


def slater_state(orbitals: Sequence[np.ndarray]) -> FockState:
    """Antisymmetrized product state of the given single-particle orbitals.

    Parameters
    ----------
    orbitals : sequence of m-vectors
        Single-particle wavefunctions; need not be orthonormal but must be
        linearly independent (Gram determinant above 1e-12).

    Returns
    -------
    FockState
        Normalized state with fixed_n = len(orbitals).
    """
    orbs = np.asarray(orbitals, dtype=np.complex128)
    if orbs.ndim == 1:
        orbs = orbs[None, :]
    if orbs.ndim != 2:
        raise ValueError("orbitals must form an (n_orbitals, n_modes) array")
    n_orb, n_modes = orbs.shape
    if n_orb < 1:
        raise ValueError("at least one orbital is required")
    if n_orb > n_modes:
        raise ValueError("cannot place more fermions than modes")
    gram = orbs @ orbs.conj().T
    if abs(np.linalg.det(gram)) < 1e-12:
        raise ValueError("orbitals are linearly dependent (Gram determinant below 1e-12)")
    amps = slater_amplitudes(np.ascontiguousarray(orbs))
    norm = float(np.linalg.norm(amps))
    if norm < 1e-8:
        raise NumericalFailureError("Slater build produced a numerically null state")
    return FockState(n_modes=n_modes, amplitudes=amps / norm, fixed_n=n_orb)


def reduced_density_matrix(state: FockState, n_modes_a: int) -> np.ndarray:
    """Partial trace over the complement of region A = modes 0..n_modes_a-1.

    A must be the contiguous low-bit prefix; only then is the plain
    occupation-basis trace sign-consistent for fermions, which is why a
    site count rather than a mode mask is accepted.
    """
    if not 1 <= n_modes_a < state.n_modes:
        raise ValueError("n_modes_a must satisfy 1 <= n_modes_a < n_modes")
    block = state.amplitudes.reshape(1 << (state.n_modes - n_modes_a), 1 << n_modes_a)
    return block.T @ block.conj()


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr rho ln rho via eigendecomposition; round-off negatives are clipped."""
    evals = np.linalg.eigvalsh(rho)
    if float(evals.min()) < -1e-10:
        raise NumericalFailureError(f"density matrix eigenvalue {evals.min():.3e} < 0")
    evals = np.clip(evals, 0.0, None)
    return float(-xlogy(evals, evals).sum()) + 0.0


def sector_decomposition(rho_a: np.ndarray, fixed_n: int) -> SectorDecomposition:
    """Decompose rho_A into particle-number sectors.

    For a global state with fixed total number the reduced matrix is exactly
    block diagonal in the local number basis; off-block elements above
    1e-12 raise NumberConservationError. Sector probabilities are the block
    traces, sector entropies the von Neumann entropies of the normalized
    blocks.
    """
    dim = rho_a.shape[0]
    n_modes_a = dim.bit_length() - 1
    if rho_a.shape != (dim, dim) or (1 << n_modes_a) != dim:
        raise ValueError("rho_a must be square with power-of-two dimension")
    weights = popcount(np.arange(dim))
    off_block = weights[:, None] != weights[None, :]
    leak = float(np.abs(rho_a[off_block]).max()) if off_block.any() else 0.0
    if leak > STATE_TOL:
        raise NumberConservationError(
            f"off-block element {leak:.3e}: state does not conserve particle number"
        )
    probs = np.zeros(n_modes_a + 1)
    entropies = np.zeros(n_modes_a + 1)
    for n in range(n_modes_a + 1):
        sel = np.flatnonzero(weights == n)
        block = rho_a[np.ix_(sel, sel)]
        p_n = float(block.trace().real)
        probs[n] = p_n
        if p_n > SECTOR_PROB_FLOOR:
            entropies[n] = von_neumann_entropy(block / p_n)
    if fixed_n is not None and fixed_n < n_modes_a:
        stray = float(probs[fixed_n + 1 :].max(initial=0.0))
        if stray > NEGATIVE_SECTOR_TOL:
            raise NumberConservationError(
                f"sector above the global particle number carries weight {stray:.3e}"
            )
    return SectorDecomposition(
        probabilities=ChargeDistribution(probs),
        sector_entropies=entropies,
    )


def accessible_entropy_direct(decomposition: SectorDecomposition) -> float:
    """S_res as the probability-weighted average of sector entropies."""
    p = decomposition.probabilities.p
    return float((p * decomposition.sector_entropies).sum()) + 0.0


def correlation_from_state(state: FockState) -> CorrelationMatrix:
    """One-body matrix C[i][j] = <a^dag_j a_i> evaluated on the Fock state."""
    modes = annihilation_matrix(state.amplitudes, state.n_modes)
    return CorrelationMatrix(modes @ modes.conj().T)


def random_slater_state(rng: np.random.Generator, n_modes: int, n_particles: int) -> FockState:
    """Slater state of a Haar-random orthonormal orbital frame."""
    z = rng.normal(size=(n_modes, n_particles)) + 1j * rng.normal(size=(n_modes, n_particles))
    q, _ = np.linalg.qr(z)
    return slater_state(q.T)


def random_fixed_number_state(
    rng: np.random.Generator, n_modes: int, n_particles: int
) -> FockState:
    """Random non-Gaussian state supported on one Hamming-weight shell."""
    dim = 1 << n_modes
    shell = popcount(np.arange(dim)) == n_particles
    count = int(shell.sum())
    amps = np.zeros(dim, dtype=np.complex128)
    amps[shell] = rng.normal(size=count) + 1j * rng.normal(size=count)
    amps /= np.linalg.norm(amps)
    return FockState(n_modes=n_modes, amplitudes=amps, fixed_n=n_particles)


def identity_deviation(state: FockState, n_modes_a: int) -> float:
    """|S_res(direct) - (S_A - S_m)| for one state and cut."""
    rho_a = reduced_density_matrix(state, n_modes_a)
    s_a = von_neumann_entropy(rho_a)
    decomposition = sector_decomposition(rho_a, state.fixed_n)
    s_m = fcs.measurement_entropy(decomposition.probabilities)
    direct = accessible_entropy_direct(decomposition)
    return abs(direct - (s_a - s_m))


def identity_check(n_modes: int, trials: int, seed: int) -> float:
    """Worst identity deviation over a reproducible randomized suite.

    Draws mostly Haar-random Slater states with one random shell state in
    four (the accessible-entropy identity holds for any fixed-number state,
    Gaussian or not); particle number and cut position vary per trial.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if n_modes < 2:
        raise ValueError("need at least two modes to form a cut")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for trial in range(trials):
        n_particles = int(rng.integers(1, n_modes))
        n_modes_a = int(rng.integers(1, n_modes))
        if trial % 4 == 3:
            state = random_fixed_number_state(rng, n_modes, n_particles)
        else:
            state = random_slater_state(rng, n_modes, n_particles)
        worst = max(worst, identity_deviation(state, n_modes_a))
    return worst
