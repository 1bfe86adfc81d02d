"""Fock-space bit kernels with optional numba acceleration.

The many-body oracle iterates over all 2^m occupation bitstrings (mode 0 is
the least significant bit). Applying a creation operator a^dag(phi) or
stripping single modes off a state vector are the hot loops; everything else
in the package is dense linear algebra handled by LAPACK.

Two interchangeable implementations of each kernel live here:

* ``*_numpy``  -- vectorized pure-numpy fallback, always available;
* ``*_numba``  -- JIT-compiled bit loops, available when numba imports.

The public aliases ``slater_amplitudes`` / ``annihilation_matrix`` point at
the numba variants unless the environment variable ``FERMIENT_DISABLE_NUMBA``
is set to a truthy value (1/true/yes/on), in which case the numpy fallback is
used and numba is never imported. ``benchmarks/bench_backends.py`` times the
two paths against each other.

Sign convention: a basis ket indexed by bitstring b is the product of
creation operators in ascending mode order, so a^dag_i acting on b picks up
the parity of the number of occupied modes below i.
"""

import os

import numpy as np


def _truthy_env(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


NUMBA_DISABLED = _truthy_env("FERMIENT_DISABLE_NUMBA")

if NUMBA_DISABLED:
    njit = None
else:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        njit = None


def popcount(values) -> np.ndarray:
    """Number of set bits for each entry of an integer array."""
    values = np.asarray(values)
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(values.astype(np.uint64)).astype(np.int64)
    out = np.zeros(values.shape, dtype=np.int64)
    v = values.astype(np.uint64).copy()
    while v.any():
        out += (v & 1).astype(np.int64)
        v >>= 1
    return out


# ---------------------------------------------------------------------------
# pure-numpy fallback kernels
# ---------------------------------------------------------------------------

def slater_amplitudes_numpy(orbitals: np.ndarray) -> np.ndarray:
    """Amplitude vector of prod_k a^dag(phi_k)|0> over 2^m bitstrings.

    ``orbitals`` has shape (n_orbitals, n_modes); row k is phi_k. Operators
    are applied right to left, so the first row acts last. The result is not
    normalized.
    """
    orbitals = np.ascontiguousarray(orbitals, dtype=np.complex128)
    n_orb, n_modes = orbitals.shape
    dim = 1 << n_modes
    basis = np.arange(dim)
    pc = popcount(basis)
    psi = np.zeros(dim, dtype=np.complex128)
    psi[0] = 1.0
    for k in range(n_orb - 1, -1, -1):
        out = np.zeros(dim, dtype=np.complex128)
        for i in range(n_modes):
            coeff = orbitals[k, i]
            if coeff == 0:
                continue
            free = basis[(basis >> i) & 1 == 0]
            sign = 1.0 - 2.0 * (pc[free & ((1 << i) - 1)] & 1)
            out[free | (1 << i)] += (sign * coeff) * psi[free]
        psi = out
    return psi


def annihilation_matrix_numpy(psi: np.ndarray, n_modes: int) -> np.ndarray:
    """Stack the m vectors a_i |psi> as rows of an (m, 2^m) array."""
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    dim = psi.shape[0]
    basis = np.arange(dim)
    pc = popcount(basis)
    out = np.zeros((n_modes, dim), dtype=np.complex128)
    for i in range(n_modes):
        occ = basis[(basis >> i) & 1 == 1]
        sign = 1.0 - 2.0 * (pc[occ & ((1 << i) - 1)] & 1)
        out[i, occ ^ (1 << i)] = sign * psi[occ]
    return out


# ---------------------------------------------------------------------------
# numba kernels (same contracts, explicit bit loops)
# ---------------------------------------------------------------------------

def _slater_amplitudes_loops(orbitals):
    n_orb, n_modes = orbitals.shape
    dim = 1 << n_modes
    psi = np.zeros(dim, dtype=np.complex128)
    psi[0] = 1.0
    for k in range(n_orb - 1, -1, -1):
        out = np.zeros(dim, dtype=np.complex128)
        for b in range(dim):
            amp = psi[b]
            if amp == 0:
                continue
            for i in range(n_modes):
                if (b >> i) & 1 == 0:
                    t = b & ((1 << i) - 1)
                    c = 0
                    while t:
                        t &= t - 1
                        c += 1
                    if c & 1:
                        out[b | (1 << i)] -= orbitals[k, i] * amp
                    else:
                        out[b | (1 << i)] += orbitals[k, i] * amp
        psi = out
    return psi


def _annihilation_matrix_loops(psi, n_modes):
    dim = psi.shape[0]
    out = np.zeros((n_modes, dim), dtype=np.complex128)
    for b in range(dim):
        amp = psi[b]
        if amp == 0:
            continue
        for i in range(n_modes):
            if (b >> i) & 1:
                t = b & ((1 << i) - 1)
                c = 0
                while t:
                    t &= t - 1
                    c += 1
                if c & 1:
                    out[i, b ^ (1 << i)] = -amp
                else:
                    out[i, b ^ (1 << i)] = amp
    return out


if njit is not None:
    slater_amplitudes_numba = njit(cache=True)(_slater_amplitudes_loops)
    annihilation_matrix_numba = njit(cache=True)(_annihilation_matrix_loops)
else:
    slater_amplitudes_numba = None
    annihilation_matrix_numba = None

USING_NUMBA = slater_amplitudes_numba is not None

if USING_NUMBA:
    slater_amplitudes = slater_amplitudes_numba
    annihilation_matrix = annihilation_matrix_numba
else:
    slater_amplitudes = slater_amplitudes_numpy
    annihilation_matrix = annihilation_matrix_numpy
