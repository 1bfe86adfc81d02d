#!/usr/bin/env python3
"""Time the numba Fock-space kernels against the pure-numpy fallback.

Run without FERMIENT_DISABLE_NUMBA so both backends are importable:

    python3 benchmarks/bench_backends.py

The first numba call includes JIT compilation and is excluded by a warmup
pass. Typical output shows the bit-loop kernels a few times faster than the
vectorized numpy path at 14 modes; at small mode counts the numpy path wins
on dispatch overhead, which is why both stay available.
"""

import time

import numpy as np

from fermient._accel import (
    USING_NUMBA,
    annihilation_matrix_numba,
    annihilation_matrix_numpy,
    slater_amplitudes_numba,
    slater_amplitudes_numpy,
)


def _time(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    if not USING_NUMBA:
        print("numba backend unavailable (disabled or not installed); nothing to compare")
        return
    rng = np.random.default_rng(5)
    print(f"{'modes':>5} {'kernel':>20} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8}")
    for n_modes in (10, 12, 14):
        n_orb = n_modes // 2
        orbs = np.ascontiguousarray(
            rng.normal(size=(n_orb, n_modes)) + 1j * rng.normal(size=(n_orb, n_modes))
        )
        slater_amplitudes_numba(orbs)  # warmup / JIT
        t_np, psi = _time(slater_amplitudes_numpy, orbs)
        t_nb, psi_nb = _time(slater_amplitudes_numba, orbs)
        assert np.abs(psi - psi_nb).max() < 1e-12
        print(
            f"{n_modes:>5} {'slater_amplitudes':>20} {t_np * 1e3:>12.3f} "
            f"{t_nb * 1e3:>12.3f} {t_np / t_nb:>8.2f}"
        )
        psi = psi / np.linalg.norm(psi)
        annihilation_matrix_numba(psi, n_modes)  # warmup / JIT
        t_np, mat = _time(annihilation_matrix_numpy, psi, n_modes)
        t_nb, mat_nb = _time(annihilation_matrix_numba, psi, n_modes)
        assert np.abs(mat - mat_nb).max() < 1e-12
        print(
            f"{n_modes:>5} {'annihilation_matrix':>20} {t_np * 1e3:>12.3f} "
            f"{t_nb * 1e3:>12.3f} {t_np / t_nb:>8.2f}"
        )


if __name__ == "__main__":
    main()
