"""Brute-force Fock-space engine: worked two-fermion example, identity checks."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fermient import (
    FockState,
    accessible_entropy_direct,
    charge_distribution,
    correlation_from_state,
    identity_check,
    measurement_entropy,
    occupation_spectrum,
    entropy_from_spectrum,
    random_fixed_number_state,
    random_slater_state,
    reduced_density_matrix,
    sector_decomposition,
    slater_state,
    von_neumann_entropy,
)
from fermient._accel import (
    annihilation_matrix_numba,
    annihilation_matrix_numpy,
    popcount,
    slater_amplitudes_numba,
    slater_amplitudes_numpy,
)
from fermient.errors import NumberConservationError
from fermient.kernel import CorrelationMatrix

LN2 = math.log(2.0)


def _basis_vector(index, n_modes):
    v = np.zeros(n_modes)
    v[index] = 1.0
    return v


def _two_fermion_state():
    # modes: 0 = A-up, 1 = A-down, 2 = B-up, 3 = B-down; the "up" orbital is
    # the oscillating mode, "down" the uniform one, each split evenly over
    # the two halves
    uniform = np.array([0, 1, 0, 1]) / np.sqrt(2)
    oscillating = np.array([1, 0, 1, 0]) / np.sqrt(2)
    return slater_state([oscillating, uniform])


def test_slater_single_orbital():
    state = slater_state([_basis_vector(0, 2)])
    assert_allclose(state.amplitudes, [0, 1, 0, 0], rtol=0, atol=1e-15)
    assert state.fixed_n == 1


def test_slater_filled_pair():
    state = slater_state([_basis_vector(0, 2), _basis_vector(1, 2)])
    assert_allclose(state.amplitudes, [0, 0, 0, 1], rtol=0, atol=1e-15)


def test_slater_rejects_dependent_orbitals():
    v = _basis_vector(0, 3)
    with pytest.raises(ValueError):
        slater_state([v, v])
    with pytest.raises(ValueError):
        slater_state([v, 2.0 * v + 1e-9 * _basis_vector(1, 3)])


def test_slater_rejects_overfilling():
    with pytest.raises(ValueError):
        slater_state([_basis_vector(0, 2), _basis_vector(1, 2), np.array([1.0, 1.0])])


def test_fock_state_validation():
    with pytest.raises(ValueError):
        FockState(n_modes=1, amplitudes=np.array([1.0, 1.0]))  # unnormalized
    with pytest.raises(ValueError):
        FockState(n_modes=2, amplitudes=np.array([1.0, 0.0]))  # wrong length
    with pytest.raises(ValueError):
        # weight-2 amplitude in a declared one-particle state
        FockState(n_modes=2, amplitudes=np.array([0, 0, 0, 1.0]), fixed_n=1)
    with pytest.raises(ValueError):
        FockState(n_modes=15, amplitudes=np.zeros(1 << 15))


def test_two_fermion_amplitude_weights():
    state = _two_fermion_state()
    weights = np.abs(state.amplitudes) ** 2
    support = {0b0011, 0b0110, 0b1001, 0b1100}
    for index in range(16):
        expected = 0.25 if index in support else 0.0
        assert abs(weights[index] - expected) < 1e-12


def test_two_fermion_entropies():
    state = _two_fermion_state()
    rho_a = reduced_density_matrix(state, 2)
    assert_allclose(np.sort(np.linalg.eigvalsh(rho_a)), [0.25, 0.25, 0.25, 0.25], atol=1e-12)
    assert abs(von_neumann_entropy(rho_a) - 2 * LN2) < 1e-12
    decomposition = sector_decomposition(rho_a, state.fixed_n)
    assert_allclose(decomposition.probabilities.p, [0.25, 0.5, 0.25], rtol=0, atol=1e-12)
    assert_allclose(decomposition.sector_entropies, [0.0, LN2, 0.0], rtol=0, atol=1e-12)
    assert abs(accessible_entropy_direct(decomposition) - 0.5 * LN2) < 1e-12


def test_one_in_each_box_is_unentangled():
    state = slater_state([_basis_vector(1, 4), _basis_vector(3, 4)])
    rho_a = reduced_density_matrix(state, 2)
    assert abs(von_neumann_entropy(rho_a)) < 1e-12
    decomposition = sector_decomposition(rho_a, state.fixed_n)
    assert_allclose(decomposition.probabilities.p, [0.0, 1.0, 0.0], rtol=0, atol=1e-12)
    assert abs(accessible_entropy_direct(decomposition)) < 1e-12


def test_vacuum_reduced_matrix():
    amps = np.zeros(4)
    amps[0] = 1.0
    state = FockState(n_modes=2, amplitudes=amps, fixed_n=0)
    rho_a = reduced_density_matrix(state, 1)
    assert_allclose(rho_a, np.diag([1.0, 0.0]), rtol=0, atol=0)
    assert von_neumann_entropy(rho_a) == 0.0


def test_reduced_density_matrix_cut_validation():
    state = _two_fermion_state()
    with pytest.raises(ValueError):
        reduced_density_matrix(state, 0)
    with pytest.raises(ValueError):
        reduced_density_matrix(state, 4)


def test_sector_decomposition_rejects_mixed_number_state():
    # (|00> + |11>)/sqrt(2) superposes N = 0 and N = 2
    amps = np.zeros(4, dtype=complex)
    amps[0b00] = amps[0b11] = 1 / np.sqrt(2)
    rho_a = reduced_density_matrix(FockState(n_modes=2, amplitudes=amps), 1)
    # rho_A is diagonal here, so corrupt it with an explicit off-block element
    rho_a[0, 1] = rho_a[1, 0] = 0.3
    with pytest.raises(NumberConservationError):
        sector_decomposition(rho_a, 1)


def test_sector_probabilities_match_spectral_route():
    rng = np.random.default_rng(42)
    for _ in range(5):
        z = rng.normal(size=(6, 3)) + 1j * rng.normal(size=(6, 3))
        q, _ = np.linalg.qr(z)
        state = slater_state(q.T)
        decomposition = sector_decomposition(reduced_density_matrix(state, 3), state.fixed_n)
        corr_a = CorrelationMatrix((q @ q.conj().T)[:3, :3])
        spectral = charge_distribution(occupation_spectrum(corr_a))
        assert np.abs(decomposition.probabilities.p - spectral.p).max() < 1e-9


def test_correlation_from_state_matches_orbitals():
    rng = np.random.default_rng(9)
    z = rng.normal(size=(7, 4)) + 1j * rng.normal(size=(7, 4))
    q, _ = np.linalg.qr(z)
    state = slater_state(q.T)
    corr = correlation_from_state(state).matrix
    assert np.abs(corr - q @ q.conj().T).max() < 1e-10


def test_spectral_entropy_agrees_with_brute_force():
    rng = np.random.default_rng(27)
    for _ in range(5):
        n_modes = int(rng.integers(4, 9))
        n_particles = int(rng.integers(1, n_modes))
        n_modes_a = int(rng.integers(1, n_modes))
        state = random_slater_state(rng, n_modes, n_particles)
        corr_a = CorrelationMatrix(correlation_from_state(state).matrix[:n_modes_a, :n_modes_a])
        s_spectral = entropy_from_spectrum(occupation_spectrum(corr_a))
        s_exact = von_neumann_entropy(reduced_density_matrix(state, n_modes_a))
        assert abs(s_spectral - s_exact) < 1e-9


def test_slater_state_stays_on_shell():
    rng = np.random.default_rng(12)
    state = random_slater_state(rng, 8, 3)
    weights = popcount(np.arange(state.amplitudes.size))
    off_shell = np.abs(state.amplitudes[weights != 3])
    assert off_shell.max() < 1e-12  # A and B occupations perfectly anticorrelated


def test_identity_for_slater_and_shell_states():
    rng = np.random.default_rng(77)
    for trial in range(40):
        n_modes = int(rng.integers(3, 11))
        n_particles = int(rng.integers(1, n_modes))
        n_modes_a = int(rng.integers(1, n_modes))
        if trial % 2:
            state = random_slater_state(rng, n_modes, n_particles)
        else:
            state = random_fixed_number_state(rng, n_modes, n_particles)
        rho_a = reduced_density_matrix(state, n_modes_a)
        s_a = von_neumann_entropy(rho_a)
        decomposition = sector_decomposition(rho_a, state.fixed_n)
        s_m = measurement_entropy(decomposition.probabilities)
        direct = accessible_entropy_direct(decomposition)
        assert abs(direct - (s_a - s_m)) < 1e-9
        assert direct > -1e-12
        assert direct <= s_a + 1e-12


def _permute_modes(amplitudes, n_modes, perm):
    out = np.zeros_like(amplitudes)
    for index in range(amplitudes.size):
        target = 0
        for mode in range(n_modes):
            if (index >> mode) & 1:
                target |= 1 << perm[mode]
        out[target] = amplitudes[index]
    return out


def test_entropies_invariant_under_block_mode_relabeling():
    rng = np.random.default_rng(31)
    state = random_slater_state(rng, 8, 4)
    perm = list(rng.permutation(3)) + [3 + int(p) for p in rng.permutation(5)]
    permuted = FockState(
        n_modes=8,
        amplitudes=_permute_modes(state.amplitudes, 8, perm),
        fixed_n=state.fixed_n,
    )
    def quantities(st):
        rho = reduced_density_matrix(st, 3)
        dec = sector_decomposition(rho, st.fixed_n)
        return (
            von_neumann_entropy(rho),
            measurement_entropy(dec.probabilities),
            accessible_entropy_direct(dec),
        )

    assert_allclose(quantities(state), quantities(permuted), rtol=0, atol=1e-10)


def test_generators_reproducible():
    a = random_slater_state(np.random.default_rng(101), 6, 3)
    b = random_slater_state(np.random.default_rng(101), 6, 3)
    assert_allclose(a.amplitudes, b.amplitudes, rtol=0, atol=0)
    assert identity_check(6, 25, seed=5) == identity_check(6, 25, seed=5)
    assert identity_check(6, 25, seed=5) < 1e-9


@pytest.mark.skipif(slater_amplitudes_numba is None, reason="numba backend not active")
def test_backends_agree():
    rng = np.random.default_rng(64)
    orbs = rng.normal(size=(3, 7)) + 1j * rng.normal(size=(3, 7))
    fast = slater_amplitudes_numba(np.ascontiguousarray(orbs))
    slow = slater_amplitudes_numpy(orbs)
    assert np.abs(fast - slow).max() < 1e-13
    psi = fast / np.linalg.norm(fast)
    assert np.abs(annihilation_matrix_numba(psi, 7) - annihilation_matrix_numpy(psi, 7)).max() < 1e-14
