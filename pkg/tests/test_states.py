"""Ground and thermal state preparation."""

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from spinbattery.errors import ValidationError
from spinbattery.linalg import PAULI_X, kron_embed
from spinbattery.model import build_h0, normalize, uniform_chain
from spinbattery.states import (
    BiasKind,
    QuantumState,
    StateKind,
    SymmetryBias,
    ThermalParams,
    bias_operator,
    ground_state,
    staggered_signs,
    thermal_state,
)

RNG = np.random.default_rng(20240813)


def random_normalized(dim, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return normalize(m + m.conj().T)


def gibbs_reference(matrix, beta):
    """Independent route: dense expm, then normalize the trace."""
    rho = scipy.linalg.expm(-beta * matrix)
    return rho / np.trace(rho).real


class TestQuantumState:
    def test_pure_state_roundtrip(self):
        v = np.array([1.0, 1.0j]) / np.sqrt(2)
        s = QuantumState(kind=StateKind.PURE, vector=v)
        assert s.dim == 2
        assert np.allclose(s.density_matrix(), np.outer(v, v.conj()))

    def test_pure_norm_enforced(self):
        with pytest.raises(ValidationError):
            QuantumState(kind=StateKind.PURE, vector=np.array([1.0, 1.0]))

    def test_pure_requires_vector(self):
        with pytest.raises(ValidationError):
            QuantumState(kind=StateKind.PURE, vector=np.eye(2))
        with pytest.raises(ValidationError):
            QuantumState(kind=StateKind.PURE)

    def test_mixed_trace_enforced(self):
        with pytest.raises(ValidationError):
            QuantumState(kind=StateKind.MIXED, density=np.eye(4))

    def test_mixed_passthrough(self):
        rho = np.eye(4) / 4.0
        s = QuantumState(kind=StateKind.MIXED, density=rho)
        assert s.dim == 4
        assert s.density_matrix() is rho


class TestThermalParams:
    def test_negative_beta_rejected(self):
        with pytest.raises(ValidationError):
            ThermalParams(beta=-0.5)
        assert ThermalParams(beta=0.0).beta == 0.0


class TestStaggeredSigns:
    def test_starts_negative_at_site_one(self):
        assert np.array_equal(staggered_signs(4), [-1.0, 1.0, -1.0, 1.0])
        assert np.array_equal(staggered_signs(3), [-1.0, 1.0, -1.0])


class TestBiasOperator:
    def test_uniform_two_sites(self):
        op = bias_operator(2, SymmetryBias(BiasKind.UNIFORM, eps=0.01))
        expected = 0.01 * (np.kron(PAULI_X, np.eye(2)) + np.kron(np.eye(2), PAULI_X))
        assert np.allclose(op, expected)

    def test_staggered_two_sites(self):
        op = bias_operator(2, SymmetryBias(BiasKind.STAGGERED, eps=0.01))
        expected = 0.01 * (-np.kron(PAULI_X, np.eye(2)) + np.kron(np.eye(2), PAULI_X))
        assert np.allclose(op, expected)


class TestGroundState:
    def test_single_site_polarized_down(self):
        # h > 0 puts the ground state in the second basis vector.
        norm = normalize(build_h0(uniform_chain(1)))
        g = ground_state(norm)
        assert abs(abs(g.vector[1]) - 1.0) <= 1e-12
        assert not g.degenerate_ground

    def test_uses_cached_decomposition(self):
        norm = random_normalized(8, seed=3)
        g = ground_state(norm)
        overlap = abs(np.vdot(g.vector, norm.eigenvectors[:, 0]))
        assert abs(overlap - 1.0) <= 1e-12

    def test_degenerate_flag(self):
        norm = normalize(np.diag([-1.0, -1.0, 1.0, 1.0]).astype(complex))
        assert ground_state(norm).degenerate_ground

    def test_bias_selects_broken_branch(self):
        # Deep x-ferromagnet: unbiased ground is a cat state with m_x ~ 0;
        # a uniform +eps bias picks the m_x < 0 branch.
        n = 4
        norm = normalize(build_h0(uniform_chain(n, j=-8.0, gamma=1.0)))
        mx_op = sum(kron_embed(PAULI_X, s, n) for s in range(1, n + 1)) / n

        def mx(state):
            return float(np.vdot(state.vector, mx_op @ state.vector).real)

        assert abs(mx(ground_state(norm))) <= 0.2
        biased = ground_state(norm, SymmetryBias(BiasKind.UNIFORM, eps=1e-2))
        assert mx(biased) < -0.9

    def test_biased_ground_is_normalized(self):
        norm = random_normalized(8, seed=11)
        g = ground_state(norm, SymmetryBias(BiasKind.UNIFORM, eps=1e-3))
        assert abs(np.linalg.norm(g.vector) - 1.0) <= 1e-12


class TestThermalState:
    def test_two_level_gibbs(self):
        norm = normalize(np.diag([1.0, -1.0]).astype(complex))
        beta = 0.7
        rho = thermal_state(norm, beta).density
        z = 2.0 * np.cosh(beta)
        assert np.allclose(rho, np.diag([np.exp(-beta), np.exp(beta)]) / z)

    @pytest.mark.parametrize("beta", [0.3, 1.0, 4.0])
    def test_matches_expm_reference(self, beta):
        norm = random_normalized(16, seed=7)
        rho = thermal_state(norm, beta).density
        assert np.abs(rho - gibbs_reference(norm.matrix, beta)).max() <= 1e-10

    def test_infinite_temperature_is_maximally_mixed(self):
        norm = random_normalized(8, seed=5)
        s = thermal_state(norm, 0.0)
        assert np.allclose(s.density, np.eye(8) / 8.0)
        assert np.allclose(s.spectral_weights, 1.0 / 8.0)

    def test_low_temperature_approaches_ground_projector(self):
        norm = random_normalized(8, seed=9)
        g = ground_state(norm)
        rho = thermal_state(norm, 5000.0).density
        assert np.abs(rho - np.outer(g.vector, g.vector.conj())).max() <= 1e-8

    def test_spectral_cache_reconstructs_density(self):
        norm = random_normalized(8, seed=13)
        s = thermal_state(norm, 2.0)
        assert abs(s.spectral_weights.sum() - 1.0) <= 1e-12
        rebuilt = (s.spectral_vectors * s.spectral_weights) @ s.spectral_vectors.conj().T
        assert np.abs(rebuilt - s.density).max() <= 1e-12

    def test_energy_decreases_with_beta(self):
        norm = random_normalized(8, seed=17)
        energies = [
            np.trace(thermal_state(norm, b).density @ norm.matrix).real
            for b in (0.0, 0.5, 1.0, 2.0, 4.0)
        ]
        assert np.all(np.diff(energies) < 0.0)

    def test_negative_beta_rejected(self):
        norm = random_normalized(4, seed=19)
        with pytest.raises(ValidationError):
            thermal_state(norm, -0.1)


@settings(max_examples=20, deadline=None)
@given(
    beta=st.floats(min_value=0.0, max_value=50.0, allow_nan=False),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_thermal_state_is_valid_density_matrix(beta, seed):
    norm = random_normalized(8, seed)
    rho = thermal_state(norm, beta).density
    assert abs(np.trace(rho).real - 1.0) <= 1e-10
    assert np.abs(rho - rho.conj().T).max() <= 1e-12
    assert np.linalg.eigvalsh(rho).min() >= -1e-12
