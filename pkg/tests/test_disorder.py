"""Quenched disorder averaging."""

import numpy as np
import pytest

from spinbattery.disorder import (
    DisorderStats,
    StatePrep,
    StatePrepKind,
    quenched_power,
)
from spinbattery.dynamics import OptimizerConfig, power_max
from spinbattery.errors import AggregateFailureError, ValidationError
from spinbattery.model import (
    DisorderSpec,
    DisorderTarget,
    build_h0,
    normalize,
    sample_realization,
    uniform_chain,
)
from spinbattery.states import ground_state, thermal_state

BASE = uniform_chain(2, gamma=0.5)
COARSE = OptimizerConfig(grid_points=60)


def xy_spec(**kwargs):
    kwargs.setdefault("mean", 0.8)
    kwargs.setdefault("sigma", 0.0)
    kwargs.setdefault("n_realizations", 5)
    return DisorderSpec(DisorderTarget.XY_COUPLINGS, **kwargs)


class TestStatePrep:
    def test_defaults_to_ground(self):
        assert StatePrep().kind is StatePrepKind.GROUND
        assert StatePrep.ground().beta is None

    def test_thermal_classmethod(self):
        prep = StatePrep.thermal(2.5)
        assert prep.kind is StatePrepKind.THERMAL
        assert prep.beta == 2.5

    def test_thermal_requires_beta(self):
        with pytest.raises(ValidationError):
            StatePrep(kind=StatePrepKind.THERMAL)
        with pytest.raises(ValidationError):
            StatePrep.thermal(-1.0)

    def test_ground_rejects_beta(self):
        with pytest.raises(ValidationError):
            StatePrep(beta=1.0)


class TestQuenchedPower:
    def test_sigma_zero_equals_ordered_chain(self):
        spec = xy_spec()
        stats = quenched_power(BASE, spec, opt=COARSE)
        ordered = sample_realization(BASE, spec, 0)
        h_norm = normalize(build_h0(ordered))
        expected = power_max(ground_state(h_norm), h_norm, ordered, COARSE).p_max
        assert stats.mean_p_max == expected
        assert stats.std_error == 0.0
        assert stats.n_realizations == 5
        assert stats.n_failed == 0
        assert stats.converged_2dp

    def test_matches_manual_loop(self):
        spec = xy_spec(sigma=0.3, n_realizations=6, master_seed=42)
        stats = quenched_power(BASE, spec, opt=COARSE)
        values = []
        for k in range(6):
            p = sample_realization(BASE, spec, k)
            h_norm = normalize(build_h0(p))
            values.append(power_max(ground_state(h_norm), h_norm, p, COARSE).p_max)
        values = np.array(values)
        assert stats.mean_p_max == np.mean(values)
        assert stats.std_error == np.std(values, ddof=1) / np.sqrt(6)

    def test_same_seed_is_bitwise_reproducible(self):
        spec = xy_spec(sigma=0.7, n_realizations=8, master_seed=11)
        a = quenched_power(BASE, spec, opt=COARSE)
        b = quenched_power(BASE, spec, opt=COARSE)
        assert a == b

    def test_worker_count_does_not_change_results(self):
        spec = xy_spec(sigma=0.5, n_realizations=6, master_seed=3)
        serial = quenched_power(BASE, spec, opt=COARSE, workers=1)
        parallel = quenched_power(BASE, spec, opt=COARSE, workers=2)
        assert serial == parallel

    def test_small_sigma_stays_near_ordered_value(self):
        spec = xy_spec(sigma=1e-4, n_realizations=50, master_seed=7)
        stats = quenched_power(BASE, spec, opt=COARSE)
        ordered = quenched_power(BASE, xy_spec(n_realizations=1), opt=COARSE)
        assert abs(stats.mean_p_max - ordered.mean_p_max) <= 1e-2

    def test_thermal_preparation_path(self):
        spec = xy_spec(n_realizations=3)
        stats = quenched_power(BASE, spec, state_prep=StatePrep.thermal(2.0), opt=COARSE)
        ordered = sample_realization(BASE, spec, 0)
        h_norm = normalize(build_h0(ordered))
        expected = power_max(thermal_state(h_norm, 2.0), h_norm, ordered, COARSE).p_max
        assert stats.mean_p_max == expected

    def test_wide_disorder_not_converged_at_small_n(self):
        # 30 realizations of sigma=2 leave the running mean visibly moving.
        spec = xy_spec(mean=0.0, sigma=2.0, n_realizations=30, master_seed=0)
        stats = quenched_power(BASE, spec, opt=COARSE)
        assert not stats.converged_2dp
        assert stats.std_error > 0.01

    def test_all_degenerate_realizations_raise(self):
        # h=0 and every draw equal to 0 makes H0 identically zero.
        zero_base = uniform_chain(2, h=0.0, omega=2.0)
        spec = DisorderSpec(
            DisorderTarget.XY_COUPLINGS, mean=0.0, sigma=0.0, n_realizations=4
        )
        with pytest.raises(AggregateFailureError):
            quenched_power(zero_base, spec, opt=COARSE)

    def test_bad_worker_count(self):
        with pytest.raises(ValidationError):
            quenched_power(BASE, xy_spec(), workers=0)

    def test_stats_record_seed(self):
        spec = xy_spec(n_realizations=2, master_seed=123)
        stats = quenched_power(BASE, spec, opt=COARSE)
        assert isinstance(stats, DisorderStats)
        assert stats.master_seed == 123

    def test_zz_target(self):
        spec = DisorderSpec(
            DisorderTarget.ZZ_COUPLINGS, mean=0.5, sigma=0.2, n_realizations=4,
            master_seed=9,
        )
        stats = quenched_power(BASE, spec, opt=COARSE)
        p = sample_realization(BASE, spec, 0)
        assert np.all(p.xy_couplings == BASE.xy_couplings)
        assert stats.n_realizations == 4
