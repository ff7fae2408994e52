import math

import numpy as np
import pytest

import fockcap as fc


def test_capacity_bounds_reference_values():
    assert fc.cap_lower_thermal(0.5, 1.0, 1.0) == pytest.approx(
        0.62255624891826573, abs=1e-13
    )
    assert fc.cap_upper_gio_thermal(0.5, 1.0, 1.0) == pytest.approx(1.0, abs=1e-13)
    assert fc.cap_upper_ks_thermal(0.5, 1.0, 1.0) == pytest.approx(
        1.08170416594551049, abs=1e-13
    )
    assert fc.cap_upper_ks_additive(1.0, 1.0) == pytest.approx(fc.g(0.5), abs=1e-14)


def test_bounds_table_sweep_is_ordered():
    rows = fc.bounds_table([0.3, 0.7], [0.5, 2.0], [0.5, 2.0])
    assert len(rows) == 8
    for row in rows:
        assert row["lower"] <= min(row["upper_gio"], row["upper_ks"]) + 1e-12
        assert 0.0 <= row["gap_gio"] <= 1.45
        assert 0.0 <= row["gap_ks"] <= 1.45


def test_photon_statistics_normalize():
    d = fc.thermal_number_dist(3, 0.6, 0.8, 64)
    assert d.sum() + d.tail == pytest.approx(1.0, abs=1e-10)
    assert d.mean() == pytest.approx(0.6 * 3 + 0.4 * 0.8, abs=1e-6)
    geom = fc.additive_number_dist(0, 1.0, 64)
    assert geom.probs[0] == pytest.approx(0.5, abs=1e-14)


def test_states_are_numpy_arrays():
    rho = fc.thermal_state(1.0, 16)
    assert isinstance(rho.entries, np.ndarray)
    assert rho.entries.shape == (16, 16)
    assert rho.entries.dtype == np.complex128
    psi = fc.coherent_state(0.5 + 0.2j, 24)
    assert psi.amps.shape == (24,)
    assert psi.norm2() + psi.leakage == pytest.approx(1.0, abs=1e-12)


def test_channel_evolution_matches_statistics():
    rho = fc.vacuum_state(24)
    out = fc.thermal_apply(rho, 0.5, 1.0)
    diag = np.real(np.diag(out.entries))
    want = fc.thermal_number_dist(0, 0.5, 1.0, 24)
    assert np.max(np.abs(diag - np.asarray(want.probs))) < 1e-8

    res = fc.additive_apply(rho, 0.5)
    assert res.state.trace() + res.state.leakage == pytest.approx(1.0, abs=1e-8)
    assert res.quadrature_tol <= 1e-6


def test_smoothing_worked_example():
    res = fc.smooth_min_entropy([0.5, 0.25, 0.25], 0.1)
    assert res.smoothed == pytest.approx([0.4, 0.3, 0.3], abs=1e-15)
    assert res.smooth_min_entropy == pytest.approx(-math.log2(0.4), abs=1e-14)
    assert res.achieved_distance == pytest.approx(0.1, abs=1e-13)
    chk = fc.verify_renyi_smoothing([0.5, 0.25, 0.25], 2.0, 0.1)
    assert chk.holds


def test_envelopes_decay():
    rate = fc.cap_upper_ks_thermal(0.5, 1.0, 1.0) + 0.2
    values = [
        fc.converse_envelope_ks(rate, n, 1.0, eta=0.5, n_b=1.0)
        for n in (10, 100, 1000, 10000)
    ]
    assert values == sorted(values, reverse=True)
    assert values[-1] < 1e-3


def test_rank_check_and_exact_rank():
    rep = fc.rank_bound_check(2, 1.0)
    assert rep.holds
    assert rep.exact_log2_rank == pytest.approx(math.log2(6.0), abs=1e-13)
    assert fc.projector_rank(2, 2) == 6
    assert fc.projector_rank(300, 1500) > 10**100  # exact integer, no overflow


def test_log2_rank_matches_python_bigint():
    exact = fc.projector_rank(40, 120)
    assert fc.log2_projector_rank(40, 120) == pytest.approx(
        math.log2(exact), rel=1e-12
    )


def test_monte_carlo_reports_are_deterministic():
    a = fc.concentration_experiment([0] * 40, 0.5, 1.0, 0.2, 500, 7)
    b = fc.concentration_experiment([0] * 40, 0.5, 1.0, 0.2, 500, 7)
    assert a.empirical_fail_rate == b.empirical_fail_rate
    assert a.holds
    q = fc.qubit_converse_check(2, 1.5, 10, 3)
    assert q.holds
    assert q.max_avg_success <= q.bound + 1e-12


def test_exceptions_carry_structure():
    with pytest.raises(fc.ToleranceError):
        fc.smooth_min_entropy([0.25, 0.25, 0.25, 0.25], 1e-6)
    with pytest.raises(fc.TruncationError) as err:
        fc.thermal_apply(fc.vacuum_state(8), 0.5, 1.0, 2)
    assert err.value.required_dim == fc.thermal_env_dim(1.0)
    with pytest.raises(ValueError):
        fc.g(-1.0)
