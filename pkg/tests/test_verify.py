"""Verification harness: suites, searches, replay, and sweep."""

from __future__ import annotations

import math

import numpy as np
import pytest

from specfid import (
    DensityMatrix,
    ParamError,
    ToleranceError,
    UnknownProperty,
    dpi_analytic_family,
    list_properties,
    pure_state,
    replay_reference_counterexample,
    run_suite,
    search_dpi_violation,
    second_fvg_failure,
    spectral_fidelity,
    t_sweep,
)

REPORT_KEYS = ["property", "verdict", "max_violation", "witness", "seed", "samples"]

HOLDING_SUITES = [
    "congruence_invariance",
    "inverse_identity",
    "tensor_compatibility",
    "support_identity",
    "mean_flip_identity",
    "spectral_eigenvalue_law",
    "riccati",
    "variational_minimizer",
    "midpoint_uhlmann",
    "endpoints",
    "flip_symmetry",
    "multiplicativity",
    "unitary_invariance",
    "tensor_stabilization",
    "universal_bound",
    "convexity_in_t",
    "log_convexity_in_t",
    "first_fvg",
    "zero_condition",
    "positivity",
    "closed_form_pure_rho",
    "closed_form_pure_sigma",
    "bloch_closed_forms",
    "classicalization",
    "renyi_midpoint_uhlmann",
    "variational_dominance",
    "dpi_midpoint",
]


def test_registry_lists_every_suite():
    names = list_properties()
    assert set(HOLDING_SUITES) <= set(names)
    assert {
        "dpi_monotone",
        "second_fvg",
        "midpoint_minimum",
        "separate_concavity",
    } <= set(names)
    assert all(isinstance(v, str) and v for v in names.values())


@pytest.mark.parametrize("property_id", HOLDING_SUITES)
def test_holding_suites_hold(property_id):
    samples = 4 if property_id == "variational_dominance" else 25
    report = run_suite(property_id, n_samples=samples)
    assert report.verdict == "holds", (property_id, report.max_violation)


def test_report_json_schema():
    report = run_suite("riccati", n_samples=5)
    record = report.to_json()
    assert list(record) == REPORT_KEYS
    report2 = run_suite("midpoint_minimum", n_samples=10)
    assert list(report2.to_json()) == REPORT_KEYS + ["notes"]


def test_run_suite_deterministic():
    a = run_suite("flip_symmetry", n_samples=10, rng_seed=7)
    b = run_suite("flip_symmetry", n_samples=10, rng_seed=7)
    assert a.to_json() == b.to_json()
    c = run_suite("flip_symmetry", n_samples=10, rng_seed=8)
    assert c.max_violation != a.max_violation


def test_run_suite_validation():
    with pytest.raises(UnknownProperty):
        run_suite("no_such_property")
    with pytest.raises(ParamError):
        run_suite("riccati", dims=[1])


def test_dpi_monotone_verdicts_by_t():
    mid = run_suite("dpi_monotone", n_samples=30, t=0.5)
    assert mid.verdict == "holds"
    off = run_suite("dpi_monotone", n_samples=30, t=0.8)
    assert off.verdict == "fails_as_predicted"
    assert off.max_violation > 1e-3
    default = run_suite("dpi_monotone", n_samples=30)
    assert default.verdict == "fails_as_predicted"


def test_second_fvg_fails_as_predicted():
    report = run_suite("second_fvg")
    assert report.verdict == "fails_as_predicted"
    assert report.max_violation > 0.1
    assert report.notes and "t < 0.5" in report.notes[0]


def test_midpoint_minimum_is_refuted():
    # The stated bound F_t >= F_{1/2} per pair is false; the suite must
    # say so honestly and document the true symmetrized consequence.
    report = run_suite("midpoint_minimum", n_samples=40)
    assert report.verdict == "unexpected"
    assert report.max_violation > 1e-3
    assert any("symmetrized" in note for note in report.notes)
    # The witness pins the parameter where the dip beats the midpoint.
    assert 0.0 < report.worst_witness["t"] < 1.0


def test_separate_concavity_holds_at_midpoint_only():
    mid = run_suite("separate_concavity", n_samples=25)
    assert mid.verdict == "holds"
    off = run_suite("separate_concavity", n_samples=40, t=0.25)
    assert off.verdict == "unexpected"
    assert off.max_violation > 1e-4
    assert any("one-sided" in note for note in off.notes)
    # Mirror image under the flip: same worst gap at t and 1 - t.
    off_hi = run_suite("separate_concavity", n_samples=40, t=0.75)
    assert off_hi.max_violation == pytest.approx(off.max_violation, rel=1e-9)


def test_dpi_analytic_family_oracle():
    result = dpi_analytic_family(0.25, 0.01)
    assert result.lhs == pytest.approx(0.879927861868329, abs=1e-12)
    assert result.rhs == pytest.approx(0.7811415961109461, abs=1e-12)
    assert result.violated
    assert result.f_before == pytest.approx(result.lhs, abs=1e-9)
    assert result.f_after == pytest.approx(result.rhs, abs=1e-9)
    # Independent scalar evaluation of the closed forms.
    assert result.lhs == pytest.approx((0.5 + math.sqrt(0.01 * 0.99)) ** 0.25)
    assert result.rhs == pytest.approx(2.0**-0.75 * (0.01**0.25 + 0.99**0.25))


def test_dpi_analytic_family_limits_and_balance():
    # p -> 0: lhs -> 2^{-t} and rhs -> 2^{t-1}, separated for t < 1/2.
    result = dpi_analytic_family(0.25, 1e-12)
    assert result.lhs == pytest.approx(2.0**-0.25, abs=1e-5)
    assert result.rhs == pytest.approx(2.0**-0.75, abs=1e-3)
    # p = 1/2 makes the two states equal: both sides 1, no violation.
    balanced = dpi_analytic_family(0.3, 0.5)
    assert balanced.lhs == pytest.approx(1.0, abs=1e-12)
    assert not balanced.violated


def test_dpi_analytic_family_validation():
    with pytest.raises(ParamError):
        dpi_analytic_family(0.5, 0.1)
    with pytest.raises(ParamError):
        dpi_analytic_family(0.0, 0.1)
    with pytest.raises(ParamError):
        dpi_analytic_family(0.25, 0.0)
    with pytest.raises(ParamError):
        dpi_analytic_family(0.25, 1.0)


def test_replay_reference_counterexample():
    witness = replay_reference_counterexample()
    assert witness.t == 0.8
    assert witness.f_before == pytest.approx(0.755086, abs=1e-4)
    assert witness.f_after == pytest.approx(0.752207, abs=1e-4)
    assert witness.f_before == pytest.approx(0.7550853719736925, abs=1e-12)
    assert witness.f_after == pytest.approx(0.7522068683516738, abs=1e-12)
    record = witness.to_json()
    assert record["f_before"] > record["f_after"]


def test_search_finds_witness_off_midpoint():
    witness = search_dpi_violation(0.8, dim=2, n_trials=2000, rng_seed=42)
    assert witness is not None
    assert witness.f_after < witness.f_before - 1e-7
    # Determinism of the search.
    again = search_dpi_violation(0.8, dim=2, n_trials=2000, rng_seed=42)
    assert again.to_json() == witness.to_json()


def test_search_low_t_uses_flip_roles():
    witness = search_dpi_violation(0.25, dim=2, n_trials=2000, rng_seed=1)
    assert witness is not None
    assert witness.f_after < witness.f_before - 1e-7


def test_search_empty_at_midpoint():
    assert search_dpi_violation(0.5, dim=2, n_trials=1500, rng_seed=42) is None


def test_search_validation():
    with pytest.raises(ParamError):
        search_dpi_violation(0.0)
    with pytest.raises(ParamError):
        search_dpi_violation(1.0)
    with pytest.raises(ParamError):
        search_dpi_violation(0.8, dim=1)
    with pytest.raises(ParamError):
        search_dpi_violation(0.8, channel_family="depolarizing")
    # An exhausted budget is not an error, just an empty result.
    assert search_dpi_violation(0.8, n_trials=0) is None


def test_second_fvg_failure_oracle():
    result = second_fvg_failure(0.25, 0.5)
    assert result.half_trace_dist == pytest.approx(math.sqrt(0.75), abs=1e-12)
    assert result.rhs == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert result.violated
    # At the midpoint the pure-state comparison is an equality.
    mid = second_fvg_failure(0.5, 0.3)
    assert mid.half_trace_dist == pytest.approx(mid.rhs, abs=1e-10)
    assert not mid.violated
    with pytest.raises(ParamError):
        second_fvg_failure(0.25, 0.0)
    with pytest.raises(ParamError):
        second_fvg_failure(0.25, 1.0)
    with pytest.raises(ParamError):
        second_fvg_failure(1.5, 0.5)


def test_t_sweep_identical_states_flat():
    rho = DensityMatrix(np.eye(2) / 2)
    curve = t_sweep(rho, rho, [0.0, 0.25, 0.5, 0.75, 1.0])
    assert all(v == pytest.approx(1.0, abs=1e-12) for v in curve.values)
    assert all(abs(d) < 1e-10 for d in curve.second_diff)


def test_t_sweep_pure_pair_log_linear():
    rho = pure_state([1.0, 0.0])
    sigma = pure_state([math.cos(0.4), math.sin(0.4)])
    grid = [0.1 * k for k in range(11)]
    curve = t_sweep(rho, sigma, grid)
    c2 = math.cos(0.4) ** 2
    for tg, value in zip(curve.ts, curve.values):
        assert value == pytest.approx(c2**tg, abs=1e-10)
    assert all(abs(d) < 1e-8 for d in curve.log_second_diff)


def test_t_sweep_validation_and_extension():
    rho = DensityMatrix(np.diag([0.4, 0.6]))
    sigma = DensityMatrix(np.diag([0.7, 0.3]))
    with pytest.raises(ParamError):
        t_sweep(rho, sigma, [0.5, 0.1])
    curve = t_sweep(rho, sigma, [-0.5, 0.0, 0.5, 1.0, 1.5])
    assert len(curve.values) == 5
    assert curve.values[0] > 1.0  # outside [0, 1] the family exceeds 1


def test_t_sweep_log_of_zero_value():
    rho = DensityMatrix(np.diag([1.0, 0.0]))
    sigma = DensityMatrix(np.diag([0.0, 1.0]))
    curve = t_sweep(rho, sigma, [0.25, 0.5, 0.75])
    assert all(v == pytest.approx(0.0, abs=1e-12) for v in curve.values)
    assert all(lv == -math.inf for lv in curve.log_values)


def test_witness_replayability():
    # The worst witness stored in a report reproduces its violation.
    report = run_suite("flip_symmetry", n_samples=15)
    wit = report.worst_witness
    rho = _state_from_witness(wit["rho"])
    sigma = _state_from_witness(wit["sigma"])
    t = wit["t"]
    gap = abs(
        spectral_fidelity(rho, sigma, t).value
        - spectral_fidelity(sigma, rho, 1.0 - t).value
    )
    assert gap == pytest.approx(report.max_violation, rel=1e-9, abs=1e-15)


def _state_from_witness(record):
    mat = np.asarray(record["re"], dtype=complex) + 1j * np.asarray(record["im"])
    return DensityMatrix(mat)
