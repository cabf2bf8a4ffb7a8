import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shuffledp import (
    BoundNotApplicableError,
    LdpSpec,
    calibrate_sigma,
    clones_shuffle_bound,
    clones_table_row,
    gaussian_ldp_epsilon,
    strong_compose,
)

SIGMA_FOR_UNIT_LDP = 9.476388929341576  # eps0=1, delta0=1/60000, sens=2


def test_calibration_reproduces_table_noise():
    sigma = calibrate_sigma(LdpSpec(1.0, 1.0 / 60000, 2.0))
    assert sigma == pytest.approx(SIGMA_FOR_UNIT_LDP, rel=1e-12)
    assert round(sigma, 2) == 9.48


def test_calibration_constructed_round_numbers():
    # ln(1.25/delta0) = 2 exactly, so sigma = 1 * sqrt(4) / 1 = 2
    spec = LdpSpec(1.0, 1.25 / math.exp(2.0), 1.0)
    assert calibrate_sigma(spec) == pytest.approx(2.0, rel=1e-12)


def test_calibration_linear_in_sensitivity():
    base = calibrate_sigma(LdpSpec(0.5, 1e-6, 1.0))
    doubled = calibrate_sigma(LdpSpec(0.5, 1e-6, 2.0))
    assert doubled == pytest.approx(2.0 * base, rel=1e-12)


def test_calibration_warns_outside_validity():
    with pytest.warns(UserWarning, match="epsilon0 <= 1"):
        calibrate_sigma(LdpSpec(2.0, 1e-6))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        calibrate_sigma(LdpSpec(1.0, 1e-6))


@settings(max_examples=80)
@given(
    eps0=st.floats(0.05, 1.0),
    delta0=st.floats(1e-12, 1e-2),
    sens=st.sampled_from([1.0, 2.0]),
)
def test_calibration_round_trip(eps0, delta0, sens):
    sigma = calibrate_sigma(LdpSpec(eps0, delta0, sens))
    assert gaussian_ldp_epsilon(sigma, delta0, sens) == pytest.approx(
        eps0, rel=1e-12
    )


def test_ldp_epsilon_shrinks_with_noise():
    assert gaussian_ldp_epsilon(1e9, 1e-6) < 1e-7


def test_ldp_spec_validation():
    with pytest.raises(ValueError):
        LdpSpec(-0.5, 1e-6)
    with pytest.raises(ValueError):
        LdpSpec(1.0, 0.0)
    with pytest.raises(ValueError):
        LdpSpec(1.0, 1e-6, 0.0)
    with pytest.raises(ValueError):
        calibrate_sigma(LdpSpec(0.0, 1e-6))


def test_shuffle_bound_amplifies_with_margin():
    bound = clones_shuffle_bound(LdpSpec(0.5, 1e-9), 100000, 1e-8)
    assert 0.0 < bound.epsilon < 0.5
    assert bound.epsilon == pytest.approx(0.034826212978854736, rel=1e-12)
    assert bound.delta == pytest.approx(0.0002652818053502524, rel=1e-12)


def test_shuffle_bound_degenerate_randomizer():
    bound = clones_shuffle_bound(LdpSpec(0.0, 1e-9), 1000, 1e-8)
    assert bound.epsilon == 0.0


def test_shuffle_bound_applicability():
    # threshold log(n / (16 log(2/delta))) ~ 0.165 at n=100, delta=0.01
    with pytest.raises(BoundNotApplicableError, match="epsilon0"):
        clones_shuffle_bound(LdpSpec(5.0, 1e-9), 100, 0.01)


def test_strong_compose_single_round_is_identity():
    result = strong_compose(0.5, 1e-8, 1, 1e-7)
    assert result.epsilon == 0.5
    assert result.delta == pytest.approx(1e-8 + 1e-7, rel=1e-12)


def test_strong_compose_linear_branch_small_k():
    result = strong_compose(0.1, 0.0, 10, 1e-6)
    assert result.epsilon == 1.0
    assert result.delta == 1e-6


def test_strong_compose_sublinear_at_large_k():
    result = strong_compose(0.1, 0.0, 100, 1e-6)
    assert result.epsilon == pytest.approx(5.756105519335732, rel=1e-12)
    assert result.epsilon < 100 * 0.1


@settings(max_examples=80)
@given(
    eps=st.floats(1e-4, 2.0),
    k=st.integers(1, 500),
    slack=st.floats(1e-12, 0.1),
)
def test_strong_compose_never_exceeds_linear(eps, k, slack):
    result = strong_compose(eps, 0.0, k, slack)
    assert result.epsilon <= k * eps * (1 + 1e-12)


def test_strong_compose_validation():
    with pytest.raises(ValueError):
        strong_compose(-0.1, 0.0, 2, 1e-6)
    with pytest.raises(ValueError):
        strong_compose(0.1, 1.0, 2, 1e-6)
    with pytest.raises(ValueError):
        strong_compose(0.1, 0.0, 0, 1e-6)
    with pytest.raises(ValueError):
        strong_compose(0.1, 0.0, 2, 0.0)


def test_table_row_shape_and_growth():
    rows = clones_table_row(9.48, 60000, 4)
    assert len(rows) == 4
    eps = [r.epsilon for r in rows]
    assert all(b > a for a, b in zip(eps, eps[1:]))
    assert all(r.delta <= 1.0 / 60000 for r in rows)


def test_table_row_single_round():
    rows = clones_table_row(9.48, 60000, 1)
    assert len(rows) == 1
    # Table-scale spot value; the wide band belongs to the
    # acceptance suite, this pins regressions tighter.
    assert rows[0].epsilon == pytest.approx(0.1851, rel=1e-2)


def test_table_row_infeasible_target():
    with pytest.raises(BoundNotApplicableError, match="delta"):
        clones_table_row(9.48, 60000, 2, delta_target=1e-13)


def test_table_row_custom_grid():
    rows = clones_table_row(9.48, 60000, 2, grid=(1e-11, 3e-11))
    assert len(rows) == 2
    assert rows[0].epsilon > 0


def test_table_row_inapplicable_sigma():
    # tiny sigma -> enormous local epsilon -> regime never holds
    with pytest.raises(BoundNotApplicableError):
        clones_table_row(0.01, 100, 1)
