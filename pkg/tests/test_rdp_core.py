import math
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shuffledp import (
    MechanismSpec,
    RdpCurve,
    ResourceLimitError,
    brute_force_rdp,
    rdp_curve,
    shuffle_gaussian_log_moment,
    shuffle_gaussian_rdp,
    shuffle_gaussian_upper_bound,
)

# Hand-enumerated values, frozen from the composition sum evaluated
# with exact integer coefficients (see brute_force_rdp's docstring for
# the construction).  n=2, sigma=1, lambda=3 is (1/2) log((2e^3 + 6e)/8).
BRUTE_N2_S1_L3 = 0.9772292963966204
BRUTE_N3_S2_L4 = 0.18276651736218197


def lambda_two_closed_form(sigma: float, n: int) -> float:
    return math.log1p(math.expm1(1.0 / (sigma * sigma)) / n)


def test_frozen_brute_force_values():
    assert brute_force_rdp(MechanismSpec(1.0, 2), 3) == pytest.approx(
        BRUTE_N2_S1_L3, rel=1e-12
    )
    assert brute_force_rdp(MechanismSpec(2.0, 3), 4) == pytest.approx(
        BRUTE_N3_S2_L4, rel=1e-12
    )


def test_partition_route_matches_frozen_values():
    assert shuffle_gaussian_rdp(MechanismSpec(1.0, 2), 3) == pytest.approx(
        BRUTE_N2_S1_L3, rel=1e-12
    )
    assert shuffle_gaussian_rdp(MechanismSpec(2.0, 3), 4) == pytest.approx(
        BRUTE_N3_S2_L4, rel=1e-12
    )


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0, 9.48])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("order", [2, 3, 5, 8])
def test_oracle_equivalence(sigma, n, order):
    spec = MechanismSpec(sigma, n)
    fast = shuffle_gaussian_rdp(spec, order)
    slow = brute_force_rdp(spec, order)
    assert fast == pytest.approx(slow, rel=1e-10)


@pytest.mark.parametrize("sigma", [0.5, 1.0, 9.48])
@pytest.mark.parametrize("order", [2, 3, 10, 30])
def test_single_sender_is_plain_gaussian(sigma, order):
    got = shuffle_gaussian_rdp(MechanismSpec(sigma, 1), order)
    assert got == pytest.approx(order / (2 * sigma * sigma), rel=1e-12)


@pytest.mark.parametrize("sigma", [0.7, 1.0, 9.48])
@pytest.mark.parametrize("n", [2, 10, 1000, 60000])
def test_order_two_closed_form(sigma, n):
    got = shuffle_gaussian_rdp(MechanismSpec(sigma, n), 2)
    assert got == pytest.approx(lambda_two_closed_form(sigma, n), rel=1e-12)


def test_tiny_epsilon_keeps_relative_precision():
    # Table-2 scale: epsilon ~ 1.9e-7 must carry full digits, not the
    # absolute float noise of a log(1 + tiny) formed the naive way.
    got = shuffle_gaussian_rdp(MechanismSpec(9.48, 60000), 2)
    assert got == pytest.approx(1.8648783254892263e-07, rel=1e-12)


@settings(max_examples=150, deadline=None)
@given(
    sigma=st.floats(0.3, 50.0),
    n=st.integers(1, 10**6),
    order=st.integers(2, 32),
)
def test_bound_dominates_everywhere(sigma, n, order):
    spec = MechanismSpec(sigma, n)
    eps = shuffle_gaussian_log_moment(spec, order) / (order - 1)
    bound = shuffle_gaussian_upper_bound(sigma, order)
    assert 0.0 <= eps <= bound + 1e-9 * max(bound, 1.0)


@settings(max_examples=50, deadline=None)
@given(sigma=st.floats(0.5, 20.0), n=st.integers(1, 10**4))
def test_epsilon_nondecreasing_in_order(sigma, n):
    spec = MechanismSpec(sigma, n)
    values = [shuffle_gaussian_rdp(spec, lam) for lam in range(2, 12)]
    for a, b in zip(values, values[1:]):
        assert b >= a - 1e-12 * max(abs(a), 1.0)


def test_epsilon_decreases_with_more_senders():
    values = [
        shuffle_gaussian_rdp(MechanismSpec(1.0, n), 6)
        for n in (1, 2, 5, 10, 100, 1000)
    ]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_brute_force_scale_guard():
    with pytest.raises(ResourceLimitError):
        brute_force_rdp(MechanismSpec(1.0, 400), 3)
    # explicit limit raise works
    assert brute_force_rdp(MechanismSpec(1.0, 7), 2) > 0


def test_order_cap():
    spec = MechanismSpec(1.0, 3)
    with pytest.raises(ResourceLimitError):
        shuffle_gaussian_rdp(spec, 12, cap=10)
    assert shuffle_gaussian_rdp(spec, 12, cap=12) > 0
    with pytest.raises(ValueError):
        shuffle_gaussian_rdp(spec, 1)


def test_mechanism_spec_validation():
    with pytest.raises(ValueError):
        MechanismSpec(0.0, 5)
    with pytest.raises(ValueError):
        MechanismSpec(math.inf, 5)
    with pytest.raises(ValueError):
        MechanismSpec(1.0, 0)


def test_rdp_curve_builder():
    curve = rdp_curve(MechanismSpec(1.0, 1), [3, 2, 2])
    assert curve.orders == (2, 3)
    assert curve.epsilons == (1.0, 1.5)
    assert "sigma=1.0" in curve.provenance
    with pytest.raises(ValueError):
        rdp_curve(MechanismSpec(1.0, 1), [])


def test_rdp_curve_validation():
    with pytest.raises(ValueError):
        RdpCurve({})
    with pytest.raises(ValueError):
        RdpCurve({1: 0.5})
    with pytest.raises(ValueError):
        RdpCurve({2: -0.1})
    with pytest.raises(ValueError):
        RdpCurve({2: math.nan})
    curve = RdpCurve({4: 0.4, 2: 0.2})
    assert curve.orders == (2, 4)
    assert curve.epsilon_at(4) == 0.4
    assert len(curve) == 2


def test_concurrent_evaluation_is_bit_identical():
    spec = MechanismSpec(1.3, 500)
    sequential = [shuffle_gaussian_rdp(spec, lam) for lam in range(2, 16)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        for _ in range(3):
            threaded = list(
                pool.map(lambda lam: shuffle_gaussian_rdp(spec, lam), range(2, 16))
            )
            assert threaded == sequential
