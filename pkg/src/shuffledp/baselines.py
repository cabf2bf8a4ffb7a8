"""Privacy-amplification-by-shuffling baseline built from local DP.

The comparison point for the exact shuffle accountant: give every
sender a local Gaussian randomizer with local guarantee
(epsilon_0, delta_0), invoke the generic amplification bound for
shuffled epsilon_0-DP randomizers (the "clones" reduction), and stitch
rounds together with strong composition.  None of this looks inside
the Gaussian structure, which is exactly why the exact accountant
beats it; the numbers here quantify by how much.

The per-round amplified guarantee used is

    eps = log(1 + (e^{e0}-1)/(e^{e0}+1)
                  * (8 sqrt(e^{e0} log(4/delta)) / sqrt(n) + 8 e^{e0}/n)),
    delta_final = delta + (e^{eps}+1)(1 + e^{-e0}/2) n delta_0,

valid while e0 <= log(n / (16 log(2/delta))).  Strong composition over
k rounds takes the best of the three standard bounds (linear, and two
sqrt(k log) variants)."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .accountant import ApproxDp
from .errors import BoundNotApplicableError

# Local randomizers report a vector of norm <= 1; replacing one
# sender's vector moves the sum by at most 2.
DEFAULT_SENSITIVITY = 2.0

# delta_0 scan range for the per-round calibration: 200 points per
# decade from 1e-12 to 1e-3.
DEFAULT_DELTA0_GRID = tuple(float(v) for v in np.logspace(-12.0, -3.0, 1801))


@dataclass(frozen=True)
class LdpSpec:
    """A per-sender local Gaussian guarantee."""

    epsilon0: float
    delta0: float
    sensitivity: float = DEFAULT_SENSITIVITY

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon0) and self.epsilon0 >= 0):
            raise ValueError(
                f"epsilon0 must be finite and >= 0, got {self.epsilon0}"
            )
        if not (0.0 < self.delta0 < 1.0):
            raise ValueError(f"delta0 must be in (0, 1), got {self.delta0}")
        if not (math.isfinite(self.sensitivity) and self.sensitivity > 0):
            raise ValueError(
                f"sensitivity must be positive, got {self.sensitivity}"
            )


def calibrate_sigma(spec: LdpSpec) -> float:
    """Gaussian noise scale delivering (epsilon0, delta0) local DP.

    Classic calibration sigma = sensitivity * sqrt(2 log(1.25/delta0))
    / epsilon0.  The derivation behind it needs epsilon0 <= 1; above
    that the formula is still returned (callers use it as a comparison
    point) but with a warning, since it no longer certifies the claimed
    guarantee.
    """
    if spec.epsilon0 == 0:
        raise ValueError("cannot calibrate noise for epsilon0 = 0")
    if spec.epsilon0 > 1.0:
        warnings.warn(
            f"Gaussian calibration is only valid for epsilon0 <= 1, "
            f"got {spec.epsilon0}; the returned sigma does not certify "
            f"this local guarantee",
            stacklevel=2,
        )
    return (
        spec.sensitivity
        * math.sqrt(2.0 * math.log(1.25 / spec.delta0))
        / spec.epsilon0
    )


def gaussian_ldp_epsilon(
    sigma: float, delta0: float, sensitivity: float = DEFAULT_SENSITIVITY
) -> float:
    """Invert the calibration: the local epsilon0 a Gaussian of scale
    sigma provides at failure probability delta0."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be a positive float, got {sigma}")
    if not (0.0 < delta0 < 1.0):
        raise ValueError(f"delta0 must be in (0, 1), got {delta0}")
    return sensitivity * math.sqrt(2.0 * math.log(1.25 / delta0)) / sigma


def clones_shuffle_bound(spec: LdpSpec, n: int, delta: float) -> ApproxDp:
    """Amplified central guarantee for n shuffled epsilon_0-DP reports.

    Raises BoundNotApplicableError outside the regime
    epsilon0 <= log(n / (16 log(2/delta))) where the bound is proved.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    threshold_arg = n / (16.0 * math.log(2.0 / delta))
    threshold = math.log(threshold_arg) if threshold_arg > 0 else -math.inf
    if spec.epsilon0 > threshold:
        raise BoundNotApplicableError(
            f"shuffle amplification needs epsilon0 <= "
            f"log(n / (16 log(2/delta))) = {threshold:.6g}, got "
            f"epsilon0 = {spec.epsilon0:.6g} at n = {n}, delta = {delta:.3g}"
        )
    e_e0 = math.exp(spec.epsilon0)
    amplified = (
        (e_e0 - 1.0)
        / (e_e0 + 1.0)
        * (
            8.0 * math.sqrt(e_e0 * math.log(4.0 / delta)) / math.sqrt(n)
            + 8.0 * e_e0 / n
        )
    )
    epsilon = math.log1p(amplified)
    delta_final = delta + (
        (math.exp(epsilon) + 1.0)
        * (1.0 + math.exp(-spec.epsilon0) / 2.0)
        * n
        * spec.delta0
    )
    return ApproxDp(epsilon, min(delta_final, 1.0))


def strong_compose(
    epsilon: float, delta: float, k: int, delta_slack: float
) -> ApproxDp:
    """k-fold strong composition of one (epsilon, delta) mechanism.

    Best of the three standard bounds; delta_slack is the extra failure
    probability spent to buy the sqrt(k) behavior, so the composed
    guarantee is (epsilon', k delta + delta_slack).
    """
    if not (math.isfinite(epsilon) and epsilon >= 0):
        raise ValueError(f"epsilon must be finite and >= 0, got {epsilon}")
    if not (0.0 <= delta < 1.0):
        raise ValueError(f"delta must be in [0, 1), got {delta}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not (0.0 < delta_slack < 1.0):
        raise ValueError(f"delta_slack must be in (0, 1), got {delta_slack}")
    shrink = epsilon * (math.expm1(epsilon)) / (math.exp(epsilon) + 1.0)
    linear = k * epsilon
    adaptive = k * shrink + epsilon * math.sqrt(
        2.0 * k * math.log(math.e + epsilon * math.sqrt(k) / delta_slack)
    )
    plain = k * shrink + epsilon * math.sqrt(
        2.0 * k * math.log(1.0 / delta_slack)
    )
    composed_delta = min(1.0, k * delta + delta_slack)
    return ApproxDp(min(linear, adaptive, plain), composed_delta)


def clones_table_row(
    sigma: float,
    n: int,
    max_k: int,
    sensitivity: float = DEFAULT_SENSITIVITY,
    delta_target: float | None = None,
    grid=DEFAULT_DELTA0_GRID,
) -> list[ApproxDp]:
    """Best clones-method guarantee at each composition count 1..max_k.

    Fixes the physical noise sigma, then for every delta_0 on the grid
    reads off the implied local epsilon_0, amplifies via the shuffle
    bound (with per-round delta = delta_0), strong-composes k rounds,
    and keeps the smallest composed epsilon whose total delta stays
    under delta_target (default 1/n).  The remaining delta budget
    delta_target - k * delta_round is spent as composition slack.  Ties
    resolve to the smallest delta_0.
    """
    if not isinstance(max_k, int) or max_k < 1:
        raise ValueError(f"max_k must be a positive integer, got {max_k}")
    if delta_target is None:
        delta_target = 1.0 / n
    if not (0.0 < delta_target < 1.0):
        raise ValueError(f"delta_target must be in (0, 1), got {delta_target}")
    candidates = []
    for delta0 in grid:
        eps0 = gaussian_ldp_epsilon(sigma, delta0, sensitivity)
        spec = LdpSpec(eps0, delta0, sensitivity)
        try:
            bound = clones_shuffle_bound(spec, n, delta=delta0)
        except BoundNotApplicableError:
            continue
        candidates.append(bound)
    if not candidates:
        raise BoundNotApplicableError(
            f"no delta_0 in the scan grid keeps sigma = {sigma} inside "
            f"the amplification regime at n = {n}"
        )
    rows = []
    for k in range(1, max_k + 1):
        best: ApproxDp | None = None
        tightest_delta = math.inf
        for bound in candidates:
            spent = k * bound.delta
            tightest_delta = min(tightest_delta, spent)
            slack = delta_target - spent
            if slack <= 0.0:
                continue
            composed = strong_compose(bound.epsilon, bound.delta, k, slack)
            if best is None or composed.epsilon < best.epsilon:
                best = composed
        if best is None:
            raise BoundNotApplicableError(
                f"no delta_0 on the grid fits k = {k} compositions under "
                f"delta_target = {delta_target:.3g}; the smallest "
                f"achievable total delta is {tightest_delta:.3g}"
            )
        rows.append(best)
    return rows
