"""Subsampled shuffling and random check-in participation.

Two layers on top of the exact shuffled-Gaussian curve:

  * ``subsampled_shuffle_rdp``: each round draws a random m-subset of
    the population (sampling rate gamma = m / n_total) and shuffles the
    subset's Gaussian reports.  The bound expands the order-lambda
    moment binomially in gamma and feeds each j-th coefficient the
    exact shuffle curve at size m, so the shuffle improvement shows up
    inside the subsampling amplification rather than being bolted on
    after.

  * check-in: each of n_total clients independently joins a round with
    probability gamma, and the shuffler mixes whoever showed up.  The
    direct route conditions on the attendance count k ~ Binomial(n,
    gamma); the fast route brackets attendance by a Chernoff tail at a
    single cut point m_delta and searches the cut over a small grid.

Shuffle evaluations at a given (sigma, size, order) are memoized: the
direct check-in sum revisits the same sizes for every order in a
sweep."""

import math
from dataclasses import dataclass
from typing import NamedTuple

from scipy.special import logsumexp

from ._memo import once_per_key
from .errors import ResourceLimitError
from .numerics import LOG2, LOG4, log1pexp, log_binom, log_expm1
from .partitions import DEFAULT_ORDER_CAP
from .rdp_core import (
    MechanismSpec,
    shuffle_gaussian_log_moment,
    shuffle_gaussian_rdp,
)

# Largest population the direct (exact binomial) check-in sum will
# evaluate; each k in 1..n_total costs a full subsampled-shuffle bound.
DIRECT_EVALUATION_CAP = 200

# Candidate tail cuts for the fast check-in bound.
DEFAULT_DELTA_GRID = tuple(i / 20 for i in range(1, 20))


@dataclass(frozen=True)
class SubsampleSpec:
    """An m-out-of-n_total shuffled Gaussian round.

    Either n_total or gamma may be given; the missing one is derived
    (gamma = m / n_total).  gamma alone is allowed because the check-in
    analysis needs rounds whose rate is not m / anything."""

    sigma: float
    m: int
    n_total: int | None = None
    gamma: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a positive float, got {self.sigma}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.n_total is None and self.gamma is None:
            raise ValueError("need n_total or gamma to fix the sampling rate")
        if self.n_total is not None:
            if not isinstance(self.n_total, int) or self.n_total < self.m:
                raise ValueError(
                    f"n_total must be an integer >= m, got {self.n_total}"
                )
            derived = self.m / self.n_total
            if self.gamma is None:
                object.__setattr__(self, "gamma", derived)
            elif abs(self.gamma - derived) > 1e-12:
                raise ValueError(
                    f"gamma={self.gamma} disagrees with m/n_total={derived}"
                )
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")


@dataclass(frozen=True)
class CheckinSpec:
    """Population of n_total clients, each joining a round
    independently with probability gamma.

    delta_grid holds the candidate tail cuts the fast bound may choose
    from; the direct sum ignores it."""

    sigma: float
    n_total: int
    gamma: float
    delta_grid: tuple = DEFAULT_DELTA_GRID

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a positive float, got {self.sigma}")
        if not isinstance(self.n_total, int) or self.n_total < 1:
            raise ValueError(
                f"n_total must be a positive integer, got {self.n_total}"
            )
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        grid = tuple(self.delta_grid)
        if not grid or any(not (0.0 < d < 1.0) for d in grid):
            raise ValueError(
                f"delta_grid must be non-empty with values in (0, 1), got {grid}"
            )
        object.__setattr__(self, "delta_grid", grid)


class CheckinFastResult(NamedTuple):
    epsilon: float
    chosen_delta: float


@once_per_key
def _sg_eps(sigma: float, size: int, order: int) -> float:
    return shuffle_gaussian_rdp(MechanismSpec(sigma, size), order, cap=order)


def _validate_order(order: int, cap: int) -> None:
    if not isinstance(order, int) or order < 2:
        raise ValueError(f"order must be an integer >= 2, got {order!r}")
    if order > cap:
        raise ResourceLimitError(
            f"order {order} exceeds cap {cap}; pass cap explicitly to go higher",
            cap=cap,
        )


def subsampled_shuffle_rdp(
    spec: SubsampleSpec, order: int, cap: int = DEFAULT_ORDER_CAP
) -> float:
    """Renyi-DP of one m-out-of-n shuffled Gaussian round at integer
    order.

    Binomial expansion in the sampling rate: the j = 2 coefficient gets
    the tighter of the two standard second-moment caps, every j >= 3
    coefficient pays e^{(j-1) eps_m(j)} with eps_m the exact shuffle
    curve at subset size m.  Everything is assembled in log domain, so
    rates like 1e-6 at order 30 (gamma^30 ~ 1e-180) stay finite.
    """
    _validate_order(order, cap)
    log_gamma = math.log(spec.gamma)
    eps2 = _sg_eps(spec.sigma, spec.m, 2)
    second = LOG2 + eps2
    if eps2 > 0:
        second = min(second, LOG4 + log_expm1(eps2))
    terms = [2.0 * log_gamma + log_binom(order, 2) + second]
    for j in range(3, order + 1):
        terms.append(
            LOG2
            + j * log_gamma
            + log_binom(order, j)
            + (j - 1) * _sg_eps(spec.sigma, spec.m, j)
        )
    log_tail = logsumexp(terms)
    return log1pexp(log_tail) / (order - 1)


def checkin_rdp_direct(
    spec: CheckinSpec,
    order: int,
    cap: int = DEFAULT_ORDER_CAP,
    n_cap: int = DIRECT_EVALUATION_CAP,
) -> float:
    """Check-in Renyi-DP by conditioning on the attendance count.

    Sums Binomial(n_total, gamma) weights against the subsampled
    shuffle bound at each attendance k >= 1.  The empty round (k = 0)
    contributes nothing, so the weighted moment can dip below 1 and the
    result is clamped at 0.  Cost grows linearly in n_total, hence the
    cap; use checkin_rdp_fast for real populations.
    """
    _validate_order(order, cap)
    if spec.n_total > n_cap:
        raise ResourceLimitError(
            f"direct check-in sum over n_total={spec.n_total} attendance "
            f"counts exceeds the cap {n_cap}; use checkin_rdp_fast",
            cap=n_cap,
        )
    log_gamma = math.log(spec.gamma)
    log_stay_out = (
        math.log1p(-spec.gamma) if spec.gamma < 1.0 else -math.inf
    )
    n = spec.n_total
    terms = []
    for k in range(1, n + 1):
        log_weight = log_binom(n, k) + k * log_gamma
        if k < n:
            log_weight += (n - k) * log_stay_out
        if log_weight == -math.inf:
            continue
        sub = SubsampleSpec(spec.sigma, m=k, gamma=spec.gamma)
        terms.append(
            log_weight + (order - 1) * subsampled_shuffle_rdp(sub, order, cap=cap)
        )
    eps = float(logsumexp(terms)) / (order - 1)
    return max(eps, 0.0)


def checkin_rdp_fast(
    spec: CheckinSpec, order: int, cap: int = DEFAULT_ORDER_CAP
) -> CheckinFastResult:
    """Two-term check-in bound, minimized over spec.delta_grid.

    For a cut delta, attendance below m_delta = floor((1-delta) n
    gamma) + 1 is charged at the worst case m = 1 discounted by the
    Chernoff probability exp(-delta^2 n gamma / 2); attendance at or
    above it is charged at m_delta.  Flooring the cut is conservative:
    fewer attendees can only loosen the shuffle guarantee.  Cuts whose
    m_delta exceeds the population are skipped; if the grid leaves no
    feasible cut the call rejects it as an invalid argument.  Ties keep
    the first (smallest) cut so results never depend on grid order
    quirks.
    """
    _validate_order(order, cap)
    expected = spec.n_total * spec.gamma
    base = (order - 1) * subsampled_shuffle_rdp(
        SubsampleSpec(spec.sigma, m=1, gamma=spec.gamma), order, cap=cap
    )
    best: CheckinFastResult | None = None
    for delta in spec.delta_grid:
        m_delta = math.floor((1.0 - delta) * expected) + 1
        if m_delta > spec.n_total:
            continue
        low = base - delta * delta * expected / 2.0
        high = (order - 1) * subsampled_shuffle_rdp(
            SubsampleSpec(spec.sigma, m=m_delta, gamma=spec.gamma),
            order,
            cap=cap,
        )
        eps = float(logsumexp([low, high])) / (order - 1)
        if best is None or eps < best.epsilon:
            best = CheckinFastResult(eps, delta)
    if best is None:
        raise ValueError(
            "no tail cut in spec.delta_grid yields m_delta <= n_total; "
            "widen the grid or check gamma"
        )
    return best


@dataclass(frozen=True)
class MonotonicityReport:
    """Result of scanning the pre-log moment across sender counts."""

    sigma: float
    order: int
    n_values: tuple[int, ...]
    log_moments: tuple[float, ...]
    epsilons: tuple[float, ...]
    monotone: bool


# Relative slack when comparing adjacent moments: the scan should not
# report a violation that is pure float noise.
_SCAN_SLACK = math.log1p(1e-12)


def monotonicity_scan(
    sigma: float,
    order: int,
    n_range: tuple[int, int],
    cap: int = DEFAULT_ORDER_CAP,
) -> MonotonicityReport:
    """Evaluate the moment exp((order-1) eps(n)) for every n in the
    inclusive range and check it never increases.

    The comparison happens on log moments with a 1e-12 relative slack,
    which keeps the verdict meaningful at sigma values where the
    moment itself would overflow a float.
    """
    _validate_order(order, cap)
    lo, hi = n_range
    if not (isinstance(lo, int) and isinstance(hi, int) and 1 <= lo <= hi):
        raise ValueError(f"n_range must be integers 1 <= lo <= hi, got {n_range}")
    n_values = tuple(range(lo, hi + 1))
    moments = []
    epsilons = []
    for n in n_values:
        spec = MechanismSpec(sigma, n)
        moment = shuffle_gaussian_log_moment(spec, order, cap=cap)
        moments.append(moment)
        epsilons.append(shuffle_gaussian_rdp(spec, order, cap=cap))
    monotone = all(
        later <= earlier + _SCAN_SLACK
        for earlier, later in zip(moments, moments[1:])
    )
    return MonotonicityReport(
        sigma=sigma,
        order=order,
        n_values=n_values,
        log_moments=tuple(moments),
        epsilons=tuple(epsilons),
        monotone=monotone,
    )
