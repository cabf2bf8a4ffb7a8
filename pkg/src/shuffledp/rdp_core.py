"""Exact Renyi-DP of the shuffled Gaussian mechanism.

A trusted shuffler receives one unit-sensitivity Gaussian report from
each of n senders and outputs the multiset.  At integer order lambda
the Renyi divergence between neighboring inputs has a closed form: an
average over all ways the lambda "draws" of the divergence integral can
land on senders,

    exp((lambda-1) * eps(lambda))
        = e^{-lambda/(2 sigma^2)} / n^lambda
          * sum over compositions k_1+...+k_n = lambda of
                multinomial(lambda; k) * e^{(sum_i k_i^2)/(2 sigma^2)}.

Grouping compositions by the integer partition they induce leaves one
term per partition of lambda with a permutation-count weight, which is
what evaluate here.  Two observations keep the evaluation stable at
the extreme ends (tiny epsilon at large n, huge moments at small
sigma):

  * the partition weights w_p (multinomial times permutation count
    over n^lambda) sum to exactly 1, so the moment is
    1 + sum_p w_p * (e^{g_p} - 1) with every g_p >= 0, and we can take
    softplus of a log-sum-exp over log(w_p) + log(e^{g_p} - 1) instead
    of forming the barely-above-1 sum directly;
  * log w_p splits into an n-independent part (cached per order) plus
    a falling-factorial log in n, accumulated term by term to dodge
    lgamma cancellation.

``brute_force_rdp`` is the deliberately naive cross-check: it
enumerates raw compositions and takes exact integer multinomials, so
it shares no code path with the partition route.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from ._memo import once_per_key
from .errors import ResourceLimitError
from .numerics import log1pexp, log_expm1
from .partitions import (
    DEFAULT_ORDER_CAP,
    generate_partitions,
    log_multinomial_coefficient,
    unique_counts,
)

# Largest composition count brute_force_rdp will enumerate.
BRUTE_FORCE_LIMIT = 10**7


@dataclass(frozen=True)
class MechanismSpec:
    """Shuffled Gaussian with noise scale sigma (as a multiple of the
    per-sender sensitivity) over n senders."""

    sigma: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a positive float, got {self.sigma}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")


@dataclass(frozen=True)
class RdpCurve:
    """Renyi-DP guarantees at a set of integer orders.

    points maps order -> epsilon; orders are kept sorted.  provenance
    is a human-readable tag describing where the curve came from, which
    composition and the ledger carry along.
    """

    points: dict[int, float]
    provenance: str = ""

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("an RdpCurve needs at least one order")
        for lam, eps in self.points.items():
            if not isinstance(lam, int) or lam < 2:
                raise ValueError(f"orders must be integers >= 2, got {lam!r}")
            if not (math.isfinite(eps) and eps >= 0):
                raise ValueError(f"epsilon at order {lam} must be finite and >= 0, got {eps}")
        object.__setattr__(self, "points", dict(sorted(self.points.items())))

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.points)

    @property
    def epsilons(self) -> tuple[float, ...]:
        return tuple(self.points.values())

    def epsilon_at(self, order: int) -> float:
        return self.points[order]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class _PartitionTables:
    """Per-(order, max_parts) arrays for the vectorized moment sum."""

    log_coeff: np.ndarray  # log multinomial - sum_v lgamma(kappa_v + 1)
    sum_sq: np.ndarray     # sum of squared parts
    num_parts: np.ndarray  # how many parts, for the falling factorial
    order: int = field(compare=False, default=0)


@once_per_key
def _partition_tables(order: int, max_parts: int) -> _PartitionTables:
    parts_list = generate_partitions(order, max_parts, cap=order)
    coeff = np.empty(len(parts_list))
    sum_sq = np.empty(len(parts_list))
    nparts = np.empty(len(parts_list), dtype=np.int64)
    for i, p in enumerate(parts_list):
        table = unique_counts(p, p.num_parts)
        coeff[i] = log_multinomial_coefficient(p) - math.fsum(
            math.lgamma(c + 1) for _, c in table.entries
        )
        sum_sq[i] = sum(k * k for k in p.parts)
        nparts[i] = p.num_parts
    return _PartitionTables(coeff, sum_sq, nparts, order)


def _falling_log_prefix(n: int, length: int) -> np.ndarray:
    """F[l-1] = log(n (n-1) ... (n-l+1)) for l = 1..length, each via fsum."""
    logs: list[float] = []
    out = np.empty(length)
    for i in range(length):
        logs.append(math.log(n - i))
        out[i] = math.fsum(logs)
    return out


def _validate_order(order: int, cap: int) -> None:
    if not isinstance(order, int) or order < 2:
        raise ValueError(f"order must be an integer >= 2, got {order!r}")
    if order > cap:
        raise ResourceLimitError(
            f"order {order} exceeds cap {cap}; pass cap explicitly to go higher",
            cap=cap,
        )


def shuffle_gaussian_log_moment(
    spec: MechanismSpec, order: int, cap: int = DEFAULT_ORDER_CAP
) -> float:
    """log E[(p/q)^order] for the shuffled Gaussian, i.e.
    (order - 1) * epsilon(order), evaluated by partition grouping.

    Exact up to float rounding; relative accuracy is limited only by
    the final softplus, so values as small as 1e-18 keep full
    precision.
    """
    _validate_order(order, cap)
    tables = _partition_tables(order, min(order, spec.n))
    inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma)
    gains = (tables.sum_sq - order) * inv2s2
    prefix = _falling_log_prefix(spec.n, int(tables.num_parts.max()))
    log_w = (
        tables.log_coeff
        + prefix[tables.num_parts - 1]
        - order * math.log(spec.n)
    )
    positive = gains > 0
    if not positive.any():
        return 0.0
    log_x = logsumexp(log_w[positive] + log_expm1(gains[positive]))
    return log1pexp(log_x)


def shuffle_gaussian_upper_bound(sigma: float, order: int) -> float:
    """Closed-form ceiling order / (2 sigma^2), the unshuffled Gaussian
    RDP.  Shuffling can only help, so the exact value never exceeds it."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be a positive float, got {sigma}")
    if not isinstance(order, int) or order < 2:
        raise ValueError(f"order must be an integer >= 2, got {order!r}")
    return order / (2.0 * sigma * sigma)


def shuffle_gaussian_rdp(
    spec: MechanismSpec, order: int, cap: int = DEFAULT_ORDER_CAP
) -> float:
    """Exact Renyi-DP epsilon(order), clamped into
    [0, order / (2 sigma^2)].

    The clamp only ever absorbs float rounding: mathematically the
    moment is >= 1 (epsilon >= 0) and shuffling cannot be worse than a
    single Gaussian (the upper bound).
    """
    moment = shuffle_gaussian_log_moment(spec, order, cap=cap)
    eps = moment / (order - 1)
    bound = shuffle_gaussian_upper_bound(spec.sigma, order)
    return min(max(eps, 0.0), bound)


def rdp_curve(
    spec: MechanismSpec, orders, cap: int = DEFAULT_ORDER_CAP
) -> RdpCurve:
    """Evaluate the exact curve over an iterable of integer orders."""
    order_list = sorted(set(orders))
    if not order_list:
        raise ValueError("orders must be non-empty")
    points = {
        lam: shuffle_gaussian_rdp(spec, lam, cap=cap) for lam in order_list
    }
    return RdpCurve(points, provenance=f"shuffle_gaussian(sigma={spec.sigma!r}, n={spec.n})")


def _compositions(total: int, slots: int):
    """Yield every way to write total as an ordered sum of slots
    non-negative integers.  Iterative so deep slot counts cannot hit
    the recursion limit."""
    comp = [0] * slots
    comp[0] = total
    while True:
        yield tuple(comp)
        if comp[-1] == total:
            return
        # Rightmost movable unit left of the last slot.
        i = max(j for j in range(slots - 1) if comp[j] > 0)
        moved = comp[-1] + 1
        comp[i] -= 1
        for j in range(i + 1, slots):
            comp[j] = 0
        comp[i + 1] = moved


def brute_force_rdp(
    spec: MechanismSpec, order: int, limit: int = BRUTE_FORCE_LIMIT
) -> float:
    """Reference evaluation straight from the composition sum.

    Enumerates all n^order sender assignments (as compositions with
    exact integer multinomial coefficients) and log-sum-exps them.  No
    partition grouping, no shared code with the fast path; use it to
    validate, not to compute.
    """
    if not isinstance(order, int) or order < 2:
        raise ValueError(f"order must be an integer >= 2, got {order!r}")
    n = spec.n
    if n**order > limit:
        raise ResourceLimitError(
            f"n^order = {n**order} exceeds the brute-force limit {limit}",
            cap=limit,
        )
    inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma)
    fact = math.factorial(order)
    log_terms = []
    for comp in _compositions(order, n):
        multinom = fact
        for k in comp:
            if k > 1:
                multinom //= math.factorial(k)
        log_terms.append(
            math.log(multinom) + sum(k * k for k in comp) * inv2s2
        )
    shift = max(log_terms)
    total = math.fsum(math.exp(t - shift) for t in log_terms)
    log_sum = shift + math.log(total)
    moment = log_sum - order * inv2s2 - order * math.log(n)
    return moment / (order - 1)
