"""Integer partitions and the counting factors attached to them.

The moment sum for a shuffled Gaussian runs over all ways to split an
order lambda among n senders.  Compositions that are permutations of
each other contribute identical terms, so the sum collapses to one term
per integer partition of lambda, weighted by two counts:

  * the multinomial coefficient lambda! / prod_i k_i!  (how many
    orderings of the lambda draws realize the part sizes), and
  * the number of distinct assignments of parts to the n senders,
    n! / (prod_v kappa_v! * kappa_0!), where kappa_v counts parts equal
    to v and kappa_0 = n - (number of parts) counts the senders that
    received nothing.  The empty senders form one repetition class like
    any other.

Partition generation is memoized per (order, max_parts): the accountant
revisits the same order for every sigma and n in a sweep, and the
partition list only depends on those two integers.
"""

import math
from collections import Counter
from dataclasses import dataclass, field

from ._memo import once_per_key
from .errors import ResourceLimitError
from .numerics import log_falling_factorial

# p(64) ~ 1.7 million partitions is the largest list we agree to hold
# in memory without an explicit override.
DEFAULT_ORDER_CAP = 64


@dataclass(frozen=True)
class Partition:
    """A partition of a positive integer into non-increasing parts."""

    parts: tuple[int, ...]
    order: int = field(default=0)

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a partition must have at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive, got {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must be non-increasing, got {self.parts}")
        total = sum(self.parts)
        if self.order == 0:
            object.__setattr__(self, "order", total)
        elif self.order != total:
            raise ValueError(
                f"order {self.order} does not match sum of parts {total}"
            )

    @property
    def num_parts(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class MultiplicityTable:
    """Repetition classes of a partition embedded among n senders.

    entries maps each distinct part value to how many parts take it;
    zero_count is the number of senders holding no draw at all.
    """

    entries: tuple[tuple[int, int], ...]
    zero_count: int

    @property
    def num_parts(self) -> int:
        return sum(count for _, count in self.entries)

    @property
    def population(self) -> int:
        return self.num_parts + self.zero_count


def _partitions_into(total: int, max_value: int, slots: int):
    """Yield non-increasing part tuples of total, parts <= max_value,
    at most slots parts."""
    if total == 0:
        yield ()
        return
    if slots == 0:
        return
    for first in range(min(total, max_value), 0, -1):
        for rest in _partitions_into(total - first, first, slots - 1):
            yield (first,) + rest


@once_per_key
def _generate(order: int, max_parts: int) -> tuple[Partition, ...]:
    return tuple(
        Partition(parts) for parts in _partitions_into(order, order, max_parts)
    )


def generate_partitions(
    order: int, max_parts: int, cap: int = DEFAULT_ORDER_CAP
) -> tuple[Partition, ...]:
    """All partitions of order into at most max_parts parts, descending
    lexicographic.

    Results are cached per (order, max_parts).  Orders above cap are
    refused because the partition count grows super-polynomially; raise
    cap explicitly if you really want a larger order.
    """
    if order < 1:
        raise ValueError(f"order must be a positive integer, got {order}")
    if max_parts < 1:
        raise ValueError(f"max_parts must be >= 1, got {max_parts}")
    if order > cap:
        raise ResourceLimitError(
            f"order {order} exceeds the partition-size cap {cap}; "
            f"pass a larger cap to authorize the bigger enumeration",
            cap=cap,
        )
    return _generate(order, min(max_parts, order))


def unique_counts(p: Partition, n: int) -> MultiplicityTable:
    """Group the parts of p by value, with n - num_parts empty senders."""
    if n < p.num_parts:
        raise ValueError(
            f"cannot place {p.num_parts} parts among {n} senders"
        )
    counts = Counter(p.parts)
    entries = tuple(sorted(counts.items(), reverse=True))
    return MultiplicityTable(entries=entries, zero_count=n - p.num_parts)


def log_permutation_count(t: MultiplicityTable, n: int) -> float:
    """log of n! / (prod_v kappa_v! * kappa_0!): distinct sender
    assignments of a part multiset.

    Computed as log(n * (n-1) * ... * (n - num_parts + 1)) minus the
    log factorials of the repeated part values; the kappa_0! cancels
    the tail of n! exactly.  The term-by-term falling factorial keeps
    ~1e-12 relative accuracy even at n around 1e7, where an
    lgamma(n+1) - lgamma(n-l+1) difference would lose digits.
    """
    if n != t.population:
        raise ValueError(
            f"table describes {t.population} senders, asked about {n}"
        )
    log_fall = log_falling_factorial(n, t.num_parts)
    log_reps = math.fsum(math.lgamma(c + 1) for _, c in t.entries)
    return log_fall - log_reps


def log_multinomial_coefficient(p: Partition) -> float:
    """log of order! / prod_i parts_i!."""
    return math.lgamma(p.order + 1) - math.fsum(
        math.lgamma(k + 1) for k in p.parts
    )
