"""Composition, (epsilon, delta) conversion, and a persistent ledger.

Renyi guarantees compose by adding epsilons pointwise at each shared
order, so a training run is a running sum per order plus one final
conversion to approximate DP.  The conversion used here is the
tightened one,

    eps(delta) = min over orders lambda of
        eps(lambda) + [log(1/delta) + (lambda-1) log(1 - 1/lambda)
                       - log(lambda)] / (lambda - 1),

which beats the classic eps + log(1/delta)/(lambda-1) by roughly
log(lambda)/(lambda-1).  The ledger records every mechanism added, keeps
the running composed curve, and serializes to JSON losslessly (float
repr survives the round trip bit for bit)."""

import json
import math
import os
import tempfile
from dataclasses import dataclass

from .rdp_core import RdpCurve

LEDGER_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ApproxDp:
    """An (epsilon, delta) guarantee, tagged with the Renyi order that
    produced it and whether the epsilon was clamped up to zero."""

    epsilon: float
    delta: float
    optimal_order: int | None = None
    clamped: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0):
            raise ValueError(f"epsilon must be finite and >= 0, got {self.epsilon}")
        if not (0.0 <= self.delta <= 1.0):
            raise ValueError(f"delta must be in [0, 1], got {self.delta}")


def compose(curves) -> RdpCurve:
    """Pointwise-sum a sequence of (RdpCurve, rounds) pairs.

    Only orders present in every curve survive; an empty intersection
    is an error that lists what each curve offered.  Accumulation is a
    left fold starting from 0.0, which makes a from-scratch composition
    bit-identical to growing a ledger one entry at a time.
    """
    curves = list(curves)
    if not curves:
        raise ValueError("nothing to compose")
    for curve, rounds in curves:
        if not isinstance(rounds, int) or rounds < 1:
            raise ValueError(f"rounds must be a positive integer, got {rounds}")
    shared = set(curves[0][0].orders)
    for curve, _ in curves[1:]:
        shared &= set(curve.orders)
    if not shared:
        offered = ", ".join(str(list(c.orders)) for c, _ in curves)
        raise ValueError(f"no common orders to compose over; curves have {offered}")
    points = {lam: 0.0 for lam in sorted(shared)}
    for curve, rounds in curves:
        for lam in points:
            points[lam] += rounds * curve.epsilon_at(lam)
    label = "; ".join(
        f"{rounds}x {curve.provenance or 'unnamed'}" for curve, rounds in curves
    )
    return RdpCurve(points, provenance=f"compose({label})")


def conversion_penalty(order: int, delta: float) -> float:
    """The additive order-dependent term of the tight conversion."""
    return (
        math.log(1.0 / delta)
        + (order - 1) * math.log1p(-1.0 / order)
        - math.log(order)
    ) / (order - 1)


def to_approx_dp(curve: RdpCurve, delta: float) -> ApproxDp:
    """Convert a Renyi curve to the best (epsilon, delta) it implies.

    Scans every order on the curve; negative epsilons (possible when
    the curve is far tighter than delta demands) clamp to 0 with the
    flag set rather than claiming impossible negative privacy loss.
    """
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    best_eps = math.inf
    best_order = None
    for lam in curve.orders:
        eps = curve.epsilon_at(lam) + conversion_penalty(lam, delta)
        if eps < best_eps:
            best_eps = eps
            best_order = lam
    if best_eps < 0.0:
        return ApproxDp(0.0, delta, optimal_order=best_order, clamped=True)
    return ApproxDp(best_eps, delta, optimal_order=best_order, clamped=False)


@dataclass(frozen=True)
class LedgerEntry:
    provenance: str
    rounds: int
    points: dict[int, float]


@dataclass(frozen=True)
class Ledger:
    """Append-only record of composed mechanisms.

    composed is the running pointwise sum over the orders shared by all
    entries so far, or None for an empty ledger."""

    entries: tuple[LedgerEntry, ...] = ()
    composed: RdpCurve | None = None


def ledger_append(ledger: Ledger, curve: RdpCurve, rounds: int) -> Ledger:
    """Record rounds applications of curve; returns a new Ledger.

    The running composed curve narrows to the orders shared with the
    new entry; losing every order is an error because the ledger would
    no longer imply any guarantee.
    """
    if not isinstance(rounds, int) or rounds < 1:
        raise ValueError(f"rounds must be a positive integer, got {rounds}")
    entry = LedgerEntry(curve.provenance, rounds, dict(curve.points))
    if ledger.composed is None:
        points = {lam: 0.0 for lam in curve.orders}
    else:
        shared = set(ledger.composed.orders) & set(curve.orders)
        if not shared:
            raise ValueError(
                f"new curve (orders {list(curve.orders)}) shares no orders "
                f"with the ledger (orders {list(ledger.composed.orders)})"
            )
        points = {lam: ledger.composed.epsilon_at(lam) for lam in sorted(shared)}
    for lam in points:
        points[lam] += rounds * curve.epsilon_at(lam)
    composed = RdpCurve(points, provenance="ledger-composed")
    return Ledger(entries=ledger.entries + (entry,), composed=composed)


def save_ledger(ledger: Ledger, path: str) -> None:
    """Write the ledger as versioned JSON, atomically."""
    payload = {
        "version": LEDGER_FORMAT_VERSION,
        "entries": [
            {
                "provenance": e.provenance,
                "rounds": e.rounds,
                "points": {str(lam): eps for lam, eps in e.points.items()},
            }
            for e in ledger.entries
        ],
        "composed": (
            None
            if ledger.composed is None
            else {
                "points": {
                    str(lam): eps for lam, eps in ledger.composed.points.items()
                }
            }
        ),
    }
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_ledger(path: str) -> Ledger:
    """Read a ledger written by save_ledger; floats return bit-exact."""
    with open(path) as fh:
        payload = json.load(fh)
    version = payload.get("version")
    if version != LEDGER_FORMAT_VERSION:
        raise ValueError(
            f"unsupported ledger format version {version!r}; "
            f"this build reads version {LEDGER_FORMAT_VERSION}"
        )
    entries = tuple(
        LedgerEntry(
            provenance=e["provenance"],
            rounds=e["rounds"],
            points={int(lam): eps for lam, eps in e["points"].items()},
        )
        for e in payload["entries"]
    )
    composed = payload["composed"]
    curve = None
    if composed is not None:
        curve = RdpCurve(
            {int(lam): eps for lam, eps in composed["points"].items()},
            provenance="ledger-composed",
        )
    return Ledger(entries=entries, composed=curve)


def equivalent_central_noise(sigma: float, batch: int) -> float:
    """Noise multiplier of the single central Gaussian whose variance
    matches a summed batch of per-sender Gaussians: sigma * sqrt(B)."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be a positive float, got {sigma}")
    if not isinstance(batch, int) or batch < 1:
        raise ValueError(f"batch must be a positive integer, got {batch}")
    return sigma * math.sqrt(batch)
