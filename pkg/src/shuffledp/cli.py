"""Command-line front end.

One subcommand per accounting task; every command can emit JSON
(default) or CSV via --format, write atomically to --output, and pull
default parameter values from a --config JSON file (explicit flags
win).  Exit codes: 0 success, 2 bad usage or argument values, 1 for
domain failures such as an inapplicable bound or a blown resource cap.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

from .accountant import (
    Ledger,
    compose,
    ledger_append,
    load_ledger,
    save_ledger,
    to_approx_dp,
)
from .amplification import (
    DEFAULT_DELTA_GRID,
    CheckinSpec,
    SubsampleSpec,
    checkin_rdp_direct,
    checkin_rdp_fast,
    monotonicity_scan,
    subsampled_shuffle_rdp,
)
from .baselines import DEFAULT_SENSITIVITY, clones_table_row
from .errors import ShuffleDpError
from .partitions import DEFAULT_ORDER_CAP
from .rdp_core import (
    MechanismSpec,
    RdpCurve,
    rdp_curve,
    shuffle_gaussian_upper_bound,
)

DEFAULT_ORDERS = "2..30"


class UsageError(Exception):
    pass


def _parse_orders(value) -> list[int]:
    if isinstance(value, list):
        orders = value
    else:
        text = str(value).strip()
        if ".." in text:
            lo_text, _, hi_text = text.partition("..")
            try:
                lo, hi = int(lo_text), int(hi_text)
            except ValueError:
                raise UsageError(f"cannot parse order range {text!r}") from None
            if lo > hi:
                raise UsageError(f"empty order range {text!r}")
            orders = list(range(lo, hi + 1))
        else:
            try:
                orders = [int(part) for part in text.split(",") if part.strip()]
            except ValueError:
                raise UsageError(f"cannot parse orders {text!r}") from None
    if not orders:
        raise UsageError("orders must be non-empty")
    for lam in orders:
        if not isinstance(lam, int) or lam < 2:
            raise UsageError(f"orders must be integers >= 2, got {lam!r}")
    return sorted(set(orders))


def _parse_n_range(value) -> tuple[int, int]:
    if isinstance(value, list) and len(value) == 2:
        lo, hi = value
    else:
        text = str(value).strip()
        lo_text, sep, hi_text = text.partition("..")
        if not sep:
            raise UsageError(f"expected a range like 1..1000, got {text!r}")
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise UsageError(f"cannot parse range {text!r}") from None
    if not (isinstance(lo, int) and isinstance(hi, int) and 1 <= lo <= hi):
        raise UsageError(f"need integers 1 <= lo <= hi, got {lo}..{hi}")
    return lo, hi


def _parse_delta(value, n: int | None):
    """Returns a float delta, resolving the literal "auto" to 1/n."""
    if value is None:
        return None
    if isinstance(value, str):
        if value.strip().lower() == "auto":
            if n is None:
                raise UsageError('--delta auto needs a population size n')
            return 1.0 / n
        try:
            value = float(value)
        except ValueError:
            raise UsageError(f"cannot parse delta {value!r}") from None
    value = float(value)
    if not (0.0 < value < 1.0):
        raise UsageError(f"delta must be in (0, 1), got {value}")
    return value


def _parse_delta_grid(value) -> tuple[float, ...]:
    if isinstance(value, (list, tuple)):
        grid = [float(v) for v in value]
    else:
        try:
            grid = [float(part) for part in str(value).split(",") if part.strip()]
        except ValueError:
            raise UsageError(f"cannot parse delta grid {value!r}") from None
    if not grid or any(not (0.0 < v < 1.0) for v in grid):
        raise UsageError("delta grid values must lie in (0, 1)")
    return tuple(grid)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            config = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return config


def _resolve(args, config: dict, name: str, default=None, required: bool = False):
    value = getattr(args, name, None)
    if value is None:
        value = config.get(name)
    if value is None:
        if required:
            flag = "--" + name.replace("_", "-")
            raise UsageError(f"missing required option {flag}")
        return default
    return value


def _resolve_int(args, config, name, default=None, required=False, minimum=1):
    value = _resolve(args, config, name, default, required)
    if value is None:
        return None
    try:
        as_int = int(value)
    except (TypeError, ValueError):
        raise UsageError(f"--{name.replace('_', '-')} must be an integer") from None
    if float(value) != as_int or as_int < minimum:
        raise UsageError(
            f"--{name.replace('_', '-')} must be an integer >= {minimum}, got {value}"
        )
    return as_int


def _resolve_float(args, config, name, default=None, required=False):
    value = _resolve(args, config, name, default, required)
    if value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise UsageError(f"--{name.replace('_', '-')} must be a number") from None


def _conversion_block(curve: RdpCurve, delta: float | None):
    if delta is None:
        return None
    result = to_approx_dp(curve, delta)
    return {
        "epsilon": result.epsilon,
        "delta": result.delta,
        "optimal_order": result.optimal_order,
        "clamped": result.clamped,
    }


def _curve_csv(curve_points: dict) -> tuple[list[str], list[list]]:
    return ["order", "epsilon"], [[lam, eps] for lam, eps in curve_points.items()]


def _cmd_rdp(args, config):
    sigma = _resolve_float(args, config, "sigma", required=True)
    n = _resolve_int(args, config, "n", required=True)
    orders = _parse_orders(_resolve(args, config, "orders", DEFAULT_ORDERS))
    cap = _resolve_int(args, config, "cap", DEFAULT_ORDER_CAP, minimum=2)
    delta = _parse_delta(_resolve(args, config, "delta"), n)
    sweep = _resolve_int(args, config, "sweep_compositions", minimum=1)
    curve = rdp_curve(MechanismSpec(sigma, n), orders, cap=cap)
    payload = {
        "command": "rdp",
        "parameters": {
            "sigma": sigma,
            "n": n,
            "orders": list(curve.orders),
            "delta": delta,
        },
        "epsilons": {str(lam): eps for lam, eps in curve.points.items()},
    }
    block = _conversion_block(curve, delta)
    if block is not None:
        payload["conversion"] = block
    if sweep is None:
        return payload, _curve_csv(curve.points), None
    if delta is None:
        raise UsageError("--sweep-compositions needs --delta for the conversion")
    bound_curve = RdpCurve(
        {lam: shuffle_gaussian_upper_bound(sigma, lam) for lam in curve.orders},
        provenance=f"gaussian_bound(sigma={sigma!r})",
    )
    rows = []
    for k in range(1, sweep + 1):
        exact_k = compose([(curve, k)])
        bound_k = compose([(bound_curve, k)])
        rows.append(
            {
                "compositions": k,
                "epsilon_exact": to_approx_dp(exact_k, delta).epsilon,
                "epsilon_bound": to_approx_dp(bound_k, delta).epsilon,
            }
        )
    payload["sweep"] = rows
    header = ["compositions", "epsilon_exact", "epsilon_bound"]
    csv_rows = [[r["compositions"], r["epsilon_exact"], r["epsilon_bound"]] for r in rows]
    return payload, (header, csv_rows), None


def _subsample_spec(args, config) -> SubsampleSpec:
    sigma = _resolve_float(args, config, "sigma", required=True)
    m = _resolve_int(args, config, "m", required=True)
    n_total = _resolve_int(args, config, "n_total")
    gamma = _resolve_float(args, config, "gamma")
    if n_total is None and gamma is None:
        raise UsageError("need --n-total or --gamma to fix the sampling rate")
    try:
        return SubsampleSpec(sigma, m, n_total=n_total, gamma=gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_subsample(args, config):
    spec = _subsample_spec(args, config)
    orders = _parse_orders(_resolve(args, config, "orders", DEFAULT_ORDERS))
    cap = _resolve_int(args, config, "cap", DEFAULT_ORDER_CAP, minimum=2)
    delta = _parse_delta(_resolve(args, config, "delta"), spec.n_total)
    points = {lam: subsampled_shuffle_rdp(spec, lam, cap=cap) for lam in orders}
    curve = RdpCurve(
        points,
        provenance=f"subsampled_shuffle(sigma={spec.sigma!r}, m={spec.m}, gamma={spec.gamma!r})",
    )
    payload = {
        "command": "subsample",
        "parameters": {
            "sigma": spec.sigma,
            "m": spec.m,
            "n_total": spec.n_total,
            "gamma": spec.gamma,
            "orders": list(curve.orders),
            "delta": delta,
        },
        "epsilons": {str(lam): eps for lam, eps in curve.points.items()},
    }
    block = _conversion_block(curve, delta)
    if block is not None:
        payload["conversion"] = block
    return payload, _curve_csv(curve.points), None


def _checkin_spec(args, config) -> CheckinSpec:
    sigma = _resolve_float(args, config, "sigma", required=True)
    n = _resolve_int(args, config, "n", required=True)
    gamma = _resolve_float(args, config, "gamma", required=True)
    grid = _parse_delta_grid(_resolve(args, config, "delta_grid", DEFAULT_DELTA_GRID))
    try:
        return CheckinSpec(sigma, n, gamma, delta_grid=grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_checkin(args, config):
    spec = _checkin_spec(args, config)
    orders = _parse_orders(_resolve(args, config, "orders", DEFAULT_ORDERS))
    cap = _resolve_int(args, config, "cap", DEFAULT_ORDER_CAP, minimum=2)
    delta = _parse_delta(_resolve(args, config, "delta"), spec.n_total)
    direct = bool(getattr(args, "direct", False) or config.get("direct", False))
    points = {}
    chosen = {}
    for lam in orders:
        if direct:
            points[lam] = checkin_rdp_direct(spec, lam, cap=cap)
        else:
            result = checkin_rdp_fast(spec, lam, cap=cap)
            points[lam] = result.epsilon
            chosen[lam] = result.chosen_delta
    curve = RdpCurve(
        points,
        provenance=(
            f"checkin_{'direct' if direct else 'fast'}"
            f"(sigma={spec.sigma!r}, n_total={spec.n_total}, gamma={spec.gamma!r})"
        ),
    )
    payload = {
        "command": "checkin",
        "parameters": {
            "sigma": spec.sigma,
            "n_total": spec.n_total,
            "gamma": spec.gamma,
            "orders": list(curve.orders),
            "delta": delta,
            "method": "direct" if direct else "fast",
        },
        "epsilons": {str(lam): eps for lam, eps in curve.points.items()},
    }
    if not direct:
        payload["chosen_deltas"] = {str(lam): chosen[lam] for lam in curve.orders}
    block = _conversion_block(curve, delta)
    if block is not None:
        payload["conversion"] = block
    header = ["order", "epsilon", "chosen_delta"]
    rows = [
        [lam, eps, "" if direct else chosen[lam]]
        for lam, eps in curve.points.items()
    ]
    return payload, (header, rows), None


def _mechanism_curve(args, config, orders, cap) -> RdpCurve:
    mechanism = _resolve(args, config, "mechanism", required=True)
    if mechanism == "shuffle":
        sigma = _resolve_float(args, config, "sigma", required=True)
        n = _resolve_int(args, config, "n", required=True)
        return rdp_curve(MechanismSpec(sigma, n), orders, cap=cap)
    if mechanism == "subsample":
        spec = _subsample_spec(args, config)
        points = {lam: subsampled_shuffle_rdp(spec, lam, cap=cap) for lam in orders}
        return RdpCurve(
            points,
            provenance=f"subsampled_shuffle(sigma={spec.sigma!r}, m={spec.m}, gamma={spec.gamma!r})",
        )
    if mechanism == "checkin":
        spec = _checkin_spec(args, config)
        direct = bool(getattr(args, "direct", False) or config.get("direct", False))
        points = {}
        for lam in orders:
            if direct:
                points[lam] = checkin_rdp_direct(spec, lam, cap=cap)
            else:
                points[lam] = checkin_rdp_fast(spec, lam, cap=cap).epsilon
        return RdpCurve(
            points,
            provenance=(
                f"checkin_{'direct' if direct else 'fast'}"
                f"(sigma={spec.sigma!r}, n_total={spec.n_total}, gamma={spec.gamma!r})"
            ),
        )
    raise UsageError(f"unknown mechanism {mechanism!r}")


def _cmd_compose(args, config):
    ledger_path = _resolve(args, config, "ledger", required=True)
    orders = _parse_orders(_resolve(args, config, "orders", DEFAULT_ORDERS))
    cap = _resolve_int(args, config, "cap", DEFAULT_ORDER_CAP, minimum=2)
    rounds = _resolve_int(args, config, "rounds", 1)
    curve = _mechanism_curve(args, config, orders, cap)
    ledger = load_ledger(ledger_path) if os.path.exists(ledger_path) else Ledger()
    ledger = ledger_append(ledger, curve, rounds)
    save_ledger(ledger, ledger_path)
    delta = _parse_delta(_resolve(args, config, "delta"), None)
    composed = ledger.composed
    payload = {
        "command": "compose",
        "ledger": ledger_path,
        "entries": len(ledger.entries),
        "rounds_added": rounds,
        "composed": {str(lam): eps for lam, eps in composed.points.items()},
    }
    block = _conversion_block(composed, delta)
    if block is not None:
        payload["conversion"] = block
    return payload, _curve_csv(composed.points), None


def _load_curve_file(path: str) -> RdpCurve:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read curve file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"curve file {path} is not valid JSON: {exc}") from None
    if isinstance(data, dict):
        for key in ("epsilons", "points"):
            if isinstance(data.get(key), dict):
                data = data[key]
                break
    if not isinstance(data, dict):
        raise UsageError(f"curve file {path} must hold an object of order: epsilon")
    try:
        points = {int(lam): float(eps) for lam, eps in data.items()}
        return RdpCurve(points, provenance=f"file:{path}")
    except (TypeError, ValueError) as exc:
        raise UsageError(f"curve file {path}: {exc}") from None


def _cmd_convert(args, config):
    delta_raw = _resolve(args, config, "delta", required=True)
    ledger_path = _resolve(args, config, "ledger")
    curve_path = _resolve(args, config, "curve_file")
    if (ledger_path is None) == (curve_path is None):
        raise UsageError("convert needs exactly one of --ledger or --curve-file")
    if ledger_path is not None:
        ledger = load_ledger(ledger_path)
        if ledger.composed is None:
            raise UsageError(f"ledger {ledger_path} is empty; nothing to convert")
        curve = ledger.composed
        source = ledger_path
    else:
        curve = _load_curve_file(curve_path)
        source = curve_path
    delta = _parse_delta(delta_raw, None)
    result = to_approx_dp(curve, delta)
    payload = {
        "command": "convert",
        "source": source,
        "epsilon": result.epsilon,
        "delta": result.delta,
        "optimal_order": result.optimal_order,
        "clamped": result.clamped,
    }
    header = ["epsilon", "delta", "optimal_order", "clamped"]
    rows = [[result.epsilon, result.delta, result.optimal_order, result.clamped]]
    return payload, (header, rows), None


def _cmd_clones(args, config):
    sigma = _resolve_float(args, config, "sigma", required=True)
    n = _resolve_int(args, config, "n", required=True)
    max_k = _resolve_int(args, config, "max_k", 7)
    sensitivity = _resolve_float(args, config, "sensitivity", DEFAULT_SENSITIVITY)
    delta = _parse_delta(_resolve(args, config, "delta", "auto"), n)
    rows = clones_table_row(sigma, n, max_k, sensitivity, delta_target=delta)
    payload = {
        "command": "clones",
        "parameters": {
            "sigma": sigma,
            "n": n,
            "max_k": max_k,
            "sensitivity": sensitivity,
            "delta": delta,
        },
        "rows": [
            {"k": k, "epsilon": row.epsilon, "delta": row.delta}
            for k, row in enumerate(rows, start=1)
        ],
    }
    header = ["k", "epsilon", "delta"]
    csv_rows = [[k, row.epsilon, row.delta] for k, row in enumerate(rows, start=1)]
    return payload, (header, csv_rows), None


def _cmd_table2(args, config):
    sigma = _resolve_float(args, config, "sigma", 9.48)
    n = _resolve_int(args, config, "n", 60000)
    max_k = _resolve_int(args, config, "max_k", 7)
    orders = _parse_orders(_resolve(args, config, "orders", DEFAULT_ORDERS))
    cap = _resolve_int(args, config, "cap", DEFAULT_ORDER_CAP, minimum=2)
    sensitivity = _resolve_float(args, config, "sensitivity", DEFAULT_SENSITIVITY)
    delta = _parse_delta(_resolve(args, config, "delta", "auto"), n)
    clones = clones_table_row(sigma, n, max_k, sensitivity, delta_target=delta)
    curve = rdp_curve(MechanismSpec(sigma, n), orders, cap=cap)
    ours = [
        to_approx_dp(compose([(curve, k)]), delta).epsilon
        for k in range(1, max_k + 1)
    ]
    payload = {
        "command": "table2",
        "parameters": {
            "sigma": sigma,
            "n": n,
            "max_k": max_k,
            "orders": list(curve.orders),
            "sensitivity": sensitivity,
            "delta": delta,
        },
        "compositions": list(range(1, max_k + 1)),
        "clones": [row.epsilon for row in clones],
        "ours": ours,
    }
    header = ["k", "clones_epsilon", "ours_epsilon"]
    csv_rows = [
        [k, clones[k - 1].epsilon, ours[k - 1]] for k in range(1, max_k + 1)
    ]
    label_width = len("No. of composition")
    lines = [
        "No. of composition".ljust(label_width)
        + "".join(f"{k:>9d}" for k in range(1, max_k + 1)),
        "Clones".ljust(label_width)
        + "".join(f"{row.epsilon:>9.5f}" for row in clones),
        "Ours".ljust(label_width)
        + "".join(f"{eps:>9.5f}" for eps in ours),
    ]
    return payload, (header, csv_rows), "\n".join(lines)


def _cmd_scan_monotonic(args, config):
    sigma = _resolve_float(args, config, "sigma", required=True)
    order = _resolve_int(args, config, "order", required=True, minimum=2)
    n_range = _parse_n_range(_resolve(args, config, "n", required=True))
    cap = _resolve_int(args, config, "cap", DEFAULT_ORDER_CAP, minimum=2)
    report = monotonicity_scan(sigma, order, n_range, cap=cap)
    payload = {
        "command": "scan-monotonic",
        "parameters": {"sigma": sigma, "order": order, "n": list(n_range)},
        "n_values": list(report.n_values),
        "epsilons": list(report.epsilons),
        "monotone": report.monotone,
    }
    header = ["n", "epsilon"]
    rows = [[n, eps] for n, eps in zip(report.n_values, report.epsilons)]
    return payload, (header, rows), None


_COMMANDS = {
    "rdp": _cmd_rdp,
    "subsample": _cmd_subsample,
    "checkin": _cmd_checkin,
    "compose": _cmd_compose,
    "convert": _cmd_convert,
    "clones": _cmd_clones,
    "table2": _cmd_table2,
    "scan-monotonic": _cmd_scan_monotonic,
}


def _add_common(sub):
    sub.add_argument("--format", choices=["json", "csv"], default=None)
    sub.add_argument("--output", default=None, metavar="PATH")
    sub.add_argument("--config", default=None, metavar="PATH")
    sub.add_argument("--cap", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shuffledp",
        description="Renyi-DP accounting for shuffled Gaussian mechanisms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rdp", help="exact shuffled-Gaussian curve")
    p.add_argument("--sigma", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--orders", default=None)
    p.add_argument("--delta", default=None)
    p.add_argument("--sweep-compositions", type=int, default=None, metavar="K")
    _add_common(p)

    p = sub.add_parser("subsample", help="m-out-of-n subsampled shuffle")
    p.add_argument("--sigma", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--n-total", type=int, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--orders", default=None)
    p.add_argument("--delta", default=None)
    _add_common(p)

    p = sub.add_parser("checkin", help="random check-in participation")
    p.add_argument("--sigma", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--gamma", type=float)
    p.add_argument("--orders", default=None)
    p.add_argument("--delta", default=None)
    p.add_argument("--delta-grid", default=None)
    p.add_argument("--direct", action="store_true")
    _add_common(p)

    p = sub.add_parser("compose", help="append a mechanism to a ledger file")
    p.add_argument("--ledger", metavar="PATH")
    p.add_argument("--mechanism", choices=["shuffle", "subsample", "checkin"])
    p.add_argument("--rounds", type=int, default=None)
    p.add_argument("--sigma", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n-total", type=int, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--delta-grid", default=None)
    p.add_argument("--direct", action="store_true")
    p.add_argument("--orders", default=None)
    p.add_argument("--delta", default=None)
    _add_common(p)

    p = sub.add_parser("convert", help="ledger or curve file to (epsilon, delta)")
    p.add_argument("--delta", default=None)
    p.add_argument("--ledger", metavar="PATH")
    p.add_argument("--curve-file", metavar="PATH")
    _add_common(p)

    p = sub.add_parser("clones", help="local-DP shuffle baseline per composition count")
    p.add_argument("--sigma", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--sensitivity", type=float, default=None)
    p.add_argument("--delta", default=None)
    _add_common(p)

    p = sub.add_parser("table2", help="exact accountant vs clones baseline table")
    p.add_argument("--sigma", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--orders", default=None)
    p.add_argument("--sensitivity", type=float, default=None)
    p.add_argument("--delta", default=None)
    _add_common(p)

    p = sub.add_parser("scan-monotonic", help="moment vs n monotonicity check")
    p.add_argument("--sigma", type=float)
    p.add_argument("--lambda", dest="order", type=int)
    p.add_argument("--n", default=None, metavar="LO..HI")
    _add_common(p)

    return parser


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return "" if value is None else str(value)


def _render_csv(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(cell) for cell in row])
    return buffer.getvalue()


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        config = _load_config(args.config)
        payload, csv_data, human = _COMMANDS[args.command](args, config)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ShuffleDpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fmt = args.format
    if fmt == "csv":
        header, rows = csv_data
        text = _render_csv(header, rows)
        if "monotone" in payload:
            verdict = "monotone" if payload["monotone"] else "violation found"
            print(f"scan verdict: {verdict}", file=sys.stderr)
    elif fmt == "json" or human is None:
        text = json.dumps(payload, indent=2)
    else:
        text = human
    _write_output(text, args.output)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
