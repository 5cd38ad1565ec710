"""Command-line entry point.

Exit codes: 0 success, 1 a check failed, 2 unparsable input, 3 a value or
configuration violates an invariant.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import constructions as C
from .interval import IntervalError
from .orders import AlphaBetaOrder, OrderError, ProductOrder
from .parsing import ParseError, parse_expr, parse_interval_text, parse_ivfn, parse_order, parse_tuple
from .properties import CheckReport, check_order_laws, check_w_iv_overlap
from .scalar import CorruptFunctionError, ScalarFn, fmt_num
from .table import render
from .width import check_ultradual, least_width_limiting

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3

_BARE_DEFAULT_B = {"c1": "max", "c3": "max", "c2": "min", "klambda": "AM"}


class UsageError(Exception):
    """Flag combination that cannot be honoured; reported like a parse error."""


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("IVWIDTH_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"IVWIDTH_SEED must be an integer, got {env!r}") from None


def _digits(args) -> Optional[int]:
    return None if args.raw else 6


def _num(a: float, digits) -> str:
    return repr(float(a)) if digits is None else f"{float(a):.{digits}f}"


def _spec_text(args) -> str:
    """Expand a bare construction name using --O/--B/--alpha/--beta."""
    text = args.spec.strip()
    flags = [args.B, args.alpha, args.beta, args.O]
    if "(" in text:
        if any(f is not None for f in flags):
            raise UsageError("--O/--B/--alpha/--beta apply only to a bare construction name such as 'c2'")
        return text
    name = text.lower()
    O = args.O or "Op"
    if name == "bestrep":
        return f"bestrep({O})" if args.B is None else f"bestrep({O},{args.B})"
    if name not in ("c1", "c2", "c3", "ao", "klambda"):
        raise UsageError(f"unknown construction {text!r}")
    if args.alpha is None:
        raise UsageError(f"--alpha is required with a bare '{name}'")
    beta = 0.0 if args.beta is None else args.beta
    ab = f"{fmt_num(args.alpha)},{fmt_num(beta)}"
    if name == "ao":
        return f"ao({O},{ab})"
    return f"{name}({O},{args.B or _BARE_DEFAULT_B[name]},{ab})"


def _spec(args) -> C.IvFn:
    return parse_ivfn(_spec_text(args))


# ---------------------------------------------------------------- eval


def cmd_eval(args, out) -> int:
    spec = _spec(args)
    X, Y = parse_interval_text(args.X), parse_interval_text(args.Y)
    R = spec(X, Y)
    parts = spec.breakdown(X, Y)
    d = _digits(args)
    if args.format == "json":
        rnd = (lambda v: v) if d is None else (lambda v: round(v, d))
        out.write(json.dumps({
            "spec": spec.text,
            "X": [rnd(v) for v in X.as_tuple()],
            "Y": [rnd(v) for v in Y.as_tuple()],
            "result": [rnd(v) for v in R.as_tuple()],
            "breakdown": {k: rnd(float(v)) for k, v in parts.items()},
        }, indent=2) + "\n")
        return EXIT_OK
    out.write(R.format(d) + "\n")
    extra = " ".join(f"{k}={_num(v, d)}" for k, v in parts.items())
    out.write(f"{spec.text} X={X.format(d)} Y={Y.format(d)} {extra}\n")
    return EXIT_OK


# ---------------------------------------------------------------- table


def cmd_table(args, out) -> int:
    out.write(render(args.format, _digits(args)))
    return EXIT_OK


# ---------------------------------------------------------------- limit


def cmd_limit(args, out) -> int:
    spec = _spec(args)
    closed = parse_expr(args.closed_form) if args.closed_form else None
    g = least_width_limiting(spec, args.resolution, args.search_resolution, _seed(args))
    d = _digits(args)
    out.write(g.to_csv(d, closed))
    if closed is not None:
        out.write(f"# max_abs_dev={_num(g.deviation(closed).max(), d)}\n")
    out.write(f"# monotone={'yes' if g.is_monotone() else 'no'}\n")
    return EXIT_OK


# ---------------------------------------------------------------- check


def _default_tuple(spec: C.IvFn, B_text: Optional[str]):
    """(ord1, ord2, B) matching the hypotheses each construction is proved under."""
    if isinstance(spec, C.Construct1):
        B = parse_expr(B_text) if B_text else spec.B
        return ProductOrder(), AlphaBetaOrder(spec.alpha, spec.beta), B
    if isinstance(spec, (C.Construct2, C.Construct3, C.AOAlpha, C.KLambdaAggregation)):
        o = AlphaBetaOrder(spec.alpha, spec.beta)
        if B_text:
            B = parse_expr(B_text)
        elif isinstance(spec, C.AOAlpha):
            B = parse_expr("min")
        elif isinstance(spec, C.KLambdaAggregation):
            B = spec.A
        else:
            B = spec.B
        return o, o, B
    raise UsageError(f"--tuple is required for {spec.text}")


def _wiv(args, seed) -> CheckReport:
    spec = parse_ivfn(args.subject)
    if args.tuple:
        o1, o2, B = parse_tuple(args.tuple)
        if args.B is not None:
            B = parse_expr(args.B)
    else:
        o1, o2, B = _default_tuple(spec, args.B)
    return check_w_iv_overlap(spec, o1, o2, B, args.samples, seed)


def _ultradual_dict(rep, d, resolution) -> dict:
    rnd = (lambda v: v) if d is None else (lambda v: round(v, d))
    return {
        "suite": "ultradual", "subject": rep.function, "resolution": resolution,
        "deviation": rnd(rep.deviation), "grid_error": rnd(rep.grid_error),
        "within_grid_error": rep.within_grid_error,
        "limit_is_dual": rep.limit_is_dual,
        "ab_ultramodular_11": rep.ab_ultramodular_11.status.value,
        "ultramodular": rep.ultramodular.status.value,
        "status": "pass" if rep.consistent else "fail",
        "notes": [rep.notes()],
    }


def _base_function(spec: C.IvFn) -> Optional[ScalarFn]:
    for attr in ("O", "F"):
        if hasattr(spec, attr):
            return getattr(spec, attr)
    return None


def cmd_check(args, out) -> int:
    seed = _seed(args)
    d = _digits(args)
    as_json = args.format == "json"
    docs, ok = [], True

    def emit_report(r: CheckReport):
        nonlocal ok
        ok = ok and r.ok
        docs.append(r.to_dict(d, args.timing) if as_json else r.to_text(d, args.timing))

    def emit_ultradual(f: ScalarFn):
        nonlocal ok
        rep = check_ultradual(f, args.resolution, args.search_resolution, min(args.samples, 10_000), seed)
        ok = ok and rep.consistent
        u = _ultradual_dict(rep, d, args.resolution)
        if as_json:
            docs.append(u)
        else:
            def show(v):
                if isinstance(v, bool):
                    return "yes" if v else "no"
                return _num(v, d) if isinstance(v, float) else v
            lines = [f"{k}: {show(v)}" for k, v in u.items() if k != "notes"]
            lines += [f"note: {n}" for n in u["notes"]]
            docs.append("\n".join(lines) + "\n")

    if args.suite == "wiv":
        emit_report(_wiv(args, seed))
    elif args.suite == "orders":
        emit_report(check_order_laws(parse_order(args.subject), args.samples, seed))
    elif args.suite == "ultradual":
        emit_ultradual(parse_expr(args.subject))
    else:  # all
        spec = parse_ivfn(args.subject)
        emit_report(_wiv(args, seed))
        o1, o2, _ = parse_tuple(args.tuple) if args.tuple else _default_tuple(spec, args.B)
        for o in dict.fromkeys([o1, o2]):
            if o.total:
                emit_report(check_order_laws(o, args.samples, seed))
        f = _base_function(spec)
        if f is not None:
            emit_ultradual(f)

    if as_json:
        out.write(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n")
    else:
        out.write("\n".join(docs))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "markdown", "csv", "json"], default=None,
                        help="output format (default depends on the command)")
    common.add_argument("--raw", action="store_true", help="print full precision instead of 6 decimals")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: IVWIDTH_SEED, then 0)")

    spec_flags = argparse.ArgumentParser(add_help=False)
    spec_flags.add_argument("--O", default=None, help="center function for a bare construction name")
    spec_flags.add_argument("--B", default=None, help="width bound expression")
    spec_flags.add_argument("--alpha", type=float, default=None)
    spec_flags.add_argument("--beta", type=float, default=None)

    grid_flags = argparse.ArgumentParser(add_help=False)
    grid_flags.add_argument("--resolution", type=int, default=50, help="eps/delta grid resolution")
    grid_flags.add_argument("--search-resolution", type=int, default=200,
                            help="translation search resolution inside each grid cell")

    p = argparse.ArgumentParser(prog="ivwidth", description="Width-limited interval-valued overlap functions.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common, spec_flags], help="evaluate a construction on two intervals")
    e.add_argument("spec")
    e.add_argument("X", help='interval "lo,hi"')
    e.add_argument("Y", help='interval "lo,hi"')

    sub.add_parser("table", parents=[common], help="print the construction comparison table")

    lim = sub.add_parser("limit", parents=[common, spec_flags, grid_flags],
                         help="least width-limiting function on a grid, as CSV")
    lim.add_argument("spec")
    lim.add_argument("--closed-form", default=None, help="expression to compare the grid against")

    c = sub.add_parser("check", parents=[common, grid_flags], help="run a property suite")
    c.add_argument("suite", choices=["all", "wiv", "ultradual", "orders"])
    c.add_argument("subject")
    c.add_argument("--tuple", default=None, help='"ord1,ord2,B", e.g. "pr,ab:0.5:0,max"')
    c.add_argument("--B", default=None, help="override the width bound")
    c.add_argument("--samples", type=int, default=100_000)
    c.add_argument("--timing", action="store_true", help="include runtimes (breaks byte determinism)")
    return p


_DEFAULT_FORMAT = {"eval": "plain", "table": "markdown", "limit": "csv", "check": "plain"}
_COMMANDS = {"eval": cmd_eval, "table": cmd_table, "limit": cmd_limit, "check": cmd_check}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.format is None:
        args.format = _DEFAULT_FORMAT[args.command]
    if getattr(args, "resolution", 50) < 1 or getattr(args, "samples", 1) < 1:
        err.write("error: resolution and samples must be positive\n")
        return EXIT_INVARIANT
    try:
        return _COMMANDS[args.command](args, out)
    except (ParseError, UsageError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (C.SpecError, IntervalError, OrderError, CorruptFunctionError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
