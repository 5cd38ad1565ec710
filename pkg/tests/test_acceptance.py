"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (shown even without ``-s``) and then asserts the criterion at its stated
tolerance.  Run with ``pytest tests/test_acceptance.py -v``.
"""

import io
import json
import time

import numpy as np
import pytest

from ivwidth.cli import main
from ivwidth.constructions import AOAlpha, BestRep, Construct1, Construct2, Construct3
from ivwidth.interval import d_alpha, from_kalpha_width, k_alpha_arrays, lambda_alpha_arrays
from ivwidth.orders import AlphaBetaOrder, ProductOrder
from ivwidth.parsing import parse_expr, parse_ivfn
from ivwidth.properties import check_order_laws, check_w_iv_overlap
from ivwidth.scalar import MAX, O_GM, O_M, O_P, dual
from ivwidth.table import render
from ivwidth.width import check_ultradual, least_width_limiting

SEED = 0
N = 100_000


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        return ok
    return emit


def random_intervals(rng, n):
    a = np.sort(rng.random((2, n)), axis=0)
    # sprinkle in degenerate and boundary operands
    k = n // 10
    a[1, :k] = a[0, :k]
    a[0, k:2 * k] = 0.0
    a[1, 2 * k:3 * k] = 1.0
    return a[0], a[1]


# ---------------------------------------------------------------- 1

X1, Y1 = "0.2,0.8", "0.5,1"
X2, Y2 = "0.6,0.9", "0.8,0.8"
X3 = "0.1,0.4"

# (source, spec, X, Y, printed value, value asserted)
EXAMPLES = [
    ("c1 best rep", "bestrep(Op)", X1, Y1, (0.1, 0.8), (0.1, 0.8)),
    ("c1 1a (erratum)", "c1(Op,max,0.01,0)", X1, Y1, (0.107, 0.707), (0.101, 0.701)),
    ("c1 1b", "c1(Op,max,0.5,0)", X1, Y1, (0.15, 0.75), (0.15, 0.75)),
    ("c1 1c", "c1(Op,max,1,0)", X1, Y1, (0.2, 0.8), (0.2, 0.8)),
    ("c1 2 best rep", "bestrep(Op)", X2, Y2, (0.48, 0.72), (0.48, 0.72)),
    ("c1 2 alpha=0.01", "c1(Op,max,0.01,0)", X2, Y2, (0.48, 0.72), (0.48, 0.72)),
    ("c1 2 alpha=0.5", "c1(Op,max,0.5,0)", X2, Y2, (0.48, 0.72), (0.48, 0.72)),
    ("c1 2 alpha=1", "c1(Op,max,1,0)", X2, Y2, (0.48, 0.72), (0.48, 0.72)),
    ("c1 4", "c1(Op,dual(Op),0.5,0)", X1, Y1, (0.1, 0.8), (0.1, 0.8)),
    ("c2 1a", "c2(Op,min,0.01,0)", X1, Y1, (0.103, 0.207), (0.103, 0.207)),
    ("c2 1b", "c2(Op,min,0.5,0)", X1, Y1, (0.1875, 0.5625), (0.1875, 0.5625)),
    ("c2 1c", "c2(Op,min,0.99,0)", X1, Y1, (0.5822, 0.7921), (0.5822, 0.7921)),
    ("c2 2a", "c2(Op,min,0.01,0)", X2, Y2, (0.4824, 0.4824), (0.4824, 0.4824)),
    ("c2 2b", "c2(Op,min,0.5,0)", X2, Y2, (0.56, 0.56), (0.56, 0.56)),
    ("c2 2c", "c2(Op,min,0.99,0)", X2, Y2, (0.7176, 0.7176), (0.7176, 0.7176)),
    ("c2 X3 best rep", "bestrep(Op)", X3, X3, (0.01, 0.16), (0.01, 0.16)),
    ("c2 X3 (erratum)", "c2(Op,min,0.99,0)", X3, X3, (0.0016, 0.1502), (0.001576, 0.159185)),
    ("c3 1a", "c3(Op,max,0.01,0)", X1, Y1, (0.098, 0.698), (0.098, 0.698)),
    ("c3 1b", "c3(Op,max,0.5,0)", X1, Y1, (0.075, 0.675), (0.075, 0.675)),
    ("c3 1c", "c3(Op,max,0.99,0)", X1, Y1, (0.196, 0.796), (0.196, 0.796)),
    ("c3 2a", "c3(Op,max,0.01,0)", X2, Y2, (0.4794, 0.7794), (0.4794, 0.7794)),
    ("c3 2b", "c3(Op,max,0.5,0)", X2, Y2, (0.45, 0.75), (0.45, 0.75)),
    ("c3 2c", "c3(Op,max,0.99,0)", X2, Y2, (0.48, 0.72), (0.48, 0.72)),
    ("c3 3a", "c3(Op,min,0.01,0)", X2, Y2, (0.4824, 0.4824), (0.4824, 0.4824)),
    ("c3 3b", "c3(Op,min,0.5,0)", X2, Y2, (0.56, 0.56), (0.56, 0.56)),
    ("c3 3c", "c3(Op,min,0.99,0)", X2, Y2, (0.7176, 0.7176), (0.7176, 0.7176)),
]

# table rows as printed: (C1, C3, best rep); the row-1 C1 cell is erratum 1
TABLE = [
    ((0.101, 0.701), (0.098, 0.698), (0.1, 0.8)),
    ((0.15, 0.75), (0.075, 0.675), (0.1, 0.8)),
    ((0.2, 0.8), (0.196, 0.796), (0.1, 0.8)),
    ((0.48, 0.72), (0.4794, 0.7794), (0.48, 0.72)),
    ((0.48, 0.72), (0.45, 0.75), (0.48, 0.72)),
    ((0.48, 0.72), (0.48, 0.72), (0.48, 0.72)),
    ((0.4824, 0.4824), (0.4824, 0.4824), (0.48, 0.72)),
    ((0.6, 0.6), (0.56, 0.56), (0.48, 0.72)),
    ((0.72, 0.72), (0.7176, 0.7176), (0.48, 0.72)),
]


def _eval(spec, X, Y):
    out, err = io.StringIO(), io.StringIO()
    code = main(["eval", spec, X, Y, "--raw", "--format", "json"], out, err)
    assert code == 0, err.getvalue()
    return tuple(json.loads(out.getvalue())["result"])


def test_criterion_1_golden_values(report):
    t0 = time.perf_counter()
    misses = []
    for name, spec, X, Y, _printed, want in EXAMPLES:
        got = _eval(spec, X, Y)
        if np.max(np.abs(np.subtract(got, want))) > 1e-3:
            misses.append(f"{name}: {spec} gave [{got[0]:.6f}, {got[1]:.6f}], printed {list(want)}")
    rows = json.loads(render("json", None))["rows"]
    for k, (row, want) in enumerate(zip(rows, TABLE), 1):
        for col, w in zip(("c1", "c3", "rep"), want):
            got = row[col]
            if np.max(np.abs(np.subtract(got, w))) > 1e-3:
                misses.append(f"table row {k} {col}: gave [{got[0]:.6f}, {got[1]:.6f}], printed {list(w)}")
    elapsed = time.perf_counter() - t0
    md = render("markdown")
    footnotes = "[0.101000, 0.701000] [a]" in md and "[a] " in md and "[0.107, 0.707]" in md
    total = len(EXAMPLES) + 3 * len(TABLE)
    ok = not misses and footnotes and elapsed < 1.0 and total >= 24
    detail = f"{total - len(misses)}/{total} intervals within 1e-3, footnote={footnotes}, {elapsed:.2f}s"
    if misses:
        detail += "; mismatches: " + "; ".join(misses)
    report(1, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------- 2

CLOSED_FORMS = [
    ("(x+y+xy)/3", "convex(1/3,AM,Op)", "(2e+2d-ed)/3", lambda e, d: (2 * e + 2 * d - e * d) / 3),
    ("(x+y+2xy)/4", "convex(1/2,AM,Op)", "(3e+3d-2ed)/4", lambda e, d: (3 * e + 3 * d - 2 * e * d) / 4),
    ("Op", "Op", "dual(Op)", None),
    ("Ot", "Ot", "dual(Ot)", None),
    ("K_0", "Kalpha:0", "Kalpha:0", None),
    ("K_0.25", "Kalpha:0.25", "Kalpha:0.25", None),
    ("K_0.5", "Kalpha:0.5", "Kalpha:0.5", None),
    ("K_1", "Kalpha:1", "Kalpha:1", None),
    ("AM", "AM", "AM", None),
]


def test_criterion_2_least_width_limiting(report):
    t0 = time.perf_counter()
    lines, ok = [], True
    for label, f, closed_text, closed in CLOSED_FORMS:
        g = least_width_limiting(BestRep(parse_expr(f)), 50, 200, SEED)
        if closed is None:
            dev = float(g.deviation(parse_expr(closed_text)).max())
        else:
            E, D = np.meshgrid(g.eps, g.delta, indexing="ij")
            dev = float(np.abs(g.values - closed(E, D)).max())
        good = dev <= g.grid_error
        ok &= good
        lines.append(f"{label}->{closed_text} dev={dev:.2e} tol={g.grid_error:.2e}{'' if good else ' FAIL'}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30.0
    detail = f"{elapsed:.1f}s; " + "; ".join(lines)
    report(2, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------- 3


def test_criterion_3_ultradual(report):
    lines, ok = [], True
    for f in ("Op", "Ot", "Kalpha:0", "Kalpha:0.25", "Kalpha:0.5", "Kalpha:1", "AM"):
        r = check_ultradual(parse_expr(f), 50, 200, 10_000, SEED)
        good = r.deviation <= r.grid_error
        ok &= good
        lines.append(f"{f} dev={r.deviation:.2e}<=err={r.grid_error:.2e}{'' if good else ' FAIL'}")
    r = check_ultradual(parse_expr("min"), 50, 200, 10_000, SEED)
    good = r.deviation > 5 * r.grid_error
    ok &= good
    lines.append(f"min dev={r.deviation:.2e} >5*err={5 * r.grid_error:.2e}: {good} ({r.notes()})")
    detail = "; ".join(lines)
    report(3, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------- 4

WIDTH_BOUNDS = {"max": MAX, "min": O_M, "dual(Op)": dual(O_P)}
CENTERS = {"Op": O_P, "Gm": O_GM}


def c1_configs():
    for o in CENTERS:
        for b in WIDTH_BOUNDS:
            for a in (0.01, 0.5, 1.0):
                yield o, b, a


def test_criterion_4_property_suites(report):
    t0 = time.perf_counter()
    failed, runs = [], 0

    def run(spec, o1, o2, B):
        nonlocal runs
        runs += 1
        r = check_w_iv_overlap(spec, o1, o2, B, N, SEED)
        if not r.ok:
            cex = {k: r.axioms[k].counterexample for k in r.failures()}
            failed.append(f"{spec.text}: {r.failures()} {cex}")

    for o, b, a in c1_configs():
        run(Construct1(CENTERS[o], WIDTH_BOUNDS[b], a), ProductOrder(), AlphaBetaOrder(a, 0.0), WIDTH_BOUNDS[b])
    for o in CENTERS:
        for a in (0.01, 0.5, 0.99):
            ab = AlphaBetaOrder(a, 0.0)
            run(Construct2(CENTERS[o], O_M, a), ab, ab, O_M)
            for b in WIDTH_BOUNDS:
                run(Construct3(CENTERS[o], WIDTH_BOUNDS[b], a), ab, ab, WIDTH_BOUNDS[b])
    rep = check_w_iv_overlap(BestRep(O_P), ProductOrder(), ProductOrder(), MAX, N, SEED)
    witness = rep.axioms["IOw5"].counterexample
    best_rep_ok = rep.failures() == ["IOw5"] and witness is not None
    elapsed = time.perf_counter() - t0
    ok = not failed and best_rep_ok and elapsed < 60.0
    detail = (f"{runs - len(failed)}/{runs} suites clean; bestrep(Op) vs max failures={rep.failures()} "
              f"witness={witness}; {elapsed:.1f}s")
    if failed:
        detail += "; failing: " + "; ".join(failed)
    report(4, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------- 5


def test_criterion_5_c2_equals_ao(report):
    rng = np.random.default_rng(SEED)
    xl, xh = random_intervals(rng, N)
    yl, yh = random_intervals(rng, N)
    worst, lines = 0.0, []
    for name, O in CENTERS.items():
        for a, b in ((0.01, 0.0), (0.5, 0.0), (0.99, 0.0), (0.3, 1.0), (0.7, 0.2)):
            r2 = Construct2(O, O_M, a, b).evaluate(xl, xh, yl, yh)
            ra = AOAlpha(O, a, b).evaluate(xl, xh, yl, yh)
            dev = float(max(np.abs(r2[0] - ra[0]).max(), np.abs(r2[1] - ra[1]).max()))
            worst = max(worst, dev)
            lines.append(f"{name},{a},{b}: {dev:.1e}")
    ok = worst <= 1e-15
    detail = f"max |C2(O,min) - AO| = {worst:.1e} over {N} inputs x {len(lines)} configs"
    report(5, ok, detail)
    assert ok, detail + "; " + "; ".join(lines)


# ---------------------------------------------------------------- 6


def test_criterion_6_containment(report):
    rng = np.random.default_rng(SEED)
    xl, xh = random_intervals(rng, N)
    yl, yh = random_intervals(rng, N)
    bl, bh = BestRep(O_P).evaluate(xl, xh, yl, yh)
    gl, gh = BestRep(O_GM).evaluate(xl, xh, yl, yh)
    best = {"Op": (bl, bh), "Gm": (gl, gh)}
    bad = []
    for o, b, a in c1_configs():
        lo, hi = Construct1(CENTERS[o], WIDTH_BOUNDS[b], a).evaluate(xl, xh, yl, yh)
        rl, rh = best[o]
        n_bad = int(np.count_nonzero((lo < rl - 1e-12) | (hi > rh + 1e-12)))
        if n_bad:
            bad.append(f"c1({o},{b},{a}): {n_bad}")
    m = 10_000
    lo, hi = Construct1(O_P, dual(O_P), 0.5).evaluate(xl[:m], xh[:m], yl[:m], yh[:m])
    eq_dev = float(max(np.abs(lo - bl[:m]).max(), np.abs(hi - bh[:m]).max()))
    equal_ok = eq_dev <= 1e-12
    ok = not bad and equal_ok
    detail = (f"containment violations in {len(bad)}/18 configs over {N} inputs; "
              f"c1(Op,dual(Op)) vs best rep max dev {eq_dev:.1e} on {m} inputs")
    if bad:
        detail += "; " + "; ".join(bad)
    report(6, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------- 7


def test_criterion_7_order_laws(report):
    lines, ok = [], True
    for a, b in ((0.5, 1.0), (0.5, 0.0), (0.99, 0.0), (0.01, 1.0)):
        r = check_order_laws(AlphaBetaOrder(a, b), N, SEED)
        needed = {"totality", "transitivity", "refines_product", "canonical_beta"}
        good = r.ok and needed <= set(r.axioms)
        ok &= good
        lines.append(f"ab:{a},{b} {'ok' if good else r.failures()}")
    detail = f"{N} samples each; " + "; ".join(lines)
    report(7, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------- 8


def test_criterion_8_round_trip_and_conventions(report):
    rng = np.random.default_rng(SEED)
    lo, hi = random_intervals(rng, N)
    alphas = rng.random(N)
    alphas[: N // 20] = 0.0
    alphas[N // 20: N // 10] = 1.0

    trip = 0
    for l, h, a in zip(lo, hi, alphas):
        c = l + a * (h - l)
        R = from_kalpha_width(c, h - l, a)
        trip += abs(R.lo - l) > 1e-12 or abs(R.hi - h) > 1e-12

    c = rng.random(N)
    conv = int(np.count_nonzero(d_alpha(c, 0.0) != np.minimum(1.0, 1.0 - c)))
    conv += int(np.count_nonzero(d_alpha(c, 1.0) != np.minimum(c, 1.0)))
    # degenerate intervals at 0 or 1 have d_alpha = 0 and width 0
    ends = rng.integers(0, 2, N).astype(float)
    for a in (0.25, 0.5, 0.75):
        conv += int(np.count_nonzero(lambda_alpha_arrays(ends, ends, a) != 1.0))

    xl, xh = random_intervals(rng, N)
    yl, yh = random_intervals(rng, N)
    feas = 0
    for o in CENTERS.values():
        for B in WIDTH_BOUNDS.values():
            for a in (0.01, 0.5, 0.99):
                rl, rh = Construct3(o, B, a).evaluate(xl, xh, yl, yh)
                w = rh - rl
                feas += int(np.count_nonzero(w > d_alpha(k_alpha_arrays(rl, rh, a), a) + 1e-12))

    ok = trip == 0 and conv == 0 and feas == 0
    detail = f"round-trip violations={trip}, convention violations={conv}, C3 feasibility violations={feas} ({N} inputs)"
    report(8, ok, detail)
    assert ok, detail
