"""Sampled verification of the axioms of width-limited interval overlaps.

Samples are drawn in batches of ``BATCH`` from generators spawned off one
seed sequence, so a report depends only on (subject, seed, samples) and the
reported counterexample is always the first failure of the lowest batch.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .constructions import IvFn, BestRep
from .interval import d_alpha
from .orders import AlphaBetaOrder, InclusionOrder, Order, ProductOrder, refines_product
from .scalar import VIOLATION_TOL, ScalarFn
from .width import boundary_operands, is_width_limited_sampled, random_operands

BATCH = 10_000
GRID = 1000  # pair generators work in units of 1/GRID

PASS, FAIL, ADVISORY = "pass", "fail", "advisory"


@dataclass
class AxiomResult:
    status: str
    samples_run: int
    counterexample: Optional[dict] = None
    case_counts: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass
class CheckReport:
    suite_name: str
    subject: str
    seed: int
    axioms: dict = field(default_factory=dict)
    runtime: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(a.failed for a in self.axioms.values())

    def failures(self) -> list[str]:
        return [k for k, a in self.axioms.items() if a.failed]

    def to_dict(self, digits: Optional[int] = 6, timing: bool = False) -> dict:
        out = {
            "suite": self.suite_name,
            "subject": self.subject,
            "seed": self.seed,
            "status": PASS if self.ok else FAIL,
            "axioms": {
                k: {
                    "status": a.status,
                    "samples": a.samples_run,
                    "counterexample": _fmt_cex(a.counterexample, digits),
                    "cases": dict(sorted(a.case_counts.items())),
                }
                for k, a in self.axioms.items()
            },
            "notes": list(self.notes),
        }
        if timing:
            out["runtime_s"] = round(self.runtime, 3)
        return out

    def to_text(self, digits: Optional[int] = 6, timing: bool = False) -> str:
        d = self.to_dict(digits, timing)
        lines = [f"suite: {d['suite']}", f"subject: {d['subject']}",
                 f"seed: {d['seed']}", f"status: {d['status']}"]
        if timing:
            lines.append(f"runtime_s: {d['runtime_s']}")
        for name, a in d["axioms"].items():
            lines.append(f"{name}.status: {a['status']}")
            lines.append(f"{name}.samples: {a['samples']}")
            if a["counterexample"] is not None:
                for k, v in a["counterexample"].items():
                    lines.append(f"{name}.counterexample.{k}: {v}")
            for k, v in a["cases"].items():
                lines.append(f"{name}.case.{k}: {v}")
        for n in d["notes"]:
            lines.append(f"note: {n}")
        return "\n".join(lines) + "\n"

    def to_json(self, digits: Optional[int] = 6, timing: bool = False) -> str:
        return json.dumps(self.to_dict(digits, timing), indent=2) + "\n"


def _fmt_value(v, digits):
    if isinstance(v, tuple) and len(v) == 2:
        return "[" + ", ".join(_fmt_value(x, digits) for x in v) + "]"
    if isinstance(v, (float, np.floating)):
        return repr(float(v)) if digits is None else f"{float(v):.{digits}f}"
    return str(v)


def _fmt_cex(cex, digits):
    if cex is None:
        return None
    return {k: _fmt_value(v, digits) for k, v in cex.items()}


def _iv(lo, hi, i):
    return (float(lo[i]), float(hi[i]))


def batches(seed: int, samples: int):
    """Yield (rng, size) per batch from independent spawned generators."""
    n_batches = max(1, -(-samples // BATCH))
    for k, ss in enumerate(np.random.SeedSequence(seed).spawn(n_batches)):
        size = min(BATCH, samples - k * BATCH) if samples > k * BATCH else 0
        if size > 0:
            yield np.random.default_rng(ss), size


def _run(samples: int, seed: int, body: Callable) -> AxiomResult:
    """Apply ``body(rng, n) -> (cex | None, Counter)`` over the batches."""
    counts: Counter = Counter()
    cex = None
    run = 0
    for rng, n in batches(seed, samples):
        c, k = body(rng, n)
        counts.update(k)
        run += n
        if c is not None and cex is None:
            cex = c
    return AxiomResult(FAIL if cex is not None else PASS, run, cex, dict(counts))


# ---------------------------------------------------------------- pair generation


def _ints(rng, lo, hi):
    """Uniform integers in [lo, hi] (inclusive, elementwise)."""
    return rng.integers(lo, np.asarray(hi) + 1)


def product_pairs(rng, n: int):
    """X1 <=_Pr X2 on the 1/GRID lattice, split over the four endpoint cases
    a (equal), b (equal lower, smaller upper), c (smaller lower, equal upper)
    and d (both smaller)."""
    N = GRID
    case = np.arange(n) % 4
    rng.shuffle(case)
    l1 = np.empty(n, dtype=np.int64)
    h1, l2, h2 = l1.copy(), l1.copy(), l1.copy()
    z = np.zeros(n, dtype=np.int64)

    m = case == 0
    k = m.sum()
    l1[m] = _ints(rng, z[:k], N)
    h1[m] = _ints(rng, l1[m], N)
    l2[m], h2[m] = l1[m], h1[m]

    m = case == 1
    k = m.sum()
    l1[m] = _ints(rng, z[:k], N - 1)
    h1[m] = _ints(rng, l1[m], N - 1)
    h2[m] = _ints(rng, h1[m] + 1, N)
    l2[m] = l1[m]

    m = case == 2
    k = m.sum()
    l1[m] = _ints(rng, z[:k], N - 1)
    l2[m] = _ints(rng, l1[m] + 1, N)
    h1[m] = _ints(rng, l2[m], N)
    h2[m] = h1[m]

    m = case == 3
    k = m.sum()
    l1[m] = _ints(rng, z[:k], N - 1)
    l2[m] = _ints(rng, l1[m] + 1, N)
    h1[m] = _ints(rng, l1[m], N - 1)
    h2[m] = _ints(rng, np.maximum(l2[m], h1[m] + 1), N)

    labels = np.array(list("abcd"))[case]
    return l1 / N, h1 / N, l2 / N, h2 / N, labels


def alpha_beta_pairs(rng, n: int, order: AlphaBetaOrder):
    """X1 <= X2 in a lexicographic K_alpha order: strict K_alpha gap on the
    lattice, exact K_alpha tie rebuilt from (center, width), or equality."""
    a = order.alpha
    N = GRID
    case = np.arange(n) % 3
    rng.shuffle(case)
    e = np.sort(_ints(rng, np.zeros((2, n), dtype=np.int64), N), axis=0) / N
    l1, h1 = e[0], e[1]
    e = np.sort(_ints(rng, np.zeros((2, n), dtype=np.int64), N), axis=0) / N
    l2, h2 = e[0].copy(), e[1].copy()

    tie = case == 1
    c = l1[tie] + a * (h1[tie] - l1[tie])
    w = rng.random(tie.sum()) * d_alpha(c, a)
    l2[tie] = np.clip(c - a * w, 0.0, 1.0)
    h2[tie] = np.clip(c + (1.0 - a) * w, 0.0, 1.0)
    eq = case == 2
    l2[eq], h2[eq] = l1[eq], h1[eq]

    fwd = order.leq(l1, h1, l2, h2)
    l1, l2 = np.where(fwd, l1, l2), np.where(fwd, l2, l1)
    h1, h2 = np.where(fwd, h1, h2), np.where(fwd, h2, h1)
    k1, _ = order.keys(l1, h1)
    k2, _ = order.keys(l2, h2)
    same = (l1 == l2) & (h1 == h2)
    labels = np.where(same, "equal", np.where(np.abs(k1 - k2) <= 1e-12, "tie", "strict"))
    return l1, h1, l2, h2, labels


def generic_pairs(rng, n: int, order: Order):
    if isinstance(order, InclusionOrder):
        l2, h2 = np.sort(rng.random((2, n)), axis=0)
        t = np.sort(rng.random((2, n)), axis=0)
        l1, h1 = l2 + t[0] * (h2 - l2), l2 + t[1] * (h2 - l2)
        return l1, h1, l2, h2, np.full(n, "nested")
    l1, h1 = np.sort(rng.random((2, n)), axis=0)
    l2, h2 = np.sort(rng.random((2, n)), axis=0)
    fwd = order.leq(l1, h1, l2, h2)
    l1, l2 = np.where(fwd, l1, l2), np.where(fwd, l2, l1)
    h1, h2 = np.where(fwd, h1, h2), np.where(fwd, h2, h1)
    return l1, h1, l2, h2, np.full(n, "random")


def ordered_pairs(rng, n: int, order: Order):
    if isinstance(order, ProductOrder):
        return product_pairs(rng, n)
    if isinstance(order, AlphaBetaOrder):
        return alpha_beta_pairs(rng, n, order)
    return generic_pairs(rng, n, order)


def fixed_operands(rng, n: int, order: Order):
    """Fixed operands Z with labels separating the degenerate corner cases."""
    N = GRID
    kind = np.arange(n) % 3
    rng.shuffle(kind)
    zl = np.where(kind == 2, _ints(rng, np.ones(n, dtype=np.int64), N), 0)
    zh = np.where(kind == 0, 0, _ints(rng, np.maximum(zl, 1), N))
    zl, zh = zl / N, zh / N
    if isinstance(order, AlphaBetaOrder):
        kz = zl + order.alpha * (zh - zl)
        labels = np.where(kz == 0, "Kz=0", np.where(zl == 0, "Kz>0,Zlo=0", "Kz>0,Zlo>0"))
    else:
        labels = np.array(["Z=[0,0]", "Zlo=0<Zhi", "Zlo>0"])[kind]
    return zl, zh, labels


# ---------------------------------------------------------------- axiom checks


def _join(*parts):
    out = np.asarray(parts[0]).astype(str)
    for p in parts[1:]:
        out = np.char.add(out, p)
    return out


def check_pair_increasing(spec: IvFn, ord1: Order, ord2: Order, samples: int = 100_000,
                          seed: int = 0) -> AxiomResult:
    """Sampled (ord1, ord2)-increasingness.

    Half the samples vary the first argument against a fixed second one,
    a quarter vary the second, a quarter vary both.
    """

    def body(rng, n):
        n1, n2 = n // 2, n // 4
        n3 = n - n1 - n2
        x1l, x1h, x2l, x2h, lab = ordered_pairs(rng, n, ord1)
        y1l, y1h, y2l, y2h, lab_y = ordered_pairs(rng, n, ord1)
        zl, zh, lab_z = fixed_operands(rng, n, ord1)
        role = np.repeat(np.array(["first", "second", "both"]), [n1, n2, n3])
        first, second = role == "first", role == "second"
        # first: Y fixed at Z; second: X fixed at Z and Y takes the generated pair
        y1l = np.where(first, zl, y1l)
        y1h = np.where(first, zh, y1h)
        y2l = np.where(first, zl, y2l)
        y2h = np.where(first, zh, y2h)
        for arr, src in ((y1l, x1l), (y1h, x1h), (y2l, x2l), (y2h, x2h)):
            arr[second] = src[second]
        x1l = np.where(second, zl, x1l)
        x1h = np.where(second, zh, x1h)
        x2l = np.where(second, zl, x2l)
        x2h = np.where(second, zh, x2h)
        r1l, r1h = spec.evaluate(x1l, x1h, y1l, y1h)
        r2l, r2h = spec.evaluate(x2l, x2h, y2l, y2h)
        ok = ord2.leq(r1l, r1h, r2l, r2h, VIOLATION_TOL)
        other = np.where(role == "both", lab_y, lab_z)
        labels = _join(role, ":", lab, "/", other)
        counts = Counter(labels.tolist())
        bad = np.flatnonzero(~ok)
        if bad.size == 0:
            return None, counts
        i = bad[0]
        return {
            "case": str(labels[i]),
            "X1": _iv(x1l, x1h, i), "Y1": _iv(y1l, y1h, i),
            "X2": _iv(x2l, x2h, i), "Y2": _iv(y2l, y2h, i),
            "R1": _iv(r1l, r1h, i), "R2": _iv(r2l, r2h, i),
        }, counts

    return _run(samples, seed, body)


def _operands(rng, n):
    """Random operands plus a tenth drawn from the boundary patterns."""
    nb = max(n // 10, 36)
    parts = [random_operands(rng, n - nb), boundary_operands(rng, nb)]
    return tuple(np.concatenate(c) for c in zip(*parts))


def _commutativity(spec: IvFn, samples: int, seed: int) -> AxiomResult:
    def body(rng, n):
        xl, xh, yl, yh = _operands(rng, n)
        al, ah = spec.evaluate(xl, xh, yl, yh)
        bl, bh = spec.evaluate(yl, yh, xl, xh)
        bad = np.flatnonzero(np.maximum(np.abs(al - bl), np.abs(ah - bh)) > VIOLATION_TOL)
        if bad.size == 0:
            return None, {}
        i = bad[0]
        return {"X": _iv(xl, xh, i), "Y": _iv(yl, yh, i),
                "F(X,Y)": _iv(al, ah, i), "F(Y,X)": _iv(bl, bh, i)}, {}

    return _run(samples, seed, body)


def _boundary_axiom(spec: IvFn, value: float, forward: bool, samples: int, seed: int) -> AxiomResult:
    """One direction of F(X,Y) = [v,v] iff X*Y = [v,v], v in {0, 1}."""

    def body(rng, n):
        xl, xh, yl, yh = _operands(rng, n)
        rl, rh = spec.evaluate(xl, xh, yl, yh)
        out_hit = (rl == value) & (rh == value)
        in_hit = (xl * yl == value) & (xh * yh == value)
        bad = np.flatnonzero(out_hit & ~in_hit if forward else in_hit & ~out_hit)
        counts = {"output_at_bound": int(out_hit.sum()), "product_at_bound": int(in_hit.sum())}
        if bad.size == 0:
            return None, counts
        i = bad[0]
        return {"X": _iv(xl, xh, i), "Y": _iv(yl, yh, i), "F(X,Y)": _iv(rl, rh, i)}, counts

    return _run(samples, seed, body)


def _width_limit(spec: IvFn, B: ScalarFn, samples: int, seed: int) -> AxiomResult:
    def body(rng, n):
        xl, xh, yl, yh = _operands(rng, n)
        rl, rh = spec.evaluate(xl, xh, yl, yh)
        bound = B(xh - xl, yh - yl)
        bad = np.flatnonzero(rh - rl > bound + VIOLATION_TOL)
        if bad.size == 0:
            return None, {}
        i = bad[0]
        return {"X": _iv(xl, xh, i), "Y": _iv(yl, yh, i), "F(X,Y)": _iv(rl, rh, i),
                "width": float(rh[i] - rl[i]), "bound": float(bound[i])}, {}

    return _run(samples, seed, body)


def _moore_continuity(spec: IvFn, samples: int, seed: int, step: float = 1e-6) -> AxiomResult:
    """Advisory: output moves by at most 1e-3 when inputs move by 1e-6."""

    def body(rng, n):
        xl, xh, yl, yh = random_operands(rng, n)
        s = rng.uniform(-step, step, (4, n))
        pl, ph = np.clip(xl + s[0], 0, 1), np.clip(xh + s[1], 0, 1)
        ql, qh = np.clip(yl + s[2], 0, 1), np.clip(yh + s[3], 0, 1)
        ph, qh = np.maximum(ph, pl), np.maximum(qh, ql)
        al, ah = spec.evaluate(xl, xh, yl, yh)
        bl, bh = spec.evaluate(pl, ph, ql, qh)
        jump = np.maximum(np.abs(al - bl), np.abs(ah - bh))
        bad = np.flatnonzero(jump > 1e-3)
        if bad.size == 0:
            return None, {}
        i = bad[0]
        return {"X": _iv(xl, xh, i), "Y": _iv(yl, yh, i), "jump": float(jump[i])}, {}

    res = _run(samples, seed, body)
    res.status = ADVISORY
    return res


def check_w_iv_overlap(spec: IvFn, ord1: Order, ord2: Order, B: ScalarFn,
                       samples: int = 100_000, seed: int = 0) -> CheckReport:
    if samples < 100:
        raise ValueError("samples must be at least 100")
    t0 = time.perf_counter()
    rep = CheckReport("wiv", f"{spec.text} tuple=({ord1.text}; {ord2.text}; {B.text})", seed)
    rep.axioms["IOw1"] = _commutativity(spec, samples, seed)
    rep.axioms["IOw2=>"] = _boundary_axiom(spec, 0.0, True, samples, seed + 1)
    rep.axioms["IOw2<="] = _boundary_axiom(spec, 0.0, False, samples, seed + 1)
    rep.axioms["IOw3=>"] = _boundary_axiom(spec, 1.0, True, samples, seed + 2)
    rep.axioms["IOw3<="] = _boundary_axiom(spec, 1.0, False, samples, seed + 2)
    rep.axioms["IOw4"] = check_pair_increasing(spec, ord1, ord2, samples, seed + 3)
    rep.axioms["IOw5"] = _width_limit(spec, B, samples, seed + 4)
    if not ord2.total:
        rep.notes.append(f"output order {ord2.text} is partial; incomparable outputs count as failures")
    rep.runtime = time.perf_counter() - t0
    return rep


def check_iv_overlap(spec: IvFn, order: Order, samples: int = 100_000, seed: int = 0) -> CheckReport:
    """Interval overlap axioms with respect to one order; continuity is advisory."""
    t0 = time.perf_counter()
    rep = CheckReport("iv-overlap", f"{spec.text} order={order.text}", seed)
    rep.axioms["IO1"] = _commutativity(spec, samples, seed)
    rep.axioms["IO2=>"] = _boundary_axiom(spec, 0.0, True, samples, seed + 1)
    rep.axioms["IO2<="] = _boundary_axiom(spec, 0.0, False, samples, seed + 1)
    rep.axioms["IO3=>"] = _boundary_axiom(spec, 1.0, True, samples, seed + 2)
    rep.axioms["IO3<="] = _boundary_axiom(spec, 1.0, False, samples, seed + 2)
    rep.axioms["IO4"] = check_pair_increasing(spec, order, order, samples, seed + 3)
    rep.axioms["IO5"] = _moore_continuity(spec, samples, seed + 4)
    rep.runtime = time.perf_counter() - t0
    return rep


def check_strict_center_monotonicity(O: ScalarFn, samples: int = 100_000, seed: int = 0) -> CheckReport:
    """Strict growth of K_alpha of the best representation along <=_Pr.

    Case a (equal lower endpoints) needs alpha in (0,1], case b (equal upper
    endpoints) needs alpha in [0,1), case c (both smaller) any alpha.  The
    excluded endpoint alphas are run as advisory cases.
    """
    t0 = time.perf_counter()
    rep = CheckReport("center-monotonicity", O.text, seed)
    rep_fn = BestRep(O)
    alpha_grid = {"a": (0.001, 1.0), "b": (0.0, 0.999), "c": (0.0, 1.0)}
    case_ids = {"a": 1, "b": 2, "c": 3}
    # center-monotonicity case -> product_pairs label (equal lower, equal upper, both smaller)
    gen_label = {"a": "b", "b": "c", "c": "d"}

    def make_body(case, excluded):
        def body(rng, n):
            l1, h1, l2, h2, lab = product_pairs(rng, 4 * n)
            keep = np.flatnonzero(lab == gen_label[case])[:n]
            l1, h1, l2, h2 = l1[keep], h1[keep], l2[keep], h2[keep]
            m = keep.size
            zl = _ints(rng, np.ones(m, dtype=np.int64), GRID) / GRID
            zh = _ints(rng, np.round(zl * GRID).astype(np.int64), GRID) / GRID
            if excluded is not None:
                a = np.full(m, excluded)
            else:
                lo_a, hi_a = alpha_grid[case]
                a = _ints(rng, np.full(m, round(lo_a * 1000)), round(hi_a * 1000)) / 1000
                a[: m // 10] = hi_a
                a[m // 10: m // 5] = lo_a
            pl, ph = rep_fn.evaluate(l1, h1, zl, zh)
            ql, qh = rep_fn.evaluate(l2, h2, zl, zh)
            k1 = pl + a * (ph - pl)
            k2 = ql + a * (qh - ql)
            bad = np.flatnonzero(~(k1 < k2))
            if bad.size == 0:
                return None, {case: m}
            i = bad[0]
            return {"X": _iv(l1, h1, i), "Y": _iv(l2, h2, i), "Z": _iv(zl, zh, i),
                    "alpha": float(a[i]), "K(X,Z)": float(k1[i]), "K(Y,Z)": float(k2[i])}, {case: m}
        return body

    for case in "abc":
        rep.axioms[f"case {case}"] = _run(samples // 3, seed + case_ids[case], make_body(case, None))
    for case, alpha in (("a", 0.0), ("b", 1.0)):
        res = _run(max(samples // 30, 100), seed + 10 + case_ids[case], make_body(case, alpha))
        res.status = ADVISORY
        rep.axioms[f"case {case} at alpha={alpha:g}"] = res
        if res.counterexample is not None:
            rep.notes.append(f"case {case}: strictness lost at excluded alpha={alpha:g}, as expected")
    rep.runtime = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- order laws


def _lattice_intervals(rng, n, grid=20):
    e = np.sort(rng.integers(0, grid + 1, (2, n)), axis=0) / grid
    return e[0], e[1]


def _mixed_intervals(rng, n):
    """Half continuous, half on a coarse lattice so that key ties occur."""
    a = np.sort(rng.random((2, n - n // 2)), axis=0)
    b = _lattice_intervals(rng, n // 2)
    return np.concatenate([a[0], b[0]]), np.concatenate([a[1], b[1]])


def check_order_laws(order: Order, samples: int = 100_000, seed: int = 0) -> CheckReport:
    t0 = time.perf_counter()
    rep = CheckReport("orders", order.text, seed)

    def totality(rng, n):
        al, ah = _mixed_intervals(rng, n)
        bl, bh = _mixed_intervals(rng, n)
        ok = order.leq(al, ah, bl, bh) | order.leq(bl, bh, al, ah)
        bad = np.flatnonzero(~ok)
        return (None if bad.size == 0 else {"X": _iv(al, ah, bad[0]), "Y": _iv(bl, bh, bad[0])}), {}

    def antisymmetry(rng, n):
        al, ah = _mixed_intervals(rng, n)
        bl, bh = _mixed_intervals(rng, n)
        both = order.leq(al, ah, bl, bh) & order.leq(bl, bh, al, ah)
        differ = np.maximum(np.abs(al - bl), np.abs(ah - bh)) > 1e-9
        bad = np.flatnonzero(both & differ)
        return (None if bad.size == 0 else {"X": _iv(al, ah, bad[0]), "Y": _iv(bl, bh, bad[0])}), {}

    def transitivity(rng, n):
        al, ah = _mixed_intervals(rng, n)
        bl, bh = _mixed_intervals(rng, n)
        cl, ch = _mixed_intervals(rng, n)
        chain = order.leq(al, ah, bl, bh) & order.leq(bl, bh, cl, ch)
        bad = np.flatnonzero(chain & ~order.leq(al, ah, cl, ch))
        counts = {"chains": int(chain.sum())}
        if bad.size == 0:
            return None, counts
        i = bad[0]
        return {"X": _iv(al, ah, i), "Y": _iv(bl, bh, i), "Z": _iv(cl, ch, i)}, counts

    if order.total:
        rep.axioms["totality"] = _run(samples, seed, totality)
    rep.axioms["antisymmetry"] = _run(samples, seed + 1, antisymmetry)
    rep.axioms["transitivity"] = _run(samples, seed + 2, transitivity)
    if order.total:
        w = refines_product(order, samples, seed + 3)
        rep.axioms["refines_product"] = AxiomResult(
            PASS if w is None else FAIL, samples,
            None if w is None else {"X": w[0].as_tuple(), "Y": w[1].as_tuple()})
    if isinstance(order, AlphaBetaOrder):
        canon = order.canonical()

        def canonical(rng, n):
            al, ah = _mixed_intervals(rng, n)
            bl, bh = _mixed_intervals(rng, n)
            a = order.alpha
            side = rng.random(n)
            betas = np.where(canon.beta == 1.0, a + (1.0 - a) * (1.0 - side), a * side)
            betas = np.where(betas == a, canon.beta, betas)
            k1, k2 = al + a * (ah - al), bl + a * (bh - bl)
            tie = np.abs(k1 - k2) <= 1e-12
            s1, s2 = al + betas * (ah - al), bl + betas * (bh - bl)
            mine = (~tie & (k1 < k2)) | (tie & (s1 <= s2))
            ref = canon.leq(al, ah, bl, bh)
            orig = order.leq(al, ah, bl, bh)
            bad = np.flatnonzero((mine != ref) | (orig != ref))
            if bad.size == 0:
                return None, {}
            i = bad[0]
            return {"X": _iv(al, ah, i), "Y": _iv(bl, bh, i), "beta": float(betas[i])}, {}

        rep.axioms["canonical_beta"] = _run(samples, seed + 4, canonical)
    if isinstance(order, ProductOrder):
        def equal_iff(rng, n):
            al, ah = _lattice_intervals(rng, n, 6)
            bl, bh = _lattice_intervals(rng, n, 6)
            eq = order.leq(al, ah, bl, bh) & order.leq(bl, bh, al, ah)
            bad = np.flatnonzero(eq != ((al == bl) & (ah == bh)))
            return (None if bad.size == 0 else {"X": _iv(al, ah, bad[0]), "Y": _iv(bl, bh, bad[0])}), {}

        rep.axioms["equal_iff_endpoints"] = _run(samples, seed + 5, equal_iff)
    rep.runtime = time.perf_counter() - t0
    return rep


def check_width_limited(spec: IvFn, B: ScalarFn, samples: int = 10_000, seed: int = 0):
    return is_width_limited_sampled(spec, B, samples, seed)
