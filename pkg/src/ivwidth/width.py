"""Width-limiting analysis of interval-valued functions.

The least width-limiting function of IF at (eps, delta) is the supremum of
w(IF([u, u+eps], [v, v+delta])) over admissible (u, v).  It is approximated
by a max over a uniform (u, v) grid, which yields a lower bound whose gap is
at most ``grid_error`` = 2 L / search_resolution for a width map with
Lipschitz constant L.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constructions import IvCompose, IvFn, BestRep, min_width_threshold_arrays
from .interval import Interval
from .scalar import (
    VIOLATION_TOL,
    ScalarFn,
    Tri,
    Verdict,
    dual,
    is_ab_ultramodular_sampled,
    is_ultramodular_sampled,
)

_CHUNK_ELEMS = 2_000_000


@dataclass(frozen=True, eq=False)
class GridFn:
    eps: np.ndarray
    delta: np.ndarray
    values: np.ndarray
    grid_error: float = 0.0
    witness_u: Optional[np.ndarray] = field(default=None, repr=False)
    witness_v: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def resolution(self) -> int:
        return len(self.eps) - 1

    def is_monotone(self, tol: float = VIOLATION_TOL) -> bool:
        v = self.values
        return bool(np.all(np.diff(v, axis=0) >= -tol) and np.all(np.diff(v, axis=1) >= -tol))

    def upper_bound(self, e, d):
        """Monotone upper envelope: next grid point up, plus grid error."""
        n = self.resolution
        i = np.clip(np.ceil(np.asarray(e) * n - 1e-9).astype(int), 0, n)
        j = np.clip(np.ceil(np.asarray(d) * n - 1e-9).astype(int), 0, n)
        return np.minimum(self.values[i, j] + self.grid_error, 1.0)

    def deviation(self, f: ScalarFn) -> np.ndarray:
        E, D = np.meshgrid(self.eps, self.delta, indexing="ij")
        return np.abs(self.values - f(E, D))

    def to_csv(self, digits: Optional[int] = None, closed_form: Optional[ScalarFn] = None) -> str:
        def fmt(a):
            return repr(float(a)) if digits is None else f"{a:.{digits}f}"

        buf = io.StringIO()
        buf.write(f"# grid_error={fmt(self.grid_error)}\n")
        w = csv.writer(buf, lineterminator="\n")
        head = ["eps\\delta"] + [fmt(d) for d in self.delta]
        dev = None
        if closed_form is not None:
            head.append("max_abs_dev")
            dev = self.deviation(closed_form).max(axis=1)
        w.writerow(head)
        for i, e in enumerate(self.eps):
            row = [fmt(e)] + [fmt(v) for v in self.values[i]]
            if dev is not None:
                row.append(fmt(dev[i]))
            w.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GridFn":
        lines = text.splitlines()
        grid_error = 0.0
        for ln in lines:
            if ln.startswith("# grid_error="):
                grid_error = float(ln.split("=", 1)[1])
        rows = list(csv.reader(ln for ln in lines if not ln.startswith("#")))
        head = rows[0][1:]
        extra = head and head[-1] == "max_abs_dev"
        if extra:
            head = head[:-1]
        delta = np.array([float(h) for h in head])
        body = [r for r in rows[1:] if r]
        eps = np.array([float(r[0]) for r in body])
        values = np.array([[float(c) for c in r[1:1 + len(delta)]] for r in body])
        return cls(eps, delta, values, grid_error)


@dataclass(frozen=True, eq=False)
class GridBound(ScalarFn):
    """A GridFn's monotone upper envelope used as a width bound."""

    grid: GridFn

    @property
    def text(self) -> str:
        return "gridbound"

    def __call__(self, x, y):
        return self.grid.upper_bound(x, y)


def sup_widths(ivf: IvFn, eps, delta, search_resolution: int = 200):
    """Grid maximum of the output width for each paired (eps, delta) point.

    Returns ``(values, u, v)`` with the maximizing lower endpoints.  Raw
    endpoints are used (no snapping), which moves widths by at most 1e-12.
    """
    eps = np.asarray(eps, dtype=float).ravel()
    delta = np.asarray(delta, dtype=float).ravel()
    t = np.linspace(0.0, 1.0, search_resolution + 1)
    n = t.size
    chunk = max(1, _CHUNK_ELEMS // (n * n))
    vals = np.empty(eps.size)
    bu = np.empty(eps.size)
    bv = np.empty(eps.size)
    for s in range(0, eps.size, chunk):
        e = eps[s:s + chunk, None, None]
        d = delta[s:s + chunk, None, None]
        u = t[None, :, None] * (1.0 - e)
        v = t[None, None, :] * (1.0 - d)
        lo, hi = ivf.raw(u, np.minimum(u + e, 1.0), v, np.minimum(v + d, 1.0))
        w = np.broadcast_to(hi - lo, (e.shape[0], n, n)).reshape(e.shape[0], -1)
        k = np.argmax(w, axis=1)
        vals[s:s + chunk] = w[np.arange(w.shape[0]), k]
        bu[s:s + chunk] = t[k // n] * (1.0 - eps[s:s + chunk])
        bv[s:s + chunk] = t[k % n] * (1.0 - delta[s:s + chunk])
    return vals, bu, bv


def width_lipschitz(ivf: IvFn, samples: int = 4000, seed: int = 0, h: float = 1e-4) -> float:
    """Sampled Lipschitz constant of (u, v) -> w(ivf([u, u+eps], [v, v+delta]))."""
    rng = np.random.default_rng(seed)
    e, d = rng.random(samples), rng.random(samples)
    u = rng.random(samples) * (1.0 - e - h).clip(0)
    v = rng.random(samples) * (1.0 - d - h).clip(0)

    def w(uu, vv):
        lo, hi = ivf.evaluate(uu, uu + e, vv, vv + d)
        return hi - lo

    base = w(u, v)
    lu = np.max(np.abs(w(u + h, v) - base)) / h
    lv = np.max(np.abs(w(u, v + h) - base)) / h
    return float(max(lu, lv))


def least_width_limiting(ivf: IvFn, resolution: int = 50, search_resolution: int = 200,
                         seed: int = 0) -> GridFn:
    if resolution < 10:
        raise ValueError("resolution must be at least 10")
    g = np.linspace(0.0, 1.0, resolution + 1)
    E, D = np.meshgrid(g, g, indexing="ij")
    shape = E.shape
    if ivf.commutative:
        # the limit is symmetric in (eps, delta); search the upper triangle only
        i, j = np.triu_indices(resolution + 1)
        tv, tu, tw = sup_widths(ivf, g[i], g[j], search_resolution)
        vals, u, v = np.empty(shape), np.empty(shape), np.empty(shape)
        vals[i, j], u[i, j], v[i, j] = tv, tu, tw
        vals[j, i], u[j, i], v[j, i] = tv, tw, tu
    else:
        vals, u, v = (a.reshape(shape) for a in sup_widths(ivf, E, D, search_resolution))
    err = 2.0 * width_lipschitz(ivf, seed=seed) / search_resolution
    return GridFn(g, g.copy(), vals, err, u, v)


# ---------------------------------------------------------------- width limits


@dataclass(frozen=True)
class WidthLimitResult:
    ok: bool
    witness: Optional[tuple] = None
    samples: int = 0

    def __bool__(self) -> bool:
        return self.ok


def boundary_operands(rng, n: int):
    """Operands cycling through every valid {0, interior, 1} endpoint pattern."""
    pats = [(a, b) for a in range(3) for b in range(3) if a <= b]
    combos = [(p, q) for p in pats for q in pats]
    idx = np.arange(n) % len(combos)

    def build(kinds_lo, kinds_hi):
        r = np.sort(rng.uniform(0.05, 0.95, (2, n)), axis=0)
        lo = np.select([kinds_lo == 0, kinds_lo == 2], [0.0, 1.0], r[0])
        hi = np.select([kinds_hi == 0, kinds_hi == 2], [0.0, 1.0], r[1])
        # a quarter of the interior-interior operands are degenerate
        deg = (kinds_lo == 1) & (kinds_hi == 1) & (rng.random(n) < 0.25)
        return lo, np.where(deg, lo, hi)

    P = np.array([combos[i][0] for i in idx])
    Q = np.array([combos[i][1] for i in idx])
    xl, xh = build(P[:, 0], P[:, 1])
    yl, yh = build(Q[:, 0], Q[:, 1])
    return xl, xh, yl, yh


def random_operands(rng, n: int):
    x = np.sort(rng.random((2, n)), axis=0)
    y = np.sort(rng.random((2, n)), axis=0)
    return x[0], x[1], y[0], y[1]


def is_width_limited_sampled(ivf: IvFn, B: ScalarFn, samples: int = 10_000,
                             seed: int = 0) -> WidthLimitResult:
    rng = np.random.default_rng(seed)
    parts = [random_operands(rng, samples), boundary_operands(rng, max(360, samples // 10))]
    xl, xh, yl, yh = (np.concatenate(c) for c in zip(*parts))
    lo, hi = ivf.evaluate(xl, xh, yl, yh)
    bound = B(xh - xl, yh - yl)
    bad = np.flatnonzero(hi - lo > bound + VIOLATION_TOL)
    if bad.size == 0:
        return WidthLimitResult(True, None, xl.size)
    i = bad[0]
    return WidthLimitResult(
        False,
        (Interval(xl[i], xh[i]), Interval(yl[i], yh[i]), float(hi[i] - lo[i]), float(bound[i])),
        xl.size,
    )


def min_width_threshold(ivf: IvFn, B: ScalarFn, X: Interval, Y: Interval) -> float:
    return float(min_width_threshold_arrays(ivf, B, X.lo, X.hi, Y.lo, Y.hi))


# ---------------------------------------------------------------- ultradual


@dataclass(frozen=True)
class UltradualReport:
    function: str
    deviation_rep: float
    deviation_dual: float
    grid_error: float
    ab_ultramodular_11: Verdict
    ultramodular: Verdict

    @property
    def deviation(self) -> float:
        return max(self.deviation_rep, self.deviation_dual)

    @property
    def limit_is_dual(self) -> bool:
        # Grid values are sampled lower bounds of the limit and never fall
        # below the dual at a node, so any excess is a proof of mismatch.
        return self.deviation <= VIOLATION_TOL

    @property
    def within_grid_error(self) -> bool:
        return self.deviation <= self.grid_error + VIOLATION_TOL

    @property
    def consistent(self) -> bool:
        return self.limit_is_dual == (self.ab_ultramodular_11.status is Tri.YES)

    def notes(self) -> str:
        ab = "(1,1)-ultramodular" if self.ab_ultramodular_11.status is Tri.YES else "not (1,1)-ultramodular"
        um = {Tri.YES: "ultramodular", Tri.NO: "not ultramodular",
              Tri.UNKNOWN: "ultramodularity unknown"}[self.ultramodular.status]
        return f"{ab}, {um}"


def check_ultradual(A: ScalarFn, resolution: int = 50, search_resolution: int = 200,
                    samples: int = 10_000, seed: int = 0) -> UltradualReport:
    Ad = dual(A)
    g1 = least_width_limiting(BestRep(A), resolution, search_resolution, seed)
    g2 = least_width_limiting(BestRep(Ad), resolution, search_resolution, seed)
    return UltradualReport(
        function=A.text,
        deviation_rep=float(g1.deviation(Ad).max()),
        deviation_dual=float(g2.deviation(Ad).max()),
        grid_error=max(g1.grid_error, g2.grid_error),
        ab_ultramodular_11=is_ab_ultramodular_sampled(A, 1.0, 1.0, samples, seed),
        ultramodular=is_ultramodular_sampled(A, samples, 0.05, seed),
    )


# ---------------------------------------------------------------- composition


@dataclass(frozen=True, eq=False)
class CompositionReport:
    lhs: GridFn
    rhs: np.ndarray
    tolerance: float

    @property
    def max_excess(self) -> float:
        """Largest amount by which the composite's limit exceeds the bound."""
        return float(np.max(self.lhs.values - self.rhs))

    @property
    def max_gap(self) -> float:
        return float(np.max(np.abs(self.rhs - self.lhs.values)))

    @property
    def holds(self) -> bool:
        return self.max_excess <= self.tolerance

    @property
    def equality(self) -> bool:
        return self.max_gap <= self.tolerance


def check_composition_bound(IF1: IvFn, IF2: IvFn, IG: IvFn, resolution: int = 50,
                            search_resolution: int = 200, seed: int = 0) -> CompositionReport:
    IH = IvCompose(IG, IF1, IF2)
    lh = least_width_limiting(IH, resolution, search_resolution, seed)
    l1 = least_width_limiting(IF1, resolution, search_resolution, seed)
    l2 = least_width_limiting(IF2, resolution, search_resolution, seed)
    rhs, _, _ = sup_widths(IG, l1.values, l2.values, search_resolution)
    err_g = 2.0 * width_lipschitz(IG, seed=seed) / search_resolution
    tol = VIOLATION_TOL + lh.grid_error + err_g + l1.grid_error + l2.grid_error
    return CompositionReport(lh, rhs.reshape(lh.values.shape), tol)
