"""Interval-valued functions: best representations and the width-limited
constructions built on K_alpha centers.

Every function evaluates on endpoint arrays through :meth:`IvFn.evaluate`;
the :class:`Interval` call is a thin wrapper.  Results within 1e-12 of 0 or 1
are snapped onto the bound so boundary conditions can be tested exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .interval import Interval, d_alpha, lambda_alpha_arrays, snap_unit
from .scalar import (
    ScalarFn,
    boundary_witnesses,
    conjunctive_witness,
    fmt_num,
    is_aggregation_sampled,
    is_commutative_sampled,
    is_increasing_sampled,
    leq_witness,
    strict_witness,
)


class SpecError(ValueError):
    """A constructor precondition does not hold."""


def _require_strict_overlap(O: ScalarFn) -> None:
    if not is_commutative_sampled(O):
        raise SpecError(f"{O.text} is not commutative")
    if not is_increasing_sampled(O):
        raise SpecError(f"{O.text} is not increasing")
    if boundary_witnesses(O):
        raise SpecError(f"{O.text} violates the overlap boundary conditions")
    w = strict_witness(O)
    if w is not None:
        raise SpecError(f"{O.text} is not strict (witness x,y,z={w})")


def _require_increasing_commutative(B: ScalarFn) -> None:
    if not is_increasing_sampled(B):
        raise SpecError(f"B={B.text} is not increasing")
    if not is_commutative_sampled(B):
        raise SpecError(f"B={B.text} is not commutative")


def _widths(xl, xh, yl, yh):
    return xh - xl, yh - yl


class IvFn:
    """Interval-valued binary function on endpoint arrays."""

    text: str

    @property
    def commutative(self) -> bool:
        return False

    def raw(self, xl, xh, yl, yh):
        raise NotImplementedError

    def evaluate(self, xl, xh, yl, yh):
        lo, hi = self.raw(*(np.asarray(a, dtype=float) for a in (xl, xh, yl, yh)))
        lo, hi = snap_unit(lo), snap_unit(hi)
        return lo, np.maximum(hi, lo)

    def __call__(self, X: Interval, Y: Interval) -> Interval:
        lo, hi = self.evaluate(X.lo, X.hi, Y.lo, Y.hi)
        return Interval(float(lo), float(hi))

    def breakdown(self, X: Interval, Y: Interval) -> dict:
        R = self(X, Y)
        return {"width": R.width}

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class BestRep(IvFn):
    """[F(lo_x, lo_y), G(hi_x, hi_y)]; G defaults to F."""

    F: ScalarFn
    G: Optional[ScalarFn] = None

    def __post_init__(self):
        if self.G is None:
            object.__setattr__(self, "G", self.F)
        elif self.G != self.F:
            w = leq_witness(self.F, self.G)
            if w is not None:
                raise SpecError(f"{self.F.text} exceeds {self.G.text} at {w}")

    @property
    def text(self) -> str:
        if self.G == self.F:
            return f"bestrep({self.F.text})"
        return f"bestrep({self.F.text},{self.G.text})"

    @property
    def commutative(self) -> bool:
        return is_commutative_sampled(self.F) and is_commutative_sampled(self.G)

    def raw(self, xl, xh, yl, yh):
        return self.F(xl, yl), self.G(xh, yh)

    def breakdown(self, X, Y):
        R = self(X, Y)
        return {"lower": R.lo, "upper": R.hi, "width": R.width}


def min_width_threshold_arrays(ivf: IvFn, B: ScalarFn, xl, xh, yl, yh, commutative=None):
    """Smaller of the natural output width and the B bound, both argument orders."""
    if commutative is None:
        commutative = ivf.commutative and is_commutative_sampled(B)
    wx, wy = _widths(xl, xh, yl, yh)
    lo, hi = ivf.evaluate(xl, xh, yl, yh)
    m = np.minimum(hi - lo, B(wx, wy))
    if not commutative:
        lo2, hi2 = ivf.evaluate(yl, yh, xl, xh)
        m = np.minimum(m, np.minimum(hi2 - lo2, B(wy, wx)))
    return m


class _Centered(IvFn):
    O: ScalarFn
    alpha: float
    beta: float

    @property
    def commutative(self) -> bool:
        return True

    def centers(self, xl, xh, yl, yh):
        a = self.alpha
        return self.O(xl + a * (xh - xl), yl + a * (yh - yl))

    def _place(self, c, w):
        a = self.alpha
        return c - a * w, c + (1.0 - a) * w

    def _check_alpha_open(self):
        if not 0.0 < self.alpha < 1.0:
            raise SpecError("alpha outside (0,1)")
        if not 0.0 <= self.beta <= 1.0:
            raise SpecError("beta outside [0,1]")
        if self.alpha == self.beta:
            raise SpecError("alpha and beta must differ")


@dataclass(frozen=True)
class Construct1(_Centered):
    """Center K_alpha of the best representation, width its minimal threshold."""

    O: ScalarFn
    B: ScalarFn
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise SpecError("alpha outside (0,1]")
        if not 0.0 <= self.beta < self.alpha:
            raise SpecError("beta must satisfy 0 <= beta < alpha")
        _require_strict_overlap(self.O)
        _require_increasing_commutative(self.B)

    @property
    def text(self) -> str:
        return f"c1({self.O.text},{self.B.text},{fmt_num(self.alpha)},{fmt_num(self.beta)})"

    def parts(self, xl, xh, yl, yh):
        rep = BestRep(self.O)
        pl, ph = rep.evaluate(xl, xh, yl, yh)
        c = pl + self.alpha * (ph - pl)
        m = min_width_threshold_arrays(rep, self.B, xl, xh, yl, yh, commutative=True)
        return c, m

    def raw(self, xl, xh, yl, yh):
        return self._place(*self.parts(xl, xh, yl, yh))

    def breakdown(self, X, Y):
        c, m = self.parts(X.lo, X.hi, Y.lo, Y.hi)
        R = self(X, Y)
        return {"K_alpha": float(c), "width": R.width, "m": float(m)}


@dataclass(frozen=True)
class Construct2(_Centered):
    """Center O(K_alpha X, K_alpha Y), width B(B(wX, wY), B(c, 1 - c))."""

    O: ScalarFn
    B: ScalarFn
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        self._check_alpha_open()
        _require_strict_overlap(self.O)
        _require_increasing_commutative(self.B)
        w = conjunctive_witness(self.B)
        if w is not None:
            raise SpecError(f"B={self.B.text} is not conjunctive (exceeds min at {w})")

    @property
    def text(self) -> str:
        return f"c2({self.O.text},{self.B.text},{fmt_num(self.alpha)},{fmt_num(self.beta)})"

    def parts(self, xl, xh, yl, yh):
        c = self.centers(xl, xh, yl, yh)
        wx, wy = _widths(xl, xh, yl, yh)
        theta = self.B(self.B(wx, wy), self.B(c, 1.0 - c))
        return c, theta

    def raw(self, xl, xh, yl, yh):
        return self._place(*self.parts(xl, xh, yl, yh))

    def breakdown(self, X, Y):
        c, theta = self.parts(X.lo, X.hi, Y.lo, Y.hi)
        R = self(X, Y)
        return {"K_alpha": float(c), "width": R.width, "theta": float(theta)}


@dataclass(frozen=True)
class AOAlpha(_Centered):
    """Center O(K_alpha X, K_alpha Y), width min{wX, wY, c, 1 - c}."""

    O: ScalarFn
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        self._check_alpha_open()
        _require_strict_overlap(self.O)

    @property
    def text(self) -> str:
        return f"ao({self.O.text},{fmt_num(self.alpha)},{fmt_num(self.beta)})"

    def parts(self, xl, xh, yl, yh):
        c = self.centers(xl, xh, yl, yh)
        wx, wy = _widths(xl, xh, yl, yh)
        return c, np.minimum(np.minimum(wx, wy), np.minimum(c, 1.0 - c))

    def raw(self, xl, xh, yl, yh):
        return self._place(*self.parts(xl, xh, yl, yh))

    def breakdown(self, X, Y):
        c, m = self.parts(X.lo, X.hi, Y.lo, Y.hi)
        R = self(X, Y)
        return {"K_alpha": float(c), "width": R.width, "m": float(m)}


@dataclass(frozen=True)
class KLambdaAggregation(_Centered):
    """Interval with K_alpha value O(K_alpha X, K_alpha Y) and relative width
    A(lambda X, lambda Y), i.e. width A(lambda X, lambda Y) * d_alpha(center)."""

    O: ScalarFn
    A: ScalarFn
    alpha: float
    beta: float = 0.0

    @property
    def text(self) -> str:
        return f"klambda({self.O.text},{self.A.text},{fmt_num(self.alpha)},{fmt_num(self.beta)})"

    @property
    def commutative(self) -> bool:
        return is_commutative_sampled(self.O) and is_commutative_sampled(self.A)

    def raw(self, xl, xh, yl, yh):
        c = self.centers(xl, xh, yl, yh)
        a = self.alpha
        w = self.A(lambda_alpha_arrays(xl, xh, a), lambda_alpha_arrays(yl, yh, a)) * d_alpha(c, a)
        return self._place(c, w)


@dataclass(frozen=True)
class Construct3(_Centered):
    """Center O(K_alpha X, K_alpha Y), width the minimal threshold of the
    relative-width aggregation against B."""

    O: ScalarFn
    B: ScalarFn
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        self._check_alpha_open()
        _require_strict_overlap(self.O)
        if not is_aggregation_sampled(self.B):
            raise SpecError(f"B={self.B.text} is not an aggregation function")
        if not is_commutative_sampled(self.B):
            raise SpecError(f"B={self.B.text} is not commutative")

    @property
    def text(self) -> str:
        return f"c3({self.O.text},{self.B.text},{fmt_num(self.alpha)},{fmt_num(self.beta)})"

    def parts(self, xl, xh, yl, yh):
        a, B = self.alpha, self.B
        c = self.centers(xl, xh, yl, yh)
        d = d_alpha(c, a)
        lx, ly = lambda_alpha_arrays(xl, xh, a), lambda_alpha_arrays(yl, yh, a)
        wx, wy = _widths(xl, xh, yl, yh)
        width = np.minimum(B(lx, ly) * d, B(wx, wy))
        return c, width, d

    def raw(self, xl, xh, yl, yh):
        c, width, _ = self.parts(xl, xh, yl, yh)
        return self._place(c, width)

    def breakdown(self, X, Y):
        c, width, d = self.parts(X.lo, X.hi, Y.lo, Y.hi)
        return {"K_alpha": float(c), "width": float(width), "d_alpha": float(d)}


@dataclass(frozen=True)
class IvCompose(IvFn):
    """IG(IF1(X, Y), IF2(X, Y))."""

    outer: IvFn
    left: IvFn
    right: IvFn

    @property
    def text(self) -> str:
        return f"ivcompose({self.outer.text},{self.left.text},{self.right.text})"

    @property
    def commutative(self) -> bool:
        return self.left.commutative and self.right.commutative

    def raw(self, xl, xh, yl, yh):
        al, ah = self.left.evaluate(xl, xh, yl, yh)
        bl, bh = self.right.evaluate(xl, xh, yl, yh)
        return self.outer.evaluate(al, ah, bl, bh)


def iv_eval(spec: IvFn, X: Interval, Y: Interval) -> Interval:
    return spec(X, Y)


def eval_best_rep(F, G, X, Y) -> Interval:
    return BestRep(F, G)(X, Y)


def eval_construct1(O, B, alpha, beta, X, Y) -> Interval:
    return Construct1(O, B, alpha, beta)(X, Y)


def eval_construct2(O, B, alpha, beta, X, Y) -> Interval:
    return Construct2(O, B, alpha, beta)(X, Y)


def eval_construct3(O, B, alpha, beta, X, Y) -> Interval:
    return Construct3(O, B, alpha, beta)(X, Y)


def eval_ao_alpha(O, alpha, beta, X, Y) -> Interval:
    return AOAlpha(O, alpha, beta)(X, Y)
