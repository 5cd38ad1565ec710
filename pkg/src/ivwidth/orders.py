"""Orders on closed subintervals of [0, 1].

Each order exposes a scalar ``cmp`` on :class:`Interval` values and a
vectorized ``leq`` on endpoint arrays.  The lexicographic orders treat key
values within ``TIE_TOL`` as equal before falling back to the second key.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .interval import Interval
from .scalar import VIOLATION_TOL, KAlpha, ScalarFn, fmt_num

TIE_TOL = 1e-12


class Cmp(str, Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"


class OrderError(ValueError):
    pass


def canonical_beta(alpha: float, beta: float) -> float:
    if alpha == beta:
        raise OrderError("alpha and beta must differ")
    return 1.0 if beta > alpha else 0.0


class Order:
    total: bool = False
    text: str

    def leq(self, lo1, hi1, lo2, hi2, slack: float = 0.0):
        """Vectorized X1 <= X2 test; ``slack`` loosens non-tie comparisons."""
        raise NotImplementedError

    def cmp(self, X: Interval, Y: Interval) -> Cmp:
        a = bool(self.leq(X.lo, X.hi, Y.lo, Y.hi))
        b = bool(self.leq(Y.lo, Y.hi, X.lo, X.hi))
        if a and b:
            return Cmp.EQUAL
        if a:
            return Cmp.LESS
        if b:
            return Cmp.GREATER
        return Cmp.INCOMPARABLE

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class ProductOrder(Order):
    text = "pr"

    def leq(self, lo1, hi1, lo2, hi2, slack=0.0):
        return (lo1 <= lo2 + slack) & (hi1 <= hi2 + slack)


@dataclass(frozen=True)
class InclusionOrder(Order):
    """X precedes Y when X is contained in Y."""

    text = "incl"

    def leq(self, lo1, hi1, lo2, hi2, slack=0.0):
        return (lo1 >= lo2 - slack) & (hi1 <= hi2 + slack)


class _Lexicographic(Order):
    total = True

    def keys(self, lo, hi):
        raise NotImplementedError

    def leq(self, lo1, hi1, lo2, hi2, slack=0.0):
        p1, s1 = self.keys(lo1, hi1)
        p2, s2 = self.keys(lo2, hi2)
        tie = np.abs(p1 - p2) <= TIE_TOL
        return (~tie & (p1 < p2)) | (tie & (s1 <= s2 + slack))

    def cmp(self, X: Interval, Y: Interval) -> Cmp:
        p1, s1 = self.keys(X.lo, X.hi)
        p2, s2 = self.keys(Y.lo, Y.hi)
        if abs(p1 - p2) > TIE_TOL:
            return Cmp.LESS if p1 < p2 else Cmp.GREATER
        if abs(s1 - s2) <= TIE_TOL:
            return Cmp.EQUAL
        return Cmp.LESS if s1 < s2 else Cmp.GREATER


@dataclass(frozen=True)
class AlphaBetaOrder(_Lexicographic):
    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0 and 0.0 <= self.beta <= 1.0):
            raise OrderError("alpha and beta must lie in [0,1]")
        if self.alpha == self.beta:
            raise OrderError("alpha and beta must differ")

    @property
    def text(self) -> str:
        return f"ab:{fmt_num(self.alpha)},{fmt_num(self.beta)}"

    def keys(self, lo, hi):
        w = hi - lo
        return lo + self.alpha * w, lo + self.beta * w

    def canonical(self) -> "AlphaBetaOrder":
        return AlphaBetaOrder(self.alpha, canonical_beta(self.alpha, self.beta))


def injectivity_witness(a1: ScalarFn, a2: ScalarFn, probes: int = 10_000, seed: int = 0):
    """Two distinct intervals sharing both generator values, or None.

    Random pairs almost never share an ``a1`` value, so each probe walks the
    level set of ``a1`` through a random X: it moves the lower endpoint down,
    solves for the upper endpoint that restores the ``a1`` value by bisection,
    and compares ``a2`` at the two intervals.
    """
    rng = np.random.default_rng(seed)
    lo = rng.uniform(0.05, 0.95, probes)
    hi = lo + (1.0 - lo) * rng.uniform(0.05, 0.95, probes)
    target = a1(lo, hi)
    lo2 = lo * rng.uniform(0.3, 0.95, probes)
    a, b = lo2.copy(), np.ones(probes)
    reachable = a1(lo2, b) >= target
    for _ in range(60):
        mid = (a + b) / 2
        up = a1(lo2, mid) >= target
        b = np.where(up, mid, b)
        a = np.where(up, a, mid)
    hi2 = b
    same1 = reachable & (np.abs(a1(lo2, hi2) - target) <= 1e-12) & (hi2 >= lo2)
    same2 = np.abs(a2(lo2, hi2) - a2(lo, hi)) <= 1e-12
    moved = np.abs(lo2 - lo) > 1e-6
    idx = np.flatnonzero(same1 & same2 & moved)
    if idx.size == 0:
        return None
    i = idx[0]
    return (Interval(lo[i], hi[i]), Interval(lo2[i], hi2[i]))


@dataclass(frozen=True)
class GeneratedPairOrder(_Lexicographic):
    """Lexicographic order by ``a1(lo, hi)`` then ``a2(lo, hi)``.

    Admissibility needs the pair to separate intervals; this is validated by
    sampling only, so instances are "sampled-admissible" rather than proven.
    """

    a1: ScalarFn
    a2: ScalarFn

    def __post_init__(self):
        w = injectivity_witness(self.a1, self.a2)
        if w is not None:
            raise OrderError(
                f"generators {self.a1.text},{self.a2.text} do not separate {w[0]} and {w[1]}"
            )

    @property
    def text(self) -> str:
        return f"pair:{self.a1.text},{self.a2.text}"

    def keys(self, lo, hi):
        return self.a1(lo, hi), self.a2(lo, hi)


def alpha_beta_as_pair(order: AlphaBetaOrder) -> GeneratedPairOrder:
    return GeneratedPairOrder(KAlpha(order.alpha), KAlpha(order.beta))


def cmp(order: Order, X: Interval, Y: Interval) -> Cmp:
    return order.cmp(X, Y)


def random_intervals(rng, n: int):
    e = np.sort(rng.random((2, n)), axis=0)
    return e[0], e[1]


def refines_product(order: Order, samples: int = 10_000, seed: int = 0):
    """Witness pair (X, Y) with X <=_Pr Y but not X <= Y in ``order``, or None.

    Pairs are built by enlarging X, so ties in either endpoint are covered.
    """
    rng = np.random.default_rng(seed)
    lo1, hi1 = random_intervals(rng, samples)
    kind = rng.integers(0, 4, samples)
    dlo = np.where(kind & 1, rng.random(samples), 0.0) * (hi1 - lo1)
    lo2 = lo1 + dlo
    hi2 = hi1 + np.where(kind & 2, rng.random(samples), 0.0) * (1.0 - hi1)
    ok = order.leq(lo1, hi1, lo2, hi2, VIOLATION_TOL)
    idx = np.flatnonzero(~ok)
    if idx.size == 0:
        return None
    i = idx[0]
    return (Interval(lo1[i], hi1[i]), Interval(lo2[i], hi2[i]))
