"""Binary functions on the unit square as immutable expression trees.

Nodes are frozen dataclasses that evaluate elementwise on numpy arrays, so
the same tree serves scalar calls and million-point property sweeps.  The
``text`` of every node parses back to an equal tree (see ``parsing``).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

VIOLATION_TOL = 1e-9


class Tri(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class CorruptFunctionError(ValueError):
    """A custom node produced a value outside [0, 1]."""


def fmt_num(a: float) -> str:
    a = float(a)
    if a.is_integer():
        return str(int(a))
    return repr(a)


# ---------------------------------------------------------------- negations


@dataclass(frozen=True)
class Negation:
    name: str
    fn: Callable = field(compare=False, hash=False)

    def __post_init__(self):
        if self.name == "zadeh":
            return
        t = np.linspace(0.0, 1.0, 1001)
        v = np.asarray(self.fn(t), dtype=float)
        if abs(v[0] - 1.0) > VIOLATION_TOL or abs(v[-1]) > VIOLATION_TOL:
            raise ValueError(f"negation {self.name!r} must map 0->1 and 1->0")
        if np.any(np.diff(v) > VIOLATION_TOL):
            raise ValueError(f"negation {self.name!r} is not antitone")

    def __call__(self, t):
        return self.fn(t)


ZADEH = Negation("zadeh", lambda t: 1.0 - t)


# ---------------------------------------------------------------- nodes


class ScalarFn:
    """Base class for expression nodes."""

    text: str

    def __call__(self, x, y):
        raise NotImplementedError

    def eval(self, x: float, y: float) -> float:
        return float(self(np.float64(x), np.float64(y)))

    def analytic(self, prop: str):
        """Analytically known property value, or None when unknown."""
        return None

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Leaf(ScalarFn):
    name: str
    fn: Callable = field(compare=False, hash=False, repr=False)
    known: tuple = field(default=(), compare=False, hash=False, repr=False)

    @property
    def text(self) -> str:
        return self.name

    def __call__(self, x, y):
        return self.fn(x, y)

    def analytic(self, prop: str):
        return dict(self.known).get(prop)


@dataclass(frozen=True)
class KAlpha(ScalarFn):
    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"Kalpha weight {self.alpha!r} outside [0,1]")

    @property
    def text(self) -> str:
        return f"Kalpha:{fmt_num(self.alpha)}"

    def __call__(self, x, y):
        return x + self.alpha * (y - x)

    def analytic(self, prop: str):
        return {
            "commutative": self.alpha == 0.5,
            "increasing": True,
            "continuous": True,
            "ultramodular": Tri.YES,
            "ab_ultramodular_11": Tri.YES,
        }.get(prop)


@dataclass(frozen=True)
class Dual(ScalarFn):
    inner: ScalarFn
    negation: Negation = ZADEH

    @property
    def text(self) -> str:
        if self.negation.name == "zadeh":
            return f"dual({self.inner.text})"
        return f"dual({self.inner.text},{self.negation.name})"

    def __call__(self, x, y):
        n = self.negation
        return n(self.inner(n(x), n(y)))


@dataclass(frozen=True)
class Compose(ScalarFn):
    outer: ScalarFn
    left: ScalarFn
    right: ScalarFn

    @property
    def text(self) -> str:
        return f"compose({self.outer.text},{self.left.text},{self.right.text})"

    def __call__(self, x, y):
        return self.outer(self.left(x, y), self.right(x, y))


@dataclass(frozen=True)
class ConvexSum(ScalarFn):
    alpha: float
    left: ScalarFn
    right: ScalarFn

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"convex weight {self.alpha!r} outside [0,1]")

    @property
    def text(self) -> str:
        return f"convex({fmt_num(self.alpha)},{self.left.text},{self.right.text})"

    def __call__(self, x, y):
        a = self.left(x, y)
        return a + self.alpha * (self.right(x, y) - a)


@dataclass(frozen=True)
class Power(ScalarFn):
    inner: ScalarFn
    k: float

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"power exponent must be positive, got {self.k!r}")

    @property
    def text(self) -> str:
        return f"pow({self.inner.text},{fmt_num(self.k)})"

    def __call__(self, x, y):
        return self.inner(x, y) ** self.k


@dataclass(frozen=True)
class Custom(ScalarFn):
    """User supplied evaluator, range-checked at registration."""

    name: str
    fn: Callable = field(compare=False, hash=False, repr=False)
    probes: int = field(default=1000, compare=False, hash=False, repr=False)

    def __post_init__(self):
        rng = np.random.default_rng(0)
        pts = rng.random((2, self.probes))
        self(pts[0], pts[1])
        self(np.array([0.0, 0.0, 1.0, 1.0]), np.array([0.0, 1.0, 0.0, 1.0]))

    @property
    def text(self) -> str:
        return self.name

    def __call__(self, x, y):
        v = np.asarray(self.fn(x, y), dtype=float)
        if np.any((v < -VIOLATION_TOL) | (v > 1.0 + VIOLATION_TOL) | ~np.isfinite(v)):
            raise CorruptFunctionError(f"custom function {self.name!r} left [0,1]")
        return v if v.ndim else np.float64(v)


# ---------------------------------------------------------------- catalog


def _g_t(t):
    s = 2.0 * t - 1.0
    return (s * s * s + 1.0) / 2.0


def _leaf(name, fn, **known) -> Leaf:
    return Leaf(name, fn, tuple(sorted(known.items())))


_OVERLAP = dict(commutative=True, increasing=True, continuous=True, overlap=True)

O_P = _leaf("Op", lambda x, y: x * y, strict=True,
            ultramodular=Tri.YES, ab_ultramodular_11=Tri.YES, **_OVERLAP)
O_M = _leaf("min", np.minimum, strict=False,
            ultramodular=Tri.NO, ab_ultramodular_11=Tri.YES, **_OVERLAP)
O_GM = _leaf("Gm", lambda x, y: np.sqrt(np.maximum(x * y, 0.0)), strict=True,
             ultramodular=Tri.NO, ab_ultramodular_11=Tri.NO, **_OVERLAP)
O_MM = _leaf("mM", lambda x, y: np.minimum(x, y) * np.maximum(x * x, y * y),
             strict=True, **_OVERLAP)
O_OB = _leaf("OB", lambda x, y: np.minimum(x * np.sqrt(np.maximum(y, 0.0)), y * np.sqrt(np.maximum(x, 0.0))),
             strict=True, **_OVERLAP)
O_T = _leaf("Ot", lambda x, y: _g_t(x) * _g_t(y), strict=True,
            ultramodular=Tri.NO, ab_ultramodular_11=Tri.YES, **_OVERLAP)
MAX = _leaf("max", np.maximum, commutative=True, increasing=True,
            continuous=True, overlap=False, ultramodular=Tri.NO)
AM = _leaf("AM", lambda x, y: (x + y) / 2.0, commutative=True, increasing=True,
           continuous=True, overlap=False,
           ultramodular=Tri.YES, ab_ultramodular_11=Tri.YES)
ONE = _leaf("one", lambda x, y: np.ones(np.broadcast(x, y).shape)[()] * 1.0,
            commutative=True, increasing=True, continuous=True, overlap=False)

CATALOG: dict[str, ScalarFn] = {f.text: f for f in (O_P, O_M, O_GM, O_MM, O_OB, O_T, MAX, AM, ONE)}

ALIASES = {
    "op": "Op", "o_p": "Op",
    "min": "min", "om": "min", "o_m": "min",
    "gm": "Gm", "ogm": "Gm", "o_gm": "Gm",
    "mm": "mM", "omm": "mM", "o_mm": "mM",
    "ob": "OB", "oob": "OB", "o_ob": "OB",
    "ot": "Ot", "o_t": "Ot",
    "max": "max", "am": "AM", "one": "one", "b1": "one",
}


NEGATIONS: dict[str, Negation] = {"zadeh": ZADEH}
_USER: dict[str, ScalarFn] = {}


def register(f: Custom) -> Custom:
    """Make a custom function reachable by name from the text syntax."""
    if f.name.lower() in ALIASES or f.name.lower() in ("kalpha", "dual", "compose", "convex", "pow"):
        raise ValueError(f"name {f.name!r} is reserved")
    _USER[f.name] = f
    return f


def register_negation(n: Negation) -> Negation:
    NEGATIONS[n.name] = n
    return n


def lookup(name: str) -> ScalarFn:
    if name in _USER:
        return _USER[name]
    key = ALIASES.get(name.lower())
    if key is None:
        raise KeyError(name)
    return CATALOG[key]


def dual(f: ScalarFn, n: Negation = ZADEH) -> ScalarFn:
    return Dual(f, n)


def compose3(outer: ScalarFn, left: ScalarFn, right: ScalarFn) -> ScalarFn:
    return Compose(outer, left, right)


def convex_sum(alpha: float, left: ScalarFn, right: ScalarFn) -> ScalarFn:
    return ConvexSum(float(alpha), left, right)


def evaluate(f: ScalarFn, x: float, y: float) -> float:
    return f.eval(x, y)


# ---------------------------------------------------------------- checkers


@dataclass(frozen=True)
class Verdict:
    status: Tri
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.status is Tri.YES


@dataclass(frozen=True)
class FnPropertyFlags:
    commutative: bool
    increasing: bool
    zero_boundary: bool
    one_boundary: bool
    strict: bool
    continuous: bool
    overlap_axioms: bool
    ultramodular: Tri
    ab_ultramodular_11: Tri
    counterexamples: dict = field(default_factory=dict, compare=False)


def _first(mask, *cols):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    i = idx[0]
    return tuple(float(np.broadcast_to(c, mask.shape)[i]) for c in cols)


def _unit_grid(n: int = 101) -> tuple[np.ndarray, np.ndarray]:
    g = np.linspace(0.0, 1.0, n)
    return np.meshgrid(g, g, indexing="ij")


@functools.lru_cache(maxsize=512)
def commutativity_witness(f: ScalarFn, samples: int = 10_000, seed: int = 0):
    gx, gy = _unit_grid()
    rng = np.random.default_rng(seed)
    x = np.concatenate([gx.ravel(), rng.random(samples)])
    y = np.concatenate([gy.ravel(), rng.random(samples)])
    bad = np.abs(f(x, y) - f(y, x)) > VIOLATION_TOL
    return _first(bad, x, y)


@functools.lru_cache(maxsize=512)
def monotonicity_witness(f: ScalarFn, samples: int = 10_000, seed: int = 0):
    gx, gy = _unit_grid()
    v = f(gx, gy)
    step = 1.0 / 100
    bad = v[1:, :] < v[:-1, :] - VIOLATION_TOL
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return (i * step, j * step, (i + 1) * step, j * step)
    bad = v[:, 1:] < v[:, :-1] - VIOLATION_TOL
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return (i * step, j * step, i * step, (j + 1) * step)
    rng = np.random.default_rng(seed)
    x = np.sort(rng.random((2, samples)), axis=0)
    y = np.sort(rng.random((2, samples)), axis=0)
    bad = f(x[0], y[0]) > f(x[1], y[1]) + VIOLATION_TOL
    return _first(bad, x[0], y[0], x[1], y[1])


@functools.lru_cache(maxsize=512)
def boundary_witnesses(f: ScalarFn, samples: int = 10_000, seed: int = 0):
    """Witnesses against O(x,y)=0 iff xy=0 and O(x,y)=1 iff xy=1."""
    g = np.linspace(0.0, 1.0, 101)
    zero = np.zeros_like(g)
    out = {}
    v = np.concatenate([f(zero, g), f(g, zero)])
    if np.any(np.abs(v) > VIOLATION_TOL):
        i = int(np.argmax(np.abs(v) > VIOLATION_TOL))
        out["zero_if"] = (0.0, float(g[i])) if i < g.size else (float(g[i - g.size]), 0.0)
    rng = np.random.default_rng(seed)
    gx, gy = _unit_grid()
    x = np.concatenate([gx.ravel(), rng.random(samples)])
    y = np.concatenate([gy.ravel(), rng.random(samples)])
    v = f(x, y)
    w = _first((x * y > 0) & (v <= 0), x, y)
    if w is not None:
        out["zero_only_if"] = w
    if abs(f.eval(1.0, 1.0) - 1.0) > VIOLATION_TOL:
        out["one_if"] = (1.0, 1.0)
    w = _first((x * y < 1) & (v >= 1), x, y)
    if w is not None:
        out["one_only_if"] = w
    return out


@functools.lru_cache(maxsize=512)
def continuity_jump(f: ScalarFn, samples: int = 10_000, seed: int = 0, step: float = 1e-3):
    """Largest change over a 1e-3 move, used by the advisory continuity check."""
    rng = np.random.default_rng(seed)
    x = rng.random(samples) * (1.0 - step)
    y = rng.random(samples) * (1.0 - step)
    v = f(x, y)
    return float(max(np.max(np.abs(f(x + step, y) - v)), np.max(np.abs(f(x, y + step) - v))))


def strict_witness(f: ScalarFn, grid: int = 50, samples: int = 10_000, seed: int = 0):
    """A triple (x, y, z) with x < y but f(x,z) >= f(y,z), or None."""
    if grid < 3:
        raise ValueError("grid must be at least 3")
    return _strict_witness(f, grid, samples, seed)


@functools.lru_cache(maxsize=512)
def _strict_witness(f, grid, samples, seed):
    g = np.linspace(1.0 / grid, 1.0, grid)
    i, j = np.triu_indices(grid, k=1)
    x = np.repeat(g[i], grid)
    y = np.repeat(g[j], grid)
    z = np.tile(g, i.size)
    rng = np.random.default_rng(seed)
    r = 1.0 - rng.random((3, samples))  # (0, 1]
    lo, hi = np.minimum(r[0], r[1]), np.maximum(r[0], r[1])
    keep = hi - lo > 1e-6
    x = np.concatenate([x, lo[keep]])
    y = np.concatenate([y, hi[keep]])
    z = np.concatenate([z, r[2][keep]])
    w = _first(f(x, z) >= f(y, z), x, y, z)
    if w is None:
        w = _first(f(z, x) >= f(z, y), x, y, z)
    return w


def is_strict_sampled(f: ScalarFn, grid: int = 50, samples: int = 10_000, seed: int = 0) -> bool:
    return strict_witness(f, grid, samples, seed) is None


def _eq3_tuples(samples: int, step: float, rng) -> tuple[np.ndarray, ...]:
    eps = rng.random(samples) * rng.random(samples)
    dlt = rng.random(samples) * rng.random(samples)
    x2 = rng.random(samples) * (1.0 - eps)
    y2 = rng.random(samples) * (1.0 - dlt)
    x1 = rng.random(samples) * x2
    y1 = rng.random(samples) * y2
    g = np.linspace(0.0, 1.0, 6)
    a, b = np.triu_indices(6)
    inc = np.array([0.0, step, 0.2, 0.4])
    P = np.array(np.meshgrid(np.arange(a.size), np.arange(a.size), inc, inc, indexing="ij"))
    P = P.reshape(4, -1)
    ix, iy = P[0].astype(int), P[1].astype(int)
    sx1, sx2, sy1, sy2 = g[a[ix]], g[b[ix]], g[a[iy]], g[b[iy]]
    se, sd = P[2], P[3]
    ok = (sx2 + se <= 1.0) & (sy2 + sd <= 1.0)
    return (np.concatenate([x1, sx1[ok]]), np.concatenate([y1, sy1[ok]]),
            np.concatenate([x2, sx2[ok]]), np.concatenate([y2, sy2[ok]]),
            np.concatenate([eps, se[ok]]), np.concatenate([dlt, sd[ok]]))


def eq3_witness(f: ScalarFn, samples: int = 10_000, step: float = 0.05, seed: int = 0):
    """Tuple (x1, y1, x2, y2, eps, delta) violating increment monotonicity."""
    rng = np.random.default_rng(seed)
    x1, y1, x2, y2, e, d = _eq3_tuples(samples, step, rng)
    lhs = f(x1 + e, y1 + d) - f(x1, y1)
    rhs = f(x2 + e, y2 + d) - f(x2, y2)
    return _first(lhs > rhs + VIOLATION_TOL, x1, y1, x2, y2, e, d)


def second_difference_witness(f: ScalarFn, step: float = 0.05, n: int = 41, tol: float = 1e-7):
    """Point (x, y) where a central second difference is below -tol."""
    h = step
    g = np.linspace(h, 1.0 - h, n)
    x, y = (a.ravel() for a in np.meshgrid(g, g, indexing="ij"))
    c = f(x, y)
    fxx = f(x + h, y) - 2 * c + f(x - h, y)
    fyy = f(x, y + h) - 2 * c + f(x, y - h)
    fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / 4
    return _first((fxx < -tol) | (fyy < -tol) | (fxy < -tol), x, y)


@functools.lru_cache(maxsize=512)
def is_ultramodular_sampled(f: ScalarFn, samples: int = 10_000, step: float = 0.05,
                            seed: int = 0) -> Verdict:
    if not 0.0 < step <= 0.1:
        raise ValueError("step must lie in (0, 0.1]")
    w = eq3_witness(f, samples, step, seed)
    if w is not None:
        return Verdict(Tri.NO, w)
    w = second_difference_witness(f, step)
    if w is not None:
        return Verdict(Tri.UNKNOWN, w)
    return Verdict(Tri.YES)


def ab_tuples(a: float, b: float, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    eps = rng.random(samples) * a
    dlt = rng.random(samples) * b
    x = rng.random(samples) * (1.0 - eps)
    y = rng.random(samples) * (1.0 - dlt)
    g = np.linspace(0.0, 1.0, 11)
    ge = np.unique(np.concatenate([g[g <= a], [a]]))
    gd = np.unique(np.concatenate([g[g <= b], [b]]))
    sx, sy, se, sd = (m.ravel() for m in np.meshgrid(g, g, ge, gd, indexing="ij"))
    ok = (sx + se <= 1.0) & (sy + sd <= 1.0)
    return (np.concatenate([x, sx[ok]]), np.concatenate([y, sy[ok]]),
            np.concatenate([eps, se[ok]]), np.concatenate([dlt, sd[ok]]))


@functools.lru_cache(maxsize=512)
def is_ab_ultramodular_sampled(f: ScalarFn, a: float, b: float, samples: int = 10_000,
                               seed: int = 0) -> Verdict:
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError("anchor (a, b) must lie in the unit square")
    x, y, e, d = ab_tuples(a, b, samples, seed)
    lhs = f(x + e, y + d) - f(x, y)
    rhs = f(a, b) - f(a - e, b - d)
    w = _first(lhs > rhs + VIOLATION_TOL, x, y, e, d)
    return Verdict(Tri.NO, w) if w is not None else Verdict(Tri.YES)


@functools.lru_cache(maxsize=512)
def conjunctive_witness(f: ScalarFn, samples: int = 10_000, seed: int = 0):
    """Point where f exceeds min, or None."""
    gx, gy = _unit_grid()
    rng = np.random.default_rng(seed)
    x = np.concatenate([gx.ravel(), rng.random(samples)])
    y = np.concatenate([gy.ravel(), rng.random(samples)])
    return _first(f(x, y) > np.minimum(x, y) + VIOLATION_TOL, x, y)


def is_commutative_sampled(f: ScalarFn, samples: int = 10_000, seed: int = 0) -> bool:
    return commutativity_witness(f, samples, seed) is None


def is_increasing_sampled(f: ScalarFn, samples: int = 10_000, seed: int = 0) -> bool:
    return monotonicity_witness(f, samples, seed) is None


def is_conjunctive_sampled(f: ScalarFn, samples: int = 10_000, seed: int = 0) -> bool:
    return conjunctive_witness(f, samples, seed) is None


def is_aggregation_sampled(f: ScalarFn, samples: int = 10_000, seed: int = 0) -> bool:
    corners = abs(f.eval(0.0, 0.0)) <= VIOLATION_TOL and abs(f.eval(1.0, 1.0) - 1.0) <= VIOLATION_TOL
    return corners and is_increasing_sampled(f, samples, seed)


@functools.lru_cache(maxsize=512)
def leq_witness(F: ScalarFn, G: ScalarFn, samples: int = 10_000, seed: int = 0):
    """Point where F exceeds G, or None."""
    gx, gy = _unit_grid()
    rng = np.random.default_rng(seed)
    x = np.concatenate([gx.ravel(), rng.random(samples)])
    y = np.concatenate([gy.ravel(), rng.random(samples)])
    return _first(F(x, y) > G(x, y) + VIOLATION_TOL, x, y)


def check_overlap_axioms(f: ScalarFn, samples: int = 10_000, seed: int = 0) -> FnPropertyFlags:
    cex: dict = {}
    w = commutativity_witness(f, samples, seed)
    if w is not None:
        cex["commutative"] = w
    w = monotonicity_witness(f, samples, seed)
    if w is not None:
        cex["increasing"] = w
    cex.update(boundary_witnesses(f, samples, seed))
    w = strict_witness(f, 50, samples, seed)
    if w is not None:
        cex["strict"] = w
    continuous = continuity_jump(f, samples, seed) <= 0.1
    if not continuous:
        cex["continuous"] = "jump above 0.1 over a 1e-3 step"
    zero_ok = not ({"zero_if", "zero_only_if"} & cex.keys())
    one_ok = not ({"one_if", "one_only_if"} & cex.keys())
    ultra = is_ultramodular_sampled(f, samples, 0.05, seed)
    if ultra.witness is not None:
        cex["ultramodular"] = ultra.witness
    ab = is_ab_ultramodular_sampled(f, 1.0, 1.0, samples, seed)
    if ab.witness is not None:
        cex["ab_ultramodular_11"] = ab.witness
    return FnPropertyFlags(
        commutative="commutative" not in cex,
        increasing="increasing" not in cex,
        zero_boundary=zero_ok,
        one_boundary=one_ok,
        strict="strict" not in cex,
        continuous=continuous,
        overlap_axioms=zero_ok and one_ok and "commutative" not in cex and "increasing" not in cex,
        ultramodular=ultra.status,
        ab_ultramodular_11=ab.status,
        counterexamples=cex,
    )
