"""Closed subintervals of [0, 1] and the scalar functionals defined on them.

Every functional comes in two flavours: a scalar one taking an
:class:`Interval`, and a vectorized one taking endpoint arrays.  The array
versions are what the constructions and the property suite use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ENDPOINT_TOL = 1e-12


class IntervalError(ValueError):
    """Raised when endpoints do not describe a subinterval of [0, 1]."""


def _clamp_endpoint(v: float, name: str) -> float:
    if not np.isfinite(v):
        raise IntervalError(f"{name} endpoint is not finite: {v!r}")
    if v < -ENDPOINT_TOL or v > 1.0 + ENDPOINT_TOL:
        raise IntervalError(f"{name} endpoint {v!r} outside [0,1]")
    return min(max(float(v), 0.0), 1.0)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with 0 <= lo <= hi <= 1.

    Endpoints within 1e-12 outside the unit interval are clamped.  Reversed
    endpoints are rejected unless the gap is below the same tolerance, in which
    case the upper endpoint is raised to the lower one (never swapped).
    """

    lo: float
    hi: float

    def __post_init__(self):
        lo = _clamp_endpoint(self.lo, "lower")
        hi = _clamp_endpoint(self.hi, "upper")
        if lo > hi + ENDPOINT_TOL:
            raise IntervalError(f"lower endpoint {lo!r} exceeds upper endpoint {hi!r}")
        hi = max(hi, lo)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.hi == self.lo

    def k_alpha(self, alpha: float) -> float:
        return k_alpha_point(self, alpha)

    def contains(self, other: "Interval") -> bool:
        """True when ``other`` is a subset of this interval."""
        return self.lo <= other.lo and other.hi <= self.hi

    def isclose(self, other: "Interval", tol: float = 1e-12) -> bool:
        return moore_distance(self, other) <= tol

    def as_tuple(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def format(self, digits: int | None = 6) -> str:
        if digits is None:
            return f"[{self.lo!r}, {self.hi!r}]"
        return f"[{self.lo:.{digits}f}, {self.hi:.{digits}f}]"

    def __str__(self) -> str:
        return self.format()

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)


def make_interval(lo: float, hi: float) -> Interval:
    return Interval(lo, hi)


def parse_interval(text: str) -> Interval:
    """Parse the ``"lo,hi"`` text form."""
    parts = text.strip().strip("[]").split(",")
    if len(parts) != 2:
        raise IntervalError(f"expected 'lo,hi', got {text!r}")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError as exc:
        raise IntervalError(f"non-numeric endpoint in {text!r}") from exc
    return Interval(lo, hi)


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha={alpha!r} outside [0,1]")


def k_alpha_point(X: Interval, alpha: float) -> float:
    _check_alpha(alpha)
    return X.lo + alpha * (X.hi - X.lo)


def from_kalpha_width(c: float, w: float, alpha: float) -> Interval:
    """Rebuild the interval whose K_alpha value is ``c`` and width is ``w``."""
    _check_alpha(alpha)
    lo = c - alpha * w
    hi = c + (1.0 - alpha) * w
    if w < -1e-9 or lo < -1e-9 or hi > 1.0 + 1e-9:
        raise IntervalError(f"(c={c!r}, w={w!r}, alpha={alpha!r}) leaves [0,1]")
    return Interval(min(max(lo, 0.0), 1.0), min(max(hi, 0.0), 1.0))


def interval_product(X: Interval, Y: Interval) -> Interval:
    return Interval(X.lo * Y.lo, X.hi * Y.hi)


def moore_distance(X: Interval, Y: Interval) -> float:
    return max(abs(X.lo - Y.lo), abs(X.hi - Y.hi))


def d_alpha(c, alpha: float):
    """Largest width of an interval whose K_alpha value is ``c``.

    Uses r/0 = 1 for the degenerate alpha in {0, 1}.  Accepts arrays.
    """
    c = np.asarray(c, dtype=float)
    if alpha == 0.0:
        left = np.ones_like(c)
    else:
        with np.errstate(over="ignore"):  # subnormal alpha gives inf, dropped by the min
            left = c / alpha
    if alpha == 1.0:
        right = np.ones_like(c)
    else:
        right = (1.0 - c) / (1.0 - alpha)
    out = np.minimum(left, right)
    return float(out) if out.ndim == 0 else out


def lambda_alpha_arrays(lo, hi, alpha: float):
    """Relative width w / d_alpha(K_alpha) with the 0/0 = 1 convention."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    w = hi - lo
    d = np.asarray(d_alpha(lo + alpha * w, alpha))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(d > 0, w / np.where(d > 0, d, 1.0), 1.0)
    out = np.clip(ratio, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def lambda_alpha(X: Interval, alpha: float) -> float:
    _check_alpha(alpha)
    return float(lambda_alpha_arrays(X.lo, X.hi, alpha))


def k_alpha_arrays(lo, hi, alpha: float):
    return lo + alpha * (hi - lo)


def snap_unit(a):
    """Snap values within 1e-12 of 0 or 1 onto the bound, clip the rest."""
    a = np.clip(np.asarray(a, dtype=float), 0.0, 1.0)
    a = np.where(a < ENDPOINT_TOL, 0.0, a)
    return np.where(a > 1.0 - ENDPOINT_TOL, 1.0, a)
