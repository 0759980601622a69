"""Compact interval arithmetic with the generalized Hukuhara difference.

An :class:`Interval` is a closed bounded set ``[lo, hi]`` of reals. All
operations are pure and return fresh values; nothing here mutates. Interval
vectors are plain tuples of :class:`Interval`, with helpers that validate
lengths.

Endpoints are double-precision floats with no outward rounding. Sums reduce
strictly left to right so that repeated runs produce bit-identical results.
"""

from __future__ import annotations

import enum
import math
from typing import Callable, Sequence

__all__ = [
    "Interval",
    "IntervalVector",
    "Dominance",
    "DivisionByIntervalContainingZero",
    "LengthMismatch",
    "InvalidWeights",
    "ZERO",
    "add",
    "moore_sub",
    "mul",
    "scalar_mul",
    "div",
    "gh_sub",
    "special_mul",
    "classify",
    "dominates",
    "strictly_dominates",
    "norm",
    "vec_op",
    "scalarize",
    "interval_dot",
]


class DivisionByIntervalContainingZero(ZeroDivisionError):
    """Division by an interval whose hull contains zero."""


class LengthMismatch(ValueError):
    """Two interval vectors (or a point and a vector) differ in length."""


class InvalidWeights(ValueError):
    """Scalarization weights are not a convex pair from [0, 1]."""


class Interval:
    """Closed interval ``[lo, hi]`` with finite endpoints and ``lo <= hi``.

    Construction with ``lo > hi`` is a hard error rather than a silent swap;
    auto-swapping would mask bugs in the caller. Non-finite endpoints are
    rejected because the dominance relations below are undefined for them.
    """

    __slots__ = ("_lo", "_hi")

    def __init__(self, lo: float, hi: float):
        lo = float(lo)
        hi = float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"lower endpoint exceeds upper: [{lo}, {hi}]")
        self._lo = lo
        self._hi = hi

    @property
    def lo(self) -> float:
        return self._lo

    @property
    def hi(self) -> float:
        return self._hi

    @property
    def width(self) -> float:
        return self._hi - self._lo

    def is_degenerate(self) -> bool:
        """True when the interval is a single real number."""
        return self._lo == self._hi

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self._lo == other._lo and self._hi == other._hi

    def __hash__(self):
        return hash((self._lo, self._hi))

    def __repr__(self):
        return f"Interval({self._lo!r}, {self._hi!r})"

    def format(self, precision: int | None = None) -> str:
        """Render as ``[lo, hi]``.

        With ``precision=None`` endpoints use shortest round-trip formatting
        (17 significant digits suffice to reparse exactly); otherwise fixed
        decimal places.
        """
        if precision is None:
            return f"[{self._lo!r}, {self._hi!r}]"
        return f"[{self._lo:.{precision}f}, {self._hi:.{precision}f}]"

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse ``"[lo, hi]"`` or ``"lo,hi"``."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"cannot parse an interval from {text!r}")
        return cls(float(parts[0]), float(parts[1]))


IntervalVector = Sequence[Interval]

ZERO = Interval(0.0, 0.0)


def add(a: Interval, b: Interval) -> Interval:
    """Moore addition: endpoints add."""
    return Interval(a.lo + b.lo, a.hi + b.hi)


def moore_sub(a: Interval, b: Interval) -> Interval:
    """Moore subtraction [a.lo - b.hi, a.hi - b.lo]; gives no additive inverse."""
    return Interval(a.lo - b.hi, a.hi - b.lo)


def mul(a: Interval, b: Interval) -> Interval:
    """Moore product: hull of the four endpoint products."""
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(products), max(products))


def scalar_mul(lam: float, a: Interval) -> Interval:
    """Product with a real scalar; negative scalars flip the endpoints."""
    lam = float(lam)
    if lam >= 0.0:
        return Interval(lam * a.lo, lam * a.hi)
    return Interval(lam * a.hi, lam * a.lo)


def div(a: Interval, b: Interval) -> Interval:
    """Moore quotient, defined only when 0 is outside the divisor."""
    if b.lo <= 0.0 <= b.hi:
        raise DivisionByIntervalContainingZero(
            f"divisor {b.format()} contains zero"
        )
    quotients = (a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi)
    return Interval(min(quotients), max(quotients))


def gh_sub(a: Interval, b: Interval) -> Interval:
    """Generalized Hukuhara difference.

    Sorted pair of the per-endpoint differences, so ``gh_sub(a, a)`` is the
    degenerate zero interval for every ``a`` (unlike :func:`moore_sub`).
    """
    d_lo = a.lo - b.lo
    d_hi = a.hi - b.hi
    if d_lo <= d_hi:
        return Interval(d_lo, d_hi)
    return Interval(d_hi, d_lo)


def special_mul(a: Interval, b: Interval) -> Interval:
    """Product from the two same-side endpoint products only.

    Unlike the Moore product this makes every interval square nonnegative:
    ``special_mul(a, a).lo >= 0``.
    """
    p = a.lo * b.lo
    q = a.hi * b.hi
    if p <= q:
        return Interval(p, q)
    return Interval(q, p)


class Dominance(enum.Enum):
    """Six-way classification of an ordered interval pair.

    DOMINATES and IS_DOMINATED name non-strict dominance without strictness
    or equality. For compact intervals that combination cannot occur (a
    non-strict pair that is not equal always has a strict endpoint), so
    :func:`classify` never returns them; they exist to make the vocabulary
    of the relation total.
    """

    DOMINATES_STRICTLY = "dominates_strictly"
    DOMINATES = "dominates"
    EQUAL = "equal"
    IS_DOMINATED = "is_dominated"
    IS_DOMINATED_STRICTLY = "is_dominated_strictly"
    INCOMPARABLE = "incomparable"


def dominates(a: Interval, b: Interval) -> bool:
    """Non-strict dominance: both endpoints of ``a`` are <= those of ``b``."""
    return a.lo <= b.lo and a.hi <= b.hi


def strictly_dominates(a: Interval, b: Interval) -> bool:
    """Dominance with at least one strict endpoint inequality."""
    return dominates(a, b) and (a.lo < b.lo or a.hi < b.hi)


def classify(a: Interval, b: Interval) -> Dominance:
    """Classify the ordered pair (a, b) under the dominance partial order.

    ``classify(a, b)`` and ``classify(b, a)`` are mirror images, and exactly
    one classification applies to each pair.
    """
    if a == b:
        return Dominance.EQUAL
    if dominates(a, b):
        return Dominance.DOMINATES_STRICTLY
    if dominates(b, a):
        return Dominance.IS_DOMINATED_STRICTLY
    return Dominance.INCOMPARABLE


def norm(a: Interval) -> float:
    """Interval norm: the larger absolute endpoint."""
    return max(abs(a.lo), abs(a.hi))


def _check_lengths(a, b) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"length {len(a)} vs {len(b)}")


def vec_op(
    a: IntervalVector,
    b: IntervalVector,
    op: Callable[[Interval, Interval], Interval],
) -> tuple[Interval, ...]:
    """Apply a binary interval operation componentwise to equal-length vectors."""
    _check_lengths(a, b)
    return tuple(op(x, y) for x, y in zip(a, b))


def scalarize(vec: IntervalVector, w: float, w_prime: float) -> tuple[float, ...]:
    """Collapse an interval vector to reals: ``w*lo + w_prime*hi`` per component.

    The weights must lie in [0, 1] and sum to 1 within 1e-12. The negated
    result of scalarizing a subgradient is the solver's search direction.
    """
    if not (0.0 <= w <= 1.0 and 0.0 <= w_prime <= 1.0):
        raise InvalidWeights(f"weights must lie in [0, 1], got {w}, {w_prime}")
    if abs(w + w_prime - 1.0) > 1e-12:
        raise InvalidWeights(f"weights must sum to 1, got {w} + {w_prime}")
    return tuple(w * c.lo + w_prime * c.hi for c in vec)


def interval_dot(xs: Sequence[float], vec: IntervalVector) -> Interval:
    """Sum of scalar-interval products, reduced strictly left to right."""
    _check_lengths(xs, vec)
    acc = ZERO
    for x, c in zip(xs, vec):
        acc = add(acc, scalar_mul(x, c))
    return acc
