"""Interval-valued functions: evaluation, numeric gH-derivatives, diagnostics.

An interval-valued function (IVF) maps a real vector to an interval and is
represented by its two endpoint functions. The numeric derivative machinery
builds one-sided generalized-Hukuhara difference quotients and sharpens them
with Richardson extrapolation; the checkers probe the subgradient inequality,
endpoint convexity, and the sampled part of the efficient-direction property.

Everything here treats points as tuples of floats and never mutates inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .interval import (
    Interval,
    dominates,
    gh_sub,
    interval_dot,
    scalar_mul,
)

__all__ = [
    "IntervalFunction",
    "GHPartial",
    "SubgradientCheckReport",
    "ConvexityWitness",
    "EndpointOrderViolation",
    "DimensionMismatch",
    "NotGHDifferentiableAt",
    "evaluate",
    "numeric_gh_partial",
    "numeric_gh_gradient",
    "check_subgradient",
    "check_convexity",
    "check_efficient_direction",
]

Point = tuple[float, ...]


class EndpointOrderViolation(ValueError):
    """The lower endpoint function exceeded the upper one at some point."""


class DimensionMismatch(ValueError):
    """A point's length does not match the function's dimension."""


class NotGHDifferentiableAt(ArithmeticError):
    """Left and right gH-quotients disagree along one coordinate.

    The offending coordinate index is available as ``index``.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"left and right quotients disagree at coordinate {index}")


class IntervalFunction:
    """An IVF given by endpoint functions and an optional subgradient oracle.

    Args:
        dim: dimension of the domain, at least 1.
        f_lower: lower endpoint, a real function of a point tuple.
        f_upper: upper endpoint, same signature.
        subgradient_oracle: optional map from a point to a tuple of
            Interval, one per coordinate. The solver requires it; the
            numeric machinery here does not.

    The endpoint functions must be pure: evaluation order is not specified
    and checkers may evaluate the same point repeatedly.
    """

    __slots__ = ("dim", "f_lower", "f_upper", "subgradient_oracle")

    def __init__(
        self,
        dim: int,
        f_lower: Callable[[Point], float],
        f_upper: Callable[[Point], float],
        subgradient_oracle: Optional[Callable[[Point], tuple[Interval, ...]]] = None,
    ):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        self.dim = dim
        self.f_lower = f_lower
        self.f_upper = f_upper
        self.subgradient_oracle = subgradient_oracle

    def __call__(self, x: Sequence[float]) -> Interval:
        return evaluate(self, x)


def evaluate(f: IntervalFunction, x: Sequence[float]) -> Interval:
    """Evaluate ``f`` at ``x`` and enforce endpoint order."""
    if len(x) != f.dim:
        raise DimensionMismatch(f"point has length {len(x)}, expected {f.dim}")
    x = tuple(float(v) for v in x)
    lo = f.f_lower(x)
    hi = f.f_upper(x)
    if lo > hi:
        raise EndpointOrderViolation(f"f_lower(x) = {lo} > f_upper(x) = {hi} at x = {x}")
    return Interval(lo, hi)


@dataclass(frozen=True)
class GHPartial:
    """One coordinate's gH-difference quotients.

    ``two_sided`` is present only when the left and right refined quotients
    agree within the requested tolerance on both endpoints; its value is the
    endpoint-wise average of the two sides.
    """

    left: Interval
    right: Interval
    two_sided: Optional[Interval] = None


def _sorted_interval(a: float, b: float) -> Interval:
    if a <= b:
        return Interval(a, b)
    return Interval(b, a)


def _one_sided_quotient(
    f: IntervalFunction, x: Point, i: int, h: float, side: int, base: Interval
) -> Interval:
    shifted = list(x)
    shifted[i] = x[i] + side * h
    return scalar_mul(1.0 / (side * h), gh_sub(evaluate(f, tuple(shifted)), base))


def _refined_quotient(
    f: IntervalFunction,
    x: Point,
    i: int,
    h: float,
    side: int,
    base: Interval,
    tol: float,
    max_halvings: int,
) -> Interval:
    # First-order quotients carry an O(h) error term, so the two-point
    # Richardson combination 2*Q(h/2) - Q(h) cancels it. Halve until two
    # successive extrapolations agree, keeping the best pair seen in case
    # float noise prevents the tolerance from being reached.
    prev_q = _one_sided_quotient(f, x, i, h, side, base)
    step = h / 2.0
    q = _one_sided_quotient(f, x, i, step, side, base)
    prev_r = None
    best = None
    best_err = float("inf")
    for _ in range(max_halvings):
        r = _sorted_interval(2.0 * q.lo - prev_q.lo, 2.0 * q.hi - prev_q.hi)
        if prev_r is not None:
            err = max(abs(r.lo - prev_r.lo), abs(r.hi - prev_r.hi))
            if err < best_err:
                best_err = err
                best = r
            if err <= tol:
                break
        prev_r = r
        prev_q = q
        step /= 2.0
        q = _one_sided_quotient(f, x, i, step, side, base)
    return best if best is not None else prev_r


def numeric_gh_partial(
    f: IntervalFunction,
    x: Sequence[float],
    i: int,
    h: float = 1e-2,
    tol: float = 1e-6,
    max_halvings: int = 30,
) -> GHPartial:
    """Numeric gH-partial derivative of ``f`` along coordinate ``i``.

    Builds the one-sided difference quotients ``(1/(+-h)) * (f(x +- h e_i)
    gh- f(x))``, refines each side by step-halving Richardson extrapolation,
    and reports a two-sided value when the sides agree within ``tol`` per
    endpoint.

    Args:
        f: the interval-valued function.
        x: evaluation point.
        i: coordinate index, 0-based.
        h: initial step, must be positive.
        tol: per-endpoint agreement tolerance, both for accepting the
            refinement and for granting a two-sided value.
        max_halvings: refinement budget per side.
    """
    if len(x) != f.dim:
        raise DimensionMismatch(f"point has length {len(x)}, expected {f.dim}")
    if not 0 <= i < f.dim:
        raise DimensionMismatch(f"coordinate {i} out of range for dimension {f.dim}")
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    x = tuple(float(v) for v in x)
    base = evaluate(f, x)
    right = _refined_quotient(f, x, i, h, +1, base, tol, max_halvings)
    left = _refined_quotient(f, x, i, h, -1, base, tol, max_halvings)
    two_sided = None
    if abs(left.lo - right.lo) <= tol and abs(left.hi - right.hi) <= tol:
        two_sided = _sorted_interval(
            0.5 * (left.lo + right.lo), 0.5 * (left.hi + right.hi)
        )
    return GHPartial(left=left, right=right, two_sided=two_sided)


def numeric_gh_gradient(
    f: IntervalFunction,
    x: Sequence[float],
    h: float = 1e-2,
    tol: float = 1e-6,
) -> tuple[Interval, ...]:
    """Vector of two-sided gH-partials; raises where a coordinate has none."""
    out = []
    for i in range(f.dim):
        part = numeric_gh_partial(f, x, i, h=h, tol=tol)
        if part.two_sided is None:
            raise NotGHDifferentiableAt(i)
        out.append(part.two_sided)
    return tuple(out)


@dataclass
class SubgradientCheckReport:
    """Result of sampling the subgradient inequality at one base point.

    A candidate subgradient must satisfy, for every sample x,

        (x - x_bar) . candidate  precedes-or-equals  f(x) gh- f(x_bar)

    where the left side is the interval dot product and the comparison is
    the componentwise-endpoint dominance order with a small slack.
    """

    point: Point
    candidate: tuple[Interval, ...]
    violations: list[tuple[Point, Interval, Interval]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        lines = [
            f"subgradient check at {self.point}",
            f"candidate: {' '.join(c.format() for c in self.candidate)}",
            f"result: {'passed' if self.passed else f'{len(self.violations)} violation(s)'}",
        ]
        for x, lhs, rhs in self.violations:
            lines.append(f"  sample {x}: lhs {lhs.format()} not below rhs {rhs.format()}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "point": list(self.point),
            "candidate": [[c.lo, c.hi] for c in self.candidate],
            "violations": [
                {"sample": list(x), "lhs": [lhs.lo, lhs.hi], "rhs": [rhs.lo, rhs.hi]}
                for x, lhs, rhs in self.violations
            ],
            "passed": self.passed,
        }


def check_subgradient(
    f: IntervalFunction,
    x_bar: Sequence[float],
    candidate: Sequence[Interval],
    samples: Sequence[Sequence[float]],
    slack: float = 1e-9,
) -> SubgradientCheckReport:
    """Sample the subgradient inequality for ``candidate`` at ``x_bar``.

    Args:
        f: the interval-valued function.
        x_bar: base point.
        candidate: interval vector to test, one component per coordinate.
        samples: comparison points; each is checked independently.
        slack: tolerance on the dominance comparison so that float noise at
            near-equality does not count as a violation.

    Returns:
        A report listing every violating sample with both inequality sides.
    """
    x_bar = tuple(float(v) for v in x_bar)
    if len(x_bar) != f.dim:
        raise DimensionMismatch(f"point has length {len(x_bar)}, expected {f.dim}")
    if len(candidate) != f.dim:
        raise DimensionMismatch(f"candidate has length {len(candidate)}, expected {f.dim}")
    base = evaluate(f, x_bar)
    report = SubgradientCheckReport(point=x_bar, candidate=tuple(candidate))
    for sample in samples:
        x = tuple(float(v) for v in sample)
        if len(x) != f.dim:
            raise DimensionMismatch(f"sample has length {len(x)}, expected {f.dim}")
        offset = tuple(x[j] - x_bar[j] for j in range(f.dim))
        lhs = interval_dot(offset, candidate)
        rhs = gh_sub(evaluate(f, x), base)
        if not (lhs.lo <= rhs.lo + slack and lhs.hi <= rhs.hi + slack):
            report.violations.append((x, lhs, rhs))
    return report


@dataclass(frozen=True)
class ConvexityWitness:
    """A sampled segment on which an endpoint function is above its chord."""

    x1: Point
    x2: Point
    lam: float
    endpoint: str
    gap: float
    trial: int


def check_convexity(
    f: IntervalFunction,
    domain_box: tuple[Sequence[float], Sequence[float]],
    trials: int,
    rng_seed: int,
    tol: float = 1e-9,
) -> tuple[bool, Optional[ConvexityWitness]]:
    """Sample convexity of both endpoint functions over a box.

    An IVF is convex exactly when both endpoint functions are convex, so
    each random segment is tested against the chord of f_lower and of
    f_upper separately. Returns ``(False, witness)`` on the first violation
    whose gap exceeds ``tol``, else ``(True, None)``.

    The sampling is deterministic in ``rng_seed``: per trial the generator
    draws x1 componentwise, then x2 componentwise, then the mixing weight.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    box_lo, box_hi = domain_box
    if len(box_lo) != f.dim or len(box_hi) != f.dim:
        raise DimensionMismatch(f"box must have dimension {f.dim}")
    rng = random.Random(rng_seed)
    for trial in range(trials):
        x1 = tuple(rng.uniform(box_lo[j], box_hi[j]) for j in range(f.dim))
        x2 = tuple(rng.uniform(box_lo[j], box_hi[j]) for j in range(f.dim))
        lam = rng.random()
        mid = tuple(lam * x1[j] + (1.0 - lam) * x2[j] for j in range(f.dim))
        for name, fn in (("lower", f.f_lower), ("upper", f.f_upper)):
            gap = fn(mid) - (lam * fn(x1) + (1.0 - lam) * fn(x2))
            if gap > tol:
                return False, ConvexityWitness(x1, x2, lam, name, gap, trial)
    return True, None


def check_efficient_direction(
    f: IntervalFunction,
    x_bar: Sequence[float],
    d: Sequence[float],
    delta: float,
    samples: int = 100,
) -> bool:
    """Sample the non-dominance clause of the efficient-direction property.

    True when f(x_bar) does not dominate f(x_bar + lam*d) for every sampled
    lam in the open interval (0, delta). Only this clause is sampled; the
    existential part of the property (a concrete efficient point along the
    ray) is not decidable by finite sampling.

    A zero direction fails immediately since every value dominates itself.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    x_bar = tuple(float(v) for v in x_bar)
    d = tuple(float(v) for v in d)
    if len(d) != f.dim:
        raise DimensionMismatch(f"direction has length {len(d)}, expected {f.dim}")
    base = evaluate(f, x_bar)
    for j in range(1, samples + 1):
        lam = delta * j / (samples + 1)
        stepped = tuple(x_bar[i] + lam * d[i] for i in range(f.dim))
        if dominates(base, evaluate(f, stepped)):
            return False
    return True
