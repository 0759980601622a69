"""Subgradient descent for interval-valued objectives with dominance archives.

Each iteration queries a subgradient oracle, collapses the interval vector to
a real search direction through the endpoint-weight scalarization, and steps
with a diminishing step size:

    x_{k+1} = x_k - alpha_k * scalarize(g_k, w, 1 - w)

Two archives track progress. The efficient set holds iterates whose values no
other archived iterate strictly dominates; the nondominated set holds the
corresponding values under the non-strict order. Pruning is deliberately
asymmetric between the two sets (strict for points, non-strict for values):
an incoming value equal to an archived one evicts the value yet leaves the
archived point in place. That asymmetry is part of the method's printed
update rules and is preserved here rather than smoothed over.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

from .interval import Interval, dominates, scalarize, strictly_dominates
from .ivf import DimensionMismatch, IntervalFunction, evaluate

__all__ = [
    "StepSchedule",
    "harmonic",
    "shifted",
    "custom",
    "ZeroDirectionPolicy",
    "SolverConfig",
    "Archive",
    "ArchiveDelta",
    "StepRecord",
    "IterationTrace",
    "OracleFailure",
    "ZeroDirectionExhausted",
    "EmptyTrace",
    "solve",
    "archive_update",
    "best_trajectory",
]

Point = tuple[float, ...]

# Condition for treating a scalarized direction as zero, per component.
ZERO_DIRECTION_TOL = 1e-12


class OracleFailure(RuntimeError):
    """The subgradient oracle was missing, raised, or returned bad shape."""


class ZeroDirectionExhausted(RuntimeError):
    """Skip policy re-queried after a zero direction and got zero again."""


class EmptyTrace(ValueError):
    """A trajectory operation was asked for on a trace with no points."""


@dataclass(frozen=True)
class StepSchedule:
    """Positive step sizes alpha_k indexed from k = 1.

    Built-ins are diminishing with divergent sum, which is what the
    convergence argument for the method needs; a custom schedule is the
    caller's responsibility. Every produced step is checked positive.
    """

    name: str
    alpha: Callable[[int], float]

    def __call__(self, k: int) -> float:
        a = self.alpha(k)
        if not a > 0.0:
            raise ValueError(f"schedule {self.name!r} produced alpha_{k} = {a}, must be positive")
        return a


def harmonic(c: float) -> StepSchedule:
    """alpha_k = c / k."""
    c = float(c)
    if c <= 0:
        raise ValueError(f"harmonic constant must be positive, got {c}")
    return StepSchedule(name=f"harmonic:{c!r}", alpha=lambda k: c / k)


def shifted(c: float, s: float) -> StepSchedule:
    """alpha_k = c / (k + s)."""
    c = float(c)
    s = float(s)
    if c <= 0 or s < 0:
        raise ValueError(f"shifted schedule needs c > 0 and s >= 0, got c={c}, s={s}")
    return StepSchedule(name=f"shifted:{c!r},{s!r}", alpha=lambda k: c / (k + s))


def custom(fn: Callable[[int], float], name: str = "custom") -> StepSchedule:
    return StepSchedule(name=name, alpha=fn)


class ZeroDirectionPolicy(Enum):
    """What to do when the scalarized subgradient vanishes.

    STOP halts the run at that iterate; the archives already contain it. A
    zero scalarized subgradient marks a stationary candidate, so stopping is
    the default. SKIP re-queries the oracle once at a perturbed point; if
    the direction is still zero the run aborts with ZeroDirectionExhausted.
    """

    STOP = "stop"
    SKIP = "skip"


@dataclass
class SolverConfig:
    """Run parameters for :func:`solve`.

    ``w`` weights the lower endpoints in the scalarization and ``1 - w`` the
    upper ones. ``perturbation`` is only consulted under the SKIP policy; it
    maps (point, iteration) to the point at which the oracle is re-queried.
    ``memoize_values`` caches objective values by iterate; off by default so
    the reference semantics stay re-evaluation.
    """

    w: float
    max_iter: int
    x0: Sequence[float]
    schedule: StepSchedule
    zero_direction_policy: ZeroDirectionPolicy = ZeroDirectionPolicy.STOP
    perturbation: Optional[Callable[[Point, int], Point]] = None
    memoize_values: bool = False

    def __post_init__(self):
        if not 0.0 <= self.w <= 1.0:
            raise ValueError(f"w must lie in [0, 1], got {self.w}")
        if self.max_iter < 0:
            raise ValueError(f"max_iter must be nonnegative, got {self.max_iter}")
        self.x0 = tuple(float(v) for v in self.x0)
        if not self.x0:
            raise ValueError("x0 must be nonempty")

    @property
    def w_prime(self) -> float:
        return 1.0 - self.w


@dataclass
class Archive:
    """Efficient iterates and their nondominated objective values."""

    efficient_set: list[Point] = field(default_factory=list)
    nondominated_set: list[Interval] = field(default_factory=list)


@dataclass(frozen=True)
class ArchiveDelta:
    """What one archive update removed and inserted."""

    removed_points: tuple[Point, ...]
    removed_values: tuple[Interval, ...]
    inserted_point: bool
    inserted_value: bool


@dataclass(frozen=True)
class StepRecord:
    """One completed iteration: the state stepped from and the step taken."""

    k: int
    x: Point
    value: Interval
    subgradient: tuple[Interval, ...]
    direction: tuple[float, ...]
    alpha: float
    delta: ArchiveDelta


@dataclass
class IterationTrace:
    """Full history of a run.

    ``points``/``values`` list every iterate visited including the final
    one, so they are one longer than ``steps`` unless the run was stopped
    by the zero-direction policy.
    """

    steps: list[StepRecord] = field(default_factory=list)
    points: list[Point] = field(default_factory=list)
    values: list[Interval] = field(default_factory=list)
    stopped_early: Optional[str] = None


def archive_update(
    archive: Archive,
    x_new: Point,
    value_new: Interval,
    value_of: Callable[[Point], Interval],
) -> tuple[Archive, ArchiveDelta]:
    """Apply the method's pruning and insertion rules for one new iterate.

    Prunes archived points whose values the new value strictly dominates and
    archived values it dominates non-strictly, then inserts the newcomer
    unless a surviving entry (strictly for points, non-strictly for values)
    dominates it. When pruning empties a set the insertion condition holds
    vacuously and the newcomer enters.

    Pure: returns a fresh archive, never touching the input one.
    """
    kept_points: list[Point] = []
    removed_points: list[Point] = []
    for x in archive.efficient_set:
        if strictly_dominates(value_new, value_of(x)):
            removed_points.append(x)
        else:
            kept_points.append(x)
    kept_values: list[Interval] = []
    removed_values: list[Interval] = []
    for a in archive.nondominated_set:
        if dominates(value_new, a):
            removed_values.append(a)
        else:
            kept_values.append(a)
    insert_point = not any(
        strictly_dominates(value_of(x), value_new) for x in kept_points
    )
    insert_value = not any(dominates(a, value_new) for a in kept_values)
    if insert_point:
        kept_points.append(x_new)
    if insert_value:
        kept_values.append(value_new)
    return (
        Archive(efficient_set=kept_points, nondominated_set=kept_values),
        ArchiveDelta(
            removed_points=tuple(removed_points),
            removed_values=tuple(removed_values),
            inserted_point=insert_point,
            inserted_value=insert_value,
        ),
    )


def _assert_archive_invariants(archive: Archive, value_of) -> None:
    values = [value_of(x) for x in archive.efficient_set]
    for i, a in enumerate(values):
        for j, b in enumerate(values):
            if i != j and strictly_dominates(a, b):
                raise AssertionError(
                    f"efficient set broke its invariant: {a.format()} strictly dominates {b.format()}"
                )
    nd = archive.nondominated_set
    for i, a in enumerate(nd):
        for j, b in enumerate(nd):
            if i != j and dominates(a, b) and a != b:
                raise AssertionError(
                    f"nondominated set broke its invariant: {a.format()} dominates {b.format()}"
                )


def solve(f: IntervalFunction, cfg: SolverConfig) -> tuple[Archive, IterationTrace]:
    """Run the subgradient method on ``f`` from ``cfg.x0``.

    ``f`` must carry a subgradient oracle. Each iteration the oracle is
    asked for an interval subgradient at the current iterate, the direction
    is the negated scalarization, and the archives absorb the new iterate
    under the dominance rules of :func:`archive_update`.

    Deterministic: identical inputs produce bit-identical traces. Set the
    environment variable ``GHOPT_DEBUG_ASSERT=1`` to re-verify the archive
    invariants after every iteration.

    Returns the final archive and the full iteration trace.
    """
    if f.subgradient_oracle is None:
        raise OracleFailure("the objective has no subgradient oracle")
    if len(cfg.x0) != f.dim:
        raise DimensionMismatch(f"x0 has length {len(cfg.x0)}, expected {f.dim}")
    debug = os.environ.get("GHOPT_DEBUG_ASSERT") == "1"

    cache: dict[Point, Interval] = {}

    def value_of(p: Point) -> Interval:
        if not cfg.memoize_values:
            return evaluate(f, p)
        if p not in cache:
            cache[p] = evaluate(f, p)
        return cache[p]

    def query_oracle(p: Point, k: int) -> tuple[Interval, ...]:
        try:
            g = tuple(f.subgradient_oracle(p))
        except Exception as exc:
            raise OracleFailure(f"oracle raised at iteration {k}, x = {p}") from exc
        if len(g) != f.dim or not all(isinstance(c, Interval) for c in g):
            raise OracleFailure(
                f"oracle returned a bad subgradient at iteration {k}: {g!r}"
            )
        return g

    x = cfg.x0
    value = value_of(x)
    archive = Archive(efficient_set=[x], nondominated_set=[value])
    trace = IterationTrace(points=[x], values=[value])

    for k in range(1, cfg.max_iter + 1):
        g = query_oracle(x, k)
        direction = scalarize(g, cfg.w, cfg.w_prime)
        if all(abs(d) <= ZERO_DIRECTION_TOL for d in direction):
            if cfg.zero_direction_policy is ZeroDirectionPolicy.STOP:
                trace.stopped_early = f"zero scalarized direction at iteration {k}"
                break
            probe = cfg.perturbation(x, k) if cfg.perturbation is not None else x
            g = query_oracle(tuple(float(v) for v in probe), k)
            direction = scalarize(g, cfg.w, cfg.w_prime)
            if all(abs(d) <= ZERO_DIRECTION_TOL for d in direction):
                raise ZeroDirectionExhausted(
                    f"scalarized direction still zero after re-query at iteration {k}"
                )
        alpha = cfg.schedule(k)
        x_next = tuple(x[i] - alpha * direction[i] for i in range(f.dim))
        value_next = value_of(x_next)
        archive, delta = archive_update(archive, x_next, value_next, value_of)
        trace.steps.append(
            StepRecord(
                k=k,
                x=x,
                value=value,
                subgradient=g,
                direction=direction,
                alpha=alpha,
                delta=delta,
            )
        )
        x, value = x_next, value_next
        trace.points.append(x)
        trace.values.append(value)
        if debug:
            _assert_archive_invariants(archive, value_of)
    return archive, trace


def best_trajectory(trace: IterationTrace) -> list[tuple[int, Interval]]:
    """Greedy dominance-improving subsequence of the visited values.

    Walks the iterates in order, retaining each whose value dominates
    (non-strictly) the last retained one. The result is monotone under the
    dominance order by construction and always starts at the first iterate.
    Indices are 1-based iterate numbers.
    """
    if not trace.points:
        raise EmptyTrace("trace has no points")
    out = [(1, trace.values[0])]
    for idx in range(1, len(trace.values)):
        if dominates(trace.values[idx], out[-1][1]):
            out.append((idx + 1, trace.values[idx]))
    return out
