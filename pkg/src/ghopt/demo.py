"""Built-in one-dimensional demonstration problem for the solver.

The objective is the interval-valued function with endpoints

    lower(x) = 3 + |x|
    upper(x) = 7              for |x| <= 1
    upper(x) = 5 + 2|x|       for |x| > 1

Both endpoint pieces meet at |x| = 1, the function is convex, and x = 0 is
its only efficient point with value [3, 7]. The bundled oracle returns the
exact gradient on the smooth pieces; at the three kinks (-1, 0, 1) it picks
the midpoint of the one-sided derivative brackets, which is a valid
subgradient choice there.

Starting from x0 = -1 with harmonic steps and w = 2/3 the first two iterates
land on 1/6 and then 0 (up to float rounding), at which point the archives
collapse to the efficient point.
"""

from __future__ import annotations

from .interval import Interval
from .ivf import IntervalFunction
from .solver import Archive, IterationTrace, SolverConfig, harmonic, solve

__all__ = ["demo_function", "demo_oracle", "run_demo", "DEMO_X0", "DEMO_W"]

DEMO_X0 = -1.0
DEMO_W = 2.0 / 3.0


def _lower(x) -> float:
    return 3.0 + abs(x[0])


def _upper(x) -> float:
    t = abs(x[0])
    if t <= 1.0:
        return 7.0
    return 5.0 + 2.0 * t


def demo_oracle(x) -> tuple[Interval, ...]:
    """Exact subgradient choice at every point of the demo objective."""
    v = x[0]
    if v == -1.0:
        return (Interval(-1.5, -0.5),)
    if v == 0.0:
        return (Interval(-0.5, 0.5),)
    if v == 1.0:
        return (Interval(0.5, 1.5),)
    if v < -1.0:
        return (Interval(-2.0, -1.0),)
    if v < 0.0:
        return (Interval(-1.0, 0.0),)
    if v < 1.0:
        return (Interval(0.0, 1.0),)
    return (Interval(1.0, 2.0),)


def demo_function(with_oracle: bool = True) -> IntervalFunction:
    """The demonstration objective as an IntervalFunction."""
    return IntervalFunction(
        dim=1,
        f_lower=_lower,
        f_upper=_upper,
        subgradient_oracle=demo_oracle if with_oracle else None,
    )


def run_demo(w: float = DEMO_W, m: int = 2) -> tuple[Archive, IterationTrace]:
    """Run the solver on the demo problem with harmonic steps alpha_k = 1/k."""
    cfg = SolverConfig(w=w, max_iter=m, x0=(DEMO_X0,), schedule=harmonic(1.0))
    return solve(demo_function(), cfg)
