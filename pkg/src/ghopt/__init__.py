"""Interval-valued optimization: gH interval arithmetic, interval-valued
functions with numeric gH-derivatives, a dominance-archive subgradient
solver, and an interval lasso with a scikit-learn style estimator."""

from .interval import (
    ZERO,
    DivisionByIntervalContainingZero,
    Dominance,
    Interval,
    InvalidWeights,
    LengthMismatch,
    add,
    classify,
    div,
    dominates,
    gh_sub,
    interval_dot,
    moore_sub,
    mul,
    norm,
    scalar_mul,
    scalarize,
    special_mul,
    strictly_dominates,
    vec_op,
)
from .ivf import (
    ConvexityWitness,
    DimensionMismatch,
    EndpointOrderViolation,
    GHPartial,
    IntervalFunction,
    NotGHDifferentiableAt,
    SubgradientCheckReport,
    check_convexity,
    check_efficient_direction,
    check_subgradient,
    evaluate,
    numeric_gh_gradient,
    numeric_gh_partial,
)
from .solver import (
    Archive,
    ArchiveDelta,
    EmptyTrace,
    IterationTrace,
    OracleFailure,
    SolverConfig,
    StepRecord,
    StepSchedule,
    ZeroDirectionExhausted,
    ZeroDirectionPolicy,
    archive_update,
    best_trajectory,
    custom,
    harmonic,
    shifted,
    solve,
)
from .demo import DEMO_W, DEMO_X0, demo_function, demo_oracle, run_demo
from .lasso import (
    DatasetFormatError,
    LassoDataset,
    LassoFit,
    PredictionReport,
    PredictionRow,
    analytic_subgradient,
    error_e1,
    error_e2,
    error_function,
    error_total,
    fit,
    hypothesis,
    load_demo_dataset,
    predict_report,
    tuning_parameter,
)
from .estimator import IntervalLassoRegressor

__version__ = "0.1.0"

__all__ = [
    "ZERO",
    "Interval",
    "Dominance",
    "DivisionByIntervalContainingZero",
    "InvalidWeights",
    "LengthMismatch",
    "add",
    "moore_sub",
    "mul",
    "scalar_mul",
    "div",
    "gh_sub",
    "special_mul",
    "norm",
    "dominates",
    "strictly_dominates",
    "classify",
    "vec_op",
    "scalarize",
    "interval_dot",
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
    "Archive",
    "ArchiveDelta",
    "StepRecord",
    "StepSchedule",
    "IterationTrace",
    "SolverConfig",
    "ZeroDirectionPolicy",
    "OracleFailure",
    "ZeroDirectionExhausted",
    "EmptyTrace",
    "archive_update",
    "best_trajectory",
    "solve",
    "harmonic",
    "shifted",
    "custom",
    "DEMO_W",
    "DEMO_X0",
    "demo_function",
    "demo_oracle",
    "run_demo",
    "LassoDataset",
    "LassoFit",
    "DatasetFormatError",
    "PredictionRow",
    "PredictionReport",
    "tuning_parameter",
    "hypothesis",
    "error_e1",
    "error_e2",
    "error_total",
    "analytic_subgradient",
    "error_function",
    "fit",
    "predict_report",
    "load_demo_dataset",
    "IntervalLassoRegressor",
    "__version__",
]
