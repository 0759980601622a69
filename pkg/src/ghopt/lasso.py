"""Interval-valued l1-penalized regression.

The model couples interval features to an interval response through real
coefficients: the prediction for a row of interval features X is the
interval combination ``sum_i beta_i * Xated_i``. Training minimizes an
interval-valued error

    error_total = error_e1 + error_e2

where ``error_e1`` is half the sum of special-squared gH-residuals and
``error_e2`` multiplies an interval tuning parameter by the l1 norm of the
coefficients. The closed-form interval subgradient of that objective drives
the dominance-archive solver; the fitted coefficients are the efficient-set
element with the best scalarized error.

All reductions over samples and coordinates run strictly left to right so
repeated fits are bit-identical.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional, Sequence, TextIO

from .interval import (
    ZERO,
    Interval,
    add,
    gh_sub,
    scalar_mul,
    special_mul,
)
from .ivf import DimensionMismatch, IntervalFunction
from .solver import Archive, IterationTrace, SolverConfig, solve

__all__ = [
    "DatasetFormatError",
    "LassoDataset",
    "LassoFit",
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
]

DEMO_DATASET_RESOURCE = "interval_regression_demo.csv"


class DatasetFormatError(ValueError):
    """A dataset file or table does not match the expected layout."""


def tuning_parameter(lo: float, hi: float) -> Interval:
    """Validated interval tuning parameter; both endpoints must be >= 0."""
    if float(lo) < 0.0:
        raise ValueError(f"tuning parameter endpoints must be nonnegative, got lo = {lo}")
    return Interval(lo, hi)


def _check_penalty(penalty: Interval) -> None:
    if penalty.lo < 0.0:
        raise ValueError(
            f"tuning parameter endpoints must be nonnegative, got {penalty.format()}"
        )


class LassoDataset:
    """Immutable collection of (interval features, interval response) pairs."""

    __slots__ = ("samples",)

    def __init__(self, samples: Iterable[tuple[Sequence[Interval], Interval]]):
        packed = []
        width = None
        for features, response in samples:
            features = tuple(features)
            if width is None:
                width = len(features)
                if width < 1:
                    raise DatasetFormatError("samples need at least one feature")
            elif len(features) != width:
                raise DatasetFormatError(
                    f"inconsistent feature counts: {len(features)} vs {width}"
                )
            packed.append((features, response))
        if not packed:
            raise DatasetFormatError("dataset needs at least one sample")
        self.samples = tuple(packed)

    @property
    def feature_dim(self) -> int:
        return len(self.samples[0][0])

    @property
    def sample_count(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __len__(self):
        return len(self.samples)

    @classmethod
    def from_csv_text(cls, text: str) -> "LassoDataset":
        """Parse the canonical CSV layout.

        The header must read ``x1_lo,x1_hi,...,xl_lo,xl_hi,y_lo,y_hi``, one
        sample per row, so a table with l features has 2l+2 columns.
        """
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetFormatError("empty dataset file") from None
        columns = len(header)
        if columns < 4 or columns % 2 != 0:
            raise DatasetFormatError(
                f"expected 2l+2 columns for l >= 1 features, got {columns}"
            )
        l = (columns - 2) // 2
        expected = [f"x{i}_{side}" for i in range(1, l + 1) for side in ("lo", "hi")]
        expected += ["y_lo", "y_hi"]
        if [h.strip() for h in header] != expected:
            raise DatasetFormatError(
                f"bad header: expected {','.join(expected)}, got {','.join(header)}"
            )
        samples = []
        for row_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != columns:
                raise DatasetFormatError(
                    f"row {row_number}: expected 2l+2 = {columns} columns, got {len(row)}"
                )
            try:
                values = [float(cell) for cell in row]
            except ValueError as exc:
                raise DatasetFormatError(f"row {row_number}: {exc}") from None
            try:
                features = tuple(
                    Interval(values[2 * i], values[2 * i + 1]) for i in range(l)
                )
                response = Interval(values[2 * l], values[2 * l + 1])
            except ValueError as exc:
                raise DatasetFormatError(f"row {row_number}: {exc}") from None
            samples.append((features, response))
        return cls(samples)

    @classmethod
    def from_csv(cls, path) -> "LassoDataset":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_csv_text(fh.read())


def load_demo_dataset() -> LassoDataset:
    """The bundled 12-sample, 2-feature interval regression table."""
    text = (
        resources.files("ghopt").joinpath("data").joinpath(DEMO_DATASET_RESOURCE).read_text()
    )
    return LassoDataset.from_csv_text(text)


def hypothesis(features: Sequence[Interval], beta: Sequence[float]) -> Interval:
    """Interval prediction: left-to-right sum of beta_i times feature i."""
    if len(beta) != len(features):
        raise DimensionMismatch(
            f"coefficients have length {len(beta)}, features {len(features)}"
        )
    acc = ZERO
    for b, x in zip(beta, features):
        acc = add(acc, scalar_mul(b, x))
    return acc


def _residuals(ds: LassoDataset, beta: Sequence[float]) -> list[Interval]:
    return [gh_sub(hypothesis(features, beta), response) for features, response in ds]


def error_e1(ds: LassoDataset, beta: Sequence[float]) -> Interval:
    """Half the sum of special-squared gH-residuals; lower endpoint >= 0."""
    acc = ZERO
    for r in _residuals(ds, beta):
        acc = add(acc, special_mul(r, r))
    return scalar_mul(0.5, acc)


def error_e2(beta: Sequence[float], penalty: Interval) -> Interval:
    """Interval tuning parameter times the l1 norm of the coefficients."""
    _check_penalty(penalty)
    s = sum(abs(float(b)) for b in beta)
    return scalar_mul(s, penalty)


def error_total(ds: LassoDataset, beta: Sequence[float], penalty: Interval) -> Interval:
    return add(error_e1(ds, beta), error_e2(beta, penalty))


def analytic_subgradient(
    ds: LassoDataset, beta: Sequence[float], penalty: Interval
) -> tuple[Interval, ...]:
    """Closed-form interval subgradient of the total error.

    Component i sums the special products of each gH-residual with feature i
    and then adds the tuning interval, negated when beta_i is negative. The
    half factor of error_e1 is consumed by differentiating the square, and
    beta_i = 0 deliberately uses the nonnegative branch so the formula stays
    deterministic.

    See the numerical notes in the README: away from favorable regimes this
    formula is a formal update direction rather than the numeric
    gH-gradient, and it can deviate from finite differences.
    """
    _check_penalty(penalty)
    if len(beta) != ds.feature_dim:
        raise DimensionMismatch(
            f"coefficients have length {len(beta)}, features {ds.feature_dim}"
        )
    residuals = _residuals(ds, beta)
    out = []
    for i in range(ds.feature_dim):
        acc = ZERO
        for r, (features, _) in zip(residuals, ds):
            acc = add(acc, special_mul(r, features[i]))
        if float(beta[i]) >= 0.0:
            acc = add(acc, penalty)
        else:
            acc = add(acc, scalar_mul(-1.0, penalty))
        out.append(acc)
    return tuple(out)


def error_function(ds: LassoDataset, penalty: Interval) -> IntervalFunction:
    """The total error as an IntervalFunction with the closed-form oracle."""
    _check_penalty(penalty)
    return IntervalFunction(
        dim=ds.feature_dim,
        f_lower=lambda b: error_total(ds, b, penalty).lo,
        f_upper=lambda b: error_total(ds, b, penalty).hi,
        subgradient_oracle=lambda b: analytic_subgradient(ds, b, penalty),
    )


@dataclass
class LassoFit:
    """Outcome of one training run."""

    beta_hat: tuple[float, ...]
    efficient_set: list[tuple[float, ...]]
    nondominated_set: list[Interval]
    penalty: Interval
    config: SolverConfig
    archive: Archive
    trace: IterationTrace

    def predicted(self, features: Sequence[Interval]) -> Interval:
        return hypothesis(features, self.beta_hat)


def fit(ds: LassoDataset, penalty: Interval, cfg: SolverConfig) -> LassoFit:
    """Train by running the dominance-archive subgradient solver.

    The fitted coefficients are the efficient-set element whose scalarized
    error ``w * lo + (1 - w) * hi`` is smallest, breaking ties toward the
    earliest iterate (the archive preserves insertion order).
    """
    objective = error_function(ds, penalty)
    archive, trace = solve(objective, cfg)
    best = None
    best_score = float("inf")
    for point in archive.efficient_set:
        value = error_total(ds, point, penalty)
        score = cfg.w * value.lo + cfg.w_prime * value.hi
        if score < best_score:
            best_score = score
            best = point
    return LassoFit(
        beta_hat=best,
        efficient_set=list(archive.efficient_set),
        nondominated_set=list(archive.nondominated_set),
        penalty=penalty,
        config=cfg,
        archive=archive,
        trace=trace,
    )


@dataclass(frozen=True)
class PredictionRow:
    """Per-sample comparison of the actual and fitted response intervals.

    ``overlap`` is the common part (None when disjoint); the excess tuples
    hold the parts of each interval outside the overlap, so overlap plus
    excesses exactly tile both intervals.
    """

    actual: Interval
    estimate: Interval
    overlap: Optional[Interval]
    excess_actual: tuple[Interval, ...]
    excess_estimate: tuple[Interval, ...]


def _excess(whole: Interval, overlap: Optional[Interval]) -> tuple[Interval, ...]:
    if overlap is None:
        return (whole,)
    parts = []
    if whole.lo < overlap.lo:
        parts.append(Interval(whole.lo, overlap.lo))
    if overlap.hi < whole.hi:
        parts.append(Interval(overlap.hi, whole.hi))
    return tuple(parts)


@dataclass
class PredictionReport:
    rows: list[PredictionRow]

    def to_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(
            [
                "k",
                "y_lo",
                "y_hi",
                "yhat_lo",
                "yhat_hi",
                "overlap_lo",
                "overlap_hi",
                "excess_actual",
                "excess_estimate",
            ]
        )
        for k, row in enumerate(self.rows, start=1):
            overlap_lo = repr(row.overlap.lo) if row.overlap is not None else ""
            overlap_hi = repr(row.overlap.hi) if row.overlap is not None else ""
            writer.writerow(
                [
                    k,
                    repr(row.actual.lo),
                    repr(row.actual.hi),
                    repr(row.estimate.lo),
                    repr(row.estimate.hi),
                    overlap_lo,
                    overlap_hi,
                    int(bool(row.excess_actual)),
                    int(bool(row.excess_estimate)),
                ]
            )


def predict_report(ds: LassoDataset, beta: Sequence[float]) -> PredictionReport:
    """Overlap and excess decomposition of actual vs fitted responses."""
    rows = []
    for features, response in ds:
        estimate = hypothesis(features, beta)
        lo = max(response.lo, estimate.lo)
        hi = min(response.hi, estimate.hi)
        overlap = Interval(lo, hi) if lo <= hi else None
        rows.append(
            PredictionRow(
                actual=response,
                estimate=estimate,
                overlap=overlap,
                excess_actual=_excess(response, overlap),
                excess_estimate=_excess(estimate, overlap),
            )
        )
    return PredictionReport(rows=rows)
