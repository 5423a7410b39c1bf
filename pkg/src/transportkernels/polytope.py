"""Exact operations on the lattice points of a transportation polytope.

For two histograms r and c with d bins and equal mass N, the table set
is the collection of d x d nonnegative integer matrices whose row sums
are r and whose column sums are c. This module enumerates that set,
counts it without materializing it, and evaluates two sums over it:

* the weighted volume  T(r, c; K) = sum over tables X of prod k_ij^x_ij,
  a positive definite kernel in (r, c) whenever the entry-weight matrix
  K is positive semidefinite with nonnegative entries;
* the generating function  V(r, c; M) = sum over tables of exp(-<X, M>),
  the same quantity written through the cost matrix M = -log K.

The two are tied together by the soft minimum: V = exp(-softmin of the
table costs). With K identically one, T is the plain lattice point count.

The Fisher-Yates statistic of a table, n(X) = (prod r_i! prod c_j!) /
prod x_ij!, counts the permutations that induce the table when one
histogram's canonical sequence is matched against a shuffled copy of the
other's; summed over the table set it partitions N!.

Conventions: 0^0 = 1, and a zero table entry contributes nothing to a
cost even when the matching cost entry is +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    ValidationError,
)
from .histograms import ContingencyTable, Histogram, require_compatible

DEFAULT_MAX_TABLES = 10_000_000

# Regime bounds for plain float accumulation in weighted_volume: beyond
# either bound the per-table products risk underflow and the sum switches
# to log-space combination.
PLAIN_MASS_LIMIT = 64
PLAIN_WEIGHT_FLOOR = 1e-12


@dataclass(frozen=True)
class EnumerationBudget:
    """Cap on how many tables an exhaustive operation may touch."""

    max_tables: int = DEFAULT_MAX_TABLES

    def __post_init__(self) -> None:
        if int(self.max_tables) != self.max_tables or self.max_tables <= 0:
            raise ValidationError(
                f"budget must be a positive integer, got {self.max_tables!r}"
            )
        object.__setattr__(self, "max_tables", int(self.max_tables))


@dataclass(frozen=True, eq=False)
class WeightSpec:
    """Paired cost/weight matrices related entrywise by k = exp(-m).

    Exactly one side is supplied; the other is derived once at
    construction, so the pair stays consistent to the rounding of a
    single exp or log. Costs may contain +inf (zero weight); weights are
    finite and nonnegative.
    """

    cost: np.ndarray
    weight: np.ndarray
    origin: str

    def __post_init__(self) -> None:
        if self.origin not in ("cost", "weight"):
            raise ValidationError(f"origin must be 'cost' or 'weight': {self.origin!r}")
        for name in ("cost", "weight"):
            arr = getattr(self, name)
            arr.flags.writeable = False

    @classmethod
    def from_cost(cls, m) -> WeightSpec:
        m = np.array(m, dtype=float)
        _require_square(m)
        if np.isnan(m).any() or np.isneginf(m).any():
            raise ValidationError("cost entries must be reals or +inf")
        k = np.exp(-m)
        return cls(cost=m, weight=k, origin="cost")

    @classmethod
    def from_weight(cls, k) -> WeightSpec:
        k = np.array(k, dtype=float)
        _require_square(k)
        if not np.isfinite(k).all() or (k < 0).any():
            raise ValidationError("weight entries must be finite and nonnegative")
        with np.errstate(divide="ignore"):
            m = -np.log(k)
        return cls(cost=m, weight=k, origin="weight")

    @property
    def d(self) -> int:
        return self.cost.shape[0]

    def is_symmetric(self, rel_tol: float = 1e-12) -> bool:
        k = self.weight
        scale = max(1.0, float(np.abs(k).max()))
        return float(np.abs(k - k.T).max()) <= rel_tol * scale


def _require_square(arr: np.ndarray) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValidationError(f"matrix must be square and nonempty, got shape {arr.shape}")


def require_matching_weights(r: Histogram, w: WeightSpec) -> None:
    if w.d != r.d:
        raise DimensionMismatchError(
            f"weight matrix is {w.d}x{w.d} but histograms have {r.d} bins"
        )


def _bounded_compositions(total: int, caps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Yield x with sum(x) == total and 0 <= x_j <= caps_j, ascending lexicographic."""
    d = len(caps)
    tail = [0] * (d + 1)
    for j in range(d - 1, -1, -1):
        tail[j] = tail[j + 1] + caps[j]
    x = [0] * d

    def rec(j: int, rem: int) -> Iterator[tuple[int, ...]]:
        if j == d - 1:
            if rem <= caps[j]:
                x[j] = rem
                yield tuple(x)
            return
        lo = max(0, rem - tail[j + 1])
        hi = min(rem, caps[j])
        for v in range(lo, hi + 1):
            x[j] = v
            yield from rec(j + 1, rem - v)

    return rec(0, total)


def enumerate_tables(
    r: Histogram, c: Histogram, budget: EnumerationBudget | None = None
) -> Iterator[ContingencyTable]:
    """Stream every table with margins (r, c) in row-major lexicographic order.

    Rows are filled top-down with bounded compositions of each row sum,
    so the flattened entry tuples ascend lexicographically. Raises
    BudgetExceededError instead of truncating when the stream would
    exceed the budget.
    """
    require_compatible(r, c)
    budget = budget if budget is not None else EnumerationBudget()
    return _table_stream(r, c, budget)


def _table_stream(
    r: Histogram, c: Histogram, budget: EnumerationBudget
) -> Iterator[ContingencyTable]:
    d = r.d
    rows: list[tuple[int, ...]] = []
    emitted = 0

    def rec(i: int, residual: tuple[int, ...]) -> Iterator[ContingencyTable]:
        nonlocal emitted
        if i == d - 1:
            # Mass conservation forces the last row.
            emitted += 1
            if emitted > budget.max_tables:
                raise BudgetExceededError(
                    f"more than {budget.max_tables} tables exist for margins "
                    f"{r} / {c}",
                    count_so_far=emitted - 1,
                )
            yield ContingencyTable(tuple(rows) + (residual,))
            return
        for x in _bounded_compositions(r.counts[i], residual):
            rows.append(x)
            yield from rec(i + 1, tuple(a - b for a, b in zip(residual, x)))
            rows.pop()

    return rec(0, c.counts)


def count_tables(r: Histogram, c: Histogram) -> int:
    """Exact number of tables with margins (r, c), by DP over rows.

    No table is materialized; the state is (row index, residual column
    sums) and the answer is an arbitrary-precision int. Always equals
    the length of the enumeration stream.
    """
    require_compatible(r, c)
    d = r.d
    memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def rec(i: int, residual: tuple[int, ...]) -> int:
        if i == d - 1:
            return 1
        key = (i, residual)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = 0
        for x in _bounded_compositions(r.counts[i], residual):
            total += rec(i + 1, tuple(a - b for a, b in zip(residual, x)))
        memo[key] = total
        return total

    return rec(0, c.counts)


def weighted_volume(
    r: Histogram,
    c: Histogram,
    w: WeightSpec,
    budget: EnumerationBudget | None = None,
) -> float:
    """T(r, c; K): sum over all tables of the product of k_ij^x_ij.

    Within the plain regime (mass at most 64 and every weight at least
    1e-12) the sum is accumulated as ordinary float products, factorized
    row by row over residual column sums. Outside it, per-table log
    weights are combined by a running log-sum-exp so tiny weights and
    large masses cannot underflow term by term. 0^0 = 1 throughout.
    """
    require_compatible(r, c)
    require_matching_weights(r, w)
    budget = budget if budget is not None else EnumerationBudget()
    if count_tables(r, c) > budget.max_tables:
        raise BudgetExceededError(
            f"more than {budget.max_tables} tables exist for margins {r} / {c}",
            count_so_far=0,
        )
    if r.mass <= PLAIN_MASS_LIMIT and float(w.weight.min()) >= PLAIN_WEIGHT_FLOOR:
        return _volume_plain(r, c, w.weight)
    return _volume_logspace(r, c, w, budget)


def _volume_plain(r: Histogram, c: Histogram, k: np.ndarray) -> float:
    d = r.d
    # pw[i][j][e] = k_ij^e for e up to the row sum; row entries never exceed it.
    pw = [
        [[float(k[i, j]) ** e for e in range(r.counts[i] + 1)] for j in range(d)]
        for i in range(d)
    ]
    memo: dict[tuple[int, tuple[int, ...]], float] = {}

    def rec(i: int, residual: tuple[int, ...]) -> float:
        row_pw = pw[i]
        if i == d - 1:
            out = 1.0
            for j, e in enumerate(residual):
                out *= row_pw[j][e]
            return out
        key = (i, residual)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = 0.0
        for x in _bounded_compositions(r.counts[i], residual):
            term = 1.0
            for j, e in enumerate(x):
                term *= row_pw[j][e]
            if term:
                term *= rec(i + 1, tuple(a - b for a, b in zip(residual, x)))
                total += term
        memo[key] = total
        return total

    return rec(0, c.counts)


def _volume_logspace(
    r: Histogram, c: Histogram, w: WeightSpec, budget: EnumerationBudget
) -> float:
    m = w.cost
    running_max = -math.inf
    acc = 0.0
    for table in enumerate_tables(r, c, budget):
        lw = -table.cost(m)
        if lw == -math.inf:
            continue
        if lw > running_max:
            acc = acc * math.exp(running_max - lw) + 1.0
            running_max = lw
        else:
            acc += math.exp(lw - running_max)
    if running_max == -math.inf:
        return 0.0
    return _safe_exp(running_max + math.log(acc))


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def generating_function(
    r: Histogram,
    c: Histogram,
    w: WeightSpec,
    budget: EnumerationBudget | None = None,
) -> float:
    """V(r, c; M): sum over all tables of exp(-<X, M>).

    Evaluated directly over the enumeration stream with an exactly
    rounded float sum. Equals the weighted volume under k = exp(-m) and
    exp(-softmin of the table costs); both identities are held to 1e-12
    relative by the test suite rather than by sharing code paths.
    """
    require_compatible(r, c)
    require_matching_weights(r, w)
    m = w.cost
    return math.fsum(
        _safe_exp(-table.cost(m)) for table in enumerate_tables(r, c, budget)
    )


def softmin(values) -> float:
    """Soft minimum -log(sum exp(-u_i)), stabilized by shifting at the minimum."""
    vals = [float(v) for v in values]
    if not vals:
        raise ValidationError("softmin of an empty collection")
    lo = min(vals)
    if lo == math.inf:
        return math.inf
    if lo == -math.inf:
        return -math.inf
    return lo - math.log(math.fsum(math.exp(lo - v) for v in vals))


def fisher_yates(x: ContingencyTable) -> int:
    """Exact count of sequence matchings inducing the table.

    n(X) = (prod of row-sum factorials * prod of column-sum factorials)
    divided by the product of entry factorials; the division is exact
    for any table with consistent margins.
    """
    numerator = 1
    for v in x.row_sums.counts:
        numerator *= math.factorial(v)
    for v in x.col_sums.counts:
        numerator *= math.factorial(v)
    denominator = 1
    for row in x.entries:
        for v in row:
            if v > 1:
                denominator *= math.factorial(v)
    quotient, remainder = divmod(numerator, denominator)
    assert remainder == 0, "inexact division: table margins are inconsistent"
    return quotient
