"""Optimal transport baseline: exact minimum cost over integral tables.

The transportation problem between equal-mass integral histograms always
has an integral minimizer, so the exact optimum is the minimum of
<X, M> over the finite table set. For Monge costs (submodular: adjacent
2x2 minors tilt toward the diagonal) the northwestern corner vertex is
already optimal and no enumeration happens. exp(-optimal cost) is a
useful similarity but not positive definite in general, hence the
"pseudo" in its name.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .histograms import ContingencyTable, Histogram, require_compatible
from .northwest import nw_table
from .polytope import (
    EnumerationBudget,
    WeightSpec,
    enumerate_tables,
    require_matching_weights,
)


@dataclass(frozen=True)
class TransportSolution:
    """An optimal plan and its cost under the cost matrix it was solved for."""

    plan: ContingencyTable
    cost: float


def monge_check(w: WeightSpec) -> bool:
    """True iff the cost matrix is Monge: m_ij + m_kl <= m_il + m_kj for i<k, j<l.

    Checking adjacent quadruples (k = i+1, l = j+1) is sufficient; the
    general inequality follows by summing adjacent ones.
    """
    m = w.cost
    d = w.d
    for i in range(d - 1):
        for j in range(d - 1):
            if m[i, j] + m[i + 1, j + 1] > m[i, j + 1] + m[i + 1, j]:
                return False
    return True


def ot_cost(
    r: Histogram,
    c: Histogram,
    w: WeightSpec,
    budget: EnumerationBudget | None = None,
) -> TransportSolution:
    """Exact minimum transport cost and a minimizing table.

    Monge costs take the O(d) corner-rule shortcut; everything else
    scans the enumeration stream and keeps the first strict minimum, so
    ties resolve to the lexicographically earliest table.
    """
    require_compatible(r, c)
    require_matching_weights(r, w)
    m = w.cost
    if monge_check(w):
        plan = nw_table(r, c)
        return TransportSolution(plan, plan.cost(m))
    best: ContingencyTable | None = None
    best_cost = math.inf
    for table in enumerate_tables(r, c, budget):
        cost = table.cost(m)
        if cost < best_cost:
            best = table
            best_cost = cost
    if best is None:
        raise ValidationError("table set is empty; margins were not validated")
    return TransportSolution(best, best_cost)


def pseudo_kernel(
    r: Histogram,
    c: Histogram,
    w: WeightSpec,
    budget: EnumerationBudget | None = None,
) -> float:
    """exp(-minimum cost): a similarity that is indefinite in general.

    Dominated term by term by the generating function over the same
    margins, since the optimum is one of the summed costs.
    """
    solution = ot_cost(r, c, w, budget)
    try:
        return math.exp(-solution.cost)
    except OverflowError:
        return math.inf
