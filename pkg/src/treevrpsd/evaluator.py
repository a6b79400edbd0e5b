"""Exact and Monte Carlo expected policy cost, plus ratio reports.

Exact mode enumerates every joint demand vector and averages the walk
cost over all Q initial loads; the accumulation uses ``math.fsum`` so
up to 10^6 terms of mixed magnitude do not lose mass.  Monte Carlo mode
draws independent replications, each from a private generator seeded by
a pure function of (master seed, replication index), so estimates are
reproducible bit for bit and replications could run in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import BoundSet, bound_set, trace_certificate
from .demand import (
    DemandModel,
    Realization,
    enumerate_joint,
    joint_support_size,
    replication_rng,
    resolve_enum_limit,
    sample_realization,
)
from .errors import BadParamsError, TooLargeError
from .policy import POLICIES, SPLIT, WalkGeometry, run_split, run_unsplit
from .tree import TreeInstance, VisitOrder, dfs_order

EXACT = "exact"
MONTE_CARLO = "monte_carlo"

# expected_cost <= formula_ub is asserted with this relative slack.
UB_REL_TOL = 1e-9


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo mean with its standard error and normal 95% interval."""

    mean: float
    stderr: float
    ci95_low: float
    ci95_high: float
    samples: int
    seed: int


@dataclass(frozen=True)
class EvalReport:
    """One (instance, policy) evaluation with bounds and ratios."""

    instance_id: str
    policy: str
    mode: str
    expected_cost: float
    bounds: BoundSet
    ratio_vs_lb: float
    formula_ub: float
    ub_respected: bool
    estimate: Estimate | None = None


def _check_policy(policy: str) -> None:
    if policy not in POLICIES:
        raise BadParamsError(f"policy must be one of {POLICIES}, got {policy!r}")


def exact_expected_cost(
    tree: TreeInstance,
    model: DemandModel,
    policy: str,
    order: VisitOrder | None = None,
    limit: int | None = None,
) -> float:
    """Exact expectation over all joint demand vectors and initial loads.

    The enumeration has (product of support sizes) * Q terms and must
    stay within the configured limit, otherwise ``TooLargeError`` asks
    the caller to fall back to Monte Carlo.
    """
    _check_policy(policy)
    cap = resolve_enum_limit(limit)
    capacity = tree.capacity
    size = joint_support_size(model) * capacity
    if size > cap:
        raise TooLargeError(
            f"exact evaluation needs {size} walk simulations, over the limit {cap}; "
            f"use Monte Carlo estimation instead"
        )
    geometry = WalkGeometry(tree, dfs_order(tree) if order is None else order)
    cost = geometry.split_cost if policy == SPLIT else geometry.unsplit_cost
    loads = range(1, capacity + 1)
    total = math.fsum(
        prob * math.fsum(cost(q, load) for load in loads)
        for q, prob in enumerate_joint(model, limit=cap)
    )
    return total / capacity


def monte_carlo_cost(
    tree: TreeInstance,
    model: DemandModel,
    policy: str,
    samples: int,
    master_seed: int,
    order: VisitOrder | None = None,
) -> Estimate:
    """Sample-mean estimate of the expected walk cost.

    Replication r draws its realization from ``replication_rng(
    master_seed, r)``; the estimate is a pure function of the arguments.
    """
    _check_policy(policy)
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < 2:
        raise BadParamsError(f"samples must be an integer >= 2, got {samples!r}")
    geometry = WalkGeometry(tree, dfs_order(tree) if order is None else order)
    cost = geometry.split_cost if policy == SPLIT else geometry.unsplit_cost
    costs = []
    for r in range(samples):
        real = sample_realization(model, replication_rng(master_seed, r))
        costs.append(cost(real.demands, real.initial_load))
    mean = math.fsum(costs) / samples
    variance = math.fsum((c - mean) ** 2 for c in costs) / (samples - 1)
    stderr = math.sqrt(variance / samples)
    return Estimate(
        mean=mean,
        stderr=stderr,
        ci95_low=mean - 1.96 * stderr,
        ci95_high=mean + 1.96 * stderr,
        samples=samples,
        seed=master_seed,
    )


def evaluate(
    tree: TreeInstance,
    model: DemandModel,
    policy: str,
    mode: str = EXACT,
    *,
    samples: int = 10_000,
    master_seed: int = 0,
    instance_id: str = "",
    order: VisitOrder | None = None,
    limit: int | None = None,
) -> EvalReport:
    """Assemble an :class:`EvalReport` for one (instance, policy) pair.

    ``mode`` is ``"exact"`` or ``"monte_carlo"`` (``"mc"`` accepted).
    The ratio convention for a depot-only instance (combined_lb = 0) is
    1.0.
    """
    _check_policy(policy)
    bounds = bound_set(tree, model)
    estimate = None
    if mode == EXACT:
        expected = exact_expected_cost(tree, model, policy, order=order, limit=limit)
    elif mode in (MONTE_CARLO, "mc"):
        mode = MONTE_CARLO
        estimate = monte_carlo_cost(tree, model, policy, samples, master_seed, order=order)
        expected = estimate.mean
    else:
        raise BadParamsError(f"mode must be 'exact' or 'monte_carlo', got {mode!r}")
    formula_ub = bounds.split_ub if policy == SPLIT else bounds.unsplit_ub
    ratio = expected / bounds.combined_lb if bounds.combined_lb > 0 else 1.0
    return EvalReport(
        instance_id=instance_id,
        policy=policy,
        mode=mode,
        expected_cost=expected,
        bounds=bounds,
        ratio_vs_lb=ratio,
        formula_ub=formula_ub,
        ub_respected=expected <= formula_ub + UB_REL_TOL * formula_ub,
        estimate=estimate,
    )


def expected_trace_certificate(
    tree: TreeInstance,
    model: DemandModel,
    policy: str,
    order: VisitOrder | None = None,
    limit: int | None = None,
) -> float:
    """Diagnostic: enumeration average of the per-trace certificate.

    Runs the full policy on every (demand vector, initial load) pair and
    averages :func:`~treevrpsd.bounds.trace_certificate`.  The value
    always sits between the radial lower bound and the exact expected
    cost; it is a sanity diagnostic, not an instance-level bound on the
    optimum.
    """
    _check_policy(policy)
    cap = resolve_enum_limit(limit)
    capacity = tree.capacity
    size = joint_support_size(model) * capacity
    if size > cap:
        raise TooLargeError(f"certificate enumeration needs {size} runs, over the limit {cap}")
    seq = dfs_order(tree) if order is None else order
    run = run_split if policy == SPLIT else run_unsplit
    total = math.fsum(
        prob
        * math.fsum(
            trace_certificate(run(tree, seq, Realization(q, load)), tree)
            for load in range(1, capacity + 1)
        )
        for q, prob in enumerate_joint(model, limit=cap)
    )
    return total / capacity
