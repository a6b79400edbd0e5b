"""Per-customer integer demand distributions.

Each customer's demand is an independent random variable on {1..Q}
described by an explicit probability mass function.  Zero demand is
rejected outright: a customer that might need nothing would not belong
to the instance.  The module supports exact expectations, inverse-CDF
sampling, and exhaustive enumeration of the joint demand space for
exact expected-cost computation.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadCapacityError,
    BadParamsError,
    MassAtZeroError,
    NegativeMassError,
    NotNormalizedError,
    OutOfRangeError,
    TooLargeError,
)

NORMALIZATION_TOL = 1e-12

# Joint enumeration is capped to keep exact evaluation interactive; the
# TREEVRPSD_ENUM_LIMIT environment variable overrides the default.
DEFAULT_ENUM_LIMIT = 10**6
ENUM_LIMIT_ENV = "TREEVRPSD_ENUM_LIMIT"


def resolve_enum_limit(explicit: int | None = None) -> int:
    """Effective enumeration cap: explicit value, else env var, else default."""
    if explicit is not None:
        if not isinstance(explicit, int) or explicit < 1:
            raise BadParamsError(f"enumeration limit must be a positive integer, got {explicit!r}")
        return explicit
    raw = os.environ.get(ENUM_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ENUM_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise BadParamsError(f"{ENUM_LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise BadParamsError(f"{ENUM_LIMIT_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class DemandPMF:
    """Validated pmf over {1..Q}; ``mass`` holds (value, probability) ascending."""

    mass: tuple[tuple[int, float], ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.mass)

    def max_value(self) -> int:
        return self.mass[-1][0]


def make_pmf(entries: Iterable[tuple[int, float]], capacity: int) -> DemandPMF:
    """Build a :class:`DemandPMF` from (value, probability) pairs.

    Duplicate values accumulate.  Entries with zero probability are
    dropped from the support; positive mass at 0 or outside {1..Q} is
    rejected, as is any negative mass or a total off 1 by more than
    ``NORMALIZATION_TOL``.
    """
    if not isinstance(capacity, int) or isinstance(capacity, bool) or capacity < 1:
        raise BadCapacityError(f"capacity must be an integer >= 1, got {capacity!r}")
    acc: dict[int, list[float]] = {}
    for k, p in entries:
        if not isinstance(k, int) or isinstance(k, bool):
            raise OutOfRangeError(f"demand value must be an integer, got {k!r}")
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not math.isfinite(p):
            raise NegativeMassError(f"probability for demand {k} must be a finite real, got {p!r}")
        if p < 0:
            raise NegativeMassError(f"negative probability {p!r} at demand {k}")
        if k < 0 or k > capacity:
            raise OutOfRangeError(f"demand {k} outside 0..{capacity}")
        if k == 0:
            if p > 0:
                raise MassAtZeroError("positive probability at demand 0 is not allowed")
            continue
        acc.setdefault(k, []).append(float(p))

    items = tuple(
        (k, total)
        for k in sorted(acc)
        if (total := math.fsum(acc[k])) > 0.0
    )
    total_mass = math.fsum(p for _, p in items)
    if abs(total_mass - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedError(f"pmf mass sums to {total_mass!r}, expected 1 within {NORMALIZATION_TOL}")
    return DemandPMF(mass=items)


def expectation(pmf: DemandPMF) -> float:
    """Exact mean of the demand."""
    return math.fsum(k * p for k, p in pmf.mass)


@dataclass(frozen=True)
class DemandModel:
    """Independent demand pmfs for customers 1..n plus the capacity Q."""

    pmfs: tuple[DemandPMF, ...]
    capacity: int

    def __post_init__(self) -> None:
        if not isinstance(self.capacity, int) or isinstance(self.capacity, bool) or self.capacity < 1:
            raise BadCapacityError(f"capacity must be an integer >= 1, got {self.capacity!r}")
        for idx, pmf in enumerate(self.pmfs, 1):
            if pmf.mass and pmf.max_value() > self.capacity:
                raise OutOfRangeError(
                    f"customer {idx} pmf supports demand {pmf.max_value()} > capacity {self.capacity}"
                )

    @property
    def n_customers(self) -> int:
        return len(self.pmfs)


@dataclass(frozen=True)
class Realization:
    """One joint demand vector plus the randomized initial load."""

    demands: tuple[int, ...]
    initial_load: int


def sample_realization(model: DemandModel, rng: random.Random) -> Realization:
    """Draw one :class:`Realization` from ``rng``.

    Demands for customers 1..n are drawn first, each by inverse CDF over
    the pmf values in ascending order, then the initial load uniformly
    from {1..Q}.  The draw order is part of the determinism contract.
    """
    demands = []
    for pmf in model.pmfs:
        u = rng.random()
        acc = 0.0
        value = pmf.mass[-1][0]  # guards the u ~ 1.0 float edge
        for k, p in pmf.mass:
            acc += p
            if u < acc:
                value = k
                break
        demands.append(value)
    load = rng.randrange(1, model.capacity + 1)
    return Realization(demands=tuple(demands), initial_load=load)


def replication_rng(master_seed: int, replication: int) -> random.Random:
    """Private generator for one replication.

    The seed is the pure function ``master_seed * 2**32 + replication``,
    so replications are reproducible individually and never share state.
    """
    return random.Random(master_seed * (2**32) + replication)


def joint_support_size(model: DemandModel) -> int:
    """Number of joint demand vectors (product of support sizes)."""
    size = 1
    for pmf in model.pmfs:
        size *= len(pmf.mass)
    return size


def enumerate_joint(
    model: DemandModel, limit: int | None = None
) -> Iterator[tuple[tuple[int, ...], float]]:
    """Yield every joint demand vector with its product probability.

    Vectors are emitted in odometer order (last customer fastest, values
    ascending).  Raises ``TooLargeError`` before yielding anything if
    the joint support exceeds the enumeration limit.
    """
    cap = resolve_enum_limit(limit)
    size = joint_support_size(model)
    if size > cap:
        raise TooLargeError(
            f"joint demand support has {size} vectors, over the limit {cap}; "
            f"use Monte Carlo estimation instead"
        )

    def generate() -> Iterator[tuple[tuple[int, ...], float]]:
        for combo in itertools.product(*(pmf.mass for pmf in model.pmfs)):
            prob = 1.0
            for _, p in combo:
                prob *= p
            yield tuple(k for k, _ in combo), prob

    return generate()


def point_model(values: Sequence[int], capacity: int) -> DemandModel:
    """Deterministic model: customer i always demands ``values[i-1]``."""
    return DemandModel(
        pmfs=tuple(make_pmf([(v, 1.0)], capacity) for v in values),
        capacity=capacity,
    )
