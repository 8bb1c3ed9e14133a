"""Almost-uniform sampling of left vertices of an almost-regular bipartite
graph, and its instantiation on the affine incidence graph of a variety.

Left vertices of the incidence graph are the points of V; right vertices are
the k-dimensional affine subspaces meeting V in a finite nonempty set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from typing import Any, Callable, NamedTuple, Sequence

from .elim import DEFAULT_SPAIR_BUDGET, Kind, PolySystem, solve_dicts
from .errors import BudgetExhausted, ConfigError, ConfigRejected, EliminationBudgetExceeded, VarietyLikelyEmpty
from .field import RandomSource
from .geometry import AffineSubspace, sample_affine_subspace
from .poly import _horner, linear_forms


@dataclass(frozen=True)
class BipartiteOracles:
    """Access to a bipartite graph through its right side.

    ``rsamp(rng)`` returns a uniform right vertex or ``None`` on failure,
    ``rnei(v)`` lists its left neighbours (between 1 and ``d_max`` of them),
    ``fallback(rng)`` supplies some left vertex once the retry budget is gone.
    ``p_bound`` bounds the failure rate of ``rsamp``; left degrees lie within
    a factor ``1 +- delta`` of a common value.
    """

    rsamp: Callable[[RandomSource], Any]
    rnei: Callable[[Any], Sequence]
    fallback: Callable[[RandomSource], Any]
    d_max: int
    p_bound: float | Fraction
    delta: float | Fraction

    def __post_init__(self):
        if self.d_max < 1:
            raise ConfigError("d_max must be at least 1")
        if not 0 <= self.p_bound < 1:
            raise ConfigError(f"p_bound must lie in [0, 1), got {self.p_bound}")
        if not 0 < self.delta < Fraction(1, 2):
            raise ConfigError(f"delta must lie in (0, 1/2), got {self.delta}")


@dataclass
class SampleReport:
    point: Any
    iterations_used: int
    fell_back: bool
    rsamp_failures: int


def retry_budget(d_max: int, p_bound: float, delta: float) -> int:
    """Number of loop iterations ``ceil(d/(1-p) * ln((1-delta)/delta))``, at least 1."""
    t0 = math.ceil(d_max / (1 - float(p_bound)) * math.log((1 - float(delta)) / float(delta)))
    return max(t0, 1)


def bipartite_sample(o: BipartiteOracles, rng: RandomSource) -> tuple[Any, SampleReport]:
    """Draw a left vertex whose law is 3*delta/(1-delta)-close to uniform.

    Each iteration picks a right vertex R and a slot in ``range(d_max)``;
    slots below ``|rnei(R)|`` name a neighbour, the rest are rejections. This
    is the accept-with-probability ``|V|/d_max`` step done in exact integers.
    """
    t0 = retry_budget(o.d_max, o.p_bound, o.delta)
    failures = 0
    for it in range(1, t0 + 1):
        r = o.rsamp(rng)
        if r is None:
            failures += 1
            continue
        nbrs = o.rnei(r)
        if not 1 <= len(nbrs) <= o.d_max:
            raise ValueError(f"right vertex has {len(nbrs)} neighbours, expected 1..{o.d_max}")
        slot = rng.below(o.d_max)
        if slot < len(nbrs):
            return nbrs[slot], SampleReport(nbrs[slot], it, False, failures)
    point = o.fallback(rng)
    return point, SampleReport(point, t0, True, failures)


@dataclass(frozen=True)
class SamplerParams:
    epsilon: float
    max_wall_budget: int = 100_000
    spair_budget: int = DEFAULT_SPAIR_BUDGET
    # overrides the analytic bound, e.g. with an empirical estimate
    p_bound: float | None = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.max_wall_budget < 1:
            raise ConfigError("max_wall_budget must be positive")


def restrict_and_solve(
    terms: Sequence[list], a: AffineSubspace, rng: RandomSource, budget: int = DEFAULT_SPAIR_BUDGET
) -> tuple[Kind, list[tuple[int, ...]]]:
    """Classify V meet ``a`` from the system's term lists; points come back as subspace parameters."""
    p, k = a.field.p, a.dim
    forms = linear_forms(a.base, a.basis, p)
    restricted = [_horner(t, 0, forms, k, p) if t else {} for t in terms]
    kind, points, _ = solve_dicts(restricted, p, k, rng, budget)
    return kind, points


class ProperSubspace(NamedTuple):
    """Right vertex: a subspace plus the parameters of its points on V."""

    subspace: AffineSubspace
    params: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class VarietyOracles(BipartiteOracles):
    system: PolySystem | None = dc_field(default=None, repr=False)


def make_variety_oracles(sys: PolySystem, params: SamplerParams) -> VarietyOracles:
    field, n, k = sys.field, sys.num_vars, sys.k
    p = field.p
    delta = float(p) ** (params.epsilon - 1)
    if delta >= 0.5:
        raise ConfigRejected(f"q^(eps-1) = {delta:.3g} is not below 1/2; use a larger field or epsilon")
    d = max(sys.degree_bound, 1)
    d_max = d**k
    p_bound = params.p_bound if params.p_bound is not None else 1 - 0.5 / d_max
    terms = [list(f.terms.items()) for f in sys.polys]
    budget = params.spair_budget

    def rsamp(rng: RandomSource):
        a = sample_affine_subspace(field, n, k, rng)
        try:
            kind, points = restrict_and_solve(terms, a, rng, budget)
        except EliminationBudgetExceeded:
            return None
        if kind is not Kind.ZERO_DIM:
            return None
        return ProperSubspace(a, tuple(points))

    def rnei(r: ProperSubspace):
        return [r.subspace.point(t) for t in r.params]

    def fallback(rng: RandomSource):
        # keep drawing instead of emitting an off-variety point
        for _ in range(params.max_wall_budget):
            r = rsamp(rng)
            if r is not None:
                nbrs = rnei(r)
                return nbrs[rng.below(len(nbrs))]
        raise BudgetExhausted(f"no proper subspace in {params.max_wall_budget} extra draws")

    return VarietyOracles(rsamp, rnei, fallback, d_max, p_bound, delta, system=sys)


def sample_variety_point(
    sys: PolySystem, params: SamplerParams, rng: RandomSource, oracles: VarietyOracles | None = None
) -> tuple[tuple[int, ...], SampleReport]:
    """One point of V whose law is close to uniform on V.

    Raises ``VarietyLikelyEmpty`` when no subspace ever met V properly and
    ``BudgetExhausted`` when the fallback draws ran out after earlier hits.
    """
    oracles = oracles or make_variety_oracles(sys, params)
    hits = [0]
    inner = oracles.rsamp

    def counted(rng):
        r = inner(rng)
        if r is not None:
            hits[0] += 1
        return r

    try:
        point, report = bipartite_sample(replace(oracles, rsamp=counted), rng)
    except BudgetExhausted as exc:
        if hits[0] == 0:
            raise VarietyLikelyEmpty(f"no affine subspace met the variety properly: {exc}") from exc
        raise
    if not sys.is_solution(point):
        raise RuntimeError(f"sampler produced {point}, which is not on the variety")
    return point, report


def sample_variety(
    sys: PolySystem, params: SamplerParams, count: int, rng: RandomSource
) -> tuple[list[tuple[int, ...]], list[SampleReport]]:
    """``count`` independent draws sharing one oracle construction."""
    oracles = make_variety_oracles(sys, params)
    points, reports = [], []
    for _ in range(count):
        pt, rep = sample_variety_point(sys, params, rng, oracles)
        points.append(pt)
        reports.append(rep)
    return points, reports
