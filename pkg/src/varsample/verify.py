"""Brute-force oracles and exact statistics for auditing the samplers.

Distances are exact ``Fraction`` values computed from counts; floats only
show up in human-facing reports and in bounds involving square roots.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
import itertools
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np
from scipy.stats import binomtest

from .elim import Kind, PolySystem
from .errors import ConfigError, EmptySample, TooLarge, ZeroPolynomial
from .field import RandomSource
from .geometry import enumerate_affine_subspaces, sample_affine_subspace
from .poly import MultiPoly
from .sampler import SamplerParams, make_variety_oracles, restrict_and_solve, sample_variety

EVALUATION_CAP = 2**27


# ---------------------------------------------------------------------------
# distributions

@dataclass(frozen=True)
class EmpiricalDistribution:
    """Finite probability mass function with exact rational masses."""

    mass: Mapping[Hashable, Fraction]

    def __post_init__(self):
        clean = {x: Fraction(m) for x, m in self.mass.items() if m}
        if any(m < 0 for m in clean.values()):
            raise ValueError("masses must be nonnegative")
        if sum(clean.values()) != 1:
            raise ValueError("masses must sum to 1")
        object.__setattr__(self, "mass", clean)

    @property
    def support(self) -> list:
        return sorted(self.mass)

    def __getitem__(self, x) -> Fraction:
        return self.mass.get(x, Fraction(0))

    def prob(self, event: Iterable) -> Fraction:
        return sum((self[x] for x in event), Fraction(0))


def empirical_distribution(samples: Iterable[Hashable]) -> EmpiricalDistribution:
    counts = Counter(samples)
    total = sum(counts.values())
    if total == 0:
        raise EmptySample("no samples")
    return EmpiricalDistribution({x: Fraction(c, total) for x, c in counts.items()})


def uniform_distribution(support: Iterable[Hashable]) -> EmpiricalDistribution:
    support = set(support)
    if not support:
        raise EmptySample("empty support")
    m = Fraction(1, len(support))
    return EmpiricalDistribution({x: m for x in support})


def statistical_distance(a: EmpiricalDistribution, b: EmpiricalDistribution) -> Fraction:
    """Half the l1 distance between the mass functions (missing mass is 0)."""
    keys = set(a.mass) | set(b.mass)
    return sum((abs(a[x] - b[x]) for x in keys), Fraction(0)) / 2


def mix(a: EmpiricalDistribution, e: EmpiricalDistribution, eps) -> EmpiricalDistribution:
    """Convex combination ``(1 - eps) a + eps e``."""
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    keys = set(a.mass) | set(e.mass)
    return EmpiricalDistribution({x: (1 - eps) * a[x] + eps * e[x] for x in keys})


def sampling_slack(support_size: int, n: int, confidence: float = 0.99) -> float:
    """Total-variation deviation of an n-sample empirical law that is exceeded
    with probability at most ``1 - confidence``.

    From P(||P_n - P||_1 >= t) <= (2^m - 2) exp(-n t^2 / 2) for support size m.
    """
    alpha = 1 - confidence
    l1 = math.sqrt(2 * (support_size * math.log(2) + math.log(1 / alpha)) / n)
    return l1 / 2


# ---------------------------------------------------------------------------
# brute-force point counts

_CHUNK = 1 << 22


def _grid_zeros(polys: Sequence[MultiPoly], n: int, p: int) -> Iterable[np.ndarray]:
    """Yield index arrays of common zeros over F_p^n, in lex order, chunked along x_1."""
    axis = np.arange(p, dtype=np.int64)
    rest = p ** (n - 1)
    step = max(1, _CHUNK // rest)
    for lo in range(0, p, step):
        axes = [axis[lo:lo + step]] + [axis] * (n - 1)
        coords = np.meshgrid(*axes, indexing="ij")
        mask = np.ones(coords[0].shape, dtype=bool)
        for f in polys:
            val = np.zeros(coords[0].shape, dtype=np.int64)
            for mono, c in f.terms.items():
                term = np.full(coords[0].shape, c, dtype=np.int64)
                for x, e in zip(coords, mono):
                    for _ in range(e):
                        term = term * x % p
                val = (val + term) % p
            mask &= val == 0
        idx = np.argwhere(mask)
        idx[:, 0] += lo
        yield idx


def enumerate_variety(sys: PolySystem, cap: int = EVALUATION_CAP) -> list[tuple[int, ...]]:
    """Every point of F_p^n where all system polynomials vanish, in lex order."""
    p, n = sys.field.p, sys.num_vars
    if p**n > cap:
        raise TooLarge(f"{p}^{n} points exceeds the evaluation cap {cap}")
    if p < 2**31:
        return [tuple(int(v) for v in row) for idx in _grid_zeros(sys.polys, n, p) for row in idx]
    return [pt for pt in itertools.product(range(p), repeat=n) if sys.is_solution(pt)]


def count_zeros(f: MultiPoly, cap: int = EVALUATION_CAP) -> int:
    p, n = f.field.p, f.nvars
    if p**n > cap:
        raise TooLarge(f"{p}^{n} points exceeds the evaluation cap {cap}")
    if p < 2**31:
        return sum(len(idx) for idx in _grid_zeros([f], n, p))
    return sum(f.eval_int(pt) == 0 for pt in itertools.product(range(p), repeat=n))


def schwartz_zippel_check(f: MultiPoly, cap: int = EVALUATION_CAP) -> bool:
    """True iff the zero count of ``f`` is at most ``deg(f) * q^(n-1)``."""
    if f.is_zero():
        raise ZeroPolynomial("the bound needs a nonzero polynomial")
    q, n = f.field.p, f.nvars
    return count_zeros(f, cap) <= f.total_degree() * q ** (n - 1)


def lang_weil_deviation(N: int, s: int, r: int, q: int) -> float:
    """``|N - s q^r| / q^(r - 1/2)``; bounded in q for an r-dimensional variety
    with s top-dimensional components."""
    if s < 1 or r < 0:
        raise ValueError("need s >= 1 and r >= 0")
    return abs(N - s * q**r) / q ** (r - 0.5)


# ---------------------------------------------------------------------------
# incidence-graph audits

def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return ci.low, ci.high


def estimate_proper_fraction(sys: PolySystem, trials: int, rng: RandomSource, budget: int | None = None) -> Fraction:
    """Monte Carlo fraction of uniform k-subspaces meeting V properly."""
    if trials < 1:
        raise ConfigError("trials must be at least 1")
    terms = [list(f.terms.items()) for f in sys.polys]
    hits = 0
    for _ in range(trials):
        a = sample_affine_subspace(sys.field, sys.num_vars, sys.k, rng)
        kind, _ = restrict_and_solve(terms, a, rng, *(() if budget is None else (budget,)))
        hits += kind is Kind.ZERO_DIM
    return Fraction(hits, trials)


def _proper_incidences(sys: PolySystem, cap: int, rng: RandomSource):
    terms = [list(f.terms.items()) for f in sys.polys]
    for a in enumerate_affine_subspaces(sys.field, sys.num_vars, sys.k, cap):
        kind, params = restrict_and_solve(terms, a, rng)
        yield a, (kind is Kind.ZERO_DIM), [a.point(t) for t in params]


def exact_proper_fraction(sys: PolySystem, cap: int = EVALUATION_CAP) -> Fraction:
    """Fraction of all k-dimensional affine subspaces meeting V properly."""
    rng = RandomSource("exact-proper")
    total = proper = 0
    for _, ok, _ in _proper_incidences(sys, cap, rng):
        total += 1
        proper += ok
    return Fraction(proper, total)


@dataclass
class LeftDegreeAudit:
    q: int
    scale: int  # q^(k(n-k)), the common left degree the analysis predicts
    degrees: dict = dc_field(repr=False)
    min_degree: int | None = None
    max_degree: int | None = None

    @property
    def min_ratio(self) -> Fraction | None:
        return None if self.min_degree is None else Fraction(self.min_degree, self.scale)

    @property
    def max_ratio(self) -> Fraction | None:
        return None if self.max_degree is None else Fraction(self.max_degree, self.scale)

    @property
    def relative_spread(self) -> Fraction:
        """Largest ``|deg / q^(k(n-k)) - 1|`` over the points of V."""
        if self.min_degree is None:
            return Fraction(0)
        return max(abs(self.min_ratio - 1), abs(self.max_ratio - 1))

    @property
    def constant(self) -> float:
        """Measured C with every degree inside ``q^(k(n-k)) (1 +- C/q)``."""
        return float(self.relative_spread * self.q)


def audit_left_degrees(sys: PolySystem, cap: int = EVALUATION_CAP) -> LeftDegreeAudit:
    """Count, for each point of V, the properly intersecting k-subspaces through it."""
    n, k, q = sys.num_vars, sys.k, sys.field.p
    points = enumerate_variety(sys, cap)
    degrees = {pt: 0 for pt in points}
    audit = LeftDegreeAudit(q, q ** (k * (n - k)), degrees)
    if not points:
        return audit
    for _, ok, pts in _proper_incidences(sys, cap, RandomSource("audit")):
        if ok:
            for pt in pts:
                degrees[pt] += 1
    audit.min_degree = min(degrees.values())
    audit.max_degree = max(degrees.values())
    return audit


# ---------------------------------------------------------------------------
# end-to-end distance check

@dataclass
class DistanceReport:
    q: int
    epsilon: float
    samples: int
    support_size: int
    distance: float
    bound: float
    slack: float
    off_variety: int
    fallbacks: int
    rsamp_failures: int

    @property
    def passed(self) -> bool:
        return self.off_variety == 0 and self.distance <= self.bound + self.slack

    def to_text(self) -> str:
        lines = [
            f"q: {self.q}",
            f"epsilon: {self.epsilon}",
            f"samples: {self.samples}",
            f"|V|: {self.support_size}",
            f"distance: {self.distance:.6f}",
            f"bound: {self.bound:.6f}",
            f"slack: {self.slack:.6f}",
            f"off_variety: {self.off_variety}",
            f"fallbacks: {self.fallbacks}",
            f"rsamp_failures: {self.rsamp_failures}",
            "PASS" if self.passed else "FAIL",
        ]
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({**asdict(self), "passed": self.passed})


def verify_distance(
    sys: PolySystem, params: SamplerParams, samples: int, rng: RandomSource, confidence: float = 0.99
) -> DistanceReport:
    """Sample, brute-force V, and compare against the ``6 / q^(1 - eps)`` bound."""
    support = enumerate_variety(sys)
    if not support:
        raise EmptySample("the variety has no rational points")
    points, reports = sample_variety(sys, params, samples, rng)
    on_v = set(support)
    off = sum(pt not in on_v for pt in points)
    dist = statistical_distance(empirical_distribution(points), uniform_distribution(support))
    q = sys.field.p
    return DistanceReport(
        q=q,
        epsilon=params.epsilon,
        samples=samples,
        support_size=len(support),
        distance=float(dist),
        bound=6 / q ** (1 - params.epsilon),
        slack=sampling_slack(len(support), samples, confidence),
        off_variety=off,
        fallbacks=sum(r.fell_back for r in reports),
        rsamp_failures=sum(r.rsamp_failures for r in reports),
    )


# ---------------------------------------------------------------------------
# exact law of the bipartite sampler on an explicit graph

def bipartite_output_law(
    right: Sequence[Sequence[Hashable]], d_max: int, p_fail, t0: int, fallback: Hashable
) -> EmpiricalDistribution:
    """Output law of ``bipartite_sample`` when ``rsamp`` fails with probability
    ``p_fail`` and otherwise returns a uniform element of ``right``."""
    p_fail = Fraction(p_fail)
    r = len(right)
    per: Counter = Counter()
    for nbrs in right:
        for u in nbrs:
            per[u] += 1
    scale = (1 - p_fail) / (d_max * r)
    per_iter = {u: c * scale for u, c in per.items()}
    phi = 1 - sum(per_iter.values())
    geo = (1 - phi**t0) / (1 - phi)
    law = {u: m * geo for u, m in per_iter.items()}
    law[fallback] = law.get(fallback, Fraction(0)) + phi**t0
    return EmpiricalDistribution(law)


def per_iteration_law(right: Sequence[Sequence[Hashable]]) -> EmpiricalDistribution:
    """Law of one accepted iteration: proportional to left degree."""
    per: Counter = Counter(u for nbrs in right for u in nbrs)
    total = sum(per.values())
    return EmpiricalDistribution({u: Fraction(c, total) for u, c in per.items()})


# ---------------------------------------------------------------------------
# synthetic almost-regular bipartite graphs

@dataclass(frozen=True)
class SyntheticGraph:
    left: tuple
    right: tuple[tuple, ...]
    ell: int

    @property
    def left_degrees(self) -> Counter:
        return Counter(u for nbrs in self.right for u in nbrs)

    @property
    def realized_delta(self) -> Fraction:
        return max(abs(Fraction(d, self.ell) - 1) for d in self.left_degrees.values())


def synthetic_graph(r, n_left: int, ell: int, delta: float, d_max: int) -> SyntheticGraph:
    """Random graph whose left degrees lie in ``ell (1 +- delta)`` and whose right
    degrees lie in ``1..d_max``; ``r`` is a ``random.Random``."""
    lo, hi = math.ceil(ell * (1 - delta)), math.floor(ell * (1 + delta))
    if lo > hi:
        raise ConfigError(f"no integer degree within ell(1 +- delta) for ell={ell}, delta={delta}")
    stubs = [u for u in range(n_left) for _ in range(r.randint(lo, hi))]
    r.shuffle(stubs)
    right, group, size = [], [], r.randint(1, d_max)
    for u in stubs:
        if u in group or len(group) == size:
            right.append(tuple(group))
            group, size = [], r.randint(1, d_max)
        group.append(u)
    right.append(tuple(group))
    return SyntheticGraph(tuple(range(n_left)), tuple(right), ell)


def synthetic_oracles(graph: SyntheticGraph, d_max: int, p_fail, delta: float):
    """Oracles over an explicit graph; ``rsamp`` fails with probability ``p_fail``
    (a ``Fraction``) and ``fallback`` always returns the first left vertex."""
    from .sampler import BipartiteOracles

    p_fail = Fraction(p_fail)
    num, den = p_fail.numerator, p_fail.denominator
    right = graph.right
    n_right = len(right)
    first = graph.left[0]

    def rsamp(rng):
        if num and rng.below(den) < num:
            return None
        return right[rng.below(n_right)]

    return BipartiteOracles(rsamp, lambda v: v, lambda rng: first, d_max, p_fail, delta)
