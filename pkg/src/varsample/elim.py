"""Solving square polynomial systems over F_p by lex Groebner bases.

A system of k polynomials in k unknowns is reduced to a lex basis; the basis
decides whether the solution set is empty, finite or positive dimensional,
and finite solution sets are read off by back-substitution with univariate
root finding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (
    ConfigError,
    DimensionMismatch,
    EliminationBudgetExceeded,
    MixedFields,
    NotZeroDimensional,
    TooManyPolys,
)
from .field import Field, RandomSource
from .poly import MultiPoly, up_gcd, up_trim
from .rootfind import roots_of_coeffs

MAX_K = 4
DEFAULT_SPAIR_BUDGET = 10**6


@dataclass(frozen=True)
class PolySystem:
    field: Field
    num_vars: int
    polys: tuple[MultiPoly, ...]
    names: tuple[str, ...] | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.num_vars:
                raise DimensionMismatch(f"{len(self.names)} names for {self.num_vars} variables")
        k = len(self.polys)
        if k < 1:
            raise ConfigError("a system needs at least one polynomial")
        if k > MAX_K:
            raise TooManyPolys(f"{k} polynomials exceeds the cap of {MAX_K}")
        if k > self.num_vars:
            raise ConfigError(f"{k} polynomials in only {self.num_vars} variables")
        for f in self.polys:
            if f.field != self.field:
                raise MixedFields("system polynomials must share the field")
            if f.nvars != self.num_vars:
                raise DimensionMismatch(f"polynomial in {f.nvars} variables, system has {self.num_vars}")

    @property
    def k(self) -> int:
        return len(self.polys)

    @property
    def degree_bound(self) -> int:
        return max(f.total_degree() for f in self.polys)

    @property
    def var_names(self) -> tuple[str, ...]:
        return self.names or tuple(f"x{i + 1}" for i in range(self.num_vars))

    def is_solution(self, point: Sequence[int]) -> bool:
        return all(f.eval_int(point) == 0 for f in self.polys)


class Kind(enum.Enum):
    EMPTY = "empty"
    ZERO_DIM = "zero-dimensional"
    POSITIVE_DIM = "positive-dimensional"


@dataclass(frozen=True)
class IntersectionClass:
    kind: Kind
    points: tuple[tuple[int, ...], ...] = ()
    basis: tuple[MultiPoly, ...] = dc_field(default=(), compare=False, repr=False)


# ---------------------------------------------------------------------------
# Buchberger on {exponents: coeff} dicts; lex order is plain tuple order

def _monic(f: dict, p: int) -> dict:
    lead = f[max(f)]
    if lead == 1:
        return f
    inv = pow(lead, -1, p)
    return {m: c * inv % p for m, c in f.items()}


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(f: dict, basis: list, p: int) -> dict:
    """Full normal form of ``f`` modulo monic ``basis`` entries ``(lm, terms)``."""
    f = dict(f)
    rem = {}
    while f:
        lm = max(f)
        c = f.pop(lm)
        for glm, gterms in basis:
            if _divides(glm, lm):
                shift = tuple(x - y for x, y in zip(lm, glm))
                for m, gc in gterms:
                    if m == glm:
                        continue
                    mm = tuple(x + y for x, y in zip(m, shift))
                    v = (f.get(mm, 0) - c * gc) % p
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            rem[lm] = c
    return rem


def _spoly(f: tuple, g: tuple, p: int) -> dict:
    (flm, fterms), (glm, gterms) = f, g
    lcm = tuple(max(x, y) for x, y in zip(flm, glm))
    fs = tuple(x - y for x, y in zip(lcm, flm))
    gs = tuple(x - y for x, y in zip(lcm, glm))
    out: dict = {}
    for m, c in fterms:
        mm = tuple(x + y for x, y in zip(m, fs))
        out[mm] = c
    for m, c in gterms:
        mm = tuple(x + y for x, y in zip(m, gs))
        v = (out.get(mm, 0) - c) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _entry(f: dict) -> tuple:
    return max(f), tuple(f.items())


def groebner_dicts(polys: Sequence[dict], p: int, k: int, budget: int = DEFAULT_SPAIR_BUDGET) -> list[dict]:
    """Reduced monic lex basis; ``[{0..0: 1}]`` for the unit ideal, ``[]`` for the zero ideal."""
    one = {(0,) * k: 1}
    basis = []
    for f in polys:
        if not f:
            continue
        if max(f) == (0,) * k:
            return [one]
        basis.append(_entry(_monic(f, p)))
    if not basis:
        return []
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    spent = 0
    while pairs:
        # normal strategy: smallest lcm of leading monomials first
        best = min(
            range(len(pairs)),
            key=lambda t: tuple(max(x, y) for x, y in zip(basis[pairs[t][0]][0], basis[pairs[t][1]][0])),
        )
        i, j = pairs.pop(best)
        a, b = basis[i][0], basis[j][0]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        spent += 1
        if spent > budget:
            raise EliminationBudgetExceeded(f"more than {budget} S-pair reductions")
        h = _reduce(_spoly(basis[i], basis[j], p), basis, p)
        if h:
            if max(h) == (0,) * k:
                return [one]
            basis.append(_entry(_monic(h, p)))
            n = len(basis) - 1
            pairs.extend((m, n) for m in range(n))
    # minimize, then inter-reduce
    lms = [lm for lm, _ in basis]
    keep = []
    for idx, lm in enumerate(lms):
        redundant = any(
            _divides(other, lm) and (other != lm or jdx < idx)
            for jdx, other in enumerate(lms)
            if jdx != idx
        )
        if not redundant:
            keep.append(basis[idx])
    reduced = []
    for idx, (lm, terms) in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        tail = _reduce({m: c for m, c in terms if m != lm}, others, p)
        tail[lm] = 1
        reduced.append(tail)
    reduced.sort(key=max)
    return reduced


def _lex_basis_k1(polys: Sequence[dict], p: int) -> list[dict]:
    g: list = []
    for f in polys:
        coeffs = [0] * (max(f)[0] + 1) if f else []
        for (e,), c in f.items():
            coeffs[e] = c
        g = up_gcd(g, coeffs, p)
    return [{(e,): c for e, c in enumerate(g) if c}] if g else []


def _to_dicts(sys: PolySystem) -> list[dict]:
    if sys.num_vars != sys.k:
        raise DimensionMismatch(f"expected a square system, got {sys.k} polynomials in {sys.num_vars} variables")
    return [f.terms for f in sys.polys]


def lex_basis(polys: Sequence[dict], p: int, k: int, budget: int = DEFAULT_SPAIR_BUDGET) -> list[dict]:
    if k == 1:
        return _lex_basis_k1(polys, p)
    return groebner_dicts(polys, p, k, budget)


def lex_groebner(sys: PolySystem | Sequence[MultiPoly], budget: int = DEFAULT_SPAIR_BUDGET) -> list[MultiPoly]:
    """Reduced monic lex basis of the ideal with t_1 > t_2 > ... > t_k.

    Accepts a square system or any list of generators in a common ring. The
    unit ideal comes back as ``[1]``; in one variable this is the monic gcd.
    """
    if isinstance(sys, PolySystem):
        field, k, polys = sys.field, sys.num_vars, _to_dicts(sys)
    else:
        gens = list(sys)
        if not gens:
            raise ConfigError("no generators given")
        field, k = gens[0].field, gens[0].nvars
        for g in gens:
            if g.field != field:
                raise MixedFields("generators must share the field")
            if g.nvars != k:
                raise DimensionMismatch("generators must share the variable count")
        polys = [g.terms for g in gens]
    return [MultiPoly._raw(field, k, g) for g in lex_basis(polys, field.p, k, budget)]


def is_zero_dimensional(basis: Sequence[dict], k: int) -> bool:
    """Every variable must own a basis element whose leading monomial is a pure power of it."""
    found = [False] * k
    for g in basis:
        lm = max(g)
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            found[nz[0]] = True
    return all(found)


def _back_substitute(basis: list[dict], p: int, k: int, rng: RandomSource) -> list[tuple[int, ...]]:
    # layers[j]: basis elements living in F[t_j..t_k] that involve t_j
    layers: list[list[dict]] = [[] for _ in range(k)]
    for g in basis:
        first = min(i for m in g for i, e in enumerate(m) if e) if max(g) != (0,) * k else k
        if first < k:
            layers[first].append(g)
    partial: list[tuple[int, ...]] = [()]
    for j in range(k - 1, -1, -1):
        extended = []
        for tail in partial:
            g_acc: list = []
            for g in layers[j]:
                coeffs: dict = {}
                for m, c in g.items():
                    for x, e in zip(tail, m[j + 1:]):
                        if e:
                            c = c * pow(x, e, p) % p
                    coeffs[m[j]] = (coeffs.get(m[j], 0) + c) % p
                uni = up_trim([coeffs.get(e, 0) for e in range(max(coeffs) + 1)])
                if uni:
                    g_acc = up_gcd(g_acc, uni, p)
            if not g_acc:
                # lex basis of a zero-dimensional ideal always leaves a pure power here
                raise NotZeroDimensional(f"no univariate condition survives for t_{j + 1}")
            for r in roots_of_coeffs(g_acc, p, rng):
                extended.append((r,) + tail)
        partial = extended
        if not partial:
            break
    return partial


def solve_dicts(
    polys: Sequence[dict], p: int, k: int, rng: RandomSource, budget: int = DEFAULT_SPAIR_BUDGET
) -> tuple[Kind, list[tuple[int, ...]], list[dict]]:
    basis = lex_basis(polys, p, k, budget)
    if basis and max(basis[0]) == (0,) * k:
        return Kind.EMPTY, [], basis
    if not is_zero_dimensional(basis, k):
        return Kind.POSITIVE_DIM, [], basis
    points = _back_substitute(basis, p, k, rng)
    for pt in points:
        for f in polys:
            if _eval_dict(f, pt, p):
                raise RuntimeError(f"back-substitution produced a non-solution {pt}")
    if not points:
        return Kind.EMPTY, [], basis
    return Kind.ZERO_DIM, points, basis


def _eval_dict(f: dict, pt: Sequence[int], p: int) -> int:
    acc = 0
    for m, c in f.items():
        for x, e in zip(pt, m):
            if e:
                c = c * pow(x, e, p)
        acc += c
    return acc % p


def classify_intersection(
    sys: PolySystem, rng: RandomSource | None = None, budget: int = DEFAULT_SPAIR_BUDGET
) -> IntersectionClass:
    """Empty, zero-dimensional with its F_p-points, or positive-dimensional.

    Only F_p-rational points count: a finite variety with no rational point
    is reported as empty.
    """
    rng = rng if rng is not None else RandomSource(0)
    k = sys.num_vars
    kind, points, basis = solve_dicts(_to_dicts(sys), sys.field.p, k, rng, budget)
    wrapped = tuple(MultiPoly._raw(sys.field, k, g) for g in basis)
    return IntersectionClass(kind, tuple(sorted(points)), wrapped)


def enumerate_solutions(
    sys: PolySystem, rng: RandomSource | None = None, budget: int = DEFAULT_SPAIR_BUDGET
) -> list[tuple[int, ...]]:
    """All F_p-rational solutions of a zero-dimensional square system, sorted."""
    result = classify_intersection(sys, rng, budget)
    if result.kind is Kind.POSITIVE_DIM:
        raise NotZeroDimensional("the system has a positive-dimensional solution set")
    return list(result.points)
