"""Distinct roots in F_p of a univariate polynomial (Rabin-style splitting)."""

from __future__ import annotations

from .errors import BothZero, SplitStall, ZeroPolynomial
from .field import Field, FieldElement, RandomSource
from .poly import UniPoly, up_gcd, up_monic, up_mod, up_powmod, up_sub

REDRAWS_PER_DEGREE = 64


def powmod_x_q(f: UniPoly, field: Field | None = None) -> UniPoly:
    """``x**p mod f`` in the quotient ring F_p[x]/(f)."""
    field = field or f.field
    if f.is_zero() or f.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    m = up_monic(f.coeffs, field.p)
    return UniPoly._raw(up_powmod([0, 1], field.p, m, field.p), field)


def upoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    return UniPoly._raw(up_gcd(a.coeffs, b.coeffs, a.field.p), a.field)


def _split_roots(g: list, p: int, rng: RandomSource, budget: list) -> list[int]:
    """Roots of a monic squarefree ``g`` that splits into distinct linear factors."""
    if len(g) == 2:
        return [(-g[0]) % p]
    if len(g) < 2:
        return []
    half = (p - 1) // 2
    deg = len(g) - 1
    while True:
        if budget[0] <= 0:
            raise SplitStall(f"no splitting shift found for a degree-{deg} factor")
        budget[0] -= 1
        shift = rng.below(p)
        h = up_powmod([shift, 1], half, g, p)
        h = up_sub(h, [1], p)
        d = up_gcd(g, h, p)
        if 1 < len(d) < len(g):
            break
    quotient = _exact_quotient(g, d, p)
    return _split_roots(d, p, rng, budget) + _split_roots(quotient, p, rng, budget)


def _exact_quotient(a: list, b: list, p: int) -> list:
    # b monic and divides a
    r = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        q[i - db] = c
        if c:
            off = i - db
            for j in range(db):
                r[off + j] -= c * b[j]
    return q


def roots_of_coeffs(coeffs: list, p: int, rng: RandomSource) -> list[int]:
    """Sorted distinct roots of a nonzero coefficient list over F_p."""
    if not coeffs:
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    if len(coeffs) == 1:
        return []
    f = up_monic(coeffs, p)
    if len(f) == 2:
        return [(-f[0]) % p]
    xp = up_powmod([0, 1], p, f, p)
    g = up_gcd(f, up_sub(xp, [0, 1], p), p)
    if len(g) <= 1:
        return []
    budget = [REDRAWS_PER_DEGREE * (len(f) - 1)]
    return sorted(_split_roots(g, p, rng, budget))


def roots_in_field(f: UniPoly, field: Field | None = None, rng: RandomSource | None = None) -> set[FieldElement]:
    """All ``a`` in F_p with ``f(a) == 0``, each once.

    ``gcd(f, x^p - x)`` keeps exactly the distinct linear factors, which are
    then separated by ``gcd(g, (x + s)^((p-1)/2) - 1)`` for random shifts ``s``.
    """
    field = field or f.field
    rng = rng if rng is not None else RandomSource(0)
    return {FieldElement(r, field) for r in roots_of_coeffs(list(f.coeffs), field.p, rng)}
