"""
Prime fields and root finding
=============================

Arithmetic in F_p, then the roots of a univariate polynomial found by
gcd with x^p - x followed by random splitting.
"""

from varsample import Field, RandomSource, UniPoly, powmod_x_q, roots_in_field, upoly_gcd

F = Field(13)
a, b = F(5), F(11)
print("5 + 11 =", (a + b).value, " 5 * 11 =", (a * b).value, " 1/5 =", a.inverse().value)
print("2^100 mod 13 =", (F(2) ** 100).value)

# (x - 1)(x - 4)(x^2 + 1): x^2 + 1 has no roots mod 7
G = Field(7)
f = UniPoly([6, 1], G) * UniPoly([3, 1], G) * UniPoly([1, 0, 1], G)
print("f =", f.coeffs)

# the rational part of f is gcd(f, x^7 - x)
xp = powmod_x_q(f)
rational = upoly_gcd(f, xp - UniPoly([0, 1], G))
print("gcd(f, x^7 - x) =", rational.coeffs)
print("roots:", sorted(r.value for r in roots_in_field(f, rng=RandomSource(1))))

# a bigger prime; a product of eight linear factors splits completely
P = Field(1_000_003)
g = UniPoly([1], P)
for r in (2, 3, 5, 7, 11, 13, 17, 19):
    g = g * UniPoly([-r, 1], P)
print("roots mod 1000003:", sorted(r.value for r in roots_in_field(g, rng=RandomSource(2))))
