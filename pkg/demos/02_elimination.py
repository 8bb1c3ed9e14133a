"""
Solving square systems by elimination
=====================================

A lex Groebner basis turns a square system into a triangular one: the
last element is univariate, and its roots are lifted one variable at a time.
"""

from varsample import Kind, RandomSource, classify_intersection, lex_groebner
from varsample.poly import format_poly
from varsample.cli import parse_system

circle_and_line = parse_system("""
q=13
vars: a, b
a^2 + b^2 - 1
a + b - 1
""")
basis = lex_groebner(circle_and_line)
print("lex basis:")
for g in basis:
    print("   ", format_poly(g, ["a", "b"]))

result = classify_intersection(circle_and_line, RandomSource(0))
print(result.kind.value, result.points)

# the same circle against a line that misses it over F_13 (but not over the closure)
misses = parse_system("q=13\nvars: a, b\na^2 + b^2 - 1\na - 5\n")
print("a = 5:", classify_intersection(misses).kind.value)

# a shared factor makes the intersection a whole curve
curve = parse_system("q=13\nvars: a, b\na^2 + a b\na b + b^2\n")
kind = classify_intersection(curve).kind
print("shared factor a + b:", kind.value)
assert kind is Kind.POSITIVE_DIM
