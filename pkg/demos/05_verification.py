"""
Checking the sampler against brute force
========================================

For small fields the whole variety can be listed by a vectorized numpy
scan, so the sampler's output can be compared with the uniform law in
exact rational arithmetic. This script also checks point counts against
the sqrt(q) error term and audits the incidence graph behind the sampler.
"""

from varsample import RandomSource, SamplerParams
from varsample.cli import parse_system
from varsample.verify import (
    audit_left_degrees,
    enumerate_variety,
    estimate_proper_fraction,
    exact_proper_fraction,
    lang_weil_deviation,
    verify_distance,
    wilson_interval,
)

for q in (101, 211, 401, 809):
    curve = parse_system(f"q={q}\nvars: x, y\ny^2 - x^3 - x\n")
    n = len(enumerate_variety(curve))
    print(f"q={q}: {n} points, |N - q| / sqrt(q) = {lang_weil_deviation(n, 1, 1, q):.3f}")

curve = parse_system("q=101\nvars: x, y\ny^2 - x^3 - x\n")
print()
print(verify_distance(curve, SamplerParams(0.25), 20_000, RandomSource(5)).to_text())

# how many random lines meet the circle in a finite nonempty set
circle = parse_system("q=101\nvars: x, y\nx^2 + y^2 - 1\n")
est = estimate_proper_fraction(circle, 2000, RandomSource(6))
lo, hi = wilson_interval(int(est * 2000), 2000)
print(f"\nproper lines through the F_101 circle: {float(est):.3f} (95% interval {lo:.3f}..{hi:.3f})")
small = parse_system("q=11\nvars: x, y\nx^2 + y^2 - 1\n")
print("exact fraction over F_11:", exact_proper_fraction(small))

for q in (11, 31):
    audit = audit_left_degrees(parse_system(f"q={q}\nvars: x, y\nx^2 + y^2 - 1\n"))
    print(f"q={q}: proper lines per point {audit.min_degree}..{audit.max_degree}, "
          f"scale q^(k(n-k)) = {audit.scale}, spread {float(audit.relative_spread):.4f}")
