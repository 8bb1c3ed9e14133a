import itertools
import json
import math
import random
from fractions import Fraction

import pytest

from varsample.errors import ConfigError, EmptySample, TooLarge, ZeroPolynomial
from varsample.field import Field, RandomSource
from varsample.poly import MultiPoly, parse_poly
from varsample.sampler import SamplerParams
from varsample.verify import (
    EmpiricalDistribution,
    audit_left_degrees,
    count_zeros,
    empirical_distribution,
    enumerate_variety,
    estimate_proper_fraction,
    exact_proper_fraction,
    lang_weil_deviation,
    mix,
    sampling_slack,
    schwartz_zippel_check,
    statistical_distance,
    uniform_distribution,
    verify_distance,
    wilson_interval,
)

from conftest import system
from test_poly import random_multipoly


def random_distribution(r, support):
    weights = [r.randint(0, 5) for _ in support]
    if not any(weights):
        weights[0] = 1
    total = sum(weights)
    return EmpiricalDistribution({x: Fraction(w, total) for x, w in zip(support, weights)})


def test_enumerate_variety_examples():
    assert len(enumerate_variety(system(13, "xy", "x^2 + y^2 - 1"))) == 12
    assert enumerate_variety(system(13, "xy", "1")) == []
    assert enumerate_variety(system(7, "x", "x - 3")) == [(3,)]
    with pytest.raises(TooLarge):
        enumerate_variety(system(101, "abcde", "a"))


def test_enumerate_variety_matches_python_scan():
    sys = system(31, "xyz", "x^2 + y^2 + z^2 - 1", "x + y + z")
    brute = [pt for pt in itertools.product(range(31), repeat=3) if sys.is_solution(pt)]
    assert enumerate_variety(sys) == brute


def test_distance_examples():
    a = EmpiricalDistribution({0: Fraction(1, 2), 1: Fraction(1, 2)})
    b = EmpiricalDistribution({0: Fraction(3, 4), 1: Fraction(1, 4)})
    assert statistical_distance(a, a) == 0
    assert statistical_distance(a, b) == Fraction(1, 4)
    assert statistical_distance(uniform_distribution([0]), uniform_distribution([1])) == 1


def test_distribution_validation():
    with pytest.raises(ValueError):
        EmpiricalDistribution({0: Fraction(1, 3)})
    with pytest.raises(EmptySample):
        empirical_distribution([])


def test_empirical_distribution():
    d = empirical_distribution([(3,), (3,), (5,), (5,)])
    assert d.mass == {(3,): Fraction(1, 2), (5,): Fraction(1, 2)}
    assert empirical_distribution([(1, 2)]).mass == {(1, 2): 1}
    assert empirical_distribution([1, 2, 2, 3]) == empirical_distribution([2, 3, 2, 1])


def test_mix_examples():
    r = random.Random(0)
    a, e = random_distribution(r, range(5)), random_distribution(r, range(3, 9))
    assert mix(a, e, 0) == a
    assert mix(a, e, 1) == e
    with pytest.raises(ValueError):
        mix(a, e, Fraction(3, 2))


def test_distance_is_a_metric():
    r = random.Random(1)
    for _ in range(300):
        support = range(r.randint(1, 8))
        a, b, c = (random_distribution(r, support) for _ in range(3))
        assert statistical_distance(a, b) == statistical_distance(b, a)
        assert (statistical_distance(a, b) == 0) == (a == b)
        assert statistical_distance(a, c) <= statistical_distance(a, b) + statistical_distance(b, c)


def test_distance_equals_max_event_gap():
    r = random.Random(2)
    for _ in range(60):
        support = list(range(r.randint(1, 12)))
        a, b = random_distribution(r, support), random_distribution(r, support)
        best = max(
            abs(a.prob(ev) - b.prob(ev))
            for size in range(len(support) + 1)
            for ev in itertools.combinations(support, size)
        )
        assert statistical_distance(a, b) == best


def test_lang_weil_deviation_examples():
    assert lang_weil_deviation(101, 1, 1, 101) == 0
    assert lang_weil_deviation(2 * 7**2 + 7**1.5, 2, 2, 7) == pytest.approx(1.0)
    n = len(enumerate_variety(system(101, "xy", "y^2 - x^3 - x")))
    assert n == 99
    assert lang_weil_deviation(n, 1, 1, 101) <= 2
    with pytest.raises(ValueError):
        lang_weil_deviation(1, 0, 1, 7)


def test_schwartz_zippel_examples():
    F7 = Field(7)
    x = MultiPoly.var(F7, 2, 0)
    assert count_zeros(x) == 7
    assert schwartz_zippel_check(x)
    assert schwartz_zippel_check(MultiPoly.constant(F7, 2, 3))
    with pytest.raises(ZeroPolynomial):
        schwartz_zippel_check(MultiPoly(F7, 2, {}))


def test_schwartz_zippel_tight_product_of_lines():
    # (x-0)(x-1)...(x-(d-1)) has exactly d q^(n-1) zeros
    F = Field(11)
    f = MultiPoly.constant(F, 2, 1)
    for c in range(4):
        f = f * (MultiPoly.var(F, 2, 0) - MultiPoly.constant(F, 2, c))
    assert count_zeros(f) == 4 * 11
    assert schwartz_zippel_check(f)


def test_count_zeros_agrees_with_python_scan():
    r = random.Random(6)
    F = Field(13)
    for _ in range(20):
        f = random_multipoly(r, F, 3, 4)
        brute = sum(f.eval_int(pt) == 0 for pt in itertools.product(range(13), repeat=3))
        assert count_zeros(f) == brute


def test_estimate_proper_fraction_examples():
    assert estimate_proper_fraction(system(7, "x", "x - 3"), 50, RandomSource(0)) == 1
    with pytest.raises(ConfigError):
        estimate_proper_fraction(system(7, "x", "x - 3"), 0, RandomSource(0))


def test_exact_proper_fraction_circle_f11():
    # 12 points: 12 tangents plus C(12, 2) secants among 132 lines
    assert exact_proper_fraction(system(11, "xy", "x^2 + y^2 - 1")) == Fraction(12 + 66, 132)


def test_audit_examples():
    a = audit_left_degrees(system(7, "x", "x - 3"))
    assert a.degrees == {(3,): 1} and a.min_ratio == a.max_ratio == 1
    a = audit_left_degrees(system(11, "xy", "x^2 + y^2 - 1"))
    assert len(a.degrees) == 12
    assert a.min_degree == a.max_degree == 12  # every line through a point meets the conic properly
    assert audit_left_degrees(system(7, "xy", "x^2 + y^2 + 1", "x")).degrees == {}


def test_wilson_interval():
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    assert hi - lo == pytest.approx(2 * 1.96 * math.sqrt(0.25 / 100), rel=0.05)


def test_sampling_slack_shrinks():
    assert sampling_slack(30, 10**6) < sampling_slack(30, 10**5) < sampling_slack(300, 10**5)


def test_verify_distance_report():
    sys = system(31, "xy", "y^2 - x^3 - x")
    rep = verify_distance(sys, SamplerParams(0.25), 2000, RandomSource(0))
    assert rep.off_variety == 0 and rep.support_size == len(enumerate_variety(sys))
    assert rep.passed
    assert "PASS" in rep.to_text()
    assert json.loads(rep.to_json())["passed"] is True
