import math
import random
from collections import Counter
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from varsample.elim import Kind
from varsample.errors import BudgetExhausted, ConfigError, ConfigRejected, VarietyLikelyEmpty
from varsample.field import RandomSource
from varsample.geometry import AffineSubspace
from varsample.sampler import (
    BipartiteOracles,
    ProperSubspace,
    SamplerParams,
    bipartite_sample,
    make_variety_oracles,
    restrict_and_solve,
    retry_budget,
    sample_variety,
    sample_variety_point,
)
from varsample.verify import (
    bipartite_output_law,
    empirical_distribution,
    enumerate_variety,
    per_iteration_law,
    sampling_slack,
    statistical_distance,
    synthetic_graph,
    synthetic_oracles,
    uniform_distribution,
)

from conftest import system


def test_retry_budget_examples():
    assert retry_budget(2, 0, 0.1) == 5
    assert retry_budget(4, 0.75, 0.01) == 74
    assert retry_budget(1, 0, 0.4999999) == 1  # clamped up from 1 or 0
    assert retry_budget(1, 0, 0.5 - 1e-12) == 1


@given(
    st.integers(1, 50),
    st.floats(0, 0.95),
    st.floats(0.001, 0.49),
    st.integers(0, 5),
    st.floats(0, 0.04),
    st.floats(0.0, 0.009),
)
def test_retry_budget_monotone(d, p, delta, dd, dp, ddelta):
    base = retry_budget(d, p, delta)
    assert retry_budget(d + dd, p, delta) >= base
    assert retry_budget(d, p + dp, delta) >= base
    assert retry_budget(d, p, delta + ddelta) <= base


def test_oracle_invariants():
    with pytest.raises(ConfigError):
        BipartiteOracles(None, None, None, 2, 1.0, 0.1)
    with pytest.raises(ConfigError):
        BipartiteOracles(None, None, None, 2, 0.0, 0.5)
    with pytest.raises(ConfigError):
        BipartiteOracles(None, None, None, 0, 0.0, 0.1)


def test_single_right_vertex():
    o = BipartiteOracles(lambda rng: "R", lambda v: ["u"], lambda rng: "fallback", 1, 0, 0.1)
    point, report = bipartite_sample(o, RandomSource(0))
    assert point == "u" and report.iterations_used == 1 and not report.fell_back


def test_complete_bipartite_exactly_uniform():
    right = [("a", "b", "c")] * 4
    law = bipartite_output_law(right, 3, 0, retry_budget(3, 0, 0.1), "a")
    assert statistical_distance(law, uniform_distribution("abc")) == 0


def test_three_vertex_degrees_9_10_11():
    # left degrees 9, 10, 11 around ell = 10; every right vertex has one neighbour
    right = [("a",)] * 9 + [("b",)] * 10 + [("c",)] * 11
    per = per_iteration_law(right)
    assert per == empirical_distribution(["a"] * 9 + ["b"] * 10 + ["c"] * 11)
    assert statistical_distance(per, uniform_distribution("abc")) == Fraction(1, 30)
    # d_max = 1 and no failures: the first iteration always outputs
    law = bipartite_output_law(right, 1, 0, retry_budget(1, 0, 0.1), "a")
    assert law == per
    o = BipartiteOracles(lambda rng: right[rng.below(30)], lambda v: v, lambda rng: "a", 1, 0, 0.1)
    rng = RandomSource(3)
    n = 60_000
    emp = empirical_distribution(bipartite_sample(o, rng)[0] for _ in range(n))
    assert statistical_distance(emp, law) <= sampling_slack(3, n)


def test_degree_bound_small_synthetic():
    r = random.Random(1)
    rng = RandomSource(8)
    for delta in (0.1, 0.2):
        g = synthetic_graph(r, 12, 20, delta, 3)
        assert g.realized_delta <= Fraction(delta).limit_denominator(1000)
        p_fail = Fraction(1, 4)
        o = synthetic_oracles(g, 3, p_fail, delta)
        t0 = retry_budget(3, p_fail, delta)
        law = bipartite_output_law(g.right, 3, p_fail, t0, g.left[0])
        uniform = uniform_distribution(g.left)
        assert statistical_distance(law, uniform) <= Fraction(3 * delta / (1 - delta))
        n = 40_000
        outs, reports = zip(*(bipartite_sample(o, rng) for _ in range(n)))
        assert all(rep.iterations_used <= t0 for rep in reports)
        emp = empirical_distribution(outs)
        assert statistical_distance(emp, law) <= sampling_slack(len(g.left), n)


def test_variety_oracle_wiring():
    sys = system(13, "xy", "x^2 + y^2 - 1")
    o = make_variety_oracles(sys, SamplerParams(0.25))
    assert o.d_max == 2
    assert o.delta == pytest.approx(13 ** -0.75)
    assert o.p_bound == pytest.approx(0.75)
    terms = [list(f.terms.items()) for f in sys.polys]
    line = AffineSubspace(sys.field, (0, 0), [(1, 0)])
    kind, params = restrict_and_solve(terms, line, RandomSource(0))
    assert kind is Kind.ZERO_DIM
    assert sorted(o.rnei(ProperSubspace(line, tuple(params)))) == [(1, 0), (12, 0)]
    # x = 5 forces y^2 = 2, a non-residue mod 13
    vertical = AffineSubspace(sys.field, (5, 0), [(0, 1)])
    assert restrict_and_solve(terms, vertical, RandomSource(0))[0] is Kind.EMPTY


def test_config_rejected_small_field():
    sys = system(3, "x", "x - 1")
    with pytest.raises(ConfigRejected):
        make_variety_oracles(sys, SamplerParams(0.5))


def test_single_point_variety():
    sys = system(7, "x", "x - 3")
    pts, reports = sample_variety(sys, SamplerParams(0.25), 200, RandomSource(5))
    assert set(pts) == {(3,)}
    assert not any(r.fell_back for r in reports)


def test_empty_variety_raises():
    sys = system(7, "x", "x^2 + 1")
    with pytest.raises(VarietyLikelyEmpty):
        sample_variety_point(sys, SamplerParams(0.25, max_wall_budget=50), RandomSource(0))


def test_budget_exhausted_after_hits():
    sys = system(101, "xy", "x^2 + y^2 - 1")
    params = SamplerParams(0.25)
    real = make_variety_oracles(sys, params)
    calls = [0]

    def first_only(rng):
        calls[0] += 1
        return real.rsamp(rng) if calls[0] <= 20 else None

    def give_up(rng):
        raise BudgetExhausted("test fallback")

    oracles = replace(real, rsamp=first_only, fallback=give_up, d_max=10**5, p_bound=0)
    with pytest.raises(BudgetExhausted) as exc:
        sample_variety_point(sys, params, RandomSource(1), oracles)
    assert not isinstance(exc.value, VarietyLikelyEmpty)


def test_fallback_stays_on_variety():
    sys = system(31, "xy", "y^2 - x^3 - 2")
    real = make_variety_oracles(sys, SamplerParams(0.25))
    never = replace(real, rsamp=lambda rng: None)
    point, report = sample_variety_point(sys, SamplerParams(0.25), RandomSource(2), never)
    assert report.fell_back and sys.is_solution(point)


@pytest.mark.parametrize(
    "q,names,polys",
    [
        (31, "xy", ["y^2 - x^3 - x"]),
        (31, "xyz", ["x^2 + y^2 + z^2 - 1", "x + y + z"]),
        (13, "xyz", ["x*y - z"]),
        (11, "wxyz", ["w + x + y + z", "w*x - y*z", "x - 2*w"]),
    ],
)
def test_outputs_lie_on_variety(q, names, polys):
    sys = system(q, names, *polys)
    on_v = set(enumerate_variety(sys))
    params = SamplerParams(0.25)
    pts, reports = sample_variety(sys, params, 300, RandomSource(q))
    assert set(pts) <= on_v
    o = make_variety_oracles(sys, params)
    t0 = retry_budget(o.d_max, o.p_bound, o.delta)
    assert all(r.iterations_used <= t0 for r in reports)


def test_determinism():
    sys = system(101, "xy", "y^2 - x^3 - x")
    a = sample_variety(sys, SamplerParams(0.25), 100, RandomSource(7))
    b = sample_variety(sys, SamplerParams(0.25), 100, RandomSource(7))
    assert a == b
