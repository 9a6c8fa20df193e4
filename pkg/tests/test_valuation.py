import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from valuation_lab import INFINITY, LabError, PadicApprox, Value, newton_polygon, vp_rational, weak_approximation
from valuation_lab.exact import poly_from_ints

from conftest import P

primes = st.sampled_from([2, 3, 5, 7, 11])
rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)
values = st.builds(Value, st.fractions(max_denominator=12, min_value=-50, max_value=50), st.integers(-3, 3))


def test_vp_rational_examples():
    assert vp_rational(Fraction(12, 5), 2) == Value(2)
    assert vp_rational(Fraction(12, 5), 5) == Value(-1)
    assert vp_rational(0, 3) is INFINITY
    with pytest.raises(LabError) as err:
        vp_rational(3, 4)
    assert err.value.code == "NOT_PRIME"


@given(rationals, rationals, primes)
def test_valuation_axioms(x, y, p):
    assume(x != 0 and y != 0)
    assert vp_rational(x * y, p) == vp_rational(x, p) + vp_rational(y, p)
    assert vp_rational(x + y, p) >= min(vp_rational(x, p), vp_rational(y, p))
    if vp_rational(x, p) != vp_rational(y, p) and x + y != 0:
        assert vp_rational(x + y, p) == min(vp_rational(x, p), vp_rational(y, p))


@given(values, values, values)
def test_value_order_is_translation_invariant(u, v, w):
    if u <= v:
        assert u + w <= v + w
    assert (u + v) - v == u


def test_value_order_is_lexicographic_on_r_first():
    r = Value(0, 1)
    assert Value(10**9) < r
    assert Value(-5, 1) > Value(1000)
    assert Value(3, -1) < Value(-3)
    assert INFINITY > Value(0, 10**6)
    assert Value.from_json(Value(Fraction(1, 2), 3).to_json()) == Value(Fraction(1, 2), 3)
    assert Value.from_json("inf") is INFINITY


def test_newton_polygon_eisenstein():
    npg = newton_polygon(P("x^3 - 2"), 2)
    assert npg.segments == ((Fraction(-1, 3), 3),)
    assert npg.root_values() == [(Fraction(1, 3), 3)]


def test_newton_polygon_two_segments():
    npg = newton_polygon(P("x^2 - 6*x + 8"), 2)
    assert npg.root_values() == [(Fraction(2), 1), (Fraction(1), 1)]
    assert npg.to_json() == {
        "segments": [{"slope": "-2", "length": 1}, {"slope": "-1", "length": 1}],
        "root_values": [{"value": "2", "count": 1}, {"value": "1", "count": 1}],
    }


def test_newton_polygon_zero():
    with pytest.raises(LabError) as err:
        newton_polygon(P("0"), 3)
    assert err.value.code == "ZERO_POLY"


@given(st.lists(st.integers(-200, 200), min_size=2, max_size=8), primes)
def test_newton_polygon_total_root_value(cs, p):
    assume(cs[0] != 0 and cs[-1] != 0)
    f = poly_from_ints(cs)
    npg = newton_polygon(f, p)
    total = sum(-s * n for s, n in npg.segments)
    assert total == vp_rational(cs[0], p).a - vp_rational(cs[-1], p).a
    assert sum(n for _, n in npg.segments) == f.degree()
    slopes = [s for s, _ in npg.segments]
    assert slopes == sorted(slopes) and len(set(slopes)) == len(slopes)


def test_padic_approx_from_integer():
    a = PadicApprox.from_integer(10, 7, 2)
    assert (a.unit, a.shift, a.N) == (10, 0, 2)
    b = PadicApprox.from_integer(50, 5, 4)
    assert (b.unit, b.shift, b.N, b.to_integer()) == (2, 2, 2, 50)
    assert PadicApprox.from_integer(0, 3, 2).to_integer() == 0


def test_weak_approximation_over_q_example():
    assert weak_approximation([2, 3], [1, 0]) == 3


def test_weak_approximation_rejects_duplicates_and_non_integral():
    with pytest.raises(LabError) as err:
        weak_approximation([3, 3], [1, 2])
    assert err.value.code == "DUPLICATE_VALUATIONS"
    with pytest.raises(LabError) as err:
        weak_approximation([2, 3], [Fraction(1, 2), 1])
    assert err.value.code == "NOT_INTEGRAL"


@given(st.lists(primes, min_size=2, max_size=3, unique=True), st.data())
def test_weak_approximation_postconditions(ps, data):
    targets = []
    for p in ps:
        num = data.draw(st.integers(-30, 30))
        den = data.draw(st.integers(1, 30).filter(lambda d: d % p != 0))
        targets.append(Fraction(num, den))
    a = weak_approximation(ps, targets)
    for p, t in zip(ps, targets):
        assert vp_rational(a, p) >= 0
        assert vp_rational(a - t, p) > 0


def test_weak_approximation_single_valuation_returns_target():
    assert weak_approximation([5], [Fraction(2, 3)]) == Fraction(2, 3)


def test_seeded_suite_matches_crt():
    rng = random.Random(3)
    for _ in range(10):
        ps = rng.sample([2, 3, 5, 7], 2)
        ts = [rng.randrange(p) for p in ps]
        a = weak_approximation(ps, ts)
        assert all(int(a) % p == t for p, t in zip(ps, ts))
