import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from valuation_lab import FieldTower, LabError, absolute_valuations, PrimeField, factor_over_field, hensel_lift, hensel_set_membership, hensel_simple_root
from valuation_lab.config import Config
from valuation_lab.exact import Poly, poly_from_ints
from valuation_lab.hensel import hensel_lift_traced
from valuation_lab.valuation import vp_rational

from conftest import P, hensel_problem, shape_ok, tower

Q = FieldTower.rationals()


def test_worked_lift():
    b, trace = hensel_lift_traced(P("x^2 - 2"), 3, 7, 2)
    assert b.to_integer() == 10 and b.modulus == 49
    assert trace.quadratic()


def test_exact_root_is_its_own_lift():
    for p in [2, 3, 5]:
        for N in [1, 4, 9]:
            assert hensel_lift(P("x^2 - 1"), 1, p, N).to_integer() == 1


def test_precondition_errors():
    with pytest.raises(LabError) as err:
        hensel_lift(P("x^2 - 2"), 0, 2, 5)
    assert err.value.code == "HENSEL_PRECONDITION"
    with pytest.raises(LabError) as err:
        hensel_lift(P("x^2 - 2"), 1, 7, 5)
    assert err.value.code == "HENSEL_PRECONDITION"
    with pytest.raises(LabError) as err:
        hensel_lift(P("x^2 - 2"), 3, 7, 513)
    assert err.value.code == "PRECISION_OVERFLOW"
    with pytest.raises(LabError) as err:
        hensel_lift(P("x^2 - 2"), 3, 7, 20, Config(hensel_precision_cap=10))
    assert err.value.code == "PRECISION_OVERFLOW"
    with pytest.raises(LabError) as err:
        hensel_lift(P("x^2 - 1/7"), 3, 7, 2)
    assert err.value.code == "NOT_INTEGRAL"


def test_seeded_problems():
    rng = random.Random(404)
    for _ in range(50):
        f, a, p = hensel_problem(rng)
        N = rng.randint(1, 30)
        b, trace = hensel_lift_traced(f, a, p, N)
        bi = b.to_integer()
        k = vp_rational(f.derivative()(a), p)
        assert vp_rational(f(bi), p) >= N
        assert vp_rational(bi - a, p) > k or (bi - a) % p**N == 0
        assert trace.quadratic()


@given(st.integers(0, 10**6), st.integers(1, 40))
def test_lift_uniqueness(seed, N):
    rng = random.Random(seed)
    f, a, p = hensel_problem(rng)
    k = vp_rational(f.derivative()(a), p).a
    other = a + p ** (int(k) + 1) * rng.randint(-5, 5)
    if vp_rational(f(other), p) <= 2 * vp_rational(f.derivative()(other), p):
        return
    assert hensel_lift(f, a, p, N).to_integer() == hensel_lift(f, other, p, N).to_integer()


def test_simple_root_examples():
    b = hensel_simple_root(P("x^2 - 7"), 1, 3, 6)
    assert b.to_integer() % 3 == 1
    assert (b.to_integer() ** 2 - 7) % 3**6 == 0
    b = hensel_simple_root(P("x - 4"), PrimeField(5)(4), 5, 3)
    assert b.to_integer() == 4
    with pytest.raises(LabError) as err:
        hensel_simple_root(P("x^2"), 0, 2, 3)
    assert err.value.code == "NOT_SIMPLE_ROOT"
    with pytest.raises(LabError) as err:
        hensel_simple_root(P("x^2 - 7"), PrimeField(5)(1), 3, 3)
    assert err.value.code == "DOMAIN_MISMATCH"


@pytest.mark.parametrize(
    "poly, member, reason",
    [
        ("x^2 + x + 2", True, "member"),
        ("x^2 + 3*x + 2", False, "reducible"),
        ("x^2 + x + 1", False, "shape: v(a_0) = 0"),
        ("x^2 + 2*x + 2", False, "shape: v(a_1) > 0"),
    ],
)
def test_hensel_set_examples(poly, member, reason):
    res = hensel_set_membership(Q, 2, P(poly))
    assert (res.member, res.reason) == (member, reason)
    assert res.non_henselian == member


def test_hensel_set_errors():
    with pytest.raises(LabError) as err:
        hensel_set_membership(Q, 2, P("2*x^2 + x + 2"))
    assert err.value.code == "NOT_MONIC"
    with pytest.raises(LabError) as err:
        hensel_set_membership(Q, 2, P("x^2 + x + 1/2"))
    assert err.value.code == "NOT_INTEGRAL"


def test_hensel_set_over_tower():
    K = tower(("s", "x^2 - 2"))
    (v,) = absolute_valuations(K, 2)
    s = K.gen(0)
    f = Poly([s, K.top.one, K.top.one], K.top)
    res = hensel_set_membership(K, v, f)
    assert res.member
    g = Poly([K.top(2), K.top.one, K.top.one], K.top)
    # x^2 + x + 2 stays irreducible: Q(sqrt(-7)) is not Q(sqrt 2)
    assert hensel_set_membership(K, v, g).member


def test_hensel_set_matches_oracle():
    rng = random.Random(808)
    x = sympy.Symbol("x")
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        cs = [p * rng.randint(-6, 6) if rng.random() < 0.8 else rng.randint(-6, 6) for _ in range(n - 1)]
        cs += [rng.randint(-6, 6), 1]
        f = poly_from_ints(cs)
        factors = factor_over_field(f, Q)
        single = len(factors) == 1 and factors[0][1] == 1
        assert single == sympy.Poly(list(reversed(cs)), x).is_irreducible
        assert hensel_set_membership(Q, p, f).member == (shape_ok(cs, p) and single)
