import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from valuation_lab import (
    FieldTower,
    LabError,
    Value,
    absolute_valuations,
    common_extension_exists,
    extensions_of,
    henselization_membership,
    is_immediate,
    restricts_to,
)
from valuation_lab.exact import poly_from_ints

from conftest import P, tower

ORACLE = json.loads((Path(__file__).parent / "data" / "decomp_oracle.json").read_text())
Q = FieldTower.rationals()


def ef(report):
    return sorted([d.e, d.f] for d in report)


@pytest.mark.parametrize(
    "poly, p, expected",
    [
        ("x^2 - 2", 2, [[2, 1]]),
        ("x^2 + 1", 5, [[1, 1], [1, 1]]),
        ("x^2 + 1", 3, [[1, 2]]),
        ("x^2 - 2*x - 6", 3, [[1, 1], [1, 1]]),
    ],
)
def test_worked_examples(poly, p, expected):
    rep = extensions_of(Q, p, P(poly))
    assert ef(rep) == expected
    assert rep.certified and rep.equality_certificate == rep.degree == 2


def test_report_json_shape():
    rep = extensions_of(Q, 2, P("x^2 - 2"))
    assert rep.to_json() == {
        "certified": True,
        "degree": 2,
        "equality_certificate": 2,
        "extensions": [
            {"e": 2, "f": 1, "path": [{"slope": "0", "residual": "y"}, {"slope": "1/2", "residual": "y + 1"}]}
        ],
    }


def test_path_records_terminal_key():
    (d,) = extensions_of(Q, 3, P("x^2 + 1"))
    assert d.path == [(0, "y^2 + 1"), (None, "")]


@pytest.mark.parametrize("case", ORACLE["small"] + ORACLE["large"], ids=lambda c: f"{c['coeffs']}@{c['p']}")
def test_matches_frozen_pari_decomposition(case):
    rep = extensions_of(Q, case["p"], poly_from_ints(case["coeffs"]))
    assert rep.certified
    assert ef(rep) == case["ef"]


@pytest.mark.parametrize("case", ORACLE["towers"], ids=lambda c: f"{c['levels']}@{c['p']}")
def test_tower_valuations_match_frozen_pari(case):
    K = tower(("s", case["levels"][0]), ("u", case["levels"][1]))
    ws = absolute_valuations(K, case["p"])
    assert sorted([w.absolute_e, w.absolute_f] for w in ws) == case["ef"]
    # relative reports over each valuation of the first level fit together
    K1 = K.prefix(1)
    total = 0
    for v in absolute_valuations(K1, case["p"]):
        rep = extensions_of(K1, v, K.minpolys[1])
        assert rep.certified and rep.degree == K.minpolys[1].degree()
        for d in rep:
            assert d.absolute_e == d.e * v.absolute_e
            assert d.absolute_f == d.f * v.absolute_f
            assert restricts_to(d, v)
        total += len(rep)
    assert total == len(ws)


def test_relative_example_two_extensions():
    K = tower(("s", "x^2 - 21"))
    (v,) = absolute_valuations(K, 3)
    rep = extensions_of(K, v, P("x^2 - 3", field=K.top))
    assert len(rep) == 2 and rep.certified


def test_descriptor_values_are_valuations():
    rep = extensions_of(Q, 3, P("x^2 - 2*x - 6"), name="a")
    L = rep[0].tower
    a = L.gen(0)
    rng = random.Random(11)
    elems = [L.top(Fraction(rng.randint(-9, 9), rng.randint(1, 9))) + rng.randint(-9, 9) * a for _ in range(25)]
    for d in rep:
        for x in elems:
            for y in elems:
                if not x or not y:
                    continue
                assert d.value(x * y) == d.value(x) + d.value(y)
                if x + y:
                    assert d.value(x + y) >= min(d.value(x), d.value(y))
        assert d.value(3) == Value(1)
        assert d.value(0).is_infinite


def test_descriptors_are_pairwise_separated():
    rep = extensions_of(Q, 3, P("x^2 - 2*x - 6"))
    a = rep[0].tower.gen(0)
    assert sorted(d.value(a) for d in rep) == [Value(0), Value(1)]


def test_ramification_matches_uniformizer_value():
    (d,) = extensions_of(Q, 2, P("x^2 - 2"))
    a = d.tower.gen(0)
    assert d.value(a) == Value(Fraction(1, 2))
    (d,) = extensions_of(Q, 3, P("x^3 - 3"))
    assert d.value(d.tower.gen(0)) == Value(Fraction(1, 3))


def test_value_of_poly_degree_bound():
    (d,) = extensions_of(Q, 2, P("x^2 - 2"))
    assert d.value_of_poly(P("x")) == Value(Fraction(1, 2))
    with pytest.raises(LabError) as err:
        d.value_of_poly(P("x^2"))
    assert err.value.code == "DEGREE_BOUND"


def test_not_irreducible():
    with pytest.raises(LabError) as err:
        extensions_of(Q, 2, P("x^2 - 4"))
    assert err.value.code == "NOT_IRREDUCIBLE"


def test_restriction_examples():
    rep = extensions_of(Q, 5, P("x^2 + 1"))
    u1, u2 = rep
    assert restricts_to(u1, 5) and restricts_to(u2, 5)
    assert restricts_to(u1, u1)
    assert not restricts_to(u1, u2)
    rep = extensions_of(Q, 3, P("x^2 - 2*x - 6"))
    assert not restricts_to(rep[0], rep[1])


def test_is_immediate_examples():
    assert not is_immediate(extensions_of(Q, 2, P("x^2 - 2"))[0])
    assert not is_immediate(extensions_of(Q, 3, P("x^2 + 1"))[0])
    assert all(is_immediate(d) for d in extensions_of(Q, 3, P("x^2 - 2*x - 6")))


def test_common_extension_examples():
    u1, u2 = extensions_of(Q, 5, P("x^2 + 1"))
    assert common_extension_exists(u1, u1)
    assert not common_extension_exists(u1, u2)
    (w,) = extensions_of(Q, 5, P("x^2 - 2"))
    assert common_extension_exists(u1, w)
    assert common_extension_exists(u2, w)


def test_common_extension_over_different_primes_is_false():
    (u,) = extensions_of(Q, 3, P("x^2 + 1"))
    (w,) = extensions_of(Q, 2, P("x^2 - 2"))
    assert not common_extension_exists(u, w)


def test_henselization_membership_examples():
    g = P("x^2 - 2*x - 6")
    assert henselization_membership(g, 3, 0) and henselization_membership(g, 3, 1)
    assert not henselization_membership(P("x^2 - 2"), 2, 0)
    assert henselization_membership(P("x - 5"), 7, 0)
    with pytest.raises(LabError) as err:
        henselization_membership(g, 3, 2)
    assert err.value.code == "INDEX_OUT_OF_RANGE"


def test_ambiguous_integer_base_rejected():
    K = tower(("i", "x^2 + 1"))
    with pytest.raises(LabError) as err:
        extensions_of(K, 5, P("x^2 - 2", field=K.top))
    assert err.value.code == "BAD_ARGUMENT"


@pytest.mark.parametrize(
    "levels, p",
    [
        ((("i", "x^2 + 1"),), 5),
        ((("s", "x^2 - 2"),), 7),
        ((("c", "x^3 - 2"),), 5),
        ((("s", "x^2 - 2"), ("u", "x^2 - 3")), 23),
    ],
)
def test_weak_approximation_on_towers(levels, p):
    from valuation_lab import weak_approximation

    K = tower(*levels)
    ws = absolute_valuations(K, p)
    assert len(ws) >= 2
    gens = K.gens()
    pools = [K.top.zero, K.top.one, gens[0], gens[-1] + 1, gens[0] * gens[-1]]
    for shift in range(3):
        targets = [pools[(i + shift) % len(pools)] for i in range(len(ws))]
        a = weak_approximation(ws, targets)
        for w, t in zip(ws, targets):
            assert w.value(a) >= 0
            assert w.value(a - t) > 0
