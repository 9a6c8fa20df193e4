import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valuation_lab import FGGroup, LabError, MonomialElem, closure_stage, formally_padic_check, initial_stage, run_closure
from valuation_lab.closure import Stage
from valuation_lab.valuegroup import elem, least_positive_is_one, subgroup_index
from fractions import Fraction

T = MonomialElem.parse("t")
ALL_TRUE = {"extends_padic": True, "formally_padic": True, "least_positive_one": True, "residue_is_Fp": True}


def test_monomial_parse_and_print():
    a = MonomialElem.parse("p^2*t*b1^-1")
    assert a.exponents == (2, 1, -1)
    assert a.to_str() == "p^2*t*b1^-1"
    assert MonomialElem.parse("1").to_str() == "1"
    with pytest.raises(LabError) as err:
        MonomialElem.parse("t*q")
    assert err.value.code == "PARSE_ERROR"
    with pytest.raises(LabError) as err:
        MonomialElem.parse("b0")
    assert err.value.code == "PARSE_ERROR"


def test_check_examples():
    assert formally_padic_check(initial_stage()) == ALL_TRUE
    s = initial_stage(group=FGGroup([elem(Fraction(1, 2)), elem(0, 1)]))
    assert not formally_padic_check(s)["least_positive_one"]
    s1 = closure_stage(initial_stage(), T, 2)
    assert s1.group == FGGroup([elem(1), elem(0, Fraction(1, 2))])
    assert formally_padic_check(s1) == ALL_TRUE


def test_stage_examples():
    s0 = initial_stage()
    s1 = closure_stage(s0, T, 2)
    assert s1.forced and subgroup_index(s0.group, s1.group) == 2
    s2 = closure_stage(s1, T, 2)
    assert not s2.forced and s2.group == s1.group and s2.index == 2
    s3 = closure_stage(s0, MonomialElem.parse("p"), 3)
    assert not s3.forced and s3.group == s0.group


def test_run_closure_examples():
    stages = run_closure(initial_stage(), [(T, 2), (T, 3)])
    assert stages[-1].group == FGGroup([elem(1), elem(0, Fraction(1, 6))])
    assert [s.forced for s in stages] == [False, True, True]
    for old, new, q in zip(stages, stages[1:], [2, 3]):
        assert subgroup_index(old.group, new.group) == q
    assert all(formally_padic_check(s) == ALL_TRUE for s in stages)
    assert run_closure(initial_stage(), []) == [initial_stage()]
    stages = run_closure(initial_stage(), [(T, 2), (T, 2)])
    assert [s.forced for s in stages] == [False, True, False]


def test_roots_can_be_scheduled():
    stages = run_closure(initial_stage(), [(T, 2), (MonomialElem.parse("b1"), 2), (MonomialElem.parse("p*b2"), 3)])
    assert stages[-1].value(MonomialElem.parse("b2")) == elem(0, Fraction(1, 4))
    assert all(least_positive_is_one(s.group) for s in stages)


def test_malformed_stage():
    with pytest.raises(LabError) as err:
        initial_stage().value(MonomialElem.parse("b1"))
    assert err.value.code == "MALFORMED_STAGE"
    bad = Stage(0, FGGroup([elem(0, 1)]), (), 2)
    with pytest.raises(LabError) as err:
        formally_padic_check(bad)
    assert err.value.code == "MALFORMED_STAGE"


def test_stage_json():
    s = closure_stage(initial_stage(), T, 2)
    doc = s.to_json()
    assert doc["flags"] == ALL_TRUE
    assert doc["roots"] == [{"index": 2, "m": 0, "q": 2, "target": "t", "value": {"a": "0", "b": "1/2"}}]


schedule_entries = st.lists(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.sampled_from([2, 3, 5])), min_size=1, max_size=5
)


@given(schedule_entries)
def test_idempotence_monotonicity_and_gap(entries):
    stages = [initial_stage()]
    for e_p, e_t, q in entries:
        s = stages[-1]
        a = MonomialElem.of(e_p, e_t)
        nxt = closure_stage(s, a, q)
        again = closure_stage(nxt, a, q)
        assert not again.forced and again.group == nxt.group
        if nxt.forced:
            assert subgroup_index(s.group, nxt.group) == q
        stages.append(nxt)
    rng = random.Random(len(entries))
    probes = [elem(rng.randint(-6, 6), rng.randint(-3, 3)) for _ in range(10)]
    for earlier, later in zip(stages, stages[1:]):
        assert least_positive_is_one(later.group)
        for x in probes:
            for q in (2, 3, 5):
                if earlier.group.contains(x) and earlier.group.div_query(x, q):
                    assert later.group.div_query(x, q)
