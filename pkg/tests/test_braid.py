from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordspace.braid import (
    b3_abelianization_cone,
    dehornoy_cone,
    example_braid_surgery,
    handle_reduce,
    is_i_positive,
    parabolic_subgroup,
    sigma_class,
)
from ordspace.cones import Sign, check_axioms_on_ball, check_convex_on_ball
from ordspace.elements import BraidGroup, ball, braid_equal, free_reduce
from ordspace.errors import BudgetExceeded

from oracles import burau_b3

B3, B4 = BraidGroup(3), BraidGroup(4)


def test_handle_reduction_examples():
    w = B3.parse("s1.s2.s1^-1")
    r = handle_reduce(w)
    assert r.text() == "s2^-1.s1.s2"
    assert braid_equal(w, r)
    assert handle_reduce(B3.parse("s1.s1^-1")).is_identity()
    c = sigma_class(B3.parse("s2^-1.s1"))
    assert (c.index, c.sign) == (1, 1)


def test_dehornoy_examples():
    P = dehornoy_cone(3)
    assert P.classify(B3.parse("s1")) == Sign.POSITIVE
    assert P.classify(B3.parse("s1^-1.s2")) == Sign.NEGATIVE
    assert P.classify(B3.parse("s1.s2.s1")) == Sign.POSITIVE
    assert P.classify(B3.identity()) == Sign.IDENTITY


def test_parabolic_membership():
    C = parabolic_subgroup(4, 2)
    assert C.contains(B4.parse("s3"))
    assert not C.contains(B4.parse("s1.s2.s1^-1.s2^-1"))
    for r in (1, 2, 3):
        assert parabolic_subgroup(4, r).contains(B4.identity())


def test_dehornoy_axioms():
    assert check_axioms_on_ball(dehornoy_cone(3), 4).ok
    assert check_axioms_on_ball(dehornoy_cone(4), 3).ok


@pytest.mark.parametrize("r", [2, 3])
def test_parabolic_convex(r):
    assert check_convex_on_ball(dehornoy_cone(4), parabolic_subgroup(4, r), 3).ok


def test_literally_positive_words():
    P = dehornoy_cone(4)
    for L in range(1, 5):
        for w in product((1, -1, 2, -2, 3, -3), repeat=L):
            if free_reduce(w) == w and is_i_positive(w):
                assert P.classify(B4.word(w)) == Sign.POSITIVE


def test_surgery_skeleton():
    n = 4
    S = example_braid_surgery(n, dehornoy_cone(3))
    P = dehornoy_cone(n)
    B = BraidGroup(n)
    assert all(S.classify(g) == P.classify(g) for g in ball(B, 3))
    inner = b3_abelianization_cone()
    S2 = example_braid_surgery(n, inner)
    assert S2.classify(B.parse("s1")) == Sign.POSITIVE
    assert S2.classify(B.parse("s1.s3^-1")) == Sign.POSITIVE


def test_abelianization_inner_cone_axioms():
    S = example_braid_surgery(5, b3_abelianization_cone())
    assert check_axioms_on_ball(S, 2).ok
    assert check_axioms_on_ball(b3_abelianization_cone(), 3).ok


braid_words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=7)


@settings(max_examples=200, deadline=None)
@given(braid_words)
def test_reduction_preserves_the_braid(letters):
    w = B3.word(letters)
    r = handle_reduce(w)
    assert burau_b3(r.letters) == burau_b3(w.letters)
    assert braid_equal(w, r)
    c = sigma_class(w)
    ci = sigma_class(w.inverse())
    assert (ci.index, ci.sign) == (c.index, -c.sign)


def test_budget():
    w = B3.parse("s1.s2.s1^-1.s2^-1.s1^-1.s2")
    with pytest.raises(BudgetExceeded):
        handle_reduce(w, budget=0)
    assert handle_reduce(w, budget=1).is_identity()
