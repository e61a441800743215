import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordspace.abelian import (
    FlagCone,
    FlagOrder,
    classify_flag,
    dense_approximation,
    discrete_approximation,
    flag_cone,
    is_discrete,
    min_convex_subgroup,
    rank_one_convex_construction,
    rational_hyperplane_approx,
)
from ordspace.cones import Comparison, Sign, check_axioms_on_ball, compare, density_witness, least_positive_on_ball
from ordspace.elements import ball
from ordspace.lattice import Lattice
from ordspace.quad import QuadField

R2 = QuadField(0, 1)


def Q(a, b=0):
    return QuadField(a, b)


def positive(F, g):
    return classify_flag(F, g) == Sign.POSITIVE


def test_classify_examples():
    assert classify_flag(FlagOrder(2, [(1, R2)]), (-1, 1)) == Sign.POSITIVE
    assert classify_flag(FlagOrder.standard(2), (0, -3)) == Sign.NEGATIVE
    assert classify_flag(FlagOrder(2, [(1, R2)]), (0, 0)) == Sign.IDENTITY


def test_non_total_flag_rejected():
    with pytest.raises(ValueError):
        FlagOrder(3, [(1, 1, 0), (0, 0, 1)])


def test_min_convex_examples():
    assert min_convex_subgroup(FlagOrder.standard(2)) == Lattice.from_generators(2, [(0, 1)])
    assert min_convex_subgroup(FlagOrder(2, [(1, R2)])).rank == 2
    F = FlagOrder(3, [(1, 1, 0), (1, 0, R2)])
    assert min_convex_subgroup(F) == Lattice.from_generators(3, [(1, -1, 0), (0, 0, 1)])


def test_is_discrete_examples():
    assert is_discrete(FlagOrder.standard(2)) == (True, (0, 1))
    assert is_discrete(FlagOrder(2, [(1, R2)])) == (False, None)
    assert is_discrete(FlagOrder(3, [(1, R2, 0), (0, 0, 1)])) == (True, (0, 0, 1))


@pytest.mark.parametrize(
    "functionals",
    [
        [(1, 0), (0, 1)],
        [(0, 1), (-1, 0)],
        [(1, Fraction(3, 2)), (3, -2)],
        [(1, R2, 0), (0, 0, 1)],
        [(1, 1, 0), (1, 0, R2)],
        [(Q(0, 1), 1, 0), (0, 1, -1), (0, 0, 1)],
    ],
)
def test_is_discrete_against_brute_force(functionals):
    F = FlagOrder(len(functionals[0]), functionals)
    P = FlagCone(F)
    disc, c = is_discrete(F)
    if disc:
        cvec = P.group.vector(c)
        for h in ball(P.group, 8 if F.dim == 2 else 5):
            if P.classify(h) == Sign.POSITIVE:
                assert compare(P, h, cvec) != Comparison.LESS
    else:
        assert density_witness(P, least_positive_on_ball(P, 4).element, 4) is not None


def test_hyperplane_examples():
    w, x = rational_hyperplane_approx((1, 2), Fraction(1, 10))
    assert w == (1, 2) and x == (2, -1)
    w, x = rational_hyperplane_approx((1, R2), Fraction(1, 10))
    assert w == (1, Fraction(17, 12)) and x == (17, -12)
    w, x = rational_hyperplane_approx((Fraction(1, 3), 5, -2), Fraction(1, 1000))
    assert w == (Fraction(1, 3), 5, -2)


def _random_functional(rng, k):
    v = []
    for _ in range(k):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        b = Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.6 else Fraction(0)
        v.append(Q(a, b))
    if all(x == 0 for x in v):
        v[0] = Q(1)
    return tuple(v)


def test_hyperplane_postcondition_many_trials():
    rng = random.Random(7)
    for _ in range(10_000):
        k = rng.randint(2, 6)
        v = _random_functional(rng, k)
        eps = Fraction(1, rng.choice([2, 10, 100, 1000]))
        w, x = rational_hyperplane_approx(v, eps)
        assert sum(Fraction(a) * b for a, b in zip(w, x)) == 0
        assert any(x)
        diff = sum((QuadField(a) - b) * (QuadField(a) - b) for a, b in zip(w, v))
        assert (diff - eps * eps).sign() < 0


def test_discrete_examples():
    F = FlagOrder(2, [(1, R2)])
    out = discrete_approximation(F, [(1, 1), (2, 1)])
    assert out.functionals == ((Q(1), Q(Fraction(3, 2))), (Q(3), Q(-2)))
    assert is_discrete(out)[0]
    assert positive(out, (1, 1)) and positive(out, (2, 1))
    lex = FlagOrder.standard(2)
    assert discrete_approximation(lex, [(0, 1), (1, -5)]) == lex
    assert discrete_approximation(F, []) == FlagOrder.standard(2)


def test_dense_examples():
    out = dense_approximation(FlagOrder.standard(2), [(0, 1), (1, 0)])
    assert not is_discrete(out)[0]
    assert positive(out, (0, 1)) and positive(out, (1, 0))
    F = FlagOrder(2, [(1, R2)])
    assert dense_approximation(F, [(1, 1)]) == F
    with pytest.raises(ValueError):
        dense_approximation(FlagOrder.standard(1), [(1,)])


def test_dense_output_admits_density_witnesses():
    out = FlagCone(dense_approximation(FlagOrder.standard(3), [(0, 0, 1), (1, -4, 2)]))
    for r in range(2, 7):
        m = least_positive_on_ball(out, r).element
        assert density_witness(out, m, r) is not None


def test_rank_one_examples():
    F = FlagOrder(3, [(0, 0, 1), (1, R2, 0)])
    out = rank_one_convex_construction(F, [(1, 0, 0)])
    assert min_convex_subgroup(out).rank == 1
    assert positive(out, (1, 0, 0))
    out = rank_one_convex_construction(FlagOrder(2, [(1, R2)]), [(2, 4)])
    assert min_convex_subgroup(out).rank == 1 and positive(out, (2, 4))
    lex = FlagOrder.standard(2)
    assert rank_one_convex_construction(lex, [(1, 0)]) == lex


def test_shipped_flags_pass_axioms():
    for fs in ([(1, R2)], [(1, 0), (0, 1)], [(1, R2, 0), (0, 0, 1)], [(1, 1, 0), (1, 0, R2)]):
        assert check_axioms_on_ball(flag_cone(fs), 4 if len(fs[0]) == 3 else 5).ok


# ------------------------------------------------------------- properties


def dense_flag(dim, data):
    """A flag whose bottom kernel has rank 2, so the order is dense."""
    c = data.draw(st.sampled_from([1, -1, 2, 3]))
    e = data.draw(st.sampled_from([1, -1, Fraction(1, 3)]))
    if dim == 2:
        return FlagOrder(2, [(Q(e), Q(0, c))])
    p, q = data.draw(st.sampled_from([(1, 1), (2, -1), (1, 3)]))
    return FlagOrder(3, [(p, q, 0), (Q(e), 0, Q(0, c))])


vec = lambda dim: st.lists(st.integers(-5, 5), min_size=dim, max_size=dim).filter(any)  # noqa: E731


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_discrete_approximation_property(dim, data):
    F = dense_flag(dim, data)
    raw = data.draw(st.lists(vec(dim), min_size=0, max_size=4))
    gs = [tuple(g) if positive(F, g) else tuple(-x for x in g) for g in raw]
    out = discrete_approximation(F, gs)
    assert is_discrete(out)[0]
    assert all(positive(out, g) for g in gs)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_dense_approximation_property(dim, data):
    F = FlagOrder.standard(dim) if data.draw(st.booleans()) else FlagOrder(dim, [tuple(Q(int(i == dim - 1 - j)) for i in range(dim)) for j in range(dim)])
    raw = data.draw(st.lists(vec(dim), min_size=0, max_size=4))
    gs = [tuple(g) if positive(F, g) else tuple(-x for x in g) for g in raw]
    out = dense_approximation(F, gs)
    assert not is_discrete(out)[0]
    assert all(positive(out, g) for g in gs)
