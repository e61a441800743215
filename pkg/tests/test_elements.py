from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordspace.elements import (
    AbelianGroup,
    BraidGroup,
    FreeGroup,
    TowerGroup,
    ball,
    braid_equal,
    commutator,
    free_reduce,
    parse_group,
)
from ordspace.errors import BudgetExceeded, FamilyMismatch

from oracles import burau_b3


# ---------------------------------------------------------------- oracles


def tower_collect(n, letters):
    """Normal form of a word in T_n by bubble-collection.

    ``letters`` are signed generator indices.  Moving x_i^e left past x_j
    (j > i) flips e when j = i + 1 and leaves it alone otherwise.
    """
    w = list(letters)
    changed = True
    while changed:
        changed = False
        for p in range(len(w) - 1):
            j, i = abs(w[p]), abs(w[p + 1])
            if j > i:
                moved = -w[p + 1] if j == i + 1 else w[p + 1]
                w[p], w[p + 1] = moved, w[p]
                changed = True
    exps = [0] * n
    for x in w:
        exps[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(exps)


def tower_word(exps):
    out = []
    for i, a in enumerate(exps, start=1):
        out += [i if a > 0 else -i] * abs(a)
    return out


# ------------------------------------------------------------------ tests


def test_free_reduction_cancels():
    F = FreeGroup(2)
    assert (F.generator(1) * F.generator(1).inverse()).is_identity()
    assert free_reduce([1, 2, -2, -1, 2]) == (2,)


def test_abelian_sum():
    Z = AbelianGroup(2)
    assert (Z.parse("(1,2)") * Z.parse("(3,-1)")).coords == (4, 1)


def test_klein_relation():
    T = TowerGroup(2)
    y, x = T.generators()
    assert (x * y * x.inverse() * y).is_identity()


def test_inverses():
    F = FreeGroup(2)
    assert F.parse("x1.x2").inverse() == F.parse("x2^-1.x1^-1")
    assert AbelianGroup(2).parse("(2,-3)").inverse().coords == (-2, 3)
    assert F.identity().inverse().is_identity()


def test_ball_sizes():
    F = FreeGroup(2)
    assert set(ball(F, 1)) == {F.identity(), *F.symmetric_generators()}
    assert len(ball(F, 2)) == 17
    Z = AbelianGroup(2)
    assert {v.coords for v in ball(Z, 1)} == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}


@pytest.mark.parametrize("n,k", [(1, 4), (2, 4), (3, 3)])
def test_free_ball_count_formula(n, k):
    expected = 1 + sum(2 * n * (2 * n - 1) ** (j - 1) for j in range(1, k + 1))
    assert len(ball(FreeGroup(n), k)) == expected


def test_balls_nested():
    for G in (FreeGroup(2), AbelianGroup(3), TowerGroup(2), BraidGroup(3)):
        assert set(ball(G, 2)) <= set(ball(G, 3))


def test_commutators():
    F = FreeGroup(2)
    x1, x2 = F.generators()
    assert commutator(x1, x2) == F.parse("x1^-1.x2^-1.x1.x2")
    assert commutator(x1, x1 * x1).is_identity()
    Z = AbelianGroup(2)
    assert commutator(*Z.generators()).is_identity()


def test_braid_relations():
    B3, B4 = BraidGroup(3), BraidGroup(4)
    assert braid_equal(B3.parse("s1.s2.s1"), B3.parse("s2.s1.s2"))
    assert not braid_equal(B3.parse("s1"), B3.parse("s2"))
    assert braid_equal(B4.parse("s1.s3"), B4.parse("s3.s1"))


def test_braid_equal_matches_burau_exhaustively():
    B = BraidGroup(3)
    words = [w for L in range(5) for w in product((1, -1, 2, -2), repeat=L)]
    words = [w for w in words if free_reduce(w) == tuple(w)]
    classes = {}
    for w in words:
        classes.setdefault(burau_b3(w), []).append(w)
    reps = [ws[0] for ws in classes.values()]
    for ws in classes.values():
        for w in ws[1:]:
            assert braid_equal(B.word(ws[0]), B.word(w))
    for i, u in enumerate(reps[:60]):
        for v in reps[i + 1 : 60]:
            assert not braid_equal(B.word(u), B.word(v))


def test_braid_equal_is_congruence():
    B = BraidGroup(3)
    u, v = B.parse("s1.s2.s1"), B.parse("s2.s1.s2")
    for c in ball(B, 2):
        assert braid_equal(c * u, c * v)
        assert braid_equal(u * c, v * c)


def test_parse_group_tags():
    assert parse_group("f:2") == FreeGroup(2)
    assert parse_group("f:inf") == FreeGroup(None)
    assert parse_group("z:3") == AbelianGroup(3)
    assert parse_group("t:2") == TowerGroup(2)
    assert parse_group("b:4") == BraidGroup(4)
    with pytest.raises(ValueError):
        parse_group("q:2")


def test_text_round_trip():
    for G, t in ((FreeGroup(2), "x1.x2^-1"), (AbelianGroup(2), "(1,-2)"), (TowerGroup(2), "(1,-2)"), (BraidGroup(3), "s1.s2^-1")):
        assert G.parse(t).text() == t


def test_mixing_groups_fails():
    with pytest.raises(FamilyMismatch):
        FreeGroup(2).generator(1) * FreeGroup(3).generator(1)


def test_ball_budget():
    with pytest.raises(BudgetExceeded):
        ball(FreeGroup(2), 6, budget=100)


tower_exps = st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(-3, 3), min_size=n, max_size=n)))


@settings(max_examples=200, deadline=None)
@given(tower_exps, st.data())
def test_tower_product_matches_collection(nx, data):
    n, a = nx
    b = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    T = TowerGroup(n)
    got = (T.element(a) * T.element(b)).exponents
    assert got == tower_collect(n, tower_word(a) + tower_word(b))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([FreeGroup(2), AbelianGroup(2), TowerGroup(3), BraidGroup(3)]), st.data())
def test_group_laws(G, data):
    members = list(ball(G, 2))
    a, b, c = (data.draw(st.sampled_from(members)) for _ in range(3))
    eq = braid_equal if isinstance(G, BraidGroup) else (lambda u, v: u == v)
    assert eq((a * b) * c, a * (b * c))
    assert eq(a.inverse().inverse(), a)
    assert (a * a.inverse()).is_identity()
