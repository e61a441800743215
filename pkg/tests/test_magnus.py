import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ordspace.cones import (
    Sign,
    check_axioms_on_ball,
    check_biinvariance_on_ball,
    check_conradian_on_ball,
    density_witness,
)
from ordspace.elements import FreeGroup, free_reduce
from ordspace.errors import BudgetExceeded
from ordspace.magnus import MagnusSeries, magnus_cone, magnus_leading, word_leading_text

X = sympy.symbols("X1:4", commutative=False)


def _monomial(nc):
    out = []
    for f in nc:
        base, e = f.as_base_exp()
        out += [X.index(base) + 1] * int(e)
    return tuple(out)


def _truncate(expr, degree):
    keep = 0
    for term in sympy.Add.make_args(sympy.expand(expr)):
        c, nc = term.args_cnc()
        if len(_monomial(nc)) <= degree:
            keep += term
    return keep


def sympy_expansion(letters, degree):
    """Coefficients of the truncated Magnus image, computed symbolically."""
    expr = sympy.Integer(1)
    for x in letters:
        v = X[abs(x) - 1]
        factor = 1 + v if x > 0 else sum((-v) ** j for j in range(degree + 1))
        expr = _truncate(expr * factor, degree)
    out = {}
    for term in sympy.Add.make_args(sympy.expand(expr)):
        c, nc = term.args_cnc()
        coeff = sympy.Mul(*c)
        if coeff != 0:
            out[_monomial(nc)] = int(coeff)
    return out


words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=0, max_size=5)


@settings(max_examples=60, deadline=None)
@given(words, st.integers(1, 4))
def test_expansion_matches_sympy(letters, degree):
    ours = {m: c for m, c in MagnusSeries.of_word(letters, degree).coeffs.items() if c}
    assert ours == sympy_expansion(letters, degree)


def test_leading_examples():
    F = FreeGroup(2)
    P = magnus_cone(2)
    x1, x2 = F.generators()
    assert P.classify(x1) == Sign.POSITIVE
    assert P.classify(x1.inverse()) == Sign.NEGATIVE
    c = F.parse("x1^-1.x2^-1.x1.x2")
    assert P.classify(c) == Sign.POSITIVE
    assert word_leading_text(c) == "1*X1X2"
    exp = sympy_expansion(c.letters, 2)
    assert exp[(1, 2)] == 1 and exp[(2, 1)] == -1


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=8))
def test_leading_degree_at_most_word_length(letters):
    red = free_reduce(letters)
    lead = magnus_leading(red)
    if not red:
        assert lead is None
        return
    m, c = lead
    assert c != 0 and 1 <= len(m) <= len(red)
    assert MagnusSeries.of_word(red, len(m)).leading() == lead


@settings(max_examples=150, deadline=None)
@given(words, words)
def test_sign_is_bi_invariant(u, v):
    F = FreeGroup(2)
    P = magnus_cone(2)
    g, h = F.word(u), F.word(v)
    assert P.classify(g * h * g.inverse()) == P.classify(h)
    if P.classify(g) == P.classify(h) == Sign.POSITIVE:
        assert P.classify(g * h) == Sign.POSITIVE


def test_magnus_checks_on_f2():
    P = magnus_cone(2)
    assert check_axioms_on_ball(P, 3).ok
    assert check_conradian_on_ball(P, 3).ok
    assert check_biinvariance_on_ball(P, 3).ok


def test_density_witness_is_deeper():
    F = FreeGroup(2)
    P = magnus_cone(2)
    h = density_witness(P, F.generator(1), 2)
    m, _ = magnus_leading(h.letters)
    assert len(m) >= 2


def test_f_inf_cone():
    P = magnus_cone(None)
    G = FreeGroup(None)
    assert P.classify(G.parse("x7")) == Sign.POSITIVE
    assert check_axioms_on_ball(P, 2).ok


def test_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        MagnusSeries.of_word([1, 2] * 8, 12, budget=50)
