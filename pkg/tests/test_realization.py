from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordspace.cones import (
    PullbackCone,
    Sign,
    check_axioms_on_ball,
    check_convex_on_ball,
    density_witness,
)
from ordspace.elements import FreeGroup, ball, commutator
from ordspace.magnus import magnus_cone
from ordspace.maps import InvertGenerator
from ordspace.pl import PLHomeo
from ordspace.realization import (
    ball_extrema,
    build_f1_f2,
    choose_ab,
    dense_approximation_free,
    disagreement_witness,
    dynamic_realization,
    finfty_approximation,
    h1h2,
    perturbation_witness,
    soul_surgery,
    stab0_convexity,
)

F2 = FreeGroup(2)
P = magnus_cone(2)


def bases():
    return [P, PullbackCone(P, InvertGenerator(F2, 1)), PullbackCone(P, InvertGenerator(F2, 2))]


@pytest.fixture(scope="module")
def run():
    return dense_approximation_free(P, [F2.parse("x1"), F2.parse("x1.x2")], 2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_realization_is_order_embedding(k):
    R = dynamic_realization(P, k)
    R.check()
    assert R.t[F2.identity()] == 0
    vals = [R.t[g] for g in R.order]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)
    for w in R.ball_k:
        assert Sign.of(R.rep.eval(w, 0)) == P.classify(w)
    for w in R.order:
        for i in (1, 2):
            xw = F2.generator(i) * w
            if xw in R.t:
                assert R.rep.images[i](R.t[w]) == R.t[xw]


def test_ball_extrema():
    R = dynamic_realization(P, 1)
    gm, gp = ball_extrema(R)
    assert gp in F2.generators() and gm == gp.inverse()
    assert P.classify(gp) == Sign.POSITIVE and P.classify(gm) == Sign.NEGATIVE
    R0 = dynamic_realization(P, 0)
    assert ball_extrema(R0) == (F2.identity(), F2.identity())


def test_ab_choice_golden():
    R = dynamic_realization(P, 2)
    c = choose_ab(R)
    assert (c.a.text(), c.b.text()) == ("x2", "x1")
    assert {abs(x) for x in c.a.letters + c.b.letters} == {1, 2}
    _, gp = ball_extrema(R)
    assert R.t[gp] < R.t[c.a * gp] < R.t[c.b * gp]
    assert choose_ab(dynamic_realization(P, 2)) == c


@pytest.mark.parametrize("k", [1, 2, 3])
def test_f1_f2_key_points(k):
    R = dynamic_realization(P, k)
    c = choose_ab(R)
    _, gp = ball_extrema(R)
    f1, f2 = build_f1_f2(R, c.a, c.b)
    p, ap, bp = R.t[gp], R.t[c.a * gp], R.t[c.b * gp]
    assert f1(p) == ap and f1(ap) == bp
    assert f2(p) == bp and f2(bp) == f1(bp)
    assert f1(bp) > bp
    assert all(s > 0 for s in f1.slopes() + f2.slopes())


def test_perturbation_conditions(run):
    R = run.realization
    assert run.rep.homeo(F2.identity()) == PLHomeo.identity()
    for w in R.ball_k:
        assert run.rep.eval(w, 0) == R.t[w]
    assert run.rep.eval(run.h1, 0) == 0 and run.rep.eval(run.h2, 0) == 0
    assert not commutator(run.h1, run.h2).is_identity()
    assert len(run.h1) <= 2 * run.k + 5 and len(run.h2) <= 2 * run.k + 5
    w = perturbation_witness(run)
    assert w is not None and len(w) <= run.k + 2


def test_h1_h2_golden(run):
    assert run.g_plus.text() == "x1^2"
    assert run.h1.text() == "x1^-3.x2^2.x1^2"
    assert run.h2.text() == "x1^-3.x2^-1.x1^4"
    assert h1h2(run.choice.a, run.choice.b, run.g_plus) == (run.h1, run.h2)
    assert {k: str(v) for k, v in run.key_points().items()} == {
        "g+(0)": "22",
        "ag+(0)": "23",
        "bg+(0)": "26",
        "f1(bg+(0))": "35",
    }


def test_homeo_lex_cone(run):
    Q = run.Q
    for w in ball(F2, 3):
        v = run.rep.eval(w, 0)
        if v > 0:
            assert Q.classify(w) == Sign.POSITIVE
    assert Q.classify(run.h1) != Sign.IDENTITY
    for g in run.g_list:
        assert Q.classify(g) == Sign.POSITIVE
    assert check_axioms_on_ball(Q, 3).ok


def test_stab0(run):
    C = run.C
    assert C.contains(run.h1) and C.contains(run.h2)
    assert C.contains(F2.identity())
    assert not C.contains(run.g_plus)
    assert stab0_convexity(run, 3).ok
    assert check_convex_on_ball(run.Q, run.C, 3).ok


def test_soul_surgery(run):
    Qp = run.Q_prime
    assert Qp.classify(run.h1) == P.classify(run.h1)
    for g in run.g_list:
        assert not run.C.contains(g)
        assert Qp.classify(g) == run.Q.classify(g) == Sign.POSITIVE
    assert check_axioms_on_ball(Qp, 3).ok
    # positive elements of C from words in h1, h2
    for w in ball(F2, 2):
        c = _substitute(w, run.h1, run.h2)
        if Qp.classify(c) == Sign.POSITIVE:
            h = density_witness(Qp, c, 2)
            assert h is not None
    assert soul_surgery(run.Q, run.C, 2).classify(run.h2) == Qp.classify(run.h2)


def _substitute(w, h1, h2):
    out = F2.identity()
    for x in w.letters:
        h = h1 if abs(x) == 1 else h2
        out = out * (h if x > 0 else h.inverse())
    return out


def test_output_differs_from_input(run):
    # nothing differs inside ball(k+3) for this run; the first change sits at radius k+5
    assert disagreement_witness(P, run.Q_prime, run.k + 3) is None
    w = disagreement_witness(P, run.Q_prime, run.k + 5)
    assert w is not None and not run.C.contains(w)
    assert P.classify(w) != run.Q_prime.classify(w)


def test_empty_g_list():
    pl = dense_approximation_free(P, [], 2)
    assert all(pl.checks.values())
    assert check_axioms_on_ball(pl.Q_prime, 2).ok


def test_rejections():
    with pytest.raises(ValueError):
        dense_approximation_free(P, [F2.parse("x1^-1")], 2)
    with pytest.raises(ValueError):
        dense_approximation_free(P, [F2.parse("x1.x2.x1")], 2)
    with pytest.raises(ValueError):
        dense_approximation_free(magnus_cone(1), [], 2)


def test_finfty():
    G = FreeGroup(None)
    Pinf = magnus_cone(None)
    gs = [G.parse("x1"), G.parse("x2^-1.x3")]
    gs = [g if Pinf.classify(g) == Sign.POSITIVE else g.inverse() for g in gs]
    res = finfty_approximation(Pinf, gs)
    assert res.split == 4
    xk = G.generator(res.split)
    assert res.flip.classify(xk) == -Pinf.classify(xk)
    for g in gs:
        assert res.flip.classify(g) == Pinf.classify(g)
        assert res.dense.classify(g) == Sign.POSITIVE
    assert check_axioms_on_ball(res.flip, 2).ok
    assert check_axioms_on_ball(res.dense, 2).ok
    kernel = [G.parse(t) for t in ("x4", "x5^-1", "x1^-1.x4.x1")]
    for c in kernel:
        c = c if res.dense.classify(c) == Sign.POSITIVE else c.inverse()
        h = density_witness(res.dense, c, 3)
        assert h is not None
        assert res.dense.project(h).is_identity()


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([0, 1, 2]), st.sampled_from([1, 2]), st.data())
def test_pipeline_on_other_bases(bi, k, data):
    base = bases()[bi]
    pos = [g for g in ball(F2, k) if base.classify(g) == Sign.POSITIVE]
    gs = data.draw(st.lists(st.sampled_from(pos), max_size=3, unique=True))
    pl = dense_approximation_free(base, gs, k)
    assert all(pl.checks.values())
    assert all(pl.Q_prime.classify(g) == Sign.POSITIVE for g in gs)
    assert pl.rep.eval(pl.h1, 0) == 0 == pl.rep.eval(pl.h2, 0)
    assert all(pl.rep.eval(w, 0) == pl.realization.t[w] for w in pl.realization.ball_k)
    assert isinstance(pl.key_points()["g+(0)"], Fraction)
