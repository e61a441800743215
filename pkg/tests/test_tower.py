from itertools import product

import pytest

from ordspace.cones import Sign, check_axioms_on_ball, check_biinvariance_on_ball, density_witness
from ordspace.elements import TowerGroup, ball
from ordspace.errors import FamilyMismatch
from ordspace.tower import (
    ball_cone_census,
    check_all_discrete,
    discrete_certificate,
    enumerate_tower_cones,
    tower_cone,
)


def brute_force_patterns(n, k):
    """Every sign pattern on ball(T_n, k) with trichotomy and in-ball closure, by exhaustion."""
    G = TowerGroup(n)
    members = [g for g in ball(G, k) if not g.is_identity()]
    inside = set(members)
    reps = []
    for g in members:
        if g.inverse() not in reps:
            reps.append(g)
    count = 0
    for signs in product((1, -1), repeat=len(reps)):
        pos = {g if s > 0 else g.inverse() for g, s in zip(reps, signs)}
        if all((p * q) in pos for p in pos for q in pos if (p * q) in inside):
            count += 1
    return count


def test_cone_counts():
    assert [len(enumerate_tower_cones(n)) for n in (1, 2, 3)] == [2, 4, 8]
    cones = enumerate_tower_cones(3)
    T = TowerGroup(3)
    gens = T.generators()
    for i, P in enumerate(cones):
        for Q in cones[i + 1 :]:
            assert any(P.classify(g) != Q.classify(g) for g in gens)


def test_klein_examples():
    T = TowerGroup(2)
    y, x = T.generators()
    P = tower_cone(2, "++")
    assert P.classify(x) == Sign.POSITIVE and P.classify(y) == Sign.POSITIVE
    reports = {r.cone.label: r for r in check_all_discrete(2)}
    assert reports["++"].least.element == y
    assert reports["-+"].least.element == y.inverse()
    assert check_all_discrete(3)[0].least.element == TowerGroup(3).generator(1)


@pytest.mark.parametrize("n,k,expected", [(1, 2, 2), (1, 3, 2), (2, 2, 4), (3, 2, 8)])
def test_census(n, k, expected):
    c = ball_cone_census(n, k)
    assert c.count == expected
    labels = sorted(e.matches for e in c.entries)
    assert labels == sorted(P.label for P in enumerate_tower_cones(n))
    for e in c.entries:
        assert e.generator_signs == e.matches


@pytest.mark.parametrize("n", [1, 2])
def test_census_raw_count_matches_exhaustion(n):
    assert ball_cone_census(n, 2).raw == brute_force_patterns(n, 2)


def test_census_entries_are_the_cones():
    T = TowerGroup(2)
    cones = {P.label: P for P in enumerate_tower_cones(2)}
    for e in ball_cone_census(2, 2).entries:
        P = cones[e.matches]
        assert e.positives == frozenset(g for g in ball(T, 2) if P.classify(g) == Sign.POSITIVE)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_axioms(n):
    for P in enumerate_tower_cones(n):
        assert check_axioms_on_ball(P, 4 if n < 3 else 3).ok


@pytest.mark.parametrize("n", [2, 3])
def test_not_biinvariant(n):
    for P in enumerate_tower_cones(n):
        cert = check_biinvariance_on_ball(P, 2)
        assert not cert.ok
        g, p = cert.witness
        assert P.classify(p) == Sign.POSITIVE and P.classify(g * p * g.inverse()) != Sign.POSITIVE


def test_all_discrete():
    for r in check_all_discrete(2):
        assert r.ok
        assert density_witness(r.cone, r.least.element, 6) is None
        assert discrete_certificate(r).ok


def test_bad_signs():
    with pytest.raises(FamilyMismatch):
        tower_cone(3, "+-")
    with pytest.raises(ValueError):
        tower_cone(2, (1, 0))
