"""Finite dynamic realizations of free-group orderings and the perturbation
that produces dense orderings near any given one.

Pipeline for a cone P on F_n and a radius k:

1. sort ``ball(k+1)`` by P and give it consecutive integers ``t`` with
   ``t(1) = 0``; each generator acts by the PL map ``t(w) -> t(x_i w)``;
2. take ``g+ = max ball(k)`` and generators ``a``, ``b`` pushing ``g+`` up;
3. bend ``rho(a)``, ``rho(b)`` to the right of ``t(g+)`` into ``f1``, ``f2``
   so that ``h1 = (b g+)^-1 a^2 g+`` and ``h2 = (a b g+)^-1 b^2 g+`` fix 0;
4. order F_n by the lexicographic order of the perturbed action read along
   an enumeration of Q starting at 0; the preimage of Stab(0) is convex and
   contains the non-commuting pair h1, h2, so replacing the order there by
   the Magnus order makes the result dense.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cones import (
    Cone,
    PullbackCone,
    Sign,
    Subgroup,
    SurgeryCone,
    check_convex_on_ball,
    lex_extension,
    sort_key,
)
from .elements import FreeGroup, FreeWord, ball, commutator
from .magnus import MagnusCone, magnus_cone
from .maps import Inclusion, InvertGenerator, Retraction
from .pl import ENUMERATION, PLHomeo, RationalEnumeration

__all__ = [
    "Realization",
    "Representation",
    "dynamic_realization",
    "ball_extrema",
    "choose_ab",
    "build_f1_f2",
    "perturbed_representation",
    "h1h2",
    "HomeoLexCone",
    "homeo_lex_cone",
    "Stab0Subgroup",
    "stab0_subgroup",
    "soul_surgery",
    "DensePipeline",
    "dense_approximation_free",
    "finfty_approximation",
    "magnus_cone",
    "MagnusCone",
]


class Representation:
    """A homomorphism F_n -> Homeo+(R) given by PL images of the generators."""

    def __init__(self, group: FreeGroup, images: dict[int, PLHomeo]):
        self.group = group
        self.images = dict(images)
        self._inverses = {i: f.inverse() for i, f in images.items()}

    def letter(self, x: int) -> PLHomeo:
        return self.images[x] if x > 0 else self._inverses[-x]

    def eval(self, w: FreeWord, x=0) -> Fraction:
        """``rho(w)(x)``: letters act right to left."""
        y = Fraction(x)
        for c in reversed(w.letters):
            y = self.letter(c)(y)
        return y

    def homeo(self, w: FreeWord) -> PLHomeo:
        f = PLHomeo.identity()
        for c in reversed(w.letters):
            f = self.letter(c).compose(f)
        return f


@dataclass
class Realization:
    """Order-embedding ``t`` of ``ball(k+1)`` into Z and the induced generator maps."""

    cone: Cone
    k: int
    order: list  # ball(k+1) sorted by the cone
    t: dict
    rep: Representation
    ball_k: list

    @property
    def group(self) -> FreeGroup:
        return self.cone.group

    def check(self) -> None:
        """Exact re-check of the order embedding and of the action compatibility."""
        vals = [self.t[g] for g in self.order]
        if any(u >= v for u, v in zip(vals, vals[1:])) or self.t[self.group.identity()] != 0:
            raise AssertionError("t is not an order embedding with t(1) = 0")
        for w in self.order:
            for i in self.rep.images:
                xw = self.group.generator(i) * w
                if xw in self.t and self.rep.images[i](self.t[w]) != self.t[xw]:
                    raise AssertionError(f"rho(x{i}) disagrees with t at {w.text()}")


def _gens_of(P: Cone) -> list[int]:
    n = P.group.rank
    if n is None:
        raise ValueError("realizations are built for finitely generated free groups")
    return list(range(1, n + 1))


def dynamic_realization(P: Cone, k: int) -> Realization:
    if not isinstance(P.group, FreeGroup):
        raise TypeError("dynamic realization needs a cone on a free group")
    gens = _gens_of(P)
    dom = sorted(ball(P.group, k + 1), key=sort_key(P))
    zero = dom.index(P.group.identity())
    t = {g: Fraction(i - zero) for i, g in enumerate(dom)}
    images = {}
    for i in gens:
        x = P.group.generator(i)
        pairs = [(t[w], t[x * w]) for w in dom if x * w in t]
        images[i] = PLHomeo.interpolate(pairs)
    bk = [g for g in dom if len(g) <= k]
    return Realization(P, k, dom, t, Representation(P.group, images), bk)


def ball_extrema(R: Realization) -> tuple[FreeWord, FreeWord]:
    """``(g-, g+)``: the minimum and maximum of ``ball(k)``."""
    return R.ball_k[0], R.ball_k[-1]


@dataclass(frozen=True)
class ABChoice:
    a: FreeWord
    b: FreeWord
    j0: int
    ell: int
    eps: tuple[int, ...]


def choose_ab(R: Realization) -> ABChoice:
    gens = _gens_of(R.cone)
    if len(gens) < 2:
        raise ValueError("the perturbation needs at least two generators")
    _, gp = ball_extrema(R)
    eps = []
    for i in gens:
        x = R.group.generator(i)
        eps.append(1 if R.t[x * gp] > R.t[gp] else -1)
    pushed = {i: R.group.generator(i) ** e for i, e in zip(gens, eps)}
    j0 = min(gens, key=lambda i: R.t[pushed[i] * gp])
    ell = min(i for i in gens if i != j0)
    return ABChoice(pushed[j0], pushed[ell], j0, ell, tuple(eps))


def build_f1_f2(R: Realization, a: FreeWord, b: FreeWord) -> tuple[PLHomeo, PLHomeo]:
    _, gp = ball_extrema(R)
    p, ap, bp = R.t[gp], R.t[a * gp], R.t[b * gp]
    if not p < ap < bp:
        raise AssertionError("expected g+(0) < a g+(0) < b g+(0)")
    rho_a = R.rep.homeo(a)
    rho_b = R.rep.homeo(b)
    f1 = rho_a.splice_right(p, ap, (bp - ap) / (ap - p))
    f1_bp = f1(bp)
    f2 = rho_b.splice_right(p, bp, (f1_bp - bp) / (bp - p))
    return f1, f2


def perturbed_representation(R: Realization, choice: ABChoice, f1: PLHomeo, f2: PLHomeo) -> Representation:
    images = dict(R.rep.images)
    images[choice.j0] = f1 if choice.eps[choice.j0 - 1] > 0 else f1.inverse()
    images[choice.ell] = f2 if choice.eps[choice.ell - 1] > 0 else f2.inverse()
    return Representation(R.group, images)


def h1h2(a: FreeWord, b: FreeWord, gp: FreeWord) -> tuple[FreeWord, FreeWord]:
    h1 = (b * gp).inverse() * a * a * gp
    h2 = (a * b * gp).inverse() * b * b * gp
    return h1, h2


class HomeoLexCone(Cone):
    """Sign of ``rho(w)(r) - r`` at the first enumerated rational ``r`` moved by ``rho(w)``.

    Words acting trivially are ordered by ``kernel_cone``.
    """

    kind = "homeo-lex"

    def __init__(self, rep: Representation, kernel_cone: Cone, enumeration: RationalEnumeration = ENUMERATION, source=None):
        self.group = rep.group
        self.rep = rep
        self.kernel_cone = kernel_cone
        self.enumeration = enumeration
        self.source = source  # (base cone, k) when built by the pipeline

    def _classify(self, g):
        v = self.rep.eval(g, 0)
        if v != 0:
            return Sign.of(v)
        f = self.rep.homeo(g)
        if f.is_identity():
            return self.kernel_cone.classify(g)
        _, s = self.enumeration.first_moved(f)
        return Sign(s)

    def descriptor(self):
        if self.source is None:
            raise TypeError("only pipeline-built homeo-lex cones are serializable")
        base, k = self.source
        return {"kind": "homeo-lex", "base": base.descriptor(), "k": k}


def homeo_lex_cone(rep: Representation, kernel_cone: Cone, E: RationalEnumeration = ENUMERATION) -> HomeoLexCone:
    return HomeoLexCone(rep, kernel_cone, E)


class Stab0Subgroup(Subgroup):
    """Words whose perturbed action fixes 0; contains the non-commuting pair h1, h2."""

    kind = "stab0"

    def __init__(self, rep: Representation, h1: FreeWord, h2: FreeWord, source=None):
        self.group = rep.group
        self.rep = rep
        self.h1, self.h2 = h1, h2
        self.source = source

    def contains(self, g):
        return self.rep.eval(g, 0) == 0

    def positive_members(self, cone: Cone):
        for h in (self.h1, self.h2):
            yield h if cone.classify(h) == Sign.POSITIVE else h.inverse()

    def smaller_positive_candidates(self, cone: Cone, g):
        for h in (self.h1, self.h2):
            c = commutator(g, h)
            if not c.is_identity():
                yield c
                yield c.inverse()

    def descriptor(self):
        if self.source is None:
            raise TypeError("only pipeline-built stabilizers are serializable")
        base, k = self.source
        return {"kind": "stab0", "base": base.descriptor(), "k": k}


def stab0_subgroup(rep: Representation, h1: FreeWord, h2: FreeWord) -> Stab0Subgroup:
    return Stab0Subgroup(rep, h1, h2)


def soul_surgery(Q: Cone, C: Subgroup, n: int, degree: int = 2) -> SurgeryCone:
    return SurgeryCone(Q, C, magnus_cone(n, degree))


@dataclass
class DensePipeline:
    """Every intermediate object of one run, plus the exact checks performed on it."""

    base: Cone
    k: int
    g_list: tuple
    realization: Realization
    g_minus: FreeWord
    g_plus: FreeWord
    choice: ABChoice
    f1: PLHomeo
    f2: PLHomeo
    rep: Representation
    h1: FreeWord
    h2: FreeWord
    Q: HomeoLexCone
    C: Stab0Subgroup
    Q_prime: SurgeryCone
    checks: dict = field(default_factory=dict)

    def key_points(self) -> dict[str, Fraction]:
        t = self.realization.t
        a, b, gp = self.choice.a, self.choice.b, self.g_plus
        return {"g+(0)": t[gp], "ag+(0)": t[a * gp], "bg+(0)": t[b * gp], "f1(bg+(0))": self.f1(t[b * gp])}


def _run_checks(pl: DensePipeline) -> dict:
    R, rep = pl.realization, pl.rep
    cond1 = all(rep.eval(w, 0) == R.t[w] for w in R.ball_k)
    pts = pl.key_points()
    checks = {
        "realization": True,
        "condition1": cond1,
        "h1_fixes_0": rep.eval(pl.h1, 0) == 0,
        "h2_fixes_0": rep.eval(pl.h2, 0) == 0,
        "h1_nontrivial": not pl.h1.is_identity(),
        "h2_nontrivial": not pl.h2.is_identity(),
        "commutator_nontrivial": not commutator(pl.h1, pl.h2).is_identity(),
        "f1_endpoints": pl.f1(pts["g+(0)"]) == pts["ag+(0)"] and pl.f1(pts["ag+(0)"]) == pts["bg+(0)"],
        "f2_endpoints": pl.f2(pts["g+(0)"]) == pts["bg+(0)"] and pl.f2(pts["bg+(0)"]) == pts["f1(bg+(0))"],
        "f1_pushes_bg+": pts["f1(bg+(0))"] > pts["bg+(0)"],
        "slopes_positive": all(s > 0 for s in pl.f1.slopes() + pl.f2.slopes()),
        "g_list_in_Q": all(pl.Q.classify(g) == Sign.POSITIVE for g in pl.g_list),
        "g_list_outside_C": all(not pl.C.contains(g) for g in pl.g_list),
        "g_list_in_Q_prime": all(pl.Q_prime.classify(g) == Sign.POSITIVE for g in pl.g_list),
    }
    return checks


def dense_approximation_free(P: Cone, g_list: Sequence[FreeWord], k: int, degree: int = 2) -> DensePipeline:
    """A dense cone on F_n (n >= 2) containing every g in ``g_list`` (all in ``P`` and in ``ball(k)``)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    gens = _gens_of(P)
    if len(gens) < 2:
        raise ValueError("F_1 = Z has no dense ordering")
    g_list = tuple(g_list)
    for g in g_list:
        if P.classify(g) != Sign.POSITIVE:
            raise ValueError(f"{g.text()} is not positive")
        if len(g) > k:
            raise ValueError(f"{g.text()} is not in ball({k})")
    R = dynamic_realization(P, k)
    R.check()
    g_minus, g_plus = ball_extrema(R)
    choice = choose_ab(R)
    f1, f2 = build_f1_f2(R, choice.a, choice.b)
    rep = perturbed_representation(R, choice, f1, f2)
    h1, h2 = h1h2(choice.a, choice.b, g_plus)
    Q = HomeoLexCone(rep, P, source=(P, k))
    C = Stab0Subgroup(rep, h1, h2, source=(P, k))
    Qp = SurgeryCone(Q, C, magnus_cone(len(gens), degree))
    pl = DensePipeline(P, k, g_list, R, g_minus, g_plus, choice, f1, f2, rep, h1, h2, Q, C, Qp)
    pl.checks = _run_checks(pl)
    failed = [name for name, ok in pl.checks.items() if not ok]
    if failed:
        raise AssertionError(f"pipeline checks failed: {failed}")
    return pl


def pipeline_parts(P: Cone, k: int) -> tuple[HomeoLexCone, Stab0Subgroup]:
    """The cone Q and subgroup C of the pipeline; deterministic in ``(P, k)``."""
    pl = dense_approximation_free(P, (), k)
    return pl.Q, pl.C


def perturbation_witness(pl: DensePipeline, radius: int | None = None) -> FreeWord | None:
    """Some w with ``rho_k(w)(0) != rho(w)(0)``, searched in ``ball(k+2)``."""
    radius = pl.k + 2 if radius is None else radius
    for w in ball(pl.base.group, radius):
        if pl.rep.eval(w, 0) != pl.realization.rep.eval(w, 0):
            return w
    return None


def disagreement_witness(P: Cone, Q: Cone, radius: int) -> FreeWord | None:
    for w in ball(P.group, radius):
        if P.classify(w) != Q.classify(w):
            return w
    return None


def stab0_convexity(pl: DensePipeline, k: int = 3):
    return check_convex_on_ball(pl.Q, pl.C, k)


# ----------------------------------------------------------------- F_inf


@dataclass
class FinftyResult:
    split: int
    flip: PullbackCone
    dense: Cone


def finfty_approximation(P: Cone, g_list: Sequence[FreeWord], degree: int = 2) -> FinftyResult:
    """Two cones on F_inf near P: one flipping x_K, one dense, both containing ``g_list``.

    K exceeds every generator index in ``g_list``.  The dense cone orders the
    quotient F_{K-1} (kill x_i for i >= K) by P and the kernel, a normal
    subgroup of F_inf, by the Magnus order.
    """
    if P.group != FreeGroup(None):
        raise TypeError("finfty_approximation needs a cone on F_inf")
    g_list = tuple(g_list)
    K = max([2] + [abs(x) + 1 for g in g_list for x in g.letters])
    flip = PullbackCone(P, InvertGenerator(P.group, K))
    quotient = PullbackCone(P, Inclusion(FreeGroup(K - 1), P.group))
    dense = lex_extension(magnus_cone(None, degree), quotient, Retraction(K))
    return FinftyResult(K, flip, dense)

