"""Positive cones as decidable oracles, ball-restricted axiom checks, and the
two universal constructions (convex-subgroup surgery, lexicographic extension).

A cone never enumerates its elements.  Every global property is checked on a
finite ball and reported as a :class:`BallCertificate`; refutations always
carry concrete witnesses that can be re-checked with a handful of
``classify`` calls.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Iterable, Sequence

from .elements import Ball, Element, Group, ball
from .errors import FamilyMismatch


class Sign(IntEnum):
    NEGATIVE = -1
    IDENTITY = 0
    POSITIVE = 1

    @property
    def symbol(self) -> str:
        return {1: "+", -1: "-", 0: "0"}[int(self)]

    @classmethod
    def of(cls, x) -> "Sign":
        return cls.POSITIVE if x > 0 else cls.NEGATIVE if x < 0 else cls.IDENTITY

    @classmethod
    def from_symbol(cls, s: str) -> "Sign":
        return {"+": cls.POSITIVE, "-": cls.NEGATIVE, "0": cls.IDENTITY}[s]


class Comparison(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Cone:
    """A total 3-way classifier on one group.

    Subclasses implement ``_classify``; ``descriptor`` returns the JSON-ready
    term used for persistence (see :mod:`ordspace.descriptors`).
    """

    group: Group
    kind = "opaque"

    def classify(self, g: Element) -> Sign:
        if g.group != self.group:
            raise FamilyMismatch(f"{self.kind} cone on {self.group.tag} got element of {g.group.tag}")
        return Sign(self._classify(g))

    def _classify(self, g: Element) -> Sign:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise TypeError(f"{type(self).__name__} is not serializable")

    def smaller_positive_candidates(self, g: Element) -> Iterable[Element]:
        """Family-specific guesses for some h with 1 < h < g; verified by the caller."""
        return ()

    def least_positive_info(self):
        """``(element_or_None, reason)`` when an analytic argument is available, else None."""
        return None

    def __contains__(self, g: Element) -> bool:
        return self.classify(g) == Sign.POSITIVE

    def __repr__(self) -> str:
        return f"<{type(self).__name__} on {self.group.tag}>"


class FunctionCone(Cone):
    """Wraps an arbitrary callable; used for adversarial and ad-hoc oracles."""

    kind = "function"

    def __init__(self, group: Group, fn: Callable[[Element], int], name: str = "function"):
        self.group = group
        self._fn = fn
        self.name = name

    def _classify(self, g):
        return Sign(self._fn(g))


class Subgroup:
    """Membership oracle for a subgroup."""

    group: Group
    kind = "opaque"

    def contains(self, g: Element) -> bool:
        raise NotImplementedError

    def __contains__(self, g: Element) -> bool:
        return self.contains(g)

    def descriptor(self) -> dict:
        raise TypeError(f"{type(self).__name__} is not serializable")


class WholeGroup(Subgroup):
    kind = "whole"

    def __init__(self, group: Group):
        self.group = group

    def contains(self, g):
        return True

    def descriptor(self):
        return {"kind": "whole"}


class FunctionSubgroup(Subgroup):
    kind = "function"

    def __init__(self, group: Group, fn: Callable[[Element], bool], name: str = "function"):
        self.group = group
        self._fn = fn
        self.name = name

    def contains(self, g):
        return bool(self._fn(g))


# ----------------------------------------------------------- certificates


VERIFIED = "verified-on-ball"
REFUTED = "refuted"


@dataclass(frozen=True)
class BallCertificate:
    property: str
    radius: int
    verdict: str
    witness: tuple = ()
    checked: int = 0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == VERIFIED

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "radius": self.radius,
            "verdict": self.verdict,
            "witness": [w.text() for w in self.witness],
            "checked": self.checked,
            "note": self.note,
        }


class _Memo:
    """Per-check classification cache; cones themselves stay stateless."""

    def __init__(self, cone: Cone):
        self.cone = cone
        self.cache: dict = {}

    def __call__(self, g) -> Sign:
        s = self.cache.get(g)
        if s is None:
            s = self.cone.classify(g)
            self.cache[g] = s
        return s


def compare(P: Cone, g: Element, h: Element) -> Comparison:
    """``g < h`` iff ``g^-1 h`` is positive."""
    g._check(h)
    return Comparison(-int(P.classify(g.inverse() * h)))


def sort_key(P: Cone):
    return functools.cmp_to_key(lambda g, h: int(compare(P, g, h)))


def _ball_for(P: Cone, k: int, gens=None) -> Ball:
    if gens is None:
        gens = getattr(P, "ball_generators", None)
    return ball(P.group, k, gens=gens)


def check_axioms_on_ball(P: Cone, k: int, gens: Sequence[int] | None = None) -> BallCertificate:
    """Trichotomy on the ball and closure of P under products of ball elements."""
    members = _ball_for(P, k, gens)
    cls = _Memo(P)
    checked = 0
    ident = P.group.identity()
    for g in members:
        if g == ident:
            continue
        checked += 1
        s, t = cls(g), cls(g.inverse())
        if s == Sign.IDENTITY or t != -s:
            return BallCertificate("axioms", k, REFUTED, (g, g.inverse()), checked, "trichotomy")
    checked += 1
    if cls(ident) != Sign.IDENTITY:
        return BallCertificate("axioms", k, REFUTED, (ident,), checked, "identity not neutral")
    positives = [g for g in members if cls(g) == Sign.POSITIVE]
    for p in positives:
        for q in positives:
            checked += 1
            if P.classify(p * q) != Sign.POSITIVE:
                return BallCertificate("axioms", k, REFUTED, (p, q), checked, "closure")
    return BallCertificate("axioms", k, VERIFIED, (), checked)


def check_conradian_on_ball(P: Cone, k: int, gens=None) -> BallCertificate:
    members = _ball_for(P, k, gens)
    positives = [g for g in members if P.classify(g) == Sign.POSITIVE]
    checked = 0
    for g in positives:
        gi, g2 = g.inverse(), g * g
        for h in positives:
            checked += 1
            if P.classify(gi * h * g2) != Sign.POSITIVE:
                return BallCertificate("conradian", k, REFUTED, (g, h), checked, "g^-1 h g^2 not positive")
    return BallCertificate("conradian", k, VERIFIED, (), checked)


def check_biinvariance_on_ball(P: Cone, k: int, gens=None) -> BallCertificate:
    members = _ball_for(P, k, gens)
    positives = [g for g in members if P.classify(g) == Sign.POSITIVE]
    checked = 0
    for g in members:
        gi = g.inverse()
        for p in positives:
            checked += 1
            if P.classify(g * p * gi) != Sign.POSITIVE:
                return BallCertificate("biinvariance", k, REFUTED, (g, p), checked, "g p g^-1 not positive")
    return BallCertificate("biinvariance", k, VERIFIED, (), checked)


def check_convex_on_ball(P: Cone, C: Subgroup, k: int, gens=None) -> BallCertificate:
    """For f in the ball and g, h in C on the ball, g < f < h forces f in C."""
    members = _ball_for(P, k, gens)
    inside = [g for g in members if C.contains(g)]
    checked = 0
    for f in members:
        if C.contains(f):
            continue
        below = above = None
        for g in inside:
            checked += 1
            c = compare(P, g, f)
            if c == Comparison.LESS and below is None:
                below = g
            elif c == Comparison.GREATER and above is None:
                above = g
            if below is not None and above is not None:
                return BallCertificate("convex", k, REFUTED, (below, f, above), checked, "g < f < h with f outside C")
    return BallCertificate("convex", k, VERIFIED, (), checked)


# ------------------------------------------------------- constructions


class SurgeryCone(Cone):
    """``P' = (P minus C) union Q`` for a P-convex subgroup C.

    ``embed`` maps members of C to the group ``replacement`` is defined on
    (identity when both live on the same group).
    """

    kind = "surgery"

    def __init__(self, base: Cone, convex: Subgroup, replacement: Cone, embed=None):
        if convex.group != base.group:
            raise FamilyMismatch("convex subgroup and base cone live on different groups")
        if embed is None and replacement.group != base.group:
            raise FamilyMismatch("replacement cone needs an embedding map")
        self.group = base.group
        self.base = base
        self.convex = convex
        self.replacement = replacement
        self.embed = embed
        self.ball_generators = getattr(base, "ball_generators", None)

    def _classify(self, g):
        if self.convex.contains(g):
            return self.replacement.classify(g if self.embed is None else self.embed(g))
        return self.base.classify(g)

    def smaller_positive_candidates(self, g):
        if self.convex.contains(g):
            if self.embed is None:
                yield from self.replacement.smaller_positive_candidates(g)
            extra = getattr(self.convex, "smaller_positive_candidates", None)
            if extra is not None:
                yield from extra(self, g)
        else:
            yield from getattr(self.convex, "positive_members", lambda cone: ())(self)
            yield from self.base.smaller_positive_candidates(g)

    def descriptor(self):
        d = {
            "kind": "surgery",
            "base": self.base.descriptor(),
            "convex": self.convex.descriptor(),
            "replacement": self.replacement.descriptor(),
        }
        if self.embed is not None:
            d["embed"] = self.embed.descriptor()
        return d


def surgery(P: Cone, C: Subgroup, Q: Cone, embed=None) -> SurgeryCone:
    return SurgeryCone(P, C, Q, embed)


class LexCone(Cone):
    """Lexicographic cone from ``1 -> K -> G -> G/K -> 1``.

    Decided by the quotient first; elements of the kernel are passed (through
    ``kernel_map``, if given) to ``kernel_cone``.
    """

    kind = "lex-ses"

    def __init__(self, kernel_cone: Cone, quotient_cone: Cone, project, kernel_map=None):
        if project.target != quotient_cone.group:
            raise FamilyMismatch("projection target differs from quotient cone group")
        self.group = project.source
        if kernel_map is None and kernel_cone.group != self.group:
            raise FamilyMismatch("kernel cone needs a kernel map")
        self.kernel_cone = kernel_cone
        self.quotient_cone = quotient_cone
        self.project = project
        self.kernel_map = kernel_map
        self.ball_generators = getattr(project, "ball_generators", None)

    def _classify(self, g):
        s = self.quotient_cone.classify(self.project(g))
        if s != Sign.IDENTITY:
            return s
        return self.kernel_cone.classify(g if self.kernel_map is None else self.kernel_map(g))

    def in_kernel(self, g) -> bool:
        return self.project(g).is_identity()

    def smaller_positive_candidates(self, g):
        if self.kernel_map is None:
            if self.in_kernel(g):
                for h in self.kernel_cone.smaller_positive_candidates(g):
                    if self.in_kernel(h):
                        yield h
        else:
            pre = getattr(self.kernel_map, "preimage", None)
            if pre is not None and self.in_kernel(g):
                for h in self.kernel_cone.smaller_positive_candidates(self.kernel_map(g)):
                    yield pre(h)
        # any positive kernel element lies below a positive element outside the kernel
        if not self.in_kernel(g):
            yield from getattr(self.project, "kernel_samples", lambda: ())()

    def descriptor(self):
        maps = {"project": self.project.descriptor()}
        if self.kernel_map is not None:
            maps["kernel"] = self.kernel_map.descriptor()
        return {
            "kind": "lex-ses",
            "kernel": self.kernel_cone.descriptor(),
            "quotient": self.quotient_cone.descriptor(),
            "maps": maps,
        }


class PullbackCone(Cone):
    """``classify(g) = inner.classify(f(g))`` for an injective map ``f``."""

    kind = "pullback"

    def __init__(self, inner: Cone, along):
        if along.target != inner.group:
            raise FamilyMismatch("map target differs from the cone's group")
        self.group = along.source
        self.inner = inner
        self.along = along
        self.ball_generators = getattr(along, "ball_generators", None)

    def _classify(self, g):
        return self.inner.classify(self.along(g))

    def descriptor(self):
        return {"kind": "pullback", "cone": self.inner.descriptor(), "map": self.along.descriptor()}


def lex_extension(kernel_cone: Cone, quotient_cone: Cone, project, kernel_map=None) -> LexCone:
    return LexCone(kernel_cone, quotient_cone, project, kernel_map)


# ------------------------------------------------- minima and density


@dataclass(frozen=True)
class LeastPositive:
    element: Element | None
    certified: bool
    reason: str
    certificate: BallCertificate


def least_positive_on_ball(P: Cone, k: int, gens=None) -> LeastPositive:
    """The minimum of P on the ball, and whether it is known to be global."""
    members = _ball_for(P, k, gens)
    positives = [g for g in members if P.classify(g) == Sign.POSITIVE]
    if not positives:
        cert = BallCertificate("least-positive", k, VERIFIED, (), len(members), "no positive element on ball")
        return LeastPositive(None, False, "empty", cert)
    m = min(positives, key=sort_key(P))
    cert = BallCertificate("least-positive", k, VERIFIED, (m,), len(members))
    info = P.least_positive_info()
    if info is None:
        return LeastPositive(m, False, "no analytic argument for this family", cert)
    global_min, reason = info
    if global_min is not None and global_min == m:
        return LeastPositive(m, True, reason, cert)
    return LeastPositive(m, False, reason, cert)


def density_witness(P: Cone, g: Element, search_radius: int, gens=None) -> Element | None:
    """Some h with 1 < h < g, or None if neither analytic nor ball search finds one."""
    if P.classify(g) != Sign.POSITIVE:
        raise ValueError(f"{g.text()} is not positive")

    def good(h):
        return P.classify(h) == Sign.POSITIVE and compare(P, h, g) == Comparison.LESS

    for h in P.smaller_positive_candidates(g):
        if h.group == P.group and good(h):
            return h
    for h in _ball_for(P, search_radius, gens):
        if good(h):
            return h
    return None
