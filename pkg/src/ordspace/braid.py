"""Dehornoy ordering of braid groups via handle reduction.

A word is *i-positive* when its smallest generator index is ``i`` and every
``s_i`` in it carries exponent +1.  Handle reduction rewrites any braid word
into an equivalent word that is empty, i-positive or i-negative, which
decides both equality of braids and membership in the Dehornoy cone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import Cone, Sign, Subgroup, SurgeryCone
from .elements import BraidGroup, BraidWord, free_reduce
from .errors import BudgetExceeded
from .maps import Map

STEP_FACTOR = 10**4


def _first_handle(w: tuple[int, ...]):
    """The handle ``s_i^e u s_i^-e`` with the leftmost right end, or None.

    Its interior holds only letters of index > i, and (being the first to
    close) contains no smaller handle, so every s_{i+1} inside has one sign.
    """
    for r in range(1, len(w)):
        i = abs(w[r])
        for l in range(r - 1, -1, -1):
            j = abs(w[l])
            if j < i:
                break
            if j == i:
                if w[l] == -w[r]:
                    return l, r
                break
    return None


def _reduce_handle(w: tuple[int, ...], l: int, r: int) -> tuple[int, ...]:
    e = 1 if w[l] > 0 else -1
    i = abs(w[l])
    middle: list[int] = []
    for x in w[l + 1 : r]:
        if abs(x) == i + 1:
            d = 1 if x > 0 else -1
            middle.extend((-e * (i + 1), d * i, e * (i + 1)))
        else:
            middle.append(x)
    return free_reduce(w[:l] + tuple(middle) + w[r + 1 :])


def handle_reduce(w: BraidWord, budget: int | None = None) -> BraidWord:
    """Rewrite ``w`` until it has no handles (leftmost-closing handle first)."""
    letters = free_reduce(w.letters)
    limit = budget if budget is not None else STEP_FACTOR * max(1, len(letters)) ** 2
    steps = 0
    while True:
        h = _first_handle(letters)
        if h is None:
            return BraidWord(w.group, letters)
        steps += 1
        if steps > limit:
            raise BudgetExceeded(f"handle reduction of {w.text()} exceeded {limit} steps")
        letters = _reduce_handle(letters, *h)


@dataclass(frozen=True)
class SigmaClass:
    """``sign`` is +1 (i-positive), -1 (i-negative) or 0 (trivial, index None)."""

    sign: int
    index: int | None

    def __str__(self) -> str:
        if self.sign == 0:
            return "trivial"
        return f"{self.index}-{'positive' if self.sign > 0 else 'negative'}"


def sigma_class(w: BraidWord) -> SigmaClass:
    reduced = handle_reduce(w).letters
    if not reduced:
        return SigmaClass(0, None)
    i = min(abs(x) for x in reduced)
    first = next(x for x in reduced if abs(x) == i)
    return SigmaClass(1 if first > 0 else -1, i)


def is_i_positive(letters) -> bool:
    """Literal test on a word, no reduction."""
    if not letters:
        return False
    i = min(abs(x) for x in letters)
    return all(x > 0 for x in letters if abs(x) == i)


class DehornoyCone(Cone):
    kind = "dehornoy"

    def __init__(self, n: int):
        self.group = BraidGroup(n)

    def _classify(self, g):
        return Sign(sigma_class(g).sign)

    def least_positive_info(self):
        n = self.group.strands
        return self.group.generator(n - 1), f"<s{n - 1}> is a convex infinite cyclic subgroup"

    def descriptor(self):
        return {"kind": "dehornoy", "group": self.group.tag}


def dehornoy_cone(n: int) -> DehornoyCone:
    return DehornoyCone(n)


class ParabolicSubgroup(Subgroup):
    """``<s_r, ..., s_{n-1}>``; membership read off the handle-reduced word."""

    kind = "parabolic"

    def __init__(self, n: int, r: int):
        if not 1 <= r <= n:
            raise ValueError(f"need 1 <= r <= {n}")
        self.group = BraidGroup(n)
        self.r = r

    def contains(self, g):
        reduced = handle_reduce(g).letters
        return all(abs(x) >= self.r for x in reduced)

    def descriptor(self):
        return {"kind": "parabolic", "group": self.group.tag, "r": self.r}


def parabolic_subgroup(n: int, r: int) -> ParabolicSubgroup:
    return ParabolicSubgroup(n, r)


class ShiftMap(Map):
    """Identify ``<s_{n-2}, s_{n-1}>`` in B_n with B_3 (s_{n-2} -> s1, s_{n-1} -> s2)."""

    kind = "shift"

    def __init__(self, n: int):
        self.source = BraidGroup(n)
        self.target = BraidGroup(3)
        self.offset = n - 3

    def _apply(self, g):
        reduced = handle_reduce(g).letters
        if any(abs(x) <= self.offset for x in reduced):
            raise ValueError(f"{g.text()} is not in the B_3 copy")
        return BraidWord(self.target, tuple(x - self.offset if x > 0 else x + self.offset for x in reduced))

    def preimage(self, g):
        return BraidWord(self.source, tuple(x + self.offset if x > 0 else x - self.offset for x in g.letters))

    def descriptor(self):
        return {"kind": "shift", "source": self.source.tag}


def b3_abelianization_cone(degree: int = 2):
    """Cone on B_3: exponent sum first, then the Magnus order of the free commutator subgroup."""
    from .abelian import FlagCone, FlagOrder
    from .cones import lex_extension
    from .maps import B3CommutatorMap, ExponentSum
    from .realization import magnus_cone

    b3 = BraidGroup(3)
    return lex_extension(
        magnus_cone(2, degree),
        FlagCone(FlagOrder.standard(1)),
        ExponentSum(b3),
        kernel_map=B3CommutatorMap(),
    )


def example_braid_surgery(n: int, inner_cone: Cone | None = None) -> SurgeryCone:
    """Dehornoy outside ``<s_{n-2}, s_{n-1}>``, ``inner_cone`` (on B_3) inside."""
    if n < 4:
        raise ValueError("the construction needs n >= 4")
    if inner_cone is None:
        inner_cone = b3_abelianization_cone()
    if inner_cone.group != BraidGroup(3):
        raise ValueError("inner cone must live on B_3")
    return SurgeryCone(dehornoy_cone(n), parabolic_subgroup(n, n - 2), inner_cone, embed=ShiftMap(n))
