"""Homomorphisms used by lexicographic extensions and surgeries.

Each map knows its source and target groups and serializes to a small JSON
term so that cones built from it can be persisted.
"""

from __future__ import annotations

from functools import lru_cache

from .elements import (
    AbelianGroup,
    AbelianVector,
    BraidGroup,
    BraidWord,
    FreeGroup,
    FreeWord,
    Group,
    TowerElement,
    TowerGroup,
    free_reduce,
)
from .errors import FamilyMismatch


class Map:
    source: Group
    target: Group
    kind = "map"

    def __call__(self, g):
        if g.group != self.source:
            raise FamilyMismatch(f"{self.kind} expects {self.source.tag}, got {g.group.tag}")
        return self._apply(g)

    def _apply(self, g):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


class IdentityMap(Map):
    kind = "identity"

    def __init__(self, group: Group):
        self.source = self.target = group

    def _apply(self, g):
        return g

    def descriptor(self):
        return {"kind": "identity", "group": self.source.tag}


class CoordinateMap(Map):
    """Keep a subset of coordinates of an abelian vector or tower exponent vector.

    On a tower group this is a homomorphism only for a top segment of the
    exponents (or when restricted to a kernel); callers pick accordingly.
    """

    kind = "coords"

    def __init__(self, source: Group, keep):
        if not isinstance(source, (AbelianGroup, TowerGroup)):
            raise TypeError("coordinate maps need an abelian or tower source")
        self.source = source
        self.keep = tuple(int(i) for i in keep)
        self.target = AbelianGroup(len(self.keep))
        self._n = source.dim if isinstance(source, AbelianGroup) else source.rank
        if not self.keep or any(not 0 <= i < self._n for i in self.keep):
            raise ValueError(f"bad coordinate selection {self.keep}")

    def _apply(self, g):
        v = g.coords if isinstance(g, AbelianVector) else g.exponents
        return AbelianVector(self.target, tuple(v[i] for i in self.keep))

    def kernel_samples(self):
        for i in range(self._n):
            if i not in self.keep:
                e = tuple(int(i == j) for j in range(self._n))
                g = (
                    AbelianVector(self.source, e)
                    if isinstance(self.source, AbelianGroup)
                    else TowerElement(self.source, e)
                )
                yield g
                yield g.inverse()

    def descriptor(self):
        return {"kind": "coords", "source": self.source.tag, "keep": list(self.keep)}


class ExponentSum(Map):
    """Abelianization of a braid group (or total exponent of a free word) onto Z."""

    kind = "exponent-sum"

    def __init__(self, source: Group):
        if not isinstance(source, (BraidGroup, FreeGroup)):
            raise TypeError("exponent sum needs a braid or free group")
        self.source = source
        self.target = AbelianGroup(1)

    def _apply(self, g):
        return AbelianVector(self.target, (sum(1 if x > 0 else -1 for x in g.letters),))

    def descriptor(self):
        return {"kind": "exponent-sum", "source": self.source.tag}


@lru_cache(maxsize=None)
def _schreier(m: int) -> tuple[int, ...]:
    """y_m = s1^m s2 s1^-(m+1) in the free basis y_0 (letter 1), y_1 (letter 2)."""
    if m == 0:
        return (1,)
    if m == 1:
        return (2,)
    if m >= 2:
        # y_m = y_{m-2}^-1 y_{m-1}
        return free_reduce(tuple(-x for x in reversed(_schreier(m - 2))) + _schreier(m - 1))
    # y_m = y_{m+1} y_{m+2}^-1
    return free_reduce(_schreier(m + 1) + tuple(-x for x in reversed(_schreier(m + 2))))


class B3CommutatorMap(Map):
    """Isomorphism from the commutator subgroup of B_3 onto F_2.

    The free basis is ``y0 = s2 s1^-1`` and ``y1 = s1 s2 s1^-2``; rewriting
    uses the Schreier transversal ``{s1^m}`` of the abelianization.  Only
    defined on braids with exponent sum 0.
    """

    kind = "b3-commutator"

    def __init__(self):
        self.source = BraidGroup(3)
        self.target = FreeGroup(2)

    def _apply(self, g: BraidWord):
        coset = 0
        out: list[int] = []
        for x in g.letters:
            if abs(x) == 1:
                coset += 1 if x > 0 else -1
            elif x > 0:
                out.extend(_schreier(coset))
                coset += 1
            else:
                coset -= 1
                out.extend(-y for y in reversed(_schreier(coset)))
        if coset != 0:
            raise ValueError(f"{g.text()} is not in the commutator subgroup")
        return FreeWord(self.target, free_reduce(out))

    def preimage(self, w: FreeWord) -> BraidWord:
        images = {1: (2, -1), 2: (1, 2, -1, -1)}
        letters: list[int] = []
        for x in w.letters:
            img = images[abs(x)]
            letters.extend(img if x > 0 else tuple(-y for y in reversed(img)))
        return self.source.word(letters)

    def descriptor(self):
        return {"kind": "b3-commutator"}


class Retraction(Map):
    """F_inf -> F_{K-1}: kill every generator of index >= K."""

    kind = "retraction"

    def __init__(self, split: int):
        if split < 2:
            raise ValueError("split index must be >= 2")
        self.split = split
        self.source = FreeGroup(None)
        self.target = FreeGroup(split - 1)
        self.ball_generators = tuple(range(1, split + 2))

    def _apply(self, g: FreeWord):
        return FreeWord(self.target, free_reduce(x for x in g.letters if abs(x) < self.split))

    def kernel_samples(self):
        x = self.source.generator(self.split)
        yield x
        yield x.inverse()

    def descriptor(self):
        return {"kind": "retraction", "split": self.split}


class Inclusion(Map):
    """F_m into F_inf (or F_m into F_n, m <= n): same letters."""

    kind = "inclusion"

    def __init__(self, source: FreeGroup, target: FreeGroup):
        self.source, self.target = source, target

    def _apply(self, g):
        return FreeWord(self.target, g.letters)

    def descriptor(self):
        return {"kind": "inclusion", "source": self.source.tag, "target": self.target.tag}


class InvertGenerator(Map):
    """The automorphism of a free group sending x_i to x_i^-1 and fixing the rest."""

    kind = "invert"

    def __init__(self, group: FreeGroup, index: int):
        if index < 1 or (group.rank is not None and index > group.rank):
            raise ValueError(f"no generator x{index} in {group.tag}")
        self.source = self.target = group
        self.index = index
        if group.rank is None:
            self.ball_generators = tuple(range(1, index + 2))

    def _apply(self, g: FreeWord):
        return FreeWord(self.target, tuple(-x if abs(x) == self.index else x for x in g.letters))

    def descriptor(self):
        return {"kind": "invert", "group": self.source.tag, "index": self.index}
