"""Group families, their elements in normal form, and ball enumeration.

Four families are supported:

* ``FreeGroup(n)`` (``n=None`` for the free group of countable rank),
  elements are freely reduced words;
* ``AbelianGroup(k)``, elements are integer vectors;
* ``TowerGroup(n)``, the iterated extension in which ``x_i`` inverts
  ``x_{i-1}`` and commutes with ``x_j`` for ``j <= i - 2``; elements are
  exponent vectors of the normal form ``x_1^a_1 ... x_n^a_n``;
* ``BraidGroup(n)``, elements are freely reduced Artin words; equality is
  equality in the group, decided by handle reduction.

Letters of free and braid words are signed generator indices: ``3`` is
``x3`` (``s3``) and ``-3`` its inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import BudgetExceeded, DescriptorError, FamilyMismatch, element_budget


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _word_text(letters: Sequence[int], symbol: str) -> str:
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        gen, power = abs(letters[i]), (j - i) * (1 if letters[i] > 0 else -1)
        parts.append(f"{symbol}{gen}" if power == 1 else f"{symbol}{gen}^{power}")
        i = j
    return ".".join(parts)


_LETTER = re.compile(r"\s*([a-z]+)(\d+)(?:\^(-?\d+))?\s*$")


def _parse_word(text: str, symbols: tuple[str, ...]) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "1", "e", "id"):
        return ()
    letters: list[int] = []
    pos = 0
    for chunk in text.split("."):
        m = _LETTER.match(chunk)
        if not m or m.group(1) not in symbols:
            raise DescriptorError(f"bad letter {chunk.strip()!r} in word {text!r}", pos)
        gen = int(m.group(2))
        if gen < 1:
            raise DescriptorError(f"generator index must be positive in {text!r}", pos)
        power = int(m.group(3)) if m.group(3) is not None else 1
        letters.extend([gen if power > 0 else -gen] * abs(power))
        pos += len(chunk) + 1
    return tuple(letters)


def _parse_tuple(text: str) -> tuple[int, ...]:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise DescriptorError(f"expected a parenthesised integer tuple, got {text!r}", 0)
    body = s[1:-1].strip()
    if not body:
        return ()
    try:
        return tuple(int(c) for c in body.split(","))
    except ValueError as exc:
        raise DescriptorError(f"bad integer tuple {text!r}") from exc


# ---------------------------------------------------------------- groups


class Group:
    """Common surface of the supported group families."""

    tag: str

    def identity(self):
        raise NotImplementedError

    def generators(self) -> list:
        """The standard generating set, without inverses."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __call__(self, text: str):
        return self.parse(text)

    def symmetric_generators(self, gens: Sequence[int] | None = None) -> list:
        out = []
        for g in self.generators() if gens is None else [self.generator(i) for i in gens]:
            out.append(g)
            out.append(g.inverse())
        return out

    def generator(self, i: int):
        return self.generators()[i - 1]


@dataclass(frozen=True)
class FreeGroup(Group):
    rank: int | None = 2

    @property
    def tag(self) -> str:
        return "f:inf" if self.rank is None else f"f:{self.rank}"

    def identity(self) -> "FreeWord":
        return FreeWord(self, ())

    def generators(self) -> list["FreeWord"]:
        if self.rank is None:
            raise ValueError("F_inf has no finite generating list; pass explicit indices")
        return [FreeWord(self, (i,)) for i in range(1, self.rank + 1)]

    def generator(self, i: int) -> "FreeWord":
        return self.word((i,))

    def word(self, letters: Iterable[int]) -> "FreeWord":
        letters = tuple(letters)
        if self.rank is not None and any(abs(x) > self.rank or x == 0 for x in letters):
            raise FamilyMismatch(f"letter out of range for {self.tag}: {letters}")
        return FreeWord(self, free_reduce(letters))

    def parse(self, text: str) -> "FreeWord":
        return self.word(_parse_word(text, ("x",)))


@dataclass(frozen=True)
class AbelianGroup(Group):
    dim: int = 2

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def tag(self) -> str:
        return f"z:{self.dim}"

    def identity(self) -> "AbelianVector":
        return AbelianVector(self, (0,) * self.dim)

    def generators(self) -> list["AbelianVector"]:
        return [self.vector(tuple(int(i == j) for j in range(self.dim))) for i in range(self.dim)]

    def vector(self, coords: Iterable[int]) -> "AbelianVector":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.dim:
            raise FamilyMismatch(f"expected {self.dim} coordinates, got {coords}")
        return AbelianVector(self, coords)

    def parse(self, text: str) -> "AbelianVector":
        return self.vector(_parse_tuple(text))


@dataclass(frozen=True)
class TowerGroup(Group):
    rank: int = 2

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("tower rank must be >= 1")

    @property
    def tag(self) -> str:
        return f"t:{self.rank}"

    def identity(self) -> "TowerElement":
        return TowerElement(self, (0,) * self.rank)

    def generators(self) -> list["TowerElement"]:
        return [self.element(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]

    def element(self, exponents: Iterable[int]) -> "TowerElement":
        exponents = tuple(int(a) for a in exponents)
        if len(exponents) != self.rank:
            raise FamilyMismatch(f"expected {self.rank} exponents, got {exponents}")
        return TowerElement(self, exponents)

    def parse(self, text: str) -> "TowerElement":
        s = text.strip()
        if s.startswith("("):
            return self.element(_parse_tuple(s))
        g = self.identity()
        for x in _parse_word(s, ("x",)):
            if abs(x) > self.rank:
                raise DescriptorError(f"generator x{abs(x)} out of range for {self.tag}")
            g = g * (self.generator(abs(x)) if x > 0 else self.generator(abs(x)).inverse())
        return g


@dataclass(frozen=True)
class BraidGroup(Group):
    strands: int = 3

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("braid groups need at least 2 strands")

    @property
    def tag(self) -> str:
        return f"b:{self.strands}"

    def identity(self) -> "BraidWord":
        return BraidWord(self, ())

    def generators(self) -> list["BraidWord"]:
        return [BraidWord(self, (i,)) for i in range(1, self.strands)]

    def word(self, letters: Iterable[int]) -> "BraidWord":
        letters = tuple(letters)
        if any(x == 0 or abs(x) >= self.strands for x in letters):
            raise FamilyMismatch(f"letter out of range for {self.tag}: {letters}")
        return BraidWord(self, free_reduce(letters))

    def parse(self, text: str) -> "BraidWord":
        return self.word(_parse_word(text, ("s", "sigma")))


def parse_group(tag: str) -> Group:
    """``f:2``, ``f:inf``, ``z:3``, ``t:3``, ``klein``, ``b:4``."""
    t = tag.strip().lower()
    if t in ("klein", "k"):
        return TowerGroup(2)
    kind, _, arg = t.partition(":")
    try:
        if kind == "f":
            return FreeGroup(None if arg in ("inf", "infinity", "oo") else int(arg))
        if kind == "z":
            return AbelianGroup(int(arg))
        if kind == "t":
            return TowerGroup(int(arg))
        if kind == "b":
            return BraidGroup(int(arg))
    except ValueError:
        pass
    raise DescriptorError(f"unknown group tag {tag!r}")


# -------------------------------------------------------------- elements


class Element:
    group: Group

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.group != self.group:
            other_tag = getattr(getattr(other, "group", None), "tag", type(other).__name__)
            raise FamilyMismatch(f"cannot combine {self.group.tag} with {other_tag}")

    def __mul__(self, other):
        raise NotImplementedError

    def inverse(self):
        raise NotImplementedError

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = self.group.identity()
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self == self.group.identity()

    def __str__(self) -> str:
        return self.text()

    def text(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class FreeWord(Element):
    group: FreeGroup
    letters: tuple[int, ...]

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        self._check(other)
        return FreeWord(self.group, free_reduce(self.letters + other.letters))

    def inverse(self) -> "FreeWord":
        return FreeWord(self.group, tuple(-x for x in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def generators_used(self) -> set[int]:
        return {abs(x) for x in self.letters}

    def text(self) -> str:
        return _word_text(self.letters, "x")

    def __repr__(self) -> str:
        return f"FreeWord({self.text()})"


@dataclass(frozen=True)
class AbelianVector(Element):
    group: AbelianGroup
    coords: tuple[int, ...]

    def __mul__(self, other: "AbelianVector") -> "AbelianVector":
        self._check(other)
        return AbelianVector(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def inverse(self) -> "AbelianVector":
        return AbelianVector(self.group, tuple(-a for a in self.coords))

    def text(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"AbelianVector{self.text()}"


@dataclass(frozen=True)
class TowerElement(Element):
    group: TowerGroup
    exponents: tuple[int, ...]

    def __mul__(self, other: "TowerElement") -> "TowerElement":
        self._check(other)
        a, b = self.exponents, other.exponents
        n = len(a)
        # x_{j+1}^{a} x_j^{b} = x_j^{(-1)^a b} x_{j+1}^{a}; other generators commute past x_j
        c = tuple(a[j] + (b[j] if j == n - 1 or a[j + 1] % 2 == 0 else -b[j]) for j in range(n))
        return TowerElement(self.group, c)

    def inverse(self) -> "TowerElement":
        a = self.exponents
        n = len(a)
        # solve a * c = 0 from the top down
        c = [0] * n
        for j in range(n - 1, -1, -1):
            c[j] = -a[j] if j == n - 1 or a[j + 1] % 2 == 0 else a[j]
        return TowerElement(self.group, tuple(c))

    def text(self) -> str:
        return "(" + ",".join(str(c) for c in self.exponents) + ")"

    def __repr__(self) -> str:
        return f"TowerElement{self.text()}"


@lru_cache(maxsize=None)
def _burau_generator(n: int, letter: int) -> tuple[tuple[Fraction, ...], ...]:
    t = Fraction(2)
    i = abs(letter) - 1
    m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    if letter > 0:
        block = ((1 - t, t), (Fraction(1), Fraction(0)))
    else:
        block = ((Fraction(0), Fraction(1)), (1 / t, 1 - 1 / t))
    for r in range(2):
        for c in range(2):
            m[i + r][i + c] = block[r][c]
    return tuple(tuple(row) for row in m)


@lru_cache(maxsize=200_000)
def _burau(n: int, letters: tuple[int, ...]) -> tuple[tuple[Fraction, ...], ...]:
    """Unreduced Burau matrix at t=2: a homomorphic hash key for braids."""
    if not letters:
        return tuple(tuple(Fraction(int(r == c)) for c in range(n)) for r in range(n))
    if len(letters) == 1:
        return _burau_generator(n, letters[0])
    mid = len(letters) // 2
    a, b = _burau(n, letters[:mid]), _burau(n, letters[mid:])
    return tuple(
        tuple(sum((a[r][k] * b[k][c] for k in range(n)), Fraction(0)) for c in range(n))
        for r in range(n)
    )


@dataclass(frozen=True, eq=False)
class BraidWord(Element):
    group: BraidGroup
    letters: tuple[int, ...]

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        self._check(other)
        return BraidWord(self.group, free_reduce(self.letters + other.letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.group, tuple(-x for x in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def burau(self):
        return _burau(self.group.strands, self.letters)

    def __hash__(self) -> int:
        return hash((self.group, self.burau()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BraidWord) or other.group != self.group:
            return NotImplemented if not isinstance(other, Element) else False
        if self.letters == other.letters:
            return True
        if self.burau() != other.burau():
            return False
        return braid_equal(self, other)

    def text(self) -> str:
        return _word_text(self.letters, "s")

    def __repr__(self) -> str:
        return f"BraidWord({self.text()})"


GroupElement = Union[FreeWord, AbelianVector, TowerElement, BraidWord]


# ------------------------------------------------------------ operations


def multiply(a: Element, b: Element) -> Element:
    return a * b


def invert(a: Element) -> Element:
    return a.inverse()


def commutator(a: Element, b: Element) -> Element:
    """``a^-1 b^-1 a b``."""
    a._check(b)
    return a.inverse() * b.inverse() * a * b


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    """True iff ``u`` and ``v`` are the same braid (handle reduction of u v^-1)."""
    from .braid import handle_reduce

    u._check(v)
    w = free_reduce(u.letters + tuple(-x for x in reversed(v.letters)))
    return not handle_reduce(BraidWord(u.group, w)).letters


@dataclass(frozen=True)
class Ball:
    group: Group
    radius: int
    members: tuple  # ordered by word length, then discovery order

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g) -> bool:
        return g in self._index

    @property
    def _index(self) -> frozenset:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.members)
            object.__setattr__(self, "_idx", idx)
        return idx


def _free_ball(group: FreeGroup, k: int, gens: Sequence[int], budget: int) -> list[FreeWord]:
    letters = [s * i for i in gens for s in (1, -1)]
    out = [()]
    frontier = [()]
    for _ in range(k):
        nxt = []
        for w in frontier:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        if len(out) > budget:
            raise BudgetExceeded(f"ball of {group.tag} radius {k} exceeds budget {budget}")
        frontier = nxt
    return [FreeWord(group, w) for w in out]


def ball(group: Group, k: int, gens: Sequence[int] | None = None, budget: int | None = None) -> Ball:
    """All elements expressible as products of at most ``k`` generators and inverses.

    ``gens`` selects generator indices (1-based); it is required for ``F_inf``
    and defaults to all generators otherwise.
    """
    if k < 0:
        raise ValueError("radius must be >= 0")
    budget = element_budget() if budget is None else budget
    if isinstance(group, FreeGroup):
        if gens is None:
            if group.rank is None:
                raise ValueError("ball in F_inf needs an explicit generator list")
            gens = range(1, group.rank + 1)
        return Ball(group, k, tuple(_free_ball(group, k, list(gens), budget)))
    step = group.symmetric_generators(gens)
    seen = {group.identity(): None}
    frontier = [group.identity()]
    for _ in range(k):
        nxt = []
        for g in frontier:
            for s in step:
                h = g * s
                if h not in seen:
                    seen[h] = None
                    nxt.append(h)
        if len(seen) > budget:
            raise BudgetExceeded(f"ball of {group.tag} radius {k} exceeds budget {budget}")
        frontier = nxt
    return Ball(group, k, tuple(seen))


def word_length(g: Element) -> int:
    """Length of the stored normal form (free/braid words only)."""
    return len(g.letters)  # type: ignore[attr-defined]
