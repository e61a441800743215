"""The Magnus bi-ordering of free groups.

``x_i -> 1 + X_i`` embeds F_n into the units of noncommutative power series
with integer coefficients.  A word is positive when the first nonzero
coefficient of ``expansion(w) - 1`` (monomials ordered by degree, then
lexicographically by generator index) is positive.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .cones import Cone, Sign
from .elements import FreeGroup, FreeWord, commutator, free_reduce
from .errors import BudgetExceeded, element_budget

Monomial = tuple[int, ...]


class MagnusSeries:
    """Truncated expansion: monomials of degree <= ``degree`` with integer coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict[Monomial, int] | None = None):
        self.degree = degree
        self.coeffs = dict(coeffs) if coeffs is not None else {(): 1}

    @classmethod
    def of_word(cls, letters: Iterable[int], degree: int, budget: int | None = None) -> "MagnusSeries":
        limit = budget if budget is not None else element_budget()
        s: dict[Monomial, int] = {(): 1}
        for x in letters:
            i = abs(x)
            out: dict[Monomial, int] = defaultdict(int)
            for m, c in s.items():
                out[m] += c
                room = degree - len(m)
                if x > 0:
                    if room >= 1:
                        out[m + (i,)] += c
                else:
                    # (1 + X)^-1 = 1 - X + X^2 - ...
                    for j in range(1, room + 1):
                        out[m + (i,) * j] += c if j % 2 == 0 else -c
            s = {m: c for m, c in out.items() if c}
            if len(s) > limit:
                raise BudgetExceeded(f"Magnus expansion exceeded {limit} monomials at degree {degree}")
        return cls(degree, s)

    def leading(self) -> tuple[Monomial, int] | None:
        """First nonzero non-constant term in degree-then-lex order."""
        terms = [m for m, c in self.coeffs.items() if m and c]
        if not terms:
            return None
        m = min(terms, key=lambda t: (len(t), t))
        return m, self.coeffs[m]

    def __getitem__(self, m: Monomial) -> int:
        return self.coeffs.get(tuple(m), 0)


def magnus_leading(letters, start_degree: int = 1, budget: int | None = None) -> tuple[Monomial, int] | None:
    """Leading term of a word's expansion, raising the truncation one degree at a time.

    A nontrivial reduced word has a nonzero term in some degree (free groups
    are residually nilpotent).  The search gives up loudly at twice the word
    length.
    """
    letters = free_reduce(letters)
    if not letters:
        return None
    d = max(1, start_degree)
    cap = max(d, 2 * len(letters))
    while d <= cap:
        lead = MagnusSeries.of_word(letters, d, budget).leading()
        if lead is not None:
            return lead
        d += 1
    raise BudgetExceeded(f"no nonzero Magnus coefficient up to degree {cap}")


def magnus_sign(letters, start_degree: int = 1) -> int:
    lead = magnus_leading(letters, start_degree)
    return 0 if lead is None else (1 if lead[1] > 0 else -1)


class MagnusCone(Cone):
    kind = "magnus"

    def __init__(self, n: int | None, degree: int = 2):
        self.group = FreeGroup(n)
        self.degree = degree
        if n is None:
            self.ball_generators = (1, 2, 3)

    def _classify(self, g):
        return Sign(magnus_sign(g.letters, self.degree))

    def least_positive_info(self):
        if self.group.rank == 1:
            return self.group.generator(1), "Magnus order on Z is the usual one"
        return None, "bi-order on a nonabelian free group: dense"

    def smaller_positive_candidates(self, g):
        # commutators with anything sit deeper in the lower central series
        n = self.group.rank
        used = sorted({abs(x) for x in g.letters})
        gens = range(1, n + 1) if n is not None else used + [max(used, default=0) + 1]
        for i in gens:
            c = commutator(g, self.group.generator(i))
            if not c.is_identity():
                yield c if self.classify(c) == Sign.POSITIVE else c.inverse()

    def descriptor(self):
        return {"kind": "magnus", "group": self.group.tag, "degree": self.degree}


def magnus_cone(n: int | None, degree: int = 2) -> MagnusCone:
    return MagnusCone(n, degree)


def word_leading_text(w: FreeWord) -> str:
    lead = magnus_leading(w.letters)
    if lead is None:
        return "0"
    m, c = lead
    return f"{c}*" + "".join(f"X{i}" for i in m)
