"""Orderings of the tower groups T_n (T_2 is the Klein bottle group).

Each ``<x_1, ..., x_i>`` is normal, and ``x_{i+1}`` inverts ``x_i``; the
cone is fixed by one sign per level, read at the highest nonzero exponent.
A brute-force census on finite balls serves as an independent check of the
count ``2^n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cones import (
    BallCertificate,
    Cone,
    LeastPositive,
    Sign,
    VERIFIED,
    density_witness,
    least_positive_on_ball,
)
from .elements import TowerGroup, ball
from .errors import BudgetExceeded, FamilyMismatch, element_budget


class TowerCone(Cone):
    kind = "tower-signs"

    def __init__(self, n: int, signs):
        signs = tuple(int(s) for s in signs)
        if len(signs) != n:
            raise FamilyMismatch(f"need {n} signs, got {len(signs)}")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +1 or -1")
        self.group = TowerGroup(n)
        self.signs = signs

    def _classify(self, g):
        for e, a in zip(reversed(self.signs), reversed(g.exponents)):
            if a:
                return Sign.of(e * a)
        return Sign.IDENTITY

    @property
    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def least_positive_info(self):
        return self.group.generator(1) ** self.signs[0], "<x1> is the smallest convex subgroup, infinite cyclic"

    def descriptor(self):
        return {"kind": "tower-signs", "group": self.group.tag, "signs": self.label}


def _signs_from(s) -> tuple[int, ...]:
    if isinstance(s, str):
        return tuple(Sign.from_symbol(c) for c in s)
    return tuple(s)


def tower_cone(n: int, signs) -> TowerCone:
    return TowerCone(n, _signs_from(signs))


def enumerate_tower_cones(n: int) -> list[TowerCone]:
    return [TowerCone(n, s) for s in product((1, -1), repeat=n)]


# --------------------------------------------------------------- census


class _Clauses:
    """Closure clauses ``not P(p) or not P(q) or P(pq)`` over ball elements.

    A literal is an element index meaning "this element is positive"; its
    negation is the inverse's index.
    """

    def __init__(self, members: list, limit: int):
        self.members = members
        self.index = {g: i for i, g in enumerate(members)}
        self.inv = [self.index[g.inverse()] for g in members]
        self.clauses: list[tuple[int, int, int]] = []
        self.watch: list[list[int]] = [[] for _ in members]
        for i, p in enumerate(members):
            for j, q in enumerate(members):
                r = self.index.get(p * q)
                if r is None:
                    continue
                c = (self.inv[i], self.inv[j], r)
                # a clause can fire when p or q turns true, or when pq turns false
                for w in {i, j, self.inv[r]}:
                    self.watch[w].append(len(self.clauses))
                self.clauses.append(c)
                if len(self.clauses) > limit:
                    raise BudgetExceeded(f"census exceeded {limit} clauses")

    def propagate(self, val: list[int], lits: list[int]) -> bool:
        """Make every literal in ``lits`` true and close under the clauses; False on conflict."""
        stack = list(lits)
        while stack:
            x = stack.pop()
            if val[x] == 1:
                continue
            if val[x] == -1:
                return False
            val[x], val[self.inv[x]] = 1, -1
            for ci in self.watch[x]:
                c = self.clauses[ci]
                free = [l for l in c if val[l] != -1]
                if not free:
                    return False
                if len(free) == 1 and val[free[0]] == 0:
                    stack.append(free[0])
        return True

    def solutions(self, val: list[int], order: list[int], first_only: bool = False):
        """All completions of ``val`` on the variables in ``order``."""
        pending = [i for i in order if val[i] == 0]
        if not pending:
            yield val
            return
        v = pending[0]
        for lit in (v, self.inv[v]):
            trial = list(val)
            if self.propagate(trial, [lit]):
                for s in self.solutions(trial, order, first_only):
                    yield s
                    if first_only:
                        return


@dataclass(frozen=True)
class CensusEntry:
    positives: frozenset  # positive members of ball(k)
    generator_signs: str
    matches: str | None  # label of the enumerated tower cone agreeing on the ball


@dataclass(frozen=True)
class Census:
    rank: int
    radius: int
    raw: int  # patterns satisfying the axioms on ball(k) alone
    entries: tuple[CensusEntry, ...]

    @property
    def count(self) -> int:
        return len(self.entries)


def ball_cone_census(n: int, k: int, budget: int | None = None) -> Census:
    """All sign patterns on ``ball(T_n, k)`` obeying trichotomy and in-ball closure
    that extend to such a pattern on ``ball(T_n, k+1)``."""
    G = TowerGroup(n)
    limit = budget if budget is not None else element_budget()
    big = [g for g in ball(G, k + 1, budget=limit) if not g.is_identity()]
    small_set = set(ball(G, k, budget=limit))
    small = [g for g in big if g in small_set]
    inner = _Clauses(small, limit)
    outer = _Clauses(big, limit)
    reps_small = _pair_reps(inner)
    reps_big = _pair_reps(outer)
    gens = [G.generator(i) for i in range(1, n + 1)]
    cones = enumerate_tower_cones(n)
    raw = 0
    entries = []
    for sol in inner.solutions([0] * len(small), reps_small):
        raw += 1
        val = [0] * len(big)
        fixed = [outer.index[small[i]] for i, s in enumerate(sol) if s == 1]
        if not outer.propagate(val, fixed):
            continue
        if next(outer.solutions(val, reps_big, first_only=True), None) is None:
            continue
        pos = frozenset(g for i, g in enumerate(small) if sol[i] == 1)
        signs = "".join("+" if g in pos else "-" for g in gens)
        match = next((c.label for c in cones if all((c.classify(g) == Sign.POSITIVE) == (g in pos) for g in small_set)), None)
        entries.append(CensusEntry(pos, signs, match))
    return Census(n, k, raw, tuple(entries))


def _pair_reps(cl: _Clauses) -> list[int]:
    reps, seen = [], set()
    for i in range(len(cl.members)):
        if i not in seen:
            reps.append(i)
            seen.update((i, cl.inv[i]))
    return reps


# ------------------------------------------------------------ discrete


@dataclass(frozen=True)
class DiscreteReport:
    cone: TowerCone
    least: LeastPositive
    no_smaller: bool  # density_witness found nothing below the least element

    @property
    def ok(self) -> bool:
        return self.least.certified and self.no_smaller


def check_all_discrete(n: int, radius: int = 6) -> list[DiscreteReport]:
    out = []
    for P in enumerate_tower_cones(n):
        lp = least_positive_on_ball(P, radius)
        below = density_witness(P, lp.element, radius) if lp.element is not None else None
        out.append(DiscreteReport(P, lp, below is None))
    return out


def discrete_certificate(report: DiscreteReport) -> BallCertificate:
    c = report.least.certificate
    verdict = VERIFIED if report.ok else "unverified"
    return BallCertificate("least-positive", c.radius, verdict, c.witness, c.checked, report.least.reason)
