"""Orderings of Z^k given by flags of functionals with entries in Q(sqrt 2).

A flag ``[v_1, ..., v_m]`` orders Z^k by the sign of the first nonzero
``v_i . g``.  Its convex subgroups are the kernel lattices
``L_j = ker(v_1, ..., v_j)``; the order is discrete exactly when the last
nonzero ``L_j`` has rank one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .cones import Cone, Sign, Subgroup
from .elements import AbelianGroup, AbelianVector
from .errors import FamilyMismatch
from .lattice import Lattice, saturate
from .quad import QuadField, sqrt2_convergents

Functional = tuple  # tuple[QuadField, ...]


def _dot(v: Sequence[QuadField], g: Sequence[int]) -> QuadField:
    a = sum((f.a * x for f, x in zip(v, g)), Fraction(0))
    b = sum((f.b * x for f, x in zip(v, g)), Fraction(0))
    return QuadField(a, b)


def _split(v: Sequence[QuadField]) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    return tuple(f.a for f in v), tuple(f.b for f in v)


def _as_functional(v: Iterable) -> Functional:
    return tuple(QuadField.coerce(x) for x in v)


def _coords(g) -> tuple[int, ...]:
    return g.coords if isinstance(g, AbelianVector) else tuple(g)


@dataclass(frozen=True)
class FlagOrder:
    dim: int
    functionals: tuple[Functional, ...]

    def __post_init__(self):
        fs = tuple(_as_functional(v) for v in self.functionals)
        object.__setattr__(self, "functionals", fs)
        if any(len(v) != self.dim for v in fs):
            raise FamilyMismatch("functional of wrong dimension")
        if self.kernel_chain()[-1].rank != 0:
            raise ValueError("flag is not total: its functionals share a nonzero lattice kernel")

    @classmethod
    def standard(cls, k: int) -> "FlagOrder":
        return cls(k, tuple(tuple(QuadField(int(i == j)) for j in range(k)) for i in range(k)))

    @property
    def group(self) -> AbelianGroup:
        return AbelianGroup(self.dim)

    def sign(self, g) -> int:
        g = _coords(g)
        if len(g) != self.dim:
            raise FamilyMismatch(f"expected {self.dim} coordinates")
        for v in self.functionals:
            s = _dot(v, g).sign()
            if s:
                return s
        return 0

    def kernel_chain(self) -> list[Lattice]:
        chain = [Lattice.full(self.dim)]
        for v in self.functionals:
            a, b = _split(v)
            chain.append(chain[-1].kernel([a, b]))
        return chain

    def text(self) -> str:
        return "[" + ",".join("(" + ",".join(x.text() for x in v) + ")" for v in self.functionals) + "]"


def classify_flag(F: FlagOrder, g) -> Sign:
    return Sign(F.sign(g))


def min_convex_subgroup(F: FlagOrder) -> Lattice:
    """The smallest nontrivial convex subgroup: the last nonzero kernel lattice."""
    return [L for L in F.kernel_chain() if L.rank > 0][-1]


def _orient(F: FlagOrder, c: Sequence[int]) -> tuple[int, ...]:
    return tuple(c) if F.sign(c) > 0 else tuple(-x for x in c)


def is_discrete(F: FlagOrder) -> tuple[bool, tuple[int, ...] | None]:
    """Whether F has a least positive element, and that element."""
    C = min_convex_subgroup(F)
    if C.rank == 1:
        return True, _orient(F, C.basis[0])
    return False, None


# ----------------------------------------------------------- Case 3 tool


def _convergent_for(eps: Fraction):
    """Convergents of sqrt 2 with denominator exceeding 1/eps, in order."""
    for t in sqrt2_convergents():
        if t.denominator > 1 / eps:
            yield t
            yield from (c for c in sqrt2_convergents() if c.denominator > t.denominator)
            return


def rational_hyperplane_approx(v: Sequence, eps) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Rational ``w`` with ``|v - w| < eps`` and a nonzero integral ``x`` with ``w . x = 0``.

    Every ``sqrt 2`` in ``v`` is replaced by the same convergent ``p/q``
    (the first with ``q > 1/eps`` that meets the bound).  ``x`` is built as
    ``(m2 y_1, ..., m2 y_j, -m1 y_{j+1}, ..., -m1 y_k)`` where ``y_i`` is the
    denominator of ``w_i`` and ``m1``, ``m2`` are the two partial sums of
    ``y_i w_i``.
    """
    v = _as_functional(v)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if all(f == 0 for f in v):
        raise ValueError("zero normal vector")
    a, b = _split(v)
    bb = sum(x * x for x in b)
    if bb == 0:
        w = a
    else:
        for t in _convergent_for(eps):
            # |v - w|^2 = (sqrt2 - t)^2 |b|^2 < eps^2, decided exactly in Q(sqrt 2)
            if (QuadField(-t, 1) * QuadField(-t, 1) * bb - eps * eps).sign() < 0:
                break
        w = tuple(x + t * y for x, y in zip(a, b))
    return w, _kernel_point(w)


def _kernel_point(w: Sequence[Fraction]) -> tuple[int, ...]:
    k = len(w)
    y = [Fraction(x).denominator for x in w]
    fallback = None
    for j in range(1, k):
        m1 = sum(Fraction(y[i]) * w[i] for i in range(j))
        m2 = sum(Fraction(y[i]) * w[i] for i in range(j, k))
        x = tuple(int(m2 * y[i]) for i in range(j)) + tuple(int(-m1 * y[i]) for i in range(j, k))
        if m1 != 0 and m2 != 0:
            return x
        if fallback is None and any(x):
            fallback = x
    if fallback is None:
        raise ArithmeticError(f"degenerate functional {w}: every split gives m1 = m2 = 0")
    return fallback


# --------------------------------------------------- discrete / dense


def _primitive(g: tuple[int, ...]) -> tuple[int, ...]:
    d = gcd(*g)
    return tuple(x // d for x in g)


def _dedup(gs) -> list[tuple[int, ...]]:
    """Drop positive multiples of earlier entries (all entries are positive already)."""
    out, seen = [], set()
    for g in gs:
        g = _coords(g)
        p = _primitive(g)
        if p not in seen:
            seen.add(p)
            out.append(g)
    return out


def _require_positive(F: FlagOrder, gs) -> list[tuple[int, ...]]:
    gs = [_coords(g) for g in gs]
    for g in gs:
        if F.sign(g) <= 0:
            raise ValueError(f"{g} is not positive for the given flag")
    return gs


def _rational_equivalent(v: Functional, L: Lattice) -> tuple[Fraction, ...] | None:
    """A rational functional with the same signs as ``v`` on ``L``, if one exists."""
    a, b = _split(v)
    av = [sum((x * y for x, y in zip(a, e)), Fraction(0)) for e in L.basis]
    bv = [sum((x * y for x, y in zip(b, e)), Fraction(0)) for e in L.basis]
    if not any(bv):
        return a
    if not any(av):
        return b
    j = next(i for i, x in enumerate(bv) if x)
    lam = av[j] / bv[j]
    if any(av[i] != lam * bv[i] for i in range(len(av))):
        return None
    s = QuadField(lam, 1).sign()
    return tuple(s * x for x in b)


def _discretize(F: FlagOrder, L: Lattice, gs: list[tuple[int, ...]], depth_log: list | None = None) -> list[tuple[Fraction, ...]]:
    """Rational flag on ``L`` with rank dropping by one per step, every g positive.

    ``gs`` lie in ``L`` and are F-positive.  Rational leading hyperplanes are
    kept (and the construction recurses into them); an irrational one is
    replaced by a nearby rational hyperplane that keeps every g on the
    positive side.
    """
    r = L.rank
    if r == 0:
        return []
    if r == 1:
        c = _orient(F, L.basis[0])
        return [tuple(Fraction(x) for x in c)]
    v = next(v for v in F.functionals if any(_dot(v, e).sign() for e in L.basis))
    u = _rational_equivalent(v, L)
    if u is None:
        off = [g for g in gs if _dot(v, g).sign() > 0]
        eps = Fraction(1)
        while True:
            w, x = rational_hyperplane_approx(v, eps)
            if all(sum((wi * gi for wi, gi in zip(w, g)), Fraction(0)) > 0 for g in off):
                break
            eps /= 2
        if depth_log is not None:
            depth_log.append({"w": w, "kernel_point": x, "eps": eps})
        u = w
    H = L.kernel([u])
    on = [g for g in gs if sum((ui * gi for ui, gi in zip(u, g)), Fraction(0)) == 0]
    return [u] + _discretize(F, H, on, depth_log)


def discrete_approximation(F: FlagOrder, g_list) -> FlagOrder:
    """A discrete flag order with every ``g`` in ``g_list`` positive."""
    gs = _dedup(_require_positive(F, g_list))
    if not gs:
        out = FlagOrder.standard(F.dim)
    elif is_discrete(F)[0]:
        out = F
    else:
        out = FlagOrder(F.dim, tuple(_discretize(F, Lattice.full(F.dim), gs)))
    if not is_discrete(out)[0] or any(out.sign(g) <= 0 for g in gs):
        raise AssertionError("discrete approximation postcondition failed")
    return out


def dense_approximation(F: FlagOrder, g_list) -> FlagOrder:
    """A dense flag order with every ``g`` positive (needs dimension >= 2)."""
    if F.dim < 2:
        raise ValueError("Z admits no dense ordering")
    gs = _dedup(_require_positive(F, g_list))
    if not is_discrete(F)[0]:
        return F
    chain = _discretize(F, Lattice.full(F.dim), gs)
    head, (u, c) = chain[:-2], chain[-2:]
    delta = Fraction(1)
    while True:
        tilt = tuple(QuadField(x, delta * y) for x, y in zip(u, c))
        out = FlagOrder(F.dim, tuple(_as_functional(h) for h in head) + (tilt,))
        if all(out.sign(g) > 0 for g in gs):
            break
        delta /= 2
    if is_discrete(out)[0]:
        raise AssertionError("dense approximation produced a discrete order")
    return out


def rank_one_convex_construction(F: FlagOrder, g_list) -> FlagOrder:
    """A flag order with every g positive whose smallest convex subgroup has rank one.

    Discrete order on ``H = <g_list>``, extended to the isolator of H, then
    ordered lexicographically with the quotient ``Z^k / I(H)`` on top.
    """
    gs = _require_positive(F, g_list)
    if not gs:
        raise ValueError("g_list must be nonempty")
    if min_convex_subgroup(F).rank == 1:
        return F
    H = Lattice.from_generators(F.dim, gs)
    S = saturate(H)
    top = [tuple(Fraction(x) for x in y) for y in S.annihilator()]
    bottom = _discretize(F, S, _dedup(gs))
    out = FlagOrder(F.dim, tuple(top + bottom))
    if min_convex_subgroup(out).rank != 1 or any(out.sign(g) <= 0 for g in gs):
        raise AssertionError("rank-one construction postcondition failed")
    return out


# --------------------------------------------------------------- cones


def _euclid_below(phi: Functional, basis, target: QuadField, limit: int = 10_000):
    """Integer combinations of ``basis`` with phi-value in (0, target).

    ``phi`` must be injective on the span, so the ratio of any two basis
    values is irrational and the subtractive Euclid sequence never stops.
    """
    u, w = list(basis[0]), list(basis[1])
    a, b = _dot(phi, u), _dot(phi, w)
    if a.sign() < 0:
        u, a = [-x for x in u], -a
    if b.sign() < 0:
        w, b = [-x for x in w], -b
    for _ in range(limit):
        if a < target:
            yield tuple(u)
        if b < target:
            yield tuple(w)
        if a > b:
            n = (a / b).floor()
            u = [x - n * y for x, y in zip(u, w)]
            a = a - b * n
        else:
            n = (b / a).floor()
            w = [x - n * y for x, y in zip(w, u)]
            b = b - a * n


class FlagCone(Cone):
    kind = "zk-flag"

    def __init__(self, flag: FlagOrder):
        self.flag = flag
        self.group = AbelianGroup(flag.dim)

    def _classify(self, g):
        return self.flag.sign(g.coords)

    def least_positive_info(self):
        disc, c = is_discrete(self.flag)
        if disc:
            return self.group.vector(c), "smallest convex subgroup is infinite cyclic"
        return None, "smallest convex subgroup has rank >= 2, order is dense"

    def smaller_positive_candidates(self, g):
        chain = self.flag.kernel_chain()
        C = [L for L in chain if L.rank > 0][-1]
        if C.rank < 2:
            return
        if not C.contains(g.coords):
            for e in C.basis:
                yield self.group.vector(e)
                yield self.group.vector(e).inverse()
            return
        phi = next(v for v in self.flag.functionals if any(_dot(v, e).sign() for e in C.basis))
        target = _dot(phi, g.coords)
        for h in _euclid_below(phi, C.basis, target):
            yield self.group.vector(h)

    def descriptor(self):
        return {
            "kind": "zk-flag",
            "group": self.group.tag,
            "functionals": [[x.text() for x in v] for v in self.flag.functionals],
        }


def flag_cone(functionals, dim: int | None = None) -> FlagCone:
    functionals = [tuple(v) for v in functionals]
    return FlagCone(FlagOrder(dim if dim is not None else len(functionals[0]), tuple(functionals)))


class LatticeSubgroup(Subgroup):
    kind = "lattice"

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.group = AbelianGroup(lattice.dim)

    def contains(self, g):
        return self.lattice.contains(g.coords)

    def descriptor(self):
        return {"kind": "lattice", "group": self.group.tag, "basis": self.lattice.to_json()}
