"""Piecewise-linear homeomorphisms of the line with rational data, and an
enumeration of the rationals that starts at 0."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]


def _F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class PLHomeo:
    """Increasing PL bijection of R given by breakpoints and affine tails.

    The map interpolates linearly between consecutive breakpoints and
    continues with ``left_slope`` / ``right_slope`` beyond the first / last.
    Equality is structural after :meth:`normalize`.
    """

    points: tuple[Point, ...]
    left_slope: Fraction = Fraction(1)
    right_slope: Fraction = Fraction(1)

    def __post_init__(self):
        pts = tuple((_F(x), _F(y)) for x, y in self.points) or ((Fraction(0), Fraction(0)),)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "left_slope", _F(self.left_slope))
        object.__setattr__(self, "right_slope", _F(self.right_slope))
        if self.left_slope <= 0 or self.right_slope <= 0:
            raise ValueError("tail slopes must be positive")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x0 < x1 and y0 < y1):
                raise ValueError("breakpoints must be strictly increasing in both coordinates")

    @classmethod
    def identity(cls) -> "PLHomeo":
        return cls(((Fraction(0), Fraction(0)),))

    @classmethod
    def interpolate(cls, pairs: Iterable[tuple], slope=1) -> "PLHomeo":
        return cls(tuple(sorted((_F(x), _F(y)) for x, y in pairs)), slope, slope)

    @property
    def xs(self) -> list[Fraction]:
        return [p[0] for p in self.points]

    def __call__(self, x) -> Fraction:
        x = _F(x)
        pts = self.points
        if x <= pts[0][0]:
            return pts[0][1] + self.left_slope * (x - pts[0][0])
        if x >= pts[-1][0]:
            return pts[-1][1] + self.right_slope * (x - pts[-1][0])
        i = bisect.bisect_right(self.xs, x)
        (x0, y0), (x1, y1) = pts[i - 1], pts[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def inverse(self) -> "PLHomeo":
        return PLHomeo(tuple((y, x) for x, y in self.points), 1 / self.left_slope, 1 / self.right_slope)

    def compose(self, inner: "PLHomeo") -> "PLHomeo":
        """``self o inner``."""
        xs = set(inner.xs)
        inv = inner.inverse()
        xs.update(inv(x) for x in self.xs)
        pts = tuple((x, self(inner(x))) for x in sorted(xs))
        return PLHomeo(pts, self.left_slope * inner.left_slope, self.right_slope * inner.right_slope).normalize()

    __matmul__ = compose

    def slopes(self) -> list[Fraction]:
        """Slopes of the pieces, left tail first."""
        pts = self.points
        inner = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
        return [self.left_slope] + inner + [self.right_slope]

    def normalize(self) -> "PLHomeo":
        """Drop breakpoints where the slope does not change (keeping one anchor)."""
        s = self.slopes()
        keep = [p for i, p in enumerate(self.points) if s[i] != s[i + 1]]
        return PLHomeo(tuple(keep) or self.points[:1], self.left_slope, self.right_slope)

    def is_identity(self) -> bool:
        return self.left_slope == 1 and self.right_slope == 1 and all(x == y for x, y in self.points)

    def __eq__(self, other):
        if not isinstance(other, PLHomeo):
            return NotImplemented
        a, b = self.normalize(), other.normalize()
        if a.left_slope != b.left_slope or a.right_slope != b.right_slope:
            return False
        xs = set(a.xs) | set(b.xs)
        return all(a(x) == b(x) for x in xs)

    def __hash__(self):
        n = self.normalize()
        return hash((n.left_slope, n.right_slope, n(0), n(1)))

    def splice_right(self, x0, y0, slope) -> "PLHomeo":
        """Agree with ``self`` on ``(-inf, x0]`` and be affine of the given slope through ``(x0, y0)`` beyond.

        ``y0`` must equal ``self(x0)``.
        """
        x0, y0, slope = _F(x0), _F(y0), _F(slope)
        if self(x0) != y0:
            raise ValueError("splice point is not on the graph")
        pts = tuple(p for p in self.points if p[0] < x0) + ((x0, y0),)
        return PLHomeo(pts, self.left_slope, slope).normalize()

    def moved_intervals(self) -> list[tuple[Fraction | None, Fraction | None, int]]:
        """The open set ``{x : f(x) != x}`` as maximal intervals ``(l, r, sign)``.

        ``None`` stands for an infinite endpoint; ``sign`` is the sign of
        ``f(x) - x`` on the interval.
        """
        f = self.normalize()
        pts = f.points
        crit = set(f.xs)
        bounds = [None] + [p[0] for p in pts] + [None]
        slopes = f.slopes()
        for i, s in enumerate(slopes):
            if s == 1:
                continue
            # on this piece f(x) = y_a + s (x - x_a); root of f(x) - x
            xa, ya = pts[i - 1] if i > 0 else pts[0]
            root = (ya - s * xa) / (1 - s)
            lo, hi = bounds[i], bounds[i + 1]
            if (lo is None or root > lo) and (hi is None or root < hi):
                crit.add(root)
        cs = sorted(crit)

        def d(x):
            v = f(x) - x
            return (v > 0) - (v < 0)

        regions: list[tuple[Fraction | None, Fraction | None, int]] = [(None, cs[0], d(cs[0] - 1))]
        for a, b in zip(cs, cs[1:]):
            regions.append((a, a, d(a)))
            regions.append((a, b, d((a + b) / 2)))
        regions.append((cs[-1], cs[-1], d(cs[-1])))
        regions.append((cs[-1], None, d(cs[-1] + 1)))
        out: list[list] = []
        joined = False
        for lo, hi, s in regions:
            if s == 0:
                joined = False
                continue
            if joined:
                out[-1][1] = hi
            else:
                out.append([lo, hi, s])
            joined = True
        return [tuple(x) for x in out]


# --------------------------------------------------------- enumeration


def _cw_index(q: Fraction) -> int:
    """Position of a positive rational in the Calkin-Wilf sequence (1 -> 1, 1/2 -> 2, 2 -> 3, ...)."""
    a, b = q.numerator, q.denominator
    runs: list[tuple[int, int]] = []
    while a != b:
        if a > b:
            k = (a - 1) // b
            runs.append((1, k))
            a -= k * b
        else:
            k = (b - 1) // a
            runs.append((0, k))
            b -= k * a
    p = 1
    for bit, k in reversed(runs):
        p = (p << k) | ((1 << k) - 1 if bit else 0)
    return p


def _cw_term(p: int) -> Fraction:
    a, b = 1, 1
    for bit in bin(p)[3:]:
        if bit == "1":
            a += b
        else:
            b += a
    return Fraction(a, b)


def simplest_between(lo: Fraction, hi: Fraction | None) -> Fraction:
    """The rational of least depth in the Stern-Brocot tree within the open interval ``(lo, hi)``, ``0 <= lo``."""
    lo = _F(lo)
    n = floor(lo)
    if hi is None or n + 1 < hi:
        return Fraction(n + 1)
    hi = _F(hi)
    rest_hi = None if lo == n else 1 / (lo - n)
    return n + 1 / simplest_between(1 / (hi - n), rest_hi)


class RationalEnumeration:
    """``r_0 = 0``, ``r_{2p-1} = c_p``, ``r_{2p} = -c_p`` with ``c`` the Calkin-Wilf sequence."""

    def __getitem__(self, i: int) -> Fraction:
        if i < 0:
            raise IndexError(i)
        if i == 0:
            return Fraction(0)
        p = (i + 1) // 2
        c = _cw_term(p)
        return c if i % 2 else -c

    def index_of(self, q) -> int:
        q = _F(q)
        if q == 0:
            return 0
        return 2 * _cw_index(q) - 1 if q > 0 else 2 * _cw_index(-q)

    def first_in(self, lo: Fraction | None, hi: Fraction | None) -> Fraction:
        """The least-index rational in the open interval ``(lo, hi)``."""
        if (lo is None or lo < 0) and (hi is None or hi > 0):
            return Fraction(0)
        if lo is not None and lo >= 0:
            return simplest_between(lo, hi)
        return -simplest_between(-hi, None if lo is None else -lo)

    def first_moved(self, f: PLHomeo) -> tuple[Fraction, int] | None:
        """The first enumerated rational that ``f`` moves, with the sign of ``f(r) - r``."""
        best = None
        for lo, hi, s in f.moved_intervals():
            r = self.first_in(lo, hi)
            i = self.index_of(r)
            if best is None or i < best[0]:
                best = (i, r, s)
        return None if best is None else (best[1], best[2])

    def __iter__(self):
        i = 0
        while True:
            yield self[i]
            i += 1


ENUMERATION = RationalEnumeration()


def compose_all(maps: Sequence[PLHomeo]) -> PLHomeo:
    """``maps[0] o maps[1] o ... o maps[-1]``."""
    out = PLHomeo.identity()
    for m in reversed(maps):
        out = m.compose(out)
    return out
