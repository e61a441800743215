"""Integer lattices in Z^k: Hermite normal form, integer kernels, saturation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Sequence


def _echelon(rows: list[list[int]], pivot_cols: int) -> tuple[list[list[int]], int]:
    """Integer row echelon form by unimodular row operations.

    Pivots are searched in the first ``pivot_cols`` columns only; all rows
    are kept.  Pivots come out positive and the entries above each pivot are
    reduced into ``[0, pivot)``.  Returns the matrix and its pivot count.
    """
    M = [list(r) for r in rows]
    r = 0
    for c in range(pivot_cols):
        if r == len(M):
            break
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            clean = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                    if M[i][c]:
                        clean = False
            if clean:
                break
        if r < len(M) and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
            r += 1
    return M, r


def hnf(rows: Iterable[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form; returns the nonzero rows (a lattice basis)."""
    rows = [list(r) for r in rows]
    if not rows:
        return ()
    M, r = _echelon(rows, k)
    return tuple(tuple(row) for row in M[:r])


def integer_kernel(rows: Sequence[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    """A basis (in HNF) of ``{x in Z^k : row . x = 0 for every row}``."""
    m = len(rows)
    if m == 0:
        return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    # rows of [A^T | I]; row operations that clear the A^T block leave kernel vectors in I
    aug = [[rows[i][j] for i in range(m)] + [int(j == c) for c in range(k)] for j in range(k)]
    M, r = _echelon(aug, m)
    return hnf((row[m:] for row in M[r:]), k)


def _rational_rows_to_int(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        ints = [int(x * d) for x in row]
        if any(ints):
            out.append(ints)
    return out


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^dim, stored by its HNF basis (rows are basis vectors)."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, dim: int, gens: Iterable[Sequence[int]]) -> "Lattice":
        gens = [tuple(int(x) for x in g) for g in gens]
        if any(len(g) != dim for g in gens):
            raise ValueError("generator of wrong dimension")
        return cls(dim, hnf(gens, dim))

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls.from_generators(dim, [tuple(int(i == j) for j in range(dim)) for i in range(dim)])

    @classmethod
    def zero(cls, dim: int) -> "Lattice":
        return cls(dim, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        v = list(v)
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def kernel(self, rational_rows: Iterable[Sequence[Fraction]]) -> "Lattice":
        """``{x in self : row . x = 0}`` for rational functionals given as rows."""
        if not self.basis:
            return self
        coeff_rows = [
            [sum((Fraction(r[i]) * b[i] for i in range(self.dim)), Fraction(0)) for b in self.basis]
            for r in rational_rows
        ]
        int_rows = _rational_rows_to_int(coeff_rows)
        coords = integer_kernel(int_rows, self.rank)
        images = [tuple(sum(c[j] * self.basis[j][i] for j in range(self.rank)) for i in range(self.dim)) for c in coords]
        return Lattice.from_generators(self.dim, images)

    def annihilator(self) -> tuple[tuple[int, ...], ...]:
        """Integer functionals vanishing on the lattice (HNF basis)."""
        return integer_kernel(self.basis, self.dim)

    def saturate(self) -> "Lattice":
        return saturate(self)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def saturate(H: Lattice) -> Lattice:
    """The isolator of H in Z^k: all v with some nonzero multiple in H."""
    if H.rank == 0:
        return H
    return Lattice(H.dim, integer_kernel(H.annihilator(), H.dim))


def index_in_saturation(H: Lattice) -> int:
    """``[saturate(H) : H]`` as a ratio of covolumes (Gram determinants)."""
    S = saturate(H)
    return _isqrt_exact(_gram_det(H.basis) // _gram_det(S.basis)) if H.rank else 1


def _gram_det(basis) -> int:
    n = len(basis)
    G = [[Fraction(sum(a * b for a, b in zip(basis[i], basis[j]))) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if G[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            G[c], G[p] = G[p], G[c]
            det = -det
        det *= G[c][c]
        for r in range(c + 1, n):
            f = G[r][c] / G[c][c]
            G[r] = [x - f * y for x, y in zip(G[r], G[c])]
    return int(det)


def _isqrt_exact(n: int) -> int:
    s = isqrt(n)
    if s * s != n:
        raise ArithmeticError(f"{n} is not a perfect square")
    return s
