"""Dense symmetric matrices over the rationals and an exact pivoted LDL^T."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SpecError


class RationalSymMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = [[Fraction(x) for x in row] for row in rows]
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise SpecError("matrix must be square")
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise SpecError(f"matrix not symmetric at ({i}, {j})")
        self.rows = rows

    @classmethod
    def from_function(cls, n: int, entry) -> RationalSymMatrix:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                rows[i][j] = rows[j][i] = Fraction(entry(i, j))
        return cls(rows)

    @classmethod
    def identity(cls, n: int) -> RationalSymMatrix:
        return cls.from_function(n, lambda i, j: int(i == j))

    @classmethod
    def ones(cls, n: int) -> RationalSymMatrix:
        return cls.from_function(n, lambda i, j: 1)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalSymMatrix) and self.rows == other.rows

    def __add__(self, other: RationalSymMatrix) -> RationalSymMatrix:
        return RationalSymMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: RationalSymMatrix) -> RationalSymMatrix:
        return RationalSymMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> RationalSymMatrix:
        return RationalSymMatrix([[c * x for x in r] for r in self.rows])

    def matvec(self, v: Sequence) -> list[Fraction]:
        return [sum((x * y for x, y in zip(r, v)), Fraction(0)) for r in self.rows]

    def row_sums(self) -> list[Fraction]:
        return [sum(r, Fraction(0)) for r in self.rows]

    def submatrix(self, idx: Sequence[int]) -> RationalSymMatrix:
        return RationalSymMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def __repr__(self) -> str:
        return f"RationalSymMatrix(n={self.n})"


@dataclass
class LDLFactorization:
    """``M[perm[i]][perm[j]] == sum_k L[i][k] D[k] L[j][k]`` when ``complete``."""

    L: list
    D: list
    perm: list
    complete: bool

    def reconstruct(self) -> list[list[Fraction]]:
        n = len(self.perm)
        return [
            [sum((self.L[i][k] * self.D[k] * self.L[j][k] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]


def ldl_psd_check(M: RationalSymMatrix, stop_early: bool = False) -> tuple[bool, LDLFactorization]:
    """Exact PSD test by symmetric pivoting on the largest remaining diagonal entry.

    A negative pivot certifies indefiniteness; with ``stop_early`` the
    factorization is abandoned there (``complete`` is then False).  When the
    largest remaining diagonal entry is zero, PSD forces the whole trailing
    block to vanish; if it does not, the factorization stops there.
    """
    n = M.n
    A = [list(r) for r in M.rows]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    perm = list(range(n))
    psd = True
    for k in range(n):
        p = max(range(k, n), key=lambda i: (abs(A[i][i]), -i))
        if p != k:
            A[k], A[p] = A[p], A[k]
            for row in A:
                row[k], row[p] = row[p], row[k]
            for c in range(k):
                L[k][c], L[p][c] = L[p][c], L[k][c]
            perm[k], perm[p] = perm[p], perm[k]
        pivot = A[k][k]
        if pivot == 0:
            if any(A[i][j] for i in range(k, n) for j in range(k, n)):
                return False, LDLFactorization(L, D, perm, False)
            break
        if pivot < 0:
            psd = False
            if stop_early:
                return False, LDLFactorization(L, D, perm, False)
        D[k] = pivot
        col = [A[i][k] / pivot for i in range(k + 1, n)]
        for off, i in enumerate(range(k + 1, n)):
            L[i][k] = col[off]
            lik = col[off]
            if not lik:
                continue
            Ai, Ak = A[i], A[k]
            for j in range(k + 1, i + 1):
                if Ak[j]:
                    Ai[j] -= lik * Ak[j]
        for i in range(k + 1, n):
            for j in range(k + 1, i):
                A[j][i] = A[i][j]
    return psd, LDLFactorization(L, D, perm, True)


def is_psd(M: RationalSymMatrix) -> bool:
    return ldl_psd_check(M, stop_early=True)[0]
