"""Johnson association scheme J(v, d) on d-subsets of a v-set."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import SizeLimitError, SpecError
from .linalg import RationalSymMatrix
from .polycore import subsets_of_size

MAX_VERTICES = 20000


@dataclass(frozen=True)
class JohnsonScheme:
    v: int
    d: int
    vertices: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.v < 1 or not 0 <= self.d <= self.v:
            raise SpecError(f"J(v, d) needs v >= 1 and 0 <= d <= v, got v={self.v}, d={self.d}")
        if comb(self.v, self.d) > MAX_VERTICES:
            raise SizeLimitError(f"C({self.v},{self.d}) = {comb(self.v, self.d)} exceeds {MAX_VERTICES} vertices")
        object.__setattr__(self, "vertices", tuple(subsets_of_size((1 << self.v) - 1, self.d)))

    @property
    def s(self) -> int:
        return min(self.d, self.v - self.d)

    @property
    def t(self) -> int:
        return len(self.vertices)

    def distance(self, i: int, j: int) -> int:
        """``k`` such that vertices ``i`` and ``j`` meet in ``d - k`` points."""
        return self.d - (self.vertices[i] & self.vertices[j]).bit_count()


def johnson_adjacency(scheme: JohnsonScheme, k: int) -> RationalSymMatrix:
    if not 0 <= k <= scheme.s:
        raise SpecError(f"k must lie in 0..{scheme.s}, got {k}")
    return RationalSymMatrix.from_function(scheme.t, lambda i, j: int(scheme.distance(i, j) == k))


def johnson_G(scheme: JohnsonScheme) -> RationalSymMatrix:
    """``sum_k A_k / (k + 1)``."""
    return RationalSymMatrix.from_function(scheme.t, lambda i, j: Fraction(1, scheme.distance(i, j) + 1))


def ones_eigenvalue(v: int, d: int) -> Fraction:
    """Eigenvalue of the all-ones vector for ``johnson_G(J(v, d))``."""
    return Fraction(comb(v + 1, d), d + 1)
