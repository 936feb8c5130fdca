"""Brute-force checkers for the closed forms, run at small scale.

Everything here recomputes its answer by direct enumeration of subsets and
pairs; nothing shares a helper with the formula it is checking.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Hashable, Optional

from .errors import SizeLimitError, SpecError
from .linalg import RationalSymMatrix
from .models import LinePlusFreeSpec, basis_enumerator_line, require_valid, rest_ground
from .polycore import (
    BoundedExponentForm,
    GroundSet,
    elementary_symmetric,
    evaluate,
    monomial_symmetric,
    rayleigh_difference,
)

CASES = ("C1", "C2", "C3", "C4", "C5")


@dataclass(frozen=True)
class CoefficientCase:
    """Monomial ``prod_U y^2 prod_V y`` of the Rayleigh difference with its case tag."""

    U: int
    V: int
    k: int
    tag: str

    def __post_init__(self):
        if self.U & self.V:
            raise SpecError("U and V must be disjoint")
        if self.V.bit_count() != 2 * self.k:
            raise SpecError(f"|V| must be 2k = {2 * self.k}")
        if self.tag not in CASES:
            raise SpecError(f"unknown case tag {self.tag!r}")


def classify(U: int, V: int, A: int, L: int) -> CoefficientCase:
    k, rem = divmod(V.bit_count(), 2)
    if rem:
        raise SpecError("|V| must be even")
    u_line, v_line = (U & L).bit_count(), (V & L).bit_count()
    if u_line == 0 and v_line == 0:
        tag = "C1"
    elif u_line == 0 and v_line == 1:
        tag = "C2"
    elif u_line == 0 and v_line == 2:
        tag = "C3"
    elif u_line == 1 and v_line == 0:
        tag = "C4"
    else:
        tag = "C5"
    return CoefficientCase(U, V, k, tag)


def coefficient_case_value(case: CoefficientCase) -> Fraction:
    k = case.k
    if case.tag == "C1":
        return Fraction(comb(2 * k, k), k + 1)
    if case.tag == "C2":
        if k < 1:
            raise SpecError("case C2 needs k >= 1")
        return Fraction(comb(2 * k - 1, k))
    if case.tag == "C3":
        if k < 1:
            raise SpecError("case C3 needs k >= 1")
        return Fraction(comb(2 * k - 2, k - 1))
    if case.tag == "C4":
        return Fraction(comb(2 * k, k))
    return Fraction(0)


def _small(spec: LinePlusFreeSpec):
    if spec.r > 5 or spec.ell > 3 or spec.a > 7:
        raise SizeLimitError("brute-force checks are limited to r <= 5, ell <= 3, a <= 7")


def _masks(idx, size):
    for combo in combinations(idx, size):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m


def check_delta_cases(spec: LinePlusFreeSpec) -> bool:
    """Every monomial of degree 2d on ``H`` has the coefficient its case predicts."""
    require_valid(spec)
    _small(spec)
    delta = rayleigh_difference(basis_enumerator_line(spec), "e", "f")
    H = delta.ground
    A, L = H.block("A"), H.block("L")
    d = spec.d
    idx = list(range(len(H)))
    seen = 0
    for k in range(d + 1):
        for U in _masks(idx, d - k):
            rest = [i for i in idx if not U >> i & 1]
            for V in _masks(rest, 2 * k):
                case = classify(U, V, A, L)
                if delta.coefficient(U, V) != coefficient_case_value(case):
                    return False
                seen += 1
    # every stored term must have been visited
    return seen >= len(delta.terms)


def check_uniform_monomial_expansion(d: int, hsize: int) -> bool:
    if not 0 <= d <= hsize:
        raise SpecError("need 0 <= d <= hsize")
    if hsize > 8:
        raise SizeLimitError("hsize is limited to 8")
    H = GroundSet([f"h{i}" for i in range(1, hsize + 1)])
    ed = elementary_symmetric(H, d)
    lhs = ed * ed
    if d >= 1:
        lhs = lhs - elementary_symmetric(H, d - 1) * elementary_symmetric(H, d + 1)
    rhs = BoundedExponentForm(H)
    for k in range(d + 1):
        rhs = rhs + monomial_symmetric(H, 2 * d, d - k).scale(Fraction(comb(2 * k, k), k + 1))
    return lhs == rhs


def _pascal(n: int) -> list[list[int]]:
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1])
    return rows


def check_binomial_identities(bound: int = 30) -> bool:
    """Hockey-stick and Vandermonde-type sums, with binomials taken from Pascal's triangle."""
    if bound > 30:
        raise SizeLimitError("bound is limited to 30")
    P = _pascal(bound + 2)

    def C(n, k):
        return P[n][k] if 0 <= k <= n else 0

    for d in range(bound + 1):
        for k in range(d + 1):
            if sum(C(d - j, k) for j in range(d + 1)) != C(d + 1, k + 1):
                return False
    for v in range(bound + 1):
        for d in range(v + 1):
            if sum(C(d + 1, d - k) * C(v - d, k) for k in range(d + 1)) != C(v + 1, d):
                return False
    return True


# --- orbit structure of the Gram matrix ----------------------------------

def orbit_key(S: int, T: int, A: int, L: int) -> tuple[int, int, int, int]:
    return ((S & L).bit_count(), (T & L).bit_count(), (S & T & L).bit_count(), (S & T & A).bit_count())


def orbit_value(key: tuple[int, int, int, int], d: int) -> Fraction:
    """Inner product of the certificate vectors on an orbit of pairs of d-subsets."""
    s_line, t_line, both_line, both_a = key
    if s_line >= 2 or t_line >= 2:
        return Fraction(0)
    if s_line == 0 and t_line == 0:
        return Fraction(1, d - both_a + 1)
    if s_line == 1 and t_line == 1:
        return Fraction(1) if both_line else Fraction(1, 2)
    return Fraction(1, 2)


def gram_by_orbits(spec: LinePlusFreeSpec) -> RationalSymMatrix:
    """Gram matrix assembled by orbit lookup, one representative subset per line point."""
    require_valid(spec)
    H = rest_ground(spec)
    A, L = H.block("A"), H.block("L")
    d = spec.d
    a_idx = [i for i in range(len(H)) if A >> i & 1]
    reps = sorted(_masks(a_idx, d))
    tail = 0
    for i in a_idx[: d - 1]:
        tail |= 1 << i
    reps += [(1 << i) | tail for i in range(len(H)) if L >> i & 1]
    return RationalSymMatrix.from_function(
        len(reps), lambda i, j: orbit_value(orbit_key(reps[i], reps[j], A, L), d)
    )


def symmetrize_gram(M: RationalSymMatrix, orbit: Callable[[int, int], Hashable]) -> RationalSymMatrix:
    """Replace each entry by the mean of ``M`` over its orbit class of index pairs."""
    n = M.n
    sums: dict = {}
    counts: dict = {}
    for i in range(n):
        for j in range(n):
            key = orbit(i, j)
            sums[key] = sums.get(key, 0) + M[i, j]
            counts[key] = counts.get(key, 0) + 1
    return RationalSymMatrix.from_function(n, lambda i, j: Fraction(sums[orbit(i, j)]) / counts[orbit(i, j)])


def sample_nonnegativity(F: BoundedExponentForm, trials: int, seed: int = 0) -> Optional[tuple[dict, Fraction]]:
    """First strictly negative value of ``F`` at seeded random rationals in [-10, 10]."""
    if trials < 1:
        raise SpecError("trials must be positive")
    rng = random.Random(seed)
    for _ in range(trials):
        point = {}
        for h in F.ground.elements:
            q = rng.randint(1, 20)
            point[h] = Fraction(rng.randint(-10 * q, 10 * q), q)
        value = evaluate(F, point)
        if value < 0:
            return point, value
    return None
