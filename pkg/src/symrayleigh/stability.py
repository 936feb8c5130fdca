"""Deciding the strong Rayleigh property for the symmetric families.

The two-orbit families reduce, after collapsing each orbit to one variable,
to real-rootedness of a univariate polynomial with positive coefficients.
Real-rootedness is decided exactly with a Sturm chain over the rationals.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .errors import NotSymmetricError, SpecError
from .models import (
    LinePlusFreeSpec,
    PartitionedGroundSet,
    TwoFlatSpec,
    UniformSpec,
    basis_enumerator_line,
    line_labels,
    require_valid,
)
from .polycore import MultiaffinePoly, contract, delete, evaluate, iter_bits


# --- univariate polynomials ----------------------------------------------

class UnivariateRationalPoly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    def __eq__(self, other):
        return isinstance(other, UnivariateRationalPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "UnivariateRationalPoly(" + (" + ".join(terms) or "0") + ")"

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise SpecError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UnivariateRationalPoly:
        return UnivariateRationalPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __mul__(self, other: UnivariateRationalPoly) -> UnivariateRationalPoly:
        if not self.coeffs or not other.coeffs:
            return UnivariateRationalPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariateRationalPoly(out)

    def __mod__(self, other: UnivariateRationalPoly) -> UnivariateRationalPoly:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dv = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        while len(r) - 1 >= dv and r:
            q = r[-1] / lead
            shift = len(r) - 1 - dv
            for i, c in enumerate(other.coeffs):
                r[shift + i] -= q * c
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return UnivariateRationalPoly(r)


def sturm_chain(P: UnivariateRationalPoly) -> list[UnivariateRationalPoly]:
    chain = [P, P.derivative()]
    while not chain[-1].is_zero():
        rem = chain[-2] % chain[-1]
        chain.append(UnivariateRationalPoly([-c for c in rem.coeffs]))
    chain.pop()
    return chain


def _variations(signs) -> int:
    s = [x for x in signs if x]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(P: UnivariateRationalPoly) -> int:
    """Number of distinct real roots (Sturm's theorem)."""
    chain = sturm_chain(P)
    at_pos = [_sign(p.coeffs[-1]) for p in chain]
    at_neg = [_sign(p.coeffs[-1]) * (-1) ** p.degree for p in chain]
    return _variations(at_neg) - _variations(at_pos)


def is_real_rooted(P: UnivariateRationalPoly) -> bool:
    """True iff every complex root of ``P`` is real, counted with multiplicity."""
    if P.is_zero():
        raise SpecError("real-rootedness of the zero polynomial is undefined")
    if P.degree == 0:
        return True
    chain = sturm_chain(P)
    # chain[-1] is gcd(P, P'); P has deg P - deg gcd distinct roots.
    distinct = P.degree - chain[-1].degree
    return count_real_roots(P) == distinct


# --- Grace-Walsh-Szego collapse ------------------------------------------

@dataclass(frozen=True)
class BlockedPoly:
    names: tuple[str, ...]
    sizes: tuple[int, ...]
    terms: dict = field(hash=False)

    def coefficient(self, *exps: int) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))


def _permute(Z: MultiaffinePoly, perm: dict[int, int]) -> dict[int, Fraction]:
    out = {}
    for k, v in Z.terms.items():
        nk = 0
        for i in iter_bits(k):
            nk |= 1 << perm.get(i, i)
        out[nk] = v
    return out


def check_block_symmetric(Z: MultiaffinePoly, pi: PartitionedGroundSet) -> bool:
    """Invariance under the Young subgroup, tested on two generators per block."""
    g = Z.ground
    for _, labels in pi.blocks:
        idx = [g.index(h) for h in labels]
        if len(idx) < 2:
            continue
        swap = {idx[0]: idx[1], idx[1]: idx[0]}
        cycle = {idx[j]: idx[(j + 1) % len(idx)] for j in range(len(idx))}
        for perm in (swap, cycle):
            if _permute(Z, perm) != Z.terms:
                return False
    return True


def gws_collapse(Z: MultiaffinePoly, pi: PartitionedGroundSet) -> BlockedPoly:
    if Z.ground != pi.ground:
        raise SpecError("partition is over a different ground set")
    if not check_block_symmetric(Z, pi):
        raise NotSymmetricError("polynomial not π-symmetric")
    masks = [Z.ground.mask(labels) for _, labels in pi.blocks]
    out: dict[tuple[int, ...], Fraction] = {}
    for k, v in Z.terms.items():
        key = tuple((k & m).bit_count() for m in masks)
        out[key] = out.get(key, Fraction(0)) + v
    out = {k: v for k, v in out.items() if v}
    return BlockedPoly(pi.names, tuple(len(l) for _, l in pi.blocks), out)


# --- two flats -----------------------------------------------------------

def characteristic_poly(spec: TwoFlatSpec) -> UnivariateRationalPoly:
    """``sum_i C(a,i) C(b,r-i) x^(i-r+t)`` over ``r-t <= i <= s``."""
    require_valid(spec)
    r, s, t, a, b = spec.r, spec.s, spec.t, spec.a, spec.b
    return UnivariateRationalPoly([comb(a, i) * comb(b, r - i) for i in range(r - t, s + 1)])


def quadratic_criterion(spec: TwoFlatSpec) -> bool:
    require_valid(spec)
    r, s, t, a, b = spec.r, spec.s, spec.t, spec.a, spec.b
    if s + t != r + 2:
        raise SpecError("criterion applies only when s+t=r+2")
    lhs = Fraction((a - s + 2) * (b - t + 2), (a - s + 1) * (b - t + 1))
    rhs = Fraction(4 * (s - 1) * (t - 1), s * t)
    return lhs >= rhs


# --- the line-plus-free-points family ------------------------------------

@dataclass(frozen=True)
class Threshold:
    value: Optional[Fraction]

    @property
    def infinite(self) -> bool:
        return self.value is None

    def floor(self) -> Optional[int]:
        return None if self.value is None else math.floor(self.value)

    def admits(self, a: int) -> bool:
        return self.value is None or a <= self.value

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


def threshold_A(r: int, ell: int) -> Threshold:
    """Largest admissible number of free points, ``r + 2(r+ell+1)/((r-2)ell-2)``."""
    if r < 3 or ell < 1:
        raise SpecError(f"threshold needs r >= 3 and ell >= 1, got r={r}, ell={ell}")
    denom = (r - 2) * ell - 2
    if denom <= 0:
        return Threshold(None)
    return Threshold(r + Fraction(2 * (r + ell + 1), denom))


def table_A(r_range, ell_range) -> list[list[Optional[int]]]:
    """Rows indexed by ``r``, columns by ``ell``; ``None`` marks an infinite bound."""
    return [[threshold_A(r, l).floor() for l in ell_range] for r in r_range]


@dataclass(frozen=True)
class Decision:
    decision: bool
    path: str
    detail: str
    threshold: Optional[Threshold] = None

    def to_json(self) -> dict:
        out = {"decision": self.decision, "path": self.path, "detail": self.detail}
        if self.threshold is not None:
            out["threshold"] = str(self.threshold)
        return out


def is_strongly_rayleigh(spec) -> Decision:
    require_valid(spec)
    if isinstance(spec, UniformSpec):
        return Decision(True, "uniform", "uniform matroids are strongly Rayleigh")
    if isinstance(spec, TwoFlatSpec):
        excess = spec.s + spec.t - spec.r
        if excess == 0:
            return Decision(True, "degenerate", "s+t=r: direct sum of uniform matroids")
        if excess == 1:
            return Decision(True, "degenerate", "s+t=r+1: two-sum of uniform matroids")
        P = characteristic_poly(spec)
        if is_real_rooted(P):
            return Decision(True, "real-rootedness", f"P_M = {P} is real-rooted")
        return Decision(False, "real-rootedness", f"P_M not real-rooted: {P}")
    if isinstance(spec, LinePlusFreeSpec):
        if spec.ell == 0:
            return Decision(True, "uniform", f"ell=0: the uniform matroid U({spec.r},{spec.a + 2})")
        th = threshold_A(spec.r, spec.ell)
        label = f"A({spec.r},{spec.ell})={th}"
        if th.infinite:
            return Decision(True, "threshold", f"(r-2)*ell <= 2, so every a is admissible; {label}", th)
        ok = th.admits(spec.a)
        rel = "<=" if ok else ">"
        return Decision(ok, "threshold", f"a={spec.a} {rel} {label}", th)
    raise SpecError(f"unknown family spec {type(spec).__name__}")


# --- negativity witnesses ------------------------------------------------

@dataclass(frozen=True)
class Witness:
    point: dict
    value: Fraction
    stage: str


def _esym_values(vals, kmax: int) -> list[Fraction]:
    e = [Fraction(1)] + [Fraction(0)] * kmax
    for v in vals:
        for k in range(kmax, 0, -1):
            e[k] += e[k - 1] * v
    return e


def _fast_delta(spec: LinePlusFreeSpec, a_vals, l_vals) -> Fraction:
    """Rayleigh difference of ``e, f`` at a point, via elementary symmetric values."""
    r = spec.r
    eA = _esym_values(a_vals, r)
    eL = _esym_values(l_vals, 2)
    through_e = eA[r - 1] + eL[1] * eA[r - 2]
    both = eA[r - 2]
    neither = eA[r] + eL[1] * eA[r - 1] + eL[2] * eA[r - 2]
    return through_e * through_e - both * neither


def _block_count(size: int, n: int, i: int) -> int:
    """Number of monomials in ``m_[n,i]`` on ``size`` variables."""
    if i > size or n - 2 * i < 0:
        return 0
    return comb(size, i) * comb(size - i, n - 2 * i)


def slice_quadratic(spec: LinePlusFreeSpec) -> tuple[int, int, int]:
    """Coefficients ``(c0, c1, c2)`` with ``Delta = alpha^(2d-2) (c0 alpha^2 + c1 alpha beta + c2 beta^2)``
    on the slice ``y_A = alpha``, ``y_L = beta``."""
    require_valid(spec)
    d, a, ell = spec.d, spec.a, spec.ell
    c0 = sum(Fraction(comb(2 * k, k), k + 1) * _block_count(a, 2 * d, d - k) for k in range(d + 1))
    c1 = ell * sum(comb(2 * k - 1, k) * _block_count(a, 2 * d - 1, d - k) for k in range(1, d + 1))
    c2 = (ell + comb(ell, 2)) * sum(comb(2 * k, k) * _block_count(a, 2 * d - 2, d - 1 - k) for k in range(d))
    assert c0.denominator == 1
    return int(c0), c1, c2


def _point(spec, a_vals, l_vals) -> dict:
    A, L = line_labels(spec)
    return {**dict(zip(A, a_vals)), **dict(zip(L, l_vals))}


def exact_delta(spec: LinePlusFreeSpec, point) -> Fraction:
    """Rayleigh difference of ``e, f`` at ``point``, from the basis enumerator's minors."""
    M = basis_enumerator_line(spec)
    Me, Mne = contract(M, "e"), delete(M, "e")
    through_e = evaluate(delete(Me, "f"), point)
    through_f = evaluate(contract(Mne, "f"), point)
    both = evaluate(contract(Me, "f"), point)
    neither = evaluate(delete(Mne, "f"), point)
    return through_e * through_f - both * neither


def _slice_stage(spec, log):
    c0, c1, c2 = slice_quadratic(spec)
    disc = c1 * c1 - 4 * c0 * c2
    log.append(f"symmetric slice: {c0} a^2 + {c1} ab + {c2} b^2, discriminant {disc}")
    if c0 <= 0 or disc <= 0:
        return None
    vertex = Fraction(-c1, 2 * c0)
    q = lambda x: c0 * x * x + c1 * x + c2
    x = vertex
    for bound in (1, 2, 5, 10, 100, 1000, 10 ** 6):
        cand = vertex.limit_denominator(bound)
        if cand != 0 and q(cand) < 0:
            x = cand
            break
    return [x] * spec.a, [Fraction(1)] * spec.ell


_GRID = [Fraction(n, m) for m in (1, 2, 3) for n in range(-3 * m, 3 * m + 1) if math.gcd(n, m) == 1]


def _two_value_stage(spec, log):
    a, ell = spec.a, spec.ell
    beta = [Fraction(1)] * ell
    tried = 0
    for j in range(1, a):
        for u in _GRID:
            for v in _GRID:
                if u == v:
                    continue
                vals = [u] * j + [v] * (a - j)
                tried += 1
                if _fast_delta(spec, vals, beta) < 0:
                    log.append(f"two-value slice: hit after {tried} points")
                    return vals, beta
    log.append(f"two-value slice: no sign change in {tried} points")
    return None


def _random_stage(spec, log, seed, trials):
    rng = random.Random(seed)

    def draw():
        q = rng.randint(1, 10)
        return Fraction(rng.randint(-10 * q, 10 * q), q)

    for n in range(trials):
        a_vals = [draw() for _ in range(spec.a)]
        l_vals = [draw() for _ in range(spec.ell)]
        if _fast_delta(spec, a_vals, l_vals) < 0:
            log.append(f"random search: hit at trial {n + 1}")
            return a_vals, l_vals
    log.append(f"random search: no negative value in {trials} trials (seed {seed})")
    return None


def negativity_witness(spec: LinePlusFreeSpec, seed: int = 0, trials: int = 2000,
                       log: Optional[list] = None) -> Optional[Witness]:
    """Search for a rational point where the Rayleigh difference of ``e, f`` is negative.

    Stages run in order: the fully symmetric slice, two-value slices on ``A``,
    then a seeded random search.  Stage messages are appended to ``log``.
    """
    require_valid(spec)
    log = [] if log is None else log
    stages = (
        ("symmetric-slice", lambda: _slice_stage(spec, log)),
        ("two-value-slice", lambda: _two_value_stage(spec, log)),
        ("random", lambda: _random_stage(spec, log, seed, trials)),
    )
    for name, run in stages:
        found = run()
        if found is None:
            continue
        point = _point(spec, *found)
        value = exact_delta(spec, point)
        if value < 0:
            return Witness(point, value, name)
        log.append(f"{name}: candidate did not confirm (value {value})")
    return None
