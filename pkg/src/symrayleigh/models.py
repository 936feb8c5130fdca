"""Symmetric matroid families and their basis enumerators.

Three families are constructible:

``UniformSpec(r, m)``
    the uniform matroid of rank ``r`` on ``m`` points, labelled ``"1".."m"``.
``TwoFlatSpec(r, s, t, a, b)``
    two disjoint flats ``S`` (rank ``s``, ``a`` points ``s1..``) and ``T``
    (rank ``t``, ``b`` points ``t1..``) in general position otherwise.  The
    basis set is taken to be every ``r``-set meeting ``S`` in at most ``s`` and
    ``T`` in at most ``t`` points.
``LinePlusFreeSpec(r, ell, a)``
    ``ell + 2`` points ``p1.., e, f`` on a line plus ``a`` free points
    ``a1..``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Union

from .errors import SpecError
from .polycore import (
    BoundedExponentForm,
    GroundSet,
    MultiaffinePoly,
    elementary_symmetric,
    monomial_symmetric,
)


@dataclass(frozen=True)
class UniformSpec:
    r: int
    m: int
    family = "uniform"


@dataclass(frozen=True)
class TwoFlatSpec:
    r: int
    s: int
    t: int
    a: int
    b: int
    family = "twoflats"


@dataclass(frozen=True)
class LinePlusFreeSpec:
    r: int
    ell: int
    a: int
    family = "line"

    @property
    def d(self) -> int:
        return self.r - 1

    def as_two_flats(self) -> TwoFlatSpec:
        """The same matroid seen as two flats: ``A`` of rank r, the line of rank 2."""
        return TwoFlatSpec(self.r, self.r, 2, self.a, self.ell + 2)


FamilySpec = Union[UniformSpec, TwoFlatSpec, LinePlusFreeSpec]


@dataclass(frozen=True)
class PartitionedGroundSet:
    ground: GroundSet
    blocks: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        seen = [h for _, labels in self.blocks for h in labels]
        if sorted(seen) != sorted(self.ground.elements) or len(seen) != len(set(seen)):
            raise SpecError("blocks must partition the ground set")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.blocks)


def validate(spec) -> list[str]:
    """Every violated constraint of ``spec``; an empty list means valid."""
    out = []
    if isinstance(spec, UniformSpec):
        if spec.r < 0:
            out.append("r >= 0")
        if spec.m < spec.r:
            out.append("m >= r")
    elif isinstance(spec, TwoFlatSpec):
        if spec.r < 1:
            out.append("r >= 1")
        if min(spec.s, spec.t, spec.a, spec.b) < 0:
            out.append("s, t, a, b >= 0")
        if spec.s > spec.a:
            out.append("s <= a")
        if spec.t > spec.b:
            out.append("t <= b")
        if spec.s > spec.r:
            out.append("s <= r")
        if spec.t > spec.r:
            out.append("t <= r")
        if spec.s + spec.t < spec.r:
            out.append("s + t >= r")
    elif isinstance(spec, LinePlusFreeSpec):
        if spec.r < 3:
            out.append("r >= 3")
        if spec.ell < 0:
            out.append("ell >= 0")
        if spec.a < spec.r - 2:
            out.append("a >= r - 2")
    else:
        out.append(f"unknown family spec {type(spec).__name__}")
    return out


def require_valid(spec) -> None:
    problems = validate(spec)
    if problems:
        raise SpecError(f"invalid {type(spec).__name__}{tuple(asdict(spec).values())}: violates " + "; ".join(problems))


def spec_to_dict(spec) -> dict:
    return {"family": spec.family, **asdict(spec)}


def spec_from_dict(data: dict) -> FamilySpec:
    data = dict(data)
    family = data.pop("family", None)
    cls = {"uniform": UniformSpec, "twoflats": TwoFlatSpec, "line": LinePlusFreeSpec}.get(family)
    if cls is None:
        raise SpecError(f"unknown family {family!r}")
    fields = cls.__dataclass_fields__
    try:
        spec = cls(**{k: int(data[k]) for k in fields})
    except KeyError as exc:
        raise SpecError(f"{family} spec is missing field {exc.args[0]!r}") from None
    extra = [k for k, v in data.items() if k not in fields and v is not None]
    if extra:
        raise SpecError(f"fields {extra} do not apply to the {family} family")
    return spec


# --- ground sets ---------------------------------------------------------

def uniform_ground(spec: UniformSpec) -> GroundSet:
    return GroundSet([str(i) for i in range(1, spec.m + 1)], {"E": [str(i) for i in range(1, spec.m + 1)]})


def two_flat_ground(spec: TwoFlatSpec) -> GroundSet:
    S = [f"s{i}" for i in range(1, spec.a + 1)]
    T = [f"t{i}" for i in range(1, spec.b + 1)]
    return GroundSet(S + T, {"S": S, "T": T})


def line_labels(spec: LinePlusFreeSpec) -> tuple[list[str], list[str]]:
    return [f"a{i}" for i in range(1, spec.a + 1)], [f"p{i}" for i in range(1, spec.ell + 1)]


def line_ground(spec: LinePlusFreeSpec) -> GroundSet:
    A, L = line_labels(spec)
    return GroundSet(A + L + ["e", "f"], {"A": A, "L": L, "line": L + ["e", "f"], "ef": ["e", "f"]})


def rest_ground(spec: LinePlusFreeSpec) -> GroundSet:
    """Ground set ``H = A + L`` of the Rayleigh difference of ``e`` and ``f``."""
    A, L = line_labels(spec)
    return GroundSet(A + L, {"A": A, "L": L})


def partition(spec) -> PartitionedGroundSet:
    """The Young-subgroup orbits of ``spec`` as a partitioned ground set."""
    require_valid(spec)
    if isinstance(spec, UniformSpec):
        g = uniform_ground(spec)
        return PartitionedGroundSet(g, (("E", g.elements),))
    if isinstance(spec, TwoFlatSpec):
        g = two_flat_ground(spec)
        return PartitionedGroundSet(g, (("S", g.tags["S"]), ("T", g.tags["T"])))
    g = line_ground(spec)
    return PartitionedGroundSet(g, (("A", g.tags["A"]), ("line", g.tags["line"])))


# --- basis enumerators ---------------------------------------------------

def basis_enumerator_uniform(spec: UniformSpec) -> MultiaffinePoly:
    require_valid(spec)
    return elementary_symmetric(uniform_ground(spec), spec.r)


def two_flat_range(spec: TwoFlatSpec) -> range:
    """Admissible sizes ``i = |B & S|`` of a basis ``B``."""
    lo = max(spec.r - spec.t, spec.r - spec.b, 0)
    hi = min(spec.s, spec.a, spec.r)
    return range(lo, hi + 1)


def basis_enumerator_two_flats(spec: TwoFlatSpec) -> MultiaffinePoly:
    require_valid(spec)
    g = two_flat_ground(spec)
    M = MultiaffinePoly(g)
    for i in two_flat_range(spec):
        M = M + elementary_symmetric(g, i, "S").disjoint_mul(elementary_symmetric(g, spec.r - i, "T"))
    return M


def basis_enumerator_line(spec: LinePlusFreeSpec) -> MultiaffinePoly:
    require_valid(spec)
    g = line_ground(spec)
    r = spec.r
    M = elementary_symmetric(g, r, "A")
    for j in (1, 2):
        M = M + elementary_symmetric(g, j, "line").disjoint_mul(elementary_symmetric(g, r - j, "A"))
    return M


def _catalan_weight(k: int) -> Fraction:
    return Fraction(comb(2 * k, k), k + 1)


def rayleigh_closed_form(spec: LinePlusFreeSpec) -> BoundedExponentForm:
    """Rayleigh difference of ``e, f`` written in monomial symmetric functions of ``A`` and ``L``."""
    require_valid(spec)
    H = rest_ground(spec)
    d = spec.d
    zero = BoundedExponentForm(H)

    pure_a = zero
    for k in range(d + 1):
        pure_a = pure_a + monomial_symmetric(H, 2 * d, d - k, "A").scale(_catalan_weight(k))

    one_line = zero
    for k in range(1, d + 1):
        one_line = one_line + monomial_symmetric(H, 2 * d - 1, d - k, "A").scale(comb(2 * k - 1, k))
    one_line = monomial_symmetric(H, 1, 0, "L") * one_line

    two_line = zero
    for k in range(d):
        two_line = two_line + monomial_symmetric(H, 2 * d - 2, d - 1 - k, "A").scale(comb(2 * k, k))
    line_quad = monomial_symmetric(H, 2, 1, "L") + monomial_symmetric(H, 2, 0, "L")
    two_line = line_quad * two_line

    return pure_a + one_line + two_line


def enumerator(spec) -> MultiaffinePoly:
    if isinstance(spec, UniformSpec):
        return basis_enumerator_uniform(spec)
    if isinstance(spec, TwoFlatSpec):
        return basis_enumerator_two_flats(spec)
    if isinstance(spec, LinePlusFreeSpec):
        return basis_enumerator_line(spec)
    raise SpecError(f"unknown family spec {type(spec).__name__}")
