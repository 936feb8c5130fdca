"""Exact polynomial algebra over ground-set indexed variables.

Two polynomial types are provided:

* :class:`MultiaffinePoly` -- every variable appears to degree at most one.
  Terms are keyed by a bitmask over the ordered ground set.
* :class:`BoundedExponentForm` -- a homogeneous form in which every variable
  appears to degree at most two.  An exponent function ``alpha`` is stored as
  the pair ``(twos, ones)`` of disjoint bitmasks, so the monomial
  ``y^S * y^T`` of two subsets is simply ``(S & T, S ^ T)``.

All coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Union

from .errors import SpecError, UnknownElementError

MAX_GROUND = 64

Rational = Union[int, Fraction]


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def drop_bit(mask: int, i: int) -> int:
    """Remove bit position ``i`` from ``mask``, shifting higher bits down."""
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


class GroundSet:
    """Ordered finite set of element labels, with optional named blocks."""

    __slots__ = ("elements", "tags", "_index")

    def __init__(self, elements: Iterable[str], tags: Mapping[str, Iterable[str]] | None = None):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise SpecError("ground set labels must be distinct")
        if len(elements) > MAX_GROUND:
            raise SpecError(f"ground sets are capped at {MAX_GROUND} elements")
        index = {h: i for i, h in enumerate(elements)}
        frozen_tags = {}
        for name, labels in (tags or {}).items():
            labels = tuple(labels)
            for h in labels:
                if h not in index:
                    raise UnknownElementError(f"tag {name!r} names unknown element {h!r}")
            frozen_tags[name] = labels
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "tags", frozen_tags)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("GroundSet is immutable")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.elements)})"

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElementError(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for h in labels:
            m |= 1 << self.index(h)
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in iter_bits(mask))

    def block(self, name: str) -> int:
        """Bitmask of the tagged block ``name``."""
        if name not in self.tags:
            raise SpecError(f"ground set has no block named {name!r}")
        return self.mask(self.tags[name])

    def without(self, label: str) -> GroundSet:
        i = self.index(label)
        rest = self.elements[:i] + self.elements[i + 1:]
        tags = {k: [h for h in v if h != label] for k, v in self.tags.items()}
        return GroundSet(rest, tags)

    def _subset_mask(self, subset) -> int:
        if subset is None:
            return self.full_mask
        if isinstance(subset, int):
            return subset
        if isinstance(subset, str):
            return self.block(subset)
        return self.mask(subset)


def _clean(terms: Mapping) -> dict:
    return {k: Fraction(v) for k, v in terms.items() if v != 0}


def _check_same_ground(a, b):
    if a.ground != b.ground:
        raise SpecError("operands live on different ground sets")


class MultiaffinePoly:
    """Multiaffine polynomial ``sum_S c_S y^S``, keyed by subset bitmask."""

    __slots__ = ("ground", "terms")

    def __init__(self, ground: GroundSet, terms: Mapping[int, Rational] | None = None):
        terms = _clean(terms or {})
        full = ground.full_mask
        for key in terms:
            if key & ~full:
                raise SpecError("term uses an element outside the ground set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("MultiaffinePoly is immutable")

    @classmethod
    def constant(cls, ground: GroundSet, c: Rational = 1) -> MultiaffinePoly:
        return cls(ground, {0: c})

    @classmethod
    def from_subsets(cls, ground: GroundSet, subsets: Iterable[Iterable[str]]) -> MultiaffinePoly:
        terms: dict[int, Fraction] = {}
        for s in subsets:
            k = ground.mask(s)
            terms[k] = terms.get(k, Fraction(0)) + 1
        return cls(ground, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiaffinePoly)
            and self.ground == other.ground
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ground, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise SpecError("degree of the zero polynomial is undefined")
        return max(k.bit_count() for k in self.terms)

    def is_homogeneous(self) -> bool:
        return len({k.bit_count() for k in self.terms}) <= 1

    def __add__(self, other: MultiaffinePoly) -> MultiaffinePoly:
        _check_same_ground(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultiaffinePoly(self.ground, out)

    def __neg__(self) -> MultiaffinePoly:
        return MultiaffinePoly(self.ground, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: MultiaffinePoly) -> MultiaffinePoly:
        return self + (-other)

    def scale(self, c: Rational) -> MultiaffinePoly:
        return MultiaffinePoly(self.ground, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, BoundedExponentForm):
            return self.to_form() * other
        return multiply(self, other)

    __rmul__ = __mul__

    def disjoint_mul(self, other: MultiaffinePoly) -> MultiaffinePoly:
        """Product that must stay multiaffine (e.g. ``e_i(S) e_j(T)`` with S, T disjoint)."""
        _check_same_ground(self, other)
        out: dict[int, Fraction] = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                if s & t:
                    raise SpecError("product is not multiaffine")
                out[s | t] = out.get(s | t, 0) + a * b
        return MultiaffinePoly(self.ground, out)

    def to_form(self) -> BoundedExponentForm:
        return BoundedExponentForm(self.ground, {(0, k): v for k, v in self.terms.items()})

    def relabel(self, mapping: Mapping[str, str], ground: GroundSet) -> MultiaffinePoly:
        """Rename elements via ``mapping`` into the target ``ground``."""
        pos = [ground.index(mapping.get(h, h)) for h in self.ground.elements]
        out = {}
        for k, v in self.terms.items():
            nk = 0
            for i in iter_bits(k):
                nk |= 1 << pos[i]
            out[nk] = v
        return MultiaffinePoly(ground, out)

    def evaluate(self, point: Mapping[str, Rational]) -> Fraction:
        return evaluate(self, point)

    def __repr__(self) -> str:
        body = _format_terms(self.ground, [((0, k), v) for k, v in self.terms.items()])
        return f"MultiaffinePoly({body})"


class BoundedExponentForm:
    """Homogeneous form with per-variable degree at most two."""

    __slots__ = ("ground", "terms", "_degree")

    def __init__(self, ground: GroundSet, terms: Mapping[tuple[int, int], Rational] | None = None):
        terms = _clean(terms or {})
        full = ground.full_mask
        deg = None
        for twos, ones in terms:
            if twos & ones:
                raise SpecError("exponent masks overlap")
            if (twos | ones) & ~full:
                raise SpecError("term uses an element outside the ground set")
            d = 2 * twos.bit_count() + ones.bit_count()
            if deg is None:
                deg = d
            elif d != deg:
                raise SpecError("mixed-degree sum rejected: forms must be homogeneous")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_degree", deg)

    def __setattr__(self, name, value):
        raise AttributeError("BoundedExponentForm is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BoundedExponentForm)
            and self.ground == other.ground
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ground, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if self._degree is None:
            raise SpecError("degree of the zero polynomial is undefined")
        return self._degree

    def coefficient(self, twos: int, ones: int) -> Fraction:
        return self.terms.get((twos, ones), Fraction(0))

    def __add__(self, other: BoundedExponentForm) -> BoundedExponentForm:
        _check_same_ground(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BoundedExponentForm(self.ground, out)

    def __neg__(self) -> BoundedExponentForm:
        return BoundedExponentForm(self.ground, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: BoundedExponentForm) -> BoundedExponentForm:
        return self + (-other)

    def scale(self, c: Rational) -> BoundedExponentForm:
        return BoundedExponentForm(self.ground, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, MultiaffinePoly):
            other = other.to_form()
        _check_same_ground(self, other)
        out: dict[tuple[int, int], Fraction] = {}
        for (t1, o1), a in self.terms.items():
            for (t2, o2), b in other.terms.items():
                if t1 & (t2 | o2) or t2 & o1:
                    raise SpecError("product exceeds degree two in some variable")
                key = (t1 | t2 | (o1 & o2), o1 ^ o2)
                out[key] = out.get(key, 0) + a * b
        return BoundedExponentForm(self.ground, out)

    __rmul__ = __mul__

    def relabel(self, mapping: Mapping[str, str], ground: GroundSet) -> BoundedExponentForm:
        pos = [ground.index(mapping.get(h, h)) for h in self.ground.elements]

        def move(mask):
            nm = 0
            for i in iter_bits(mask):
                nm |= 1 << pos[i]
            return nm

        return BoundedExponentForm(ground, {(move(t), move(o)): v for (t, o), v in self.terms.items()})

    def evaluate(self, point: Mapping[str, Rational]) -> Fraction:
        return evaluate(self, point)

    def __repr__(self) -> str:
        return f"BoundedExponentForm({_format_terms(self.ground, self.terms.items())})"


def _format_terms(ground: GroundSet, items) -> str:
    parts = []
    for (twos, ones), c in sorted(items, key=lambda kv: (kv[0][0], kv[0][1])):
        factors = [f"y{ground.elements[i]}^2" for i in iter_bits(twos)]
        factors += [f"y{ground.elements[i]}" for i in iter_bits(ones)]
        mono = "*".join(factors) or "1"
        parts.append(mono if c == 1 and factors else f"{c}*{mono}" if factors else str(c))
    return " + ".join(parts) or "0"


def _restrict_index(Z: MultiaffinePoly, g: str) -> int:
    if g not in Z.ground:
        raise UnknownElementError(f"unknown element {g!r}")
    return Z.ground.index(g)


def delete(Z: MultiaffinePoly, g: str) -> MultiaffinePoly:
    """Terms of ``Z`` avoiding ``y_g``, on the ground set without ``g``."""
    i = _restrict_index(Z, g)
    bit = 1 << i
    terms = {drop_bit(k, i): v for k, v in Z.terms.items() if not k & bit}
    return MultiaffinePoly(Z.ground.without(g), terms)


def contract(Z: MultiaffinePoly, g: str) -> MultiaffinePoly:
    """Coefficient of ``y_g`` in ``Z``, on the ground set without ``g``."""
    i = _restrict_index(Z, g)
    bit = 1 << i
    terms = {drop_bit(k, i): v for k, v in Z.terms.items() if k & bit}
    return MultiaffinePoly(Z.ground.without(g), terms)


def multiply(P: MultiaffinePoly, Q: MultiaffinePoly) -> BoundedExponentForm:
    _check_same_ground(P, Q)
    out: dict[tuple[int, int], Fraction] = {}
    for s, a in P.terms.items():
        for t, b in Q.terms.items():
            key = (s & t, s ^ t)
            out[key] = out.get(key, 0) + a * b
    return BoundedExponentForm(P.ground, out)


def rayleigh_difference(Z: MultiaffinePoly, e: str, f: str) -> BoundedExponentForm:
    """``Z_e^f Z_f^e - Z_{ef} Z^{ef}`` on the ground set without ``e`` and ``f``."""
    if e == f:
        raise SpecError("Rayleigh difference needs two distinct elements")
    _restrict_index(Z, e)
    _restrict_index(Z, f)
    Ze, Zne = contract(Z, e), delete(Z, e)
    ze_nf = delete(Ze, f)
    zef = contract(Ze, f)
    znef = delete(Zne, f)
    zf_ne = contract(Zne, f)
    return multiply(ze_nf, zf_ne) - multiply(zef, znef)


def elementary_symmetric(ground: GroundSet, k: int, subset=None) -> MultiaffinePoly:
    """``e_k`` in the variables of ``subset`` (default: the whole ground set).

    ``subset`` may be a bitmask, a block name, or an iterable of labels.
    """
    if k < 0:
        raise SpecError("k must be nonnegative")
    S = ground._subset_mask(subset)
    idx = list(iter_bits(S))
    terms = {}
    for combo in combinations(idx, k):
        m = 0
        for i in combo:
            m |= 1 << i
        terms[m] = 1
    return MultiaffinePoly(ground, terms)


def monomial_symmetric(ground: GroundSet, n: int, i: int, subset=None) -> BoundedExponentForm:
    """``m_[n,i]``: ``i`` squared variables and ``n - 2i`` linear ones, all from ``subset``."""
    if i < 0 or 2 * i > n:
        raise SpecError(f"need 0 <= 2i <= n, got n={n}, i={i}")
    S = ground._subset_mask(subset)
    idx = list(iter_bits(S))
    terms = {}
    for sq in combinations(idx, i):
        tw = 0
        for j in sq:
            tw |= 1 << j
        rest = [j for j in idx if not tw >> j & 1]
        for lin in combinations(rest, n - 2 * i):
            on = 0
            for j in lin:
                on |= 1 << j
            terms[(tw, on)] = 1
    return BoundedExponentForm(ground, terms)


def _point_values(ground: GroundSet, point: Mapping[str, Rational]) -> list[Fraction]:
    vals = []
    for h in ground.elements:
        if h not in point:
            raise SpecError(f"point has no value for element {h!r}")
        vals.append(Fraction(point[h]))
    return vals


def evaluate(F: Union[BoundedExponentForm, MultiaffinePoly], point: Mapping[str, Rational]) -> Fraction:
    vals = _point_values(F.ground, point)
    total = Fraction(0)
    if isinstance(F, MultiaffinePoly):
        for k, c in F.terms.items():
            term = c
            for i in iter_bits(k):
                term *= vals[i]
            total += term
        return total
    sq = [v * v for v in vals]
    for (twos, ones), c in F.terms.items():
        term = c
        for i in iter_bits(twos):
            term *= sq[i]
        for i in iter_bits(ones):
            term *= vals[i]
        total += term
    return total


def subsets_of_size(mask: int, k: int) -> list[int]:
    """All ``k``-subsets of ``mask`` as bitmasks, in colexicographic order."""
    idx = list(iter_bits(mask))
    out = []
    for combo in combinations(idx, k):
        m = 0
        for i in combo:
            m |= 1 << i
        out.append(m)
    out.sort()
    return out

