from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from conftest import as_multisets, brute_rayleigh, esym_terms, naive_add, naive_mul
from symrayleigh.errors import SpecError
from symrayleigh.models import (
    LinePlusFreeSpec,
    TwoFlatSpec,
    UniformSpec,
    basis_enumerator_line,
    basis_enumerator_two_flats,
    basis_enumerator_uniform,
    line_ground,
    rayleigh_closed_form,
    spec_from_dict,
    spec_to_dict,
    uniform_ground,
    validate,
)
from symrayleigh.polycore import elementary_symmetric, evaluate, rayleigh_difference


def brute_two_flat_bases(spec):
    """Bases by filtering all r-subsets of the ground set."""
    S = [f"s{i}" for i in range(1, spec.a + 1)]
    T = [f"t{i}" for i in range(1, spec.b + 1)]
    out = {}
    for B in combinations(S + T, spec.r):
        if sum(h in S for h in B) <= spec.s and sum(h in T for h in B) <= spec.t:
            out[tuple(sorted(B))] = 1
    return out


def brute_line_bases(spec):
    """Rank-r sets: at most two points on the line through e and f."""
    A = [f"a{i}" for i in range(1, spec.a + 1)]
    line = [f"p{i}" for i in range(1, spec.ell + 1)] + ["e", "f"]
    out = {}
    for B in combinations(A + line, spec.r):
        if sum(h in line for h in B) <= 2:
            out[tuple(sorted(B))] = 1
    return out


def test_uniform_examples():
    assert as_multisets(basis_enumerator_uniform(UniformSpec(2, 3))) == esym_terms("123", 2)
    assert as_multisets(basis_enumerator_uniform(UniformSpec(0, 3))) == {(): 1}
    assert len(basis_enumerator_uniform(UniformSpec(3, 6))) == comb(6, 3)


def test_two_flats_examples():
    M = basis_enumerator_two_flats(TwoFlatSpec(2, 1, 1, 2, 2))
    assert as_multisets(M) == naive_mul(esym_terms(["s1", "s2"], 1), esym_terms(["t1", "t2"], 1))
    assert len(M) == 4

    spec = TwoFlatSpec(3, 3, 2, 3, 2)
    S, T = ["s1", "s2", "s3"], ["t1", "t2"]
    expected = naive_add(
        naive_mul(esym_terms(S, 1), esym_terms(T, 2)),
        naive_mul(esym_terms(S, 2), esym_terms(T, 1)),
        esym_terms(S, 3),
    )
    assert as_multisets(basis_enumerator_two_flats(spec)) == expected == brute_two_flat_bases(spec)

    with pytest.raises(SpecError, match="s \\+ t >= r"):
        basis_enumerator_two_flats(TwoFlatSpec(5, 2, 2, 3, 3))


@pytest.mark.parametrize("spec", [
    TwoFlatSpec(r, s, t, a, b)
    for r in range(1, 5) for s in range(0, r + 1) for t in range(0, r + 1)
    for a in range(s, s + 3) for b in range(t, t + 3) if s + t >= r
])
def test_two_flats_matches_basis_filter(spec):
    M = basis_enumerator_two_flats(spec)
    assert as_multisets(M) == brute_two_flat_bases(spec)
    lo, hi = max(spec.r - spec.t, 0), spec.s
    assert len(M) == sum(comb(spec.a, i) * comb(spec.b, spec.r - i) for i in range(lo, hi + 1))


def test_line_examples():
    M = basis_enumerator_line(LinePlusFreeSpec(3, 1, 2))
    assert len(M.ground) == 5 and len(M) == 9
    assert as_multisets(M) == brute_line_bases(LinePlusFreeSpec(3, 1, 2))
    with pytest.raises(SpecError):
        basis_enumerator_line(LinePlusFreeSpec(2, 1, 3))


def test_line_with_no_extra_points_is_two_flats():
    line = basis_enumerator_line(LinePlusFreeSpec(3, 0, 3))
    flats = basis_enumerator_two_flats(TwoFlatSpec(3, 3, 2, 3, 2))
    rename = {"a1": "s1", "a2": "s2", "a3": "s3", "e": "t1", "f": "t2"}
    assert line.relabel(rename, flats.ground) == flats


@pytest.mark.parametrize("r", range(3, 6))
@pytest.mark.parametrize("a", range(1, 7))
def test_line_ell0_is_uniform(r, a):
    if a < r - 2:
        return
    spec = LinePlusFreeSpec(r, 0, a)
    line = basis_enumerator_line(spec)
    U = basis_enumerator_uniform(UniformSpec(r, a + 2))
    names = list(line.ground.elements)
    mapping = dict(zip(names, uniform_ground(UniformSpec(r, a + 2)).elements))
    assert line.relabel(mapping, U.ground) == U


@pytest.mark.parametrize("spec", [
    LinePlusFreeSpec(r, ell, a) for r in range(3, 6) for ell in range(0, 4) for a in range(r - 2, 8)
])
def test_line_enumerator_against_basis_filter(spec):
    M = basis_enumerator_line(spec)
    assert as_multisets(M) == brute_line_bases(spec)
    assert M.is_homogeneous() and M.degree() == spec.r
    assert set(M.terms.values()) == {1}


@pytest.mark.parametrize("spec", [
    LinePlusFreeSpec(r, ell, a) for r in range(3, 6) for ell in range(0, 4) for a in range(r - 2, 8)
])
def test_closed_form_matches_expansion(spec):
    D = rayleigh_difference(basis_enumerator_line(spec), "e", "f")
    assert rayleigh_closed_form(spec) == D


def test_closed_form_small_case_brute_force():
    spec = LinePlusFreeSpec(3, 1, 2)
    assert as_multisets(rayleigh_closed_form(spec)) == brute_rayleigh(brute_line_bases(spec), "e", "f")


def test_closed_form_symmetric_slice_3_3_18():
    F = rayleigh_closed_form(LinePlusFreeSpec(3, 3, 18))
    # alpha^2 (8721 alpha^2 + 8262 alpha beta + 1944 beta^2), counted by hand from monomial counts
    assert comb(18, 2) + 18 * comb(17, 2) + 2 * comb(18, 4) == 8721
    for alpha, beta in [(Fraction(1), Fraction(0)), (Fraction(2), Fraction(-3)), (Fraction(-1, 2), Fraction(1))]:
        pt = {h: alpha for h in F.ground.tags["A"]} | {h: beta for h in F.ground.tags["L"]}
        assert evaluate(F, pt) == alpha ** 2 * (8721 * alpha ** 2 + 8262 * alpha * beta + 1944 * beta ** 2)


@pytest.mark.parametrize("r,a", [(3, 1), (3, 5), (4, 4), (5, 6)])
def test_closed_form_without_line(r, a):
    F = rayleigh_closed_form(LinePlusFreeSpec(r, 0, a))
    d = r - 1
    ed = elementary_symmetric(F.ground, d)
    assert F == ed * ed - elementary_symmetric(F.ground, d - 1) * elementary_symmetric(F.ground, d + 1)


def test_validate_messages():
    assert validate(TwoFlatSpec(2, 1, 1, 2, 2)) == []
    assert "s + t >= r" in validate(TwoFlatSpec(5, 2, 2, 3, 3))
    assert "a >= r - 2" in validate(LinePlusFreeSpec(3, 1, 0))
    assert validate(UniformSpec(4, 3)) == ["m >= r"]
    assert validate(LinePlusFreeSpec(2, -1, -5)) == ["r >= 3", "ell >= 0", "a >= r - 2"]


@pytest.mark.parametrize("spec", [UniformSpec(3, 5), TwoFlatSpec(3, 3, 2, 17, 5), LinePlusFreeSpec(3, 3, 17)])
def test_spec_json_round_trip(spec):
    data = spec_to_dict(spec)
    assert data["family"] == spec.family
    assert spec_from_dict(data) == spec


def test_spec_json_errors():
    with pytest.raises(SpecError):
        spec_from_dict({"family": "vamos"})
    with pytest.raises(SpecError):
        spec_from_dict({"family": "line", "r": 3, "a": 4})
    with pytest.raises(SpecError):
        spec_from_dict({"family": "line", "r": 3, "a": 4, "ell": 1, "s": 2})


def test_line_ground_labels():
    g = line_ground(LinePlusFreeSpec(3, 2, 3))
    assert g.elements == ("a1", "a2", "a3", "p1", "p2", "e", "f")
    assert g.tags["line"] == ("p1", "p2", "e", "f")
