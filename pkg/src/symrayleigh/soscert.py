"""Gram matrices and exact sum-of-squares certificates for Rayleigh differences.

A certificate is a list of ``(weight, form)`` pairs standing for
``sum_i weight_i * form_i(y)^2`` where each form is a multiaffine ``d``-form.
Weights are LDL pivots, so everything stays rational.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Optional

from .errors import NoCertificateError, SizeLimitError, SpecError
from .johnson import MAX_VERTICES, JohnsonScheme, johnson_G
from .linalg import RationalSymMatrix, ldl_psd_check
from .models import (
    LinePlusFreeSpec,
    UniformSpec,
    basis_enumerator_line,
    basis_enumerator_uniform,
    rayleigh_closed_form,
    require_valid,
    rest_ground,
    spec_from_dict,
    spec_to_dict,
)
from .polycore import (
    BoundedExponentForm,
    GroundSet,
    elementary_symmetric,
    iter_bits,
    rayleigh_difference,
    subsets_of_size,
)
from .stability import threshold_A


def _check_size(spec: LinePlusFreeSpec) -> int:
    t = comb(spec.a, spec.d)
    if t > MAX_VERTICES:
        raise SizeLimitError(f"Gram matrix would index C({spec.a},{spec.d}) = {t} > {MAX_VERTICES} subsets")
    return t


def gram_matrix(spec: LinePlusFreeSpec) -> RationalSymMatrix:
    """Putative Gram matrix: d-subsets of ``A`` (colex order), then the line points."""
    require_valid(spec)
    t = _check_size(spec)
    G = johnson_G(JohnsonScheme(spec.a, spec.d)) if t else None
    half = Fraction(1, 2)

    def entry(i, j):
        if i < t and j < t:
            return G[i, j]
        if i == j:
            return 1
        return half

    return RationalSymMatrix.from_function(t + spec.ell, entry)


def schur_complement(spec: LinePlusFreeSpec) -> RationalSymMatrix:
    """``G_t - ell/(2 ell + 2) J_t``, the complement of the invertible line block."""
    require_valid(spec)
    if spec.ell == 0:
        raise SpecError("no line block")
    if not _check_size(spec):
        return RationalSymMatrix([])
    G = johnson_G(JohnsonScheme(spec.a, spec.d))
    shift = Fraction(spec.ell, 2 * spec.ell + 2)
    return RationalSymMatrix([[x - shift for x in row] for row in G.rows])


def psd_closed_form(spec: LinePlusFreeSpec) -> bool:
    """``C(a+1, d)/(d+1) >= ell/(2 ell + 2) * C(a, d)``."""
    require_valid(spec)
    d, a, ell = spec.d, spec.a, spec.ell
    return Fraction(comb(a + 1, d), d + 1) >= Fraction(ell, 2 * ell + 2) * comb(a, d)


def padded_schur_psd(spec: LinePlusFreeSpec) -> bool:
    """PSD test of ``diag(C_t, (I + J)/2)``; the line block is positive definite."""
    C = schur_complement(spec)
    t, ell = C.n, spec.ell
    half = Fraction(1, 2)

    def entry(i, j):
        if i < t and j < t:
            return C[i, j]
        if i < t or j < t:
            return 0
        return 1 if i == j else half

    return ldl_psd_check(RationalSymMatrix.from_function(t + ell, entry), stop_early=True)[0]


# --- certificates --------------------------------------------------------

def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SOSCertificate:
    ground: GroundSet
    degree: int
    summands: tuple  # of (Fraction weight, dict[int mask -> Fraction])
    family: Optional[dict] = None
    pair: tuple = ("e", "f")

    def __post_init__(self):
        for w, form in self.summands:
            if w < 0:
                raise SpecError("certificate weights must be nonnegative")
            for mask in form:
                if mask.bit_count() != self.degree or mask & ~self.ground.full_mask:
                    raise SpecError("certificate form is not a multiaffine d-form on the ground set")

    def __len__(self):
        return len(self.summands)

    def expand(self) -> BoundedExponentForm:
        """``sum_i w_i q_i^2`` as an exact form."""
        total: dict[tuple[int, int], Fraction] = {}
        for w, form in self.summands:
            if not w or not form:
                continue
            den = 1
            for c in form.values():
                den = den * c.denominator // gcd(den, c.denominator)
            items = [(m, int(c * den)) for m, c in form.items()]
            acc: dict[tuple[int, int], int] = {}
            for a_idx, (s, cs) in enumerate(items):
                key = (s, 0)
                acc[key] = acc.get(key, 0) + cs * cs
                for t, ct in items[a_idx + 1:]:
                    key = (s & t, s ^ t)
                    acc[key] = acc.get(key, 0) + 2 * cs * ct
            scale = w / (den * den)
            for key, v in acc.items():
                total[key] = total.get(key, 0) + scale * v
        return BoundedExponentForm(self.ground, total)

    def to_json(self) -> dict:
        labels = self.ground.labels
        return {
            "family": self.family,
            "pair": list(self.pair),
            "ground": list(self.ground.elements),
            "basis_degree": self.degree,
            "summands": [
                {
                    "weight": _fmt(w),
                    "form": [{"subset": list(labels(m)), "coeff": _fmt(c)} for m, c in sorted(form.items())],
                }
                for w, form in self.summands
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> SOSCertificate:
        family = data["family"]
        if "ground" in data:
            ground = GroundSet(data["ground"])
        else:
            ground = certificate_ground(spec_from_dict(family))
        summands = []
        for item in data["summands"]:
            form: dict[int, Fraction] = {}
            for term in item["form"]:
                m = ground.mask(term["subset"])
                if len(term["subset"]) != m.bit_count():
                    raise SpecError("repeated element in a certificate subset")
                form[m] = form.get(m, Fraction(0)) + Fraction(term["coeff"])
            summands.append((Fraction(item["weight"]), form))
        return cls(ground, int(data["basis_degree"]), tuple(summands), family, tuple(data.get("pair", ("e", "f"))))


def certificate_ground(spec) -> GroundSet:
    if isinstance(spec, LinePlusFreeSpec):
        return rest_ground(spec)
    if isinstance(spec, UniformSpec):
        return GroundSet([str(i) for i in range(3, spec.m + 1)])
    raise SpecError("certificates exist only for the line and uniform families")


def certificate_target(spec) -> BoundedExponentForm:
    """The Rayleigh difference a certificate for ``spec`` must reproduce, by direct expansion."""
    if isinstance(spec, LinePlusFreeSpec):
        return rayleigh_difference(basis_enumerator_line(spec), "e", "f")
    if isinstance(spec, UniformSpec):
        if spec.m < 2:
            raise SpecError("need at least two elements for a Rayleigh difference")
        return rayleigh_difference(basis_enumerator_uniform(spec), "1", "2")
    raise SpecError("certificates exist only for the line and uniform families")


def build_certificate(spec: LinePlusFreeSpec) -> SOSCertificate:
    """Certificate read off an exact LDL^T of the Gram matrix.

    Column ``k`` of the factor gives one square.  A row indexed by a d-subset
    ``S`` of ``A`` contributes ``y^S``; a row indexed by a line point ``p``
    contributes ``y_p e_{d-1}(A)``, i.e. every d-subset meeting the line in
    exactly ``p``.  Subsets with two or more line points never appear.
    """
    require_valid(spec)
    if spec.ell and not psd_closed_form(spec):
        th = threshold_A(spec.r, spec.ell)
        raise NoCertificateError(
            f"no SOS certificate exists: a={spec.a} exceeds A({spec.r},{spec.ell})={th} "
            f"(floor {th.floor()})"
        )
    H = rest_ground(spec)
    d = spec.d
    A_mask, L_mask = H.block("A"), H.block("L")
    a_subsets = subsets_of_size(A_mask, d)
    tails = subsets_of_size(A_mask, d - 1)
    rows = a_subsets + [1 << i for i in iter_bits(L_mask)]
    t = len(a_subsets)

    ok, fac = ldl_psd_check(gram_matrix(spec))
    if not ok:
        raise NoCertificateError("Gram matrix is not positive semidefinite")
    n = len(rows)
    summands = []
    for k in range(n):
        form: dict[int, Fraction] = {}
        for pos in range(k, n):
            c = fac.L[pos][k]
            if not c:
                continue
            j = fac.perm[pos]
            if j < t:
                form[rows[j]] = form.get(rows[j], 0) + c
            else:
                for tail in tails:
                    m = rows[j] | tail
                    form[m] = form.get(m, 0) + c
        summands.append((fac.D[k], {m: c for m, c in form.items() if c}))
    return SOSCertificate(H, d, tuple(summands), spec_to_dict(spec))


def uniform_sos(d: int, H: GroundSet) -> SOSCertificate:
    """Certificate for ``e_d^2 - e_{d-1} e_{d+1}`` on ``H``: squares of ``y^J e_{d-j}(H - J)``."""
    if d < 0 or len(H) < d:
        raise SpecError(f"need 0 <= d <= |H|, got d={d}, |H|={len(H)}")
    full = H.full_mask
    summands = []
    for j in range(d + 1):
        w = Fraction(1, (d + 1) * comb(d, j))
        for J in subsets_of_size(full, j):
            form = {J | R: Fraction(1) for R in subsets_of_size(full & ~J, d - j)}
            if form:
                summands.append((w, form))
    return SOSCertificate(H, d, tuple(summands))


def uniform_certificate(spec: UniformSpec) -> SOSCertificate:
    """Certificate for the Rayleigh difference of elements ``1, 2`` of a uniform matroid."""
    require_valid(spec)
    if spec.r < 1 or spec.m < 2:
        raise SpecError("need r >= 1 and m >= 2")
    H = certificate_ground(spec)
    d = spec.r - 1
    # with d > |H| the pair is a pair of coloops and the difference vanishes
    summands = uniform_sos(d, H).summands if d <= len(H) else ()
    return SOSCertificate(H, d, summands, spec_to_dict(spec), ("1", "2"))


def uniform_target(d: int, H: GroundSet) -> BoundedExponentForm:
    ed = elementary_symmetric(H, d)
    out = ed * ed
    if d >= 1:
        out = out - elementary_symmetric(H, d - 1) * elementary_symmetric(H, d + 1)
    return out


def verify_certificate(cert: SOSCertificate, target: BoundedExponentForm) -> bool:
    if cert.ground != target.ground:
        raise SpecError("certificate and target live on different ground sets")
    return cert.expand() == target


def verify_closed_form(spec: LinePlusFreeSpec, cert: SOSCertificate) -> bool:
    return verify_certificate(cert, rayleigh_closed_form(spec))



def psd_routes(spec: LinePlusFreeSpec) -> tuple[bool, bool, bool]:
    """PSD verdicts from the closed-form inequality, LDL of the Gram matrix, and LDL of the padded Schur complement."""
    return psd_closed_form(spec), ldl_psd_check(gram_matrix(spec), stop_early=True)[0], padded_schur_psd(spec)
