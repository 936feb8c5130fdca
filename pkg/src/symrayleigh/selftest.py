"""Grid-driven self-checks exposed by ``symrayleigh selftest``."""
from __future__ import annotations

from math import comb

from .johnson import JohnsonScheme, johnson_G, ones_eigenvalue
from .linalg import ldl_psd_check
from .models import LinePlusFreeSpec, TwoFlatSpec, rayleigh_closed_form
from .oracle import (
    check_binomial_identities,
    check_delta_cases,
    check_uniform_monomial_expansion,
    gram_by_orbits,
)
from .polycore import GroundSet
from .soscert import (
    build_certificate,
    gram_matrix,
    psd_closed_form,
    psd_routes,
    uniform_sos,
    uniform_target,
    verify_certificate,
)
from .stability import characteristic_poly, is_real_rooted, quadratic_criterion

GRIDS = {
    "quick": dict(r_max=4, ell_max=2, a_max=5, a_psd=7, d_max=2, h_max=5, v_max=6,
                  binom=15, flat_r=4, flat_ab=8, cert_t=40),
    "full": dict(r_max=5, ell_max=3, a_max=7, a_psd=9, d_max=3, h_max=7, v_max=8,
                 binom=30, flat_r=6, flat_ab=20, cert_t=500),
}


def _line_specs(r_max, ell_max, a_max, ell_min=0):
    for r in range(3, r_max + 1):
        for ell in range(ell_min, ell_max + 1):
            for a in range(r - 2, a_max + 1):
                yield LinePlusFreeSpec(r, ell, a)


def _suite_delta(g):
    bad = [s for s in _line_specs(g["r_max"], g["ell_max"], g["a_max"]) if not check_delta_cases(s)]
    return not bad, f"case table failures: {bad}" if bad else "coefficient cases match"


def _suite_uniform(g):
    bad = []
    for d in range(g["d_max"] + 1):
        for h in range(max(d, 1), g["h_max"] + 1):
            H = GroundSet([f"h{i}" for i in range(1, h + 1)])
            if not check_uniform_monomial_expansion(d, h) or not verify_certificate(uniform_sos(d, H), uniform_target(d, H)):
                bad.append((d, h))
    return not bad, f"failures at (d, |H|): {bad}" if bad else "uniform identities hold"


def _suite_binomial(g):
    ok = check_binomial_identities(g["binom"])
    return ok, f"bound {g['binom']}"


def _suite_johnson(g):
    bad = []
    for v in range(2, g["v_max"] + 1):
        for d in range(1, v):
            G = johnson_G(JohnsonScheme(v, d))
            if not ldl_psd_check(G)[0] or set(G.row_sums()) != {ones_eigenvalue(v, d)}:
                bad.append((v, d))
    return not bad, f"failures at (v, d): {bad}" if bad else "G is PSD with the predicted row sums"


def _suite_psd_routes(g):
    bad = []
    for s in _line_specs(g["r_max"], g["ell_max"], g["a_psd"], ell_min=1):
        routes = psd_routes(s)
        if len(set(routes)) != 1 or gram_by_orbits(s) != gram_matrix(s):
            bad.append((s.r, s.ell, s.a))
    return not bad, f"disagreements: {bad}" if bad else "closed form, Gram LDL and Schur LDL agree"


def _suite_certificates(g):
    bad, n = [], 0
    for s in _line_specs(g["r_max"], g["ell_max"], g["a_psd"], ell_min=1):
        if comb(s.a, s.d) > g["cert_t"] or not psd_closed_form(s):
            continue
        n += 1
        if not verify_certificate(build_certificate(s), rayleigh_closed_form(s)):
            bad.append((s.r, s.ell, s.a))
    return not bad, f"failures: {bad}" if bad else f"{n} certificates verified"


def _suite_two_flats(g):
    bad, n = [], 0
    for r in range(2, g["flat_r"] + 1):
        for s in range(2, r + 1):
            t = r + 2 - s
            if t > r:
                continue
            for a in range(s, g["flat_ab"] + 1):
                for b in range(t, g["flat_ab"] + 1):
                    spec = TwoFlatSpec(r, s, t, a, b)
                    n += 1
                    if is_real_rooted(characteristic_poly(spec)) != quadratic_criterion(spec):
                        bad.append((r, s, t, a, b))
    return not bad, f"disagreements: {bad}" if bad else f"{n} instances agree"


SUITES = (
    ("delta-cases", _suite_delta),
    ("uniform-sos", _suite_uniform),
    ("binomial-identities", _suite_binomial),
    ("johnson-G", _suite_johnson),
    ("psd-routes", _suite_psd_routes),
    ("certificates", _suite_certificates),
    ("two-flats-quadratic", _suite_two_flats),
)


def run_selftest(level: str = "quick") -> list[dict]:
    grid = GRIDS[level]
    report = []
    for name, suite in SUITES:
        ok, detail = suite(grid)
        report.append({"suite": name, "passed": ok, "detail": detail})
    return report
