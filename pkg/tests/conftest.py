"""Independent reference helpers.

Monomials here are sorted tuples of labels with repetition (``("a1", "a1", "p1")``
means ``y_a1^2 y_p1``), so nothing below touches the bitmask encoding used by
the library.
"""
import sys
from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import prod

import pytest


def esym_terms(labels, k):
    return {tuple(sorted(c)): Fraction(1) for c in combinations(labels, k)}


def naive_mul(P, Q):
    out = Counter()
    for s, a in P.items():
        for t, b in Q.items():
            out[tuple(sorted(s + t))] += a * b
    return {k: v for k, v in out.items() if v}


def naive_add(*polys, signs=None):
    out = Counter()
    for i, P in enumerate(polys):
        sgn = 1 if signs is None else signs[i]
        for k, v in P.items():
            out[k] += sgn * v
    return {k: v for k, v in out.items() if v}


def as_multisets(F):
    """Library form or multiaffine poly -> label-multiset dictionary."""
    g = F.ground
    out = {}
    for key, c in F.terms.items():
        if isinstance(key, tuple):
            twos, ones = key
        else:
            twos, ones = 0, key
        labels = []
        for i, h in enumerate(g.elements):
            if twos >> i & 1:
                labels += [h, h]
            elif ones >> i & 1:
                labels.append(h)
        out[tuple(sorted(labels))] = c
    return out


def naive_eval(P, point):
    return sum((c * prod((Fraction(point[h]) for h in mono), start=Fraction(1)) for mono, c in P.items()), Fraction(0))


def brute_rayleigh(bases_terms, e, f):
    """Rayleigh difference from a label-multiset multiaffine polynomial."""
    def part(with_e, with_f):
        out = {}
        for mono, c in bases_terms.items():
            if (e in mono) == with_e and (f in mono) == with_f:
                out[tuple(h for h in mono if h not in (e, f))] = c
        return out
    return naive_add(naive_mul(part(True, False), part(False, True)), naive_mul(part(True, True), part(False, False)), signs=[1, -1])


@pytest.fixture
def rng():
    import random
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
