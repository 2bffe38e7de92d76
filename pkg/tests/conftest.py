"""Shared independent oracles for the test suite.

These deliberately avoid the package's own elimination and enumeration
code paths so they can serve as cross-checks.
"""

from fractions import Fraction
from itertools import combinations

import pytest

ACCEPTANCE_RESULTS = []


def fraction_rank(rows):
    """Rank over Q by plain Gaussian elimination with Fractions."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def brute_faces(n, facets):
    """All faces by testing every vertex subset against the facets."""
    sets = [set(f) for f in facets]
    out = {}
    for k in range(0, n + 1):
        for s in combinations(range(1, n + 1), k):
            if any(set(s) <= f for f in sets):
                out.setdefault(k - 1, []).append(s)
    return out


def brute_f_vector(n, facets):
    faces = brute_faces(n, facets)
    return tuple(len(faces[k]) for k in sorted(faces))


def record_acceptance(number, passed, detail):
    ACCEPTANCE_RESULTS.append((number, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def fraction_rank_oracle():
    return fraction_rank
