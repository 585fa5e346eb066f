"""Brute-force oracles shared by the test modules.

These deliberately avoid the library's fast paths: pairs are compared one
by one with Python sets, and subsets are enumerated with itertools.
"""

from itertools import combinations

import pytest


def brute_edges(sets, L):
    return sum(1 for a, b in combinations(sets, 2) if len(set(a) & set(b)) in L)


def brute_profile(sets, k):
    N = [0] * k
    for a, b in combinations(sets, 2):
        N[len(set(a) & set(b))] += 1
    return N


def brute_max_cliques(n, k, L):
    """All maximum cliques of J(n, k, L): plain Bron-Kerbosch without pivoting."""
    verts = list(combinations(range(1, n + 1), k))
    nbr = {v: {w for w in verts if w != v and len(set(v) & set(w)) in L} for v in verts}
    found = []

    def grow(R, P, X):
        if not P and not X:
            found.append(tuple(sorted(R)))
            return
        for v in sorted(P):
            grow(R + [v], P & nbr[v], X & nbr[v])
            P = P - {v}
            X = X | {v}

    grow([], set(verts), set())
    best = max(len(c) for c in found)
    return sorted(c for c in found if len(c) == best)


@pytest.fixture
def oracle():
    class O:
        edges = staticmethod(brute_edges)
        profile = staticmethod(brute_profile)
        max_cliques = staticmethod(brute_max_cliques)
    return O


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
