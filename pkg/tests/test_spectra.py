from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jlab.errors import ValidationError
from jlab.graph import adjacency_matrix, intersection_sizes, JohnsonSpec
from jlab.spectra import (
    SchemeMatrix, class_size, dense_spectrum, eberlein, eigen_table, matches_dense,
    scheme_eigenvalues, spectrum_j_n3_1,
)


def test_eberlein_examples():
    assert eberlein(7, 3, 1, 0) == 3 * 4
    assert eberlein(10, 4, 0, 3) == 1
    with pytest.raises(ValidationError):
        eberlein(5, 3, 1, 0)


def test_multiplicities_example():
    assert eigen_table(7, 3).m == (1, 6, 14, 14)


def joint_eigenspaces(n, k):
    """Dense oracle: split R^V into the common eigenspaces of all A_s.

    A generic combination of the class matrices has one eigenvalue per
    common eigenspace; Rayleigh quotients of each A_s on that eigenspace
    give the eigenvalue table row.
    """
    S = intersection_sizes(n, k)
    mats = [(S == s).astype(float) for s in range(k + 1)]
    rng = np.random.default_rng(7)
    w = rng.uniform(1, 2, size=k + 1)
    M = sum(wi * A for wi, A in zip(w, mats))
    vals, vecs = np.linalg.eigh(M)
    rows = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > 1e-6:
            block = vecs[:, start:i]
            row = [round(float(np.trace(block.T @ A @ block)) / block.shape[1], 6) for A in mats]
            rows.append((row, i - start))
            start = i
    return rows


@pytest.mark.parametrize("n,k", [(8, 3), (7, 3), (9, 4), (10, 3), (6, 4), (11, 2), (10, 5)])
def test_table_matches_joint_eigenspaces(n, k):
    table = eigen_table(n, k)
    got = sorted(joint_eigenspaces(n, k))
    want = sorted(([float(x) for x in row], m) for row, m in zip(table.P, table.m) if m)
    assert len(got) == len(want)
    for (g, gm), (w, wm) in zip(got, want):
        assert gm == wm
        assert np.allclose(g, w, atol=1e-8)


def all_small(limit):
    for n in range(2, 80):
        for k in range(1, n):
            if comb(n, k) <= limit:
                yield n, k


@pytest.mark.slow
def test_dense_oracle_all_small():
    # every (n, k) with C(n, k) <= 2000, random integer scheme matrix
    rng = np.random.default_rng(2024)
    for n, k in all_small(2000):
        if k == 1 and n > 60:
            continue  # k = 1 is K_n and its complement; the n <= 60 cases cover it
        x = tuple(int(v) for v in rng.integers(-5, 6, size=k + 1))
        M = SchemeMatrix(n, k, x)
        assert matches_dense(scheme_eigenvalues(M), M.dense()), (n, k, x)


def test_row_zero_is_valencies():
    for n, k in all_small(10**6):
        if n > 40:
            continue
        table = eigen_table(n, k)
        assert list(table.P[0]) == [class_size(n, k, s) for s in range(k + 1)]


def test_orthogonality_exact():
    # sum_s P[j][s] P[j'][s] / v_s = delta_{jj'} C(n, k) / m_j, over non-empty classes
    for n in range(2, 31):
        for k in range(1, n):
            table = eigen_table(n, k)
            V = comb(n, k)
            sizes = [class_size(n, k, s) for s in range(k + 1)]
            for j, (rj, mj) in enumerate(zip(table.P, table.m)):
                for jj in range(j, table.num_eigenspaces):
                    rjj = table.P[jj]
                    total = sum(Fraction(rj[s] * rjj[s], sizes[s]) for s in range(k + 1) if sizes[s])
                    assert total == (Fraction(V, mj) if j == jj else 0), (n, k, j, jj)


def test_multiplicities_sum():
    for n, k in all_small(10**6):
        if n <= 40:
            assert sum(eigen_table(n, k).m) == comb(n, k)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_linearity(data):
    n = data.draw(st.integers(2, 30))
    k = data.draw(st.integers(1, n - 1))
    xs = data.draw(st.lists(st.fractions(max_denominator=7), min_size=k + 1, max_size=k + 1))
    ys = data.draw(st.lists(st.fractions(max_denominator=7), min_size=k + 1, max_size=k + 1))
    a = scheme_eigenvalues(SchemeMatrix(n, k, xs))
    b = scheme_eigenvalues(SchemeMatrix(n, k, ys))
    c = scheme_eigenvalues(SchemeMatrix(n, k, [x + y for x, y in zip(xs, ys)]))
    assert [ta + tb for (ta, _), (tb, _) in zip(a, b)] == [t for t, _ in c]


def test_identity_and_all_ones():
    n, k = 9, 4
    ident = scheme_eigenvalues(SchemeMatrix.from_dict(n, k, {k: 1}))
    assert all(t == 1 for t, _ in ident)
    J = scheme_eigenvalues(SchemeMatrix(n, k, [1] * (k + 1)))
    assert J[0] == (comb(n, k), 1)
    assert all(t == 0 for t, _ in J[1:])


def test_spectrum_j_n3_1_guard():
    with pytest.raises(ValidationError):
        spectrum_j_n3_1(6)


def test_spectrum_closed_forms_match_table():
    for n in range(7, 41):
        assert spectrum_j_n3_1(n) == scheme_eigenvalues(SchemeMatrix.adjacency(n, 3, [1]))
        lams = [t for t, _ in spectrum_j_n3_1(n)]
        assert lams[2] == 11 - 2 * n and lams[2] == min(lams)


def test_dense_spectrum_clusters():
    # at n = 7 the eigenvalues on eigenspaces 1 and 2 coincide (both -3)
    A = adjacency_matrix(JohnsonSpec(7, 3, (1,)))
    assert [(round(v), m) for v, m in dense_spectrum(A)] == [(-3, 20), (3, 14), (18, 1)]
    assert matches_dense(spectrum_j_n3_1(7), A)
