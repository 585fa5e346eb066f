from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from jlab.combinatorics import SetFamily
from jlab.errors import ValidationError
from jlab.families import (
    FranklParams, affine_plane_3, ak_optimal_r, asymptotic_only, def_bound, def_bound_report,
    def_chain_holds, def_threshold, frankl_family, frankl_size, projective_plane, star,
    steiner_divisibility, steiner_verify, valid_frankl_r,
)


def min_pair_intersection(f):
    return min((len(set(a) & set(b)) for a, b in combinations(f.sets, 2)), default=None)


def test_frankl_params_validation():
    for bad in [(8, 4, 0, 1), (4, 4, 2, 0), (8, 4, 2, 3), (5, 4, 2, 2)]:
        with pytest.raises(ValidationError):
            FranklParams(*bad)


def test_frankl_examples():
    assert frankl_size((8, 4, 2, 1)) == 17
    assert frankl_size((8, 4, 2, 0)) == 15
    f = frankl_family((6, 3, 2, 1))
    assert len(f) == 4 and all(len(set(s) & {1, 2, 3, 4}) == 3 for s in f)
    assert frankl_family((8, 4, 2, 0)) == star(8, 4, [1, 2])


def test_frankl_exhaustive():
    # every valid parameter set with n <= 12: size formula, brute-force
    # membership count, and the t-intersecting property by pair loop
    for n in range(3, 13):
        for k in range(2, n):
            for t in range(1, k):
                for r in valid_frankl_r(n, k, t):
                    p = FranklParams(n, k, t, r)
                    f = frankl_family(p)
                    m = t + 2 * r
                    direct = sum(1 for s in combinations(range(1, n + 1), k) if sum(x <= m for x in s) >= t + r)
                    assert len(f) == frankl_size(p) == direct
                    if len(f) > 1 and n <= 10:
                        assert min_pair_intersection(f) >= t


def test_ak_examples():
    assert ak_optimal_r(8, 4, 2) == {1}
    assert ak_optimal_r(9, 4, 2) == {0, 1}
    for k in range(2, 8):
        for n in range(2 * k + 1, 30):
            assert ak_optimal_r(n, k, 1) == {0}
        # at n = 2k every interval for t = 1 is [2k, 2k]; each Frankl family
        # then holds one set of every complementary pair
        assert ak_optimal_r(2 * k, k, 1) == set(valid_frankl_r(2 * k, k, 1))
        assert {frankl_size((2 * k, k, 1, r)) for r in valid_frankl_r(2 * k, k, 1)} == {comb(2 * k - 1, k - 1)}


def test_ak_matches_frankl_argmax():
    for k in range(2, 11):
        for t in range(1, k):
            for n in range(k + 1, 41):
                sizes = {r: frankl_size((n, k, t, r)) for r in valid_frankl_r(n, k, t)}
                best = max(sizes.values())
                assert ak_optimal_r(n, k, t) == {r for r, v in sizes.items() if v == best}, (n, k, t)


def test_def_examples():
    assert def_bound(9, 3, [0, 1]) == 12
    assert def_bound(7, 3, [1]) == 3
    for k in range(2, 9):
        for t in range(1, k):
            assert def_bound(20, k, range(t)) == Fraction(comb(20, t), comb(k, t))
    with pytest.raises(ValidationError):
        def_bound(9, 3, [])
    assert def_chain_holds(6, [0, 2, 4])
    assert not def_chain_holds(6, [0, 2, 3])
    assert def_chain_holds(5, [0, 1, 2])
    assert def_threshold(10, 3, 1) == 9
    assert def_threshold(10, 3, 2) == 180
    assert def_threshold(100, 4, 3) == 640000
    rep = def_bound_report(7, 3, [1])
    assert rep["asymptotic_only"] and rep["bound"] == 3
    assert not asymptotic_only(24, 3)


def test_def_product_identity():
    for k in range(1, 9):
        for n in range(k + 1, 41):
            for r in range(1, k):
                for L in combinations(range(k), r):
                    comp = [s for s in range(k) if s not in L]
                    assert def_bound(n, k, L) * def_bound(n, k, comp) == comb(n, k)


def test_steiner_examples():
    fano = projective_plane(2)
    assert len(fano) == 7 and steiner_verify(fano, 2)
    assert min_pair_intersection(fano) == 1
    ag = affine_plane_3()
    assert len(ag) == 12 and steiner_verify(ag, 2)
    assert not steiner_verify(star(7, 3, [1, 2]), 2)
    with pytest.raises(ValidationError):
        steiner_verify(fano, 4)
    assert steiner_verify(SetFamily.from_sets(5, list(combinations(range(1, 6), 2))), 2)


def test_steiner_identity_symbolic():
    for k in range(0, 9):
        for t in range(0, k + 1):
            for n in range(k, 41):
                assert Fraction(comb(n, t), comb(k, t)) * comb(n - t, k - t) == comb(n, k)


def test_divisibility():
    assert steiner_divisibility(7, 3, 2)
    assert not steiner_divisibility(8, 3, 2)
    assert steiner_divisibility(9, 3, 2)
    # Steiner triple systems exist exactly when n = 1, 3 mod 6
    for n in range(3, 60):
        assert steiner_divisibility(n, 3, 2) == (n % 6 in (1, 3))


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_projective_planes(q):
    f = projective_plane(q)
    N = q * q + q + 1
    assert (f.n, f.k, len(f)) == (N, q + 1, N)
    assert {len(set(a) & set(b)) for a, b in combinations(f.sets, 2)} == {1}


def test_projective_plane_rejects_non_prime():
    with pytest.raises(ValidationError):
        projective_plane(4)


def test_star():
    s = star(8, 4, [3, 5])
    assert len(s) == comb(6, 2)
    assert all(3 in x and 5 in x for x in s)
    with pytest.raises(ValidationError):
        star(5, 2, [1, 2, 3])
    with pytest.raises(ValidationError):
        star(5, 2, [6])
