"""One test per acceptance criterion, each reporting a PASS or FAIL line.

The lines are also collected and repeated in pytest's terminal summary.
"""

import time
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from jlab.combinatorics import ksets_colex, rank_colex, unrank_colex
from jlab.families import (
    affine_plane_3,
    ak_optimal_r,
    def_bound,
    frankl_size,
    projective_plane,
    steiner_verify,
)
from jlab.graph import JohnsonSpec, adjacency_matrix, degree, intersection_profile, is_clique, is_coclique
from jlab.lp import ratio_lp_bound, verify_lp_certificate, verify_ratio_certificate
from jlab.search import (
    CliqueBounder,
    SearchOptions,
    classify_max_cocliques,
    max_clique,
    max_coclique,
    proper_subsets,
    scan_equality,
)
from jlab.spectra import class_size, eigen_table, matches_dense, spectrum_j_n3_1
from jlab.supersat import asymptotic_coefficient, rayleigh_rhs, spectral_edge_lower_bound, size_for, unit_pairs


def report(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_fano_equality():
    t0 = time.perf_counter()
    spec = JohnsonSpec(7, 3, (1,))
    om, al = max_clique(spec), max_coclique(spec)
    dt = time.perf_counter() - t0
    fano_is_clique = is_clique(projective_plane(2), spec)
    ok = (om.optimum, al.optimum) == (7, 5) and om.optimum * al.optimum == comb(7, 3)
    ok = ok and fano_is_clique and is_coclique(al.witnesses[0], spec) and dt < 1
    report(1, ok, f"omega={om.optimum} alpha={al.optimum} product={om.optimum * al.optimum} ({dt:.2f}s)")


def test_criterion_02_steiner_equality():
    t0 = time.perf_counter()
    spec = JohnsonSpec(9, 3, (0, 1))
    om, al = max_clique(spec), max_coclique(spec)
    dt = time.perf_counter() - t0
    sts = affine_plane_3()
    ok = (om.optimum, al.optimum) == (12, 7) and om.optimum * al.optimum == comb(9, 3) == 84
    ok = ok and steiner_verify(sts, 2) and is_clique(sts, spec) and dt < 30
    # |D| = C(n,t)/C(k,t) for a putative S(t,k,n); the product with the t-star
    # size C(n-t,k-t) is C(n,k) whatever the existence question
    identity = all(
        Fraction(comb(n, t), comb(k, t)) * comb(n - t, k - t) == comb(n, k)
        for k in range(1, 9) for t in range(1, k + 1) for n in range(k, 41)
    )
    report(2, ok and identity, f"omega={om.optimum} alpha={al.optimum} identity={identity} ({dt:.2f}s)")


def test_criterion_03_def_product():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for k in range(1, 9):
        for n in range(k + 1, 41):
            for L in proper_subsets(k):
                comp = tuple(s for s in range(k) if s not in L)
                count += 1
                if def_bound(n, k, L) * def_bound(n, k, comp) != comb(n, k):
                    bad.append((n, k, L))
    dt = time.perf_counter() - t0
    report(3, not bad and dt < 5, f"{count} (n,k,L) checked, {len(bad)} mismatches ({dt:.2f}s)")


def test_criterion_04_spectrum():
    t0 = time.perf_counter()
    bad = []
    for n in range(7, 21):
        spec = spectrum_j_n3_1(n)
        closed = [
            (Fraction(3 * (n - 3) * (n - 4), 2), 1),
            (Fraction((n - 4) * (n - 9), 2), n - 1),
            (Fraction(11 - 2 * n), comb(n, 2) - n),
            (Fraction(3), comb(n, 3) - comb(n, 2)),
        ]
        A = adjacency_matrix(JohnsonSpec(n, 3, (1,)))
        if spec != closed or not matches_dense(spec, A, tol=1e-6):
            bad.append(n)
    dt = time.perf_counter() - t0
    report(4, not bad, f"n=7..20 dense and closed form, mismatches at {bad} ({dt:.1f}s)")


def test_criterion_05_linz_bound():
    rows = []
    ok = True
    for k, ns in ((3, (6, 7)), (4, range(9, 14))):
        for n in ns:
            t0 = time.perf_counter()
            cert = ratio_lp_bound(JohnsonSpec(n, k, (1,)))
            dt = time.perf_counter() - t0
            good = (cert.bound <= comb(n - 2, k - 2) and dt < 1
                    and verify_ratio_certificate(cert) and verify_lp_certificate(cert.lp, cert.result))
            ok &= good
            rows.append(f"({n},{k}):{cert.bound}<={comb(n - 2, k - 2)}")
    report(5, ok, " ".join(rows))


def test_criterion_06_boundary_classification():
    t0 = time.perf_counter()
    cls = classify_max_cocliques(6, 3)
    dt = time.perf_counter() - t0
    c = cls.counts()
    ok = not cls.truncated and c["Other"] == 0 and c["TwoStar"] > 0 and c["FranklR1"] > 0 and dt < 10
    report(6, ok, f"alpha={cls.alpha} counts={c} ({dt:.2f}s)")


def test_criterion_07_ak_crosscheck():
    t0 = time.perf_counter()
    spec = JohnsonSpec(8, 4, (2, 3))
    res = max_clique(spec)
    dt = time.perf_counter() - t0
    f1, f0 = frankl_size((8, 4, 2, 1)), frankl_size((8, 4, 2, 0))
    ok = res.optimum == f1 == 17 and f0 == 15 and ak_optimal_r(8, 4, 2) == {1} and dt < 60
    report(7, ok, f"omega={res.optimum} |F1|={f1} |F0|={f0} r*={sorted(ak_optimal_r(8, 4, 2))} ({dt:.2f}s)")


def test_criterion_08_supersaturation():
    t0 = time.perf_counter()
    violations = trials = 0
    for n in range(7, 26):
        N = comb(n, 3)
        rng = np.random.default_rng([2024, n])
        for _ in range(1000):
            u = int(rng.integers(0, N + 1))
            ranks = rng.choice(N, size=u, replace=False)
            trials += 1
            if 2 * unit_pairs(n, ranks) < rayleigh_rhs(n, u):
                violations += 1
    dt = time.perf_counter() - t0
    c = Fraction(1, 2)
    K = 10 / (1 + c * c)
    coef = asymptotic_coefficient(c).value
    worst = max(abs(spectral_edge_lower_bound(n, size_for(n, c)) / n**3 - coef) * n for n in range(50, 201))
    ok = violations == 0 and dt < 120 and worst <= K
    report(8, ok, f"{trials} subsets, {violations} violations ({dt:.1f}s); "
                  f"c=1/2 max n*|bound/n^3 - 5/8| = {float(worst):.3f} <= K={float(K)}")


def test_criterion_09_equality_scan():
    t0 = time.perf_counter()
    rep = scan_equality(3, range(6, 13))
    dt = time.perf_counter() - t0
    rows = rep.rows
    refused = [r for r in rows if r.status != "ok"]
    unflagged = [r for r in rows if r.equality and not r.prefix_form and r.flag != "small-n exception"]
    fano = any(r.n == 7 and r.L == (1,) and r.flag == "small-n exception" for r in rows)
    over = [r for r in rows if r.product is not None and r.product > r.binom]
    ok = not refused and not unflagged and fano and not over and dt < 600
    n_eq = sum(1 for r in rows if r.equality)
    report(9, ok, f"{len(rows)} rows, {n_eq} equalities, exceptions="
                  f"{[(r.n, r.L) for r in rows if r.flag == 'small-n exception']} ({dt:.1f}s)")


# -- criterion 10 ----------------------------------------------------------------

SWEEP_LIMIT = 3000
SWEEP_BUDGET = 20_000  # nodes per exact search inside the bounder


def _sweep_instances():
    # every (n, k) with C(n, k) <= 3000 and every L over the intersection sizes
    # that occur; sizes below 2k - n label empty classes and change nothing
    for n in range(2, SWEEP_LIMIT + 1):
        low = []
        k = 1
        while 2 * k <= n and comb(n, k) <= SWEEP_LIMIT:
            low.append(k)
            k += 1
        for k in sorted(set(low) | {n - k for k in low}):
            sizes = range(max(0, 2 * k - n), k)
            for r in range(len(sizes) + 1):
                for L in combinations(sizes, r):
                    yield JohnsonSpec(n, k, L)


def soundness_sweep():
    bounder = CliqueBounder(SearchOptions(node_budget=SWEEP_BUDGET))
    tally = {"exact": 0, "bounded": 0, "undecided": 0}
    undecided, violations, bad_certs = [], [], []
    for spec in _sweep_instances():
        cert = ratio_lp_bound(spec)
        if not (verify_lp_certificate(cert.lp, cert.result) and verify_ratio_certificate(cert)):
            bad_certs.append(spec)
        ub = bounder.coclique(spec)
        if ub.method in ("exact", "trivial"):
            tally["exact"] += 1
            if ub.value > cert.floor_bound:
                violations.append((spec, cert.floor_bound, ub.value))
        elif ub.value <= cert.floor_bound:
            tally["bounded"] += 1
        else:
            tally["undecided"] += 1
            undecided.append((spec, cert.floor_bound, ub.value))
    return tally, undecided, violations, bad_certs


def _property_suites() -> dict[str, bool]:
    out = {}
    out["pascal"] = all(comb(n, k) == comb(n - 1, k - 1) + comb(n - 1, k)
                        for n in range(1, 200) for k in range(1, n))
    ok = True
    for n, k in [(12, 5), (20, 3), (30, 2), (9, 9 - 1)]:
        sets = ksets_colex(n, k)
        ok &= all(rank_colex(s) == r and unrank_colex(r, n, k).elements == s for r, s in enumerate(sets))
    out["colex"] = ok
    ok = True
    for n in range(2, 16):
        for k in range(1, n):
            if comb(n, k) > 3000:
                continue
            N = intersection_profile(np.array(ksets_colex(n, k)), k)
            V = comb(n, k)
            ok &= sum(N) == V * (V - 1) // 2
            ok &= all(2 * N[s] == V * degree(JohnsonSpec(n, k, (s,))) for s in range(k))
    out["handshake"] = ok
    ok = True
    for n in range(4, 9):
        for k in range(2, n - 1):
            for L in proper_subsets(k):
                spec = JohnsonSpec(n, k, L)
                ok &= max_coclique(spec).optimum == max_clique(spec.complement()).optimum
    out["complement"] = ok
    ok = True
    for n in range(2, 17):
        for k in range(1, n):
            table = eigen_table(n, k)
            sizes = [class_size(n, k, s) for s in range(k + 1)]
            for j, (rj, mj) in enumerate(zip(table.P, table.m)):
                for jj in range(j, table.num_eigenspaces):
                    total = sum(Fraction(rj[s] * table.P[jj][s], sizes[s]) for s in range(k + 1) if sizes[s])
                    ok &= total == (Fraction(comb(n, k), mj) if j == jj else 0)
    out["orthogonality"] = ok
    return out


def test_criterion_10_property_suites_and_soundness():
    t0 = time.perf_counter()
    props = _property_suites()
    tally, undecided, violations, bad_certs = soundness_sweep()
    dt = time.perf_counter() - t0
    props["lp_duality_gap_zero"] = not bad_certs
    props["no_violation"] = not violations
    detail = (f"{' '.join(f'{k}={v}' for k, v in props.items())}; sweep C(n,k)<={SWEEP_LIMIT}: "
              f"{tally['exact']} exact, {tally['bounded']} bounded, {tally['undecided']} undecided ({dt:.0f}s)")
    if not all(props.values()):
        report(10, False, detail + f" violations={violations[:5]} bad_certs={bad_certs[:5]}")
    if undecided:
        line = f"criterion 10: FAIL  {detail}"
        print(line)
        print("undecided (spec, floor LP, best proven alpha bound):")
        for row in undecided:
            print("  ", *row)
        ACCEPTANCE_LINES.append(line)
        pytest.xfail(f"{len(undecided)} instances have alpha neither computed nor bounded by floor(LP)")
    report(10, True, detail)
