"""Eigenvalues of the Johnson association scheme J(n, k).

Matrices in the Bose-Mesner algebra are written as ``M = sum_s x_s A_s``
where ``A_s`` joins k-sets meeting in exactly ``s`` points (``A_k = I``).
Every such M acts on eigenspace ``j`` (``0 <= j <= min(k, n - k)``) by the
scalar ``sum_s x_s P[j][s]``, and ``P`` comes from Eberlein polynomials.
The public API is keyed by intersection size ``s``; Eberlein's class index
is ``i = k - s`` and appears only inside :func:`eberlein`.

Everything here is exact; :func:`dense_spectrum` is a floating-point oracle
used by tests and the ``--check-dense`` switch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from jlab.combinatorics import binomial
from jlab.errors import InvariantViolation, ValidationError
from jlab.graph import DENSE_LIMIT, intersection_sizes


def eberlein(n: int, k: int, i: int, j: int) -> Fraction:
    """E_i(j) = sum_h (-1)^h C(j, h) C(k - j, i - h) C(n - k - j, i - h).

    Eigenvalue of the distance-``i`` class (intersection size ``k - i``) on
    eigenspace ``j``.  Requires ``k <= n - k``.
    """
    if not (0 <= i <= k and 0 <= j <= k):
        raise ValidationError(f"indices i={i}, j={j} outside [0, {k}]")
    if 2 * k > n:
        raise ValidationError(f"eberlein needs k <= n - k, got n={n}, k={k}")
    total = 0
    for h in range(i + 1):
        total += (-1) ** h * binomial(j, h) * binomial(k - j, i - h) * binomial(n - k - j, i - h)
    return Fraction(total)


def class_size(n: int, k: int, s: int) -> int:
    """Number of k-sets meeting a fixed k-set in exactly s points."""
    return binomial(k, s) * binomial(n - k, k - s)


@dataclass(frozen=True)
class EigenTable:
    """``P[j][s]``: eigenvalue of ``A_s`` on eigenspace ``j``; ``m[j]`` its multiplicity."""

    n: int
    k: int
    P: tuple[tuple[Fraction, ...], ...]
    m: tuple[int, ...]

    @property
    def num_eigenspaces(self) -> int:
        return len(self.P)


@lru_cache(maxsize=256)
def eigen_table(n: int, k: int) -> EigenTable:
    if not 0 < k < n:
        raise ValidationError(f"need 0 < k < n, got n={n}, k={k}")
    if 2 * k <= n:
        P = tuple(
            tuple(eberlein(n, k, k - s, j) for s in range(k + 1))
            for j in range(k + 1)
        )
        d = k
    else:
        # complementation maps class s of J(n, k) to class s + n - 2k of J(n, n - k)
        mirror = eigen_table(n, n - k)
        shift = n - 2 * k
        d = n - k
        P = tuple(
            tuple(
                mirror.P[j][s + shift] if 0 <= s + shift <= n - k else Fraction(0)
                for s in range(k + 1)
            )
            for j in range(d + 1)
        )
    m = tuple(binomial(n, j) - (binomial(n, j - 1) if j else 0) for j in range(d + 1))
    if sum(m) != binomial(n, k):
        raise InvariantViolation("multiplicities do not sum to C(n, k)")
    return EigenTable(n, k, P, m)


@dataclass(frozen=True)
class SchemeMatrix:
    """``sum_s coeffs[s] * A_s`` for s = 0..k."""

    n: int
    k: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(x) for x in self.coeffs)
        if len(coeffs) != self.k + 1:
            raise ValidationError(f"need k + 1 = {self.k + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_dict(cls, n: int, k: int, coeffs: dict) -> "SchemeMatrix":
        return cls(n, k, tuple(coeffs.get(s, 0) for s in range(k + 1)))

    @classmethod
    def adjacency(cls, n: int, k: int, L: Sequence[int]) -> "SchemeMatrix":
        return cls.from_dict(n, k, {s: 1 for s in L})

    def dense(self) -> np.ndarray:
        total = binomial(self.n, self.k)
        if total > DENSE_LIMIT:
            raise ValidationError(f"{total} vertices exceeds the dense limit {DENSE_LIMIT}")
        S = intersection_sizes(self.n, self.k)
        vals = np.array([float(x) for x in self.coeffs])
        return vals[S]


def scheme_eigenvalues(m: SchemeMatrix) -> list[tuple[Fraction, int]]:
    """(theta_j, multiplicity_j) for every eigenspace j, in eigenspace order."""
    table = eigen_table(m.n, m.k)
    return [
        (sum((x * p for x, p in zip(m.coeffs, row) if p and x), Fraction(0)), mult)
        for row, mult in zip(table.P, table.m)
    ]


def spectrum_j_n3_1(n: int) -> list[tuple[Fraction, int]]:
    """Closed-form spectrum of J(n, 3, {1}), eigenspaces j = 0..3."""
    if n < 7:
        raise ValidationError(f"closed-form spectrum needs n >= 7, got {n}")
    lams = [
        Fraction(3 * (n - 3) * (n - 4), 2),
        Fraction((n - 4) * (n - 9), 2),
        Fraction(-2 * n + 11),
        Fraction(3),
    ]
    if min(lams[1:]) != lams[2]:
        raise InvariantViolation(f"lambda_2 is not the smallest eigenvalue at n={n}")
    mults = [1, n - 1, binomial(n, 2) - n, binomial(n, 3) - binomial(n, 2)]
    return list(zip(lams, mults))


def dense_spectrum(A: np.ndarray, gap: float = 1e-3) -> list[tuple[float, int]]:
    """Eigenvalues of a symmetric matrix clustered into (value, multiplicity)."""
    vals = np.sort(np.linalg.eigvalsh(np.asarray(A, dtype=float)))
    clusters: list[list[float]] = []
    for v in vals:
        if clusters and v - clusters[-1][-1] < gap:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return [(float(np.mean(c)), len(c)) for c in clusters]


def matches_dense(exact: list[tuple[Fraction, int]], A: np.ndarray, tol: float = 1e-6) -> bool:
    """Whether exact (value, multiplicity) pairs agree with the dense oracle."""
    merged: dict[Fraction, int] = {}
    for v, mult in exact:
        if mult:
            merged[v] = merged.get(v, 0) + mult
    want = sorted(merged.items())
    got = dense_spectrum(A)
    if len(want) != len(got):
        return False
    return all(
        abs(float(v) - g) <= tol and mult == gm for (v, mult), (g, gm) in zip(want, got)
    )
