"""Supersaturation in J(n, 3, {1}).

For U a set of 3-subsets of [n] with u = |U| and N = C(n, 3), splitting the
characteristic vector of U over the four eigenspaces of the adjacency matrix
gives, exactly and for every n >= 7,

    2 e(U) >= lambda_0 u^2 / N + lambda_2 (u - u^2 / N),

since the all-ones component carries u^2 / N of the squared norm and
lambda_2 is the smallest eigenvalue.  Nothing here is asymptotic; the n^3
coefficient 9c^2/2 - c is available separately.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from jlab.combinatorics import binomial, ksets_colex
from jlab.errors import ValidationError
from jlab.graph import JohnsonSpec, VertexSubset, intersection_profile
from jlab.spectra import spectrum_j_n3_1

CSV_COLUMNS = ["trial", "size", "edges", "bound_num", "bound_den", "holds"]


def _check_n(n: int) -> None:
    if n < 7:
        raise ValidationError(f"need n >= 7 (lambda_2 minimal), got n={n}")


def rayleigh_rhs(n: int, u_size: int) -> Fraction:
    """lambda_0 u^2/N + lambda_2 (u - u^2/N): the unclamped lower bound on 2 e(U)."""
    _check_n(n)
    N = binomial(n, 3)
    if not 0 <= u_size <= N:
        raise ValidationError(f"subset size {u_size} outside [0, {N}]")
    lams = spectrum_j_n3_1(n)
    lam0, lam2 = lams[0][0], lams[2][0]
    a0_sq = Fraction(u_size * u_size, N)
    return lam0 * a0_sq + lam2 * (u_size - a0_sq)


def spectral_edge_lower_bound(n: int, u_size: int) -> Fraction:
    """Exact lower bound on the edges induced by any u_size vertices."""
    return max(Fraction(0), rayleigh_rhs(n, u_size) / 2)


class Coefficient(NamedTuple):
    value: Fraction
    vacuous: bool


def asymptotic_coefficient(c) -> Coefficient:
    """9c^2/2 - c, clamped at 0 (``vacuous`` when c <= 2/9)."""
    c = Fraction(c)
    if c <= 0:
        raise ValidationError(f"need c > 0, got {c}")
    raw = Fraction(9, 2) * c * c - c
    return Coefficient(max(raw, Fraction(0)), raw <= 0)


def size_for(n: int, c) -> int:
    """floor(c n^2) in exact arithmetic."""
    c = Fraction(c)
    return (c * n * n).__floor__()


@lru_cache(maxsize=64)
def _triples(n: int) -> np.ndarray:
    return np.array(ksets_colex(n, 3), dtype=np.int64)


def unit_pairs(n: int, ranks) -> int:
    """Number of pairs of the given 3-sets meeting in exactly one point."""
    members = _triples(n)[np.asarray(ranks, dtype=np.int64)]
    return intersection_profile(members, 3)[1]


@dataclass(frozen=True)
class SupersatInstance:
    n: int
    ranks: tuple[int, ...]
    c: Fraction | None = None

    def __post_init__(self):
        _check_n(self.n)
        N = binomial(self.n, 3)
        ranks = tuple(sorted(int(r) for r in self.ranks))
        if len(set(ranks)) != len(ranks) or any(not 0 <= r < N for r in ranks):
            raise ValidationError("ranks must be distinct and within [0, C(n,3))")
        object.__setattr__(self, "ranks", ranks)
        if self.c is not None:
            c = Fraction(self.c)
            object.__setattr__(self, "c", c)
            if len(ranks) != size_for(self.n, c):
                raise ValidationError(f"|U| = {len(ranks)} but floor(c n^2) = {size_for(self.n, c)}")

    @classmethod
    def from_subset(cls, u: VertexSubset, c=None) -> "SupersatInstance":
        if u.spec.k != 3 or u.spec.L != (1,):
            raise ValidationError(f"supersaturation instances live in J(n,3,{{1}}), got {u.spec}")
        return cls(u.spec.n, tuple(u.ranks), c)

    @property
    def spec(self) -> JohnsonSpec:
        return JohnsonSpec(self.n, 3, (1,))


def check_subset(inst: SupersatInstance) -> dict:
    """Exact e(U) against the spectral bound; ``holds`` must always be True."""
    e = unit_pairs(inst.n, inst.ranks)
    bound = spectral_edge_lower_bound(inst.n, len(inst.ranks))
    return {"e_U": e, "bound": bound, "slack": e - bound, "holds": e >= bound}


def _greedy_dense(n: int, u: int, rng: np.random.Generator) -> np.ndarray:
    # start from a random vertex; then add the vertex with most neighbours in U,
    # ties to the smallest colex rank (np.argmax picks the first maximum)
    X = np.zeros((binomial(n, 3), n), dtype=np.int16)
    T = _triples(n)
    X[np.arange(len(T))[:, None], T - 1] = 1
    gain = np.zeros(len(T), dtype=np.int64)
    taken = np.zeros(len(T), dtype=bool)
    chosen = []
    if u == 0:
        return np.array([], dtype=np.int64)
    v = int(rng.integers(len(T)))
    while True:
        chosen.append(v)
        taken[v] = True
        if len(chosen) == u:
            break
        gain += (X @ X[v] == 1)
        masked = np.where(taken, -1, gain)
        v = int(np.argmax(masked))
    return np.array(chosen, dtype=np.int64)


def sample_subset(n: int, u: int, rng: np.random.Generator, sampler: str = "uniform") -> np.ndarray:
    N = binomial(n, 3)
    if not 0 <= u <= N:
        raise ValidationError(f"subset size {u} outside [0, {N}]")
    if sampler == "uniform":
        return rng.permutation(N)[:u]
    if sampler == "greedy-dense":
        return _greedy_dense(n, u, rng)
    raise ValidationError(f"unknown sampler {sampler!r}")


@dataclass
class ExperimentResult:
    n: int
    c: Fraction
    size: int
    sampler: str
    rows: list[dict]

    def summary(self) -> dict:
        ratios = [r["ratio"] for r in self.rows if r["ratio"] is not None]
        return {
            "n": self.n,
            "c": self.c,
            "size": self.size,
            "sampler": self.sampler,
            "trials": len(self.rows),
            "all_hold": all(r["holds"] for r in self.rows),
            "min_ratio": min(ratios) if ratios else None,
            "mean_ratio": sum(ratios, Fraction(0)) / len(ratios) if ratios else None,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r["trial"], r["size"], r["edges"], r["bound"].numerator,
                        r["bound"].denominator, "true" if r["holds"] else "false"])
        return buf.getvalue()


def sample_experiment(n: int, c, trials: int, seed: int, sampler: str = "uniform") -> ExperimentResult:
    """Random subsets of size floor(c n^2), each checked against the bound.

    Trial i draws from ``numpy.random.default_rng([seed, i])``, so rows do
    not depend on how trials are scheduled.
    """
    _check_n(n)
    c = Fraction(c)
    u = size_for(n, c)
    if not 0 <= u <= binomial(n, 3):
        raise ValidationError(f"floor(c n^2) = {u} is not a valid subset size for n={n}")
    if trials < 0:
        raise ValidationError("trials must be non-negative")
    bound = spectral_edge_lower_bound(n, u)
    rows = []
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        ranks = sample_subset(n, u, rng, sampler)
        e = unit_pairs(n, ranks)
        rows.append({
            "trial": i,
            "size": u,
            "edges": e,
            "bound": bound,
            "holds": e >= bound,
            "ratio": Fraction(e) / bound if bound else None,
        })
    return ExperimentResult(n, c, u, sampler, rows)
