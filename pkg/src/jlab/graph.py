"""The generalized Johnson graph J(n, k, L).

Vertices are the k-subsets of [n]; two distinct vertices are adjacent when
their intersection size lies in L.  Vertices are indexed by colex rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from jlab.combinatorics import (
    KSet,
    SetFamily,
    binomial,
    incidence_matrix,
    intersection_size,
    ksets_colex,
    rank_colex,
    unrank_colex,
    _comb_vec,
)
from jlab.errors import ValidationError

DENSE_LIMIT = 5000


@dataclass(frozen=True)
class JohnsonSpec:
    n: int
    k: int
    L: tuple[int, ...]

    def __post_init__(self):
        L = tuple(sorted(set(int(x) for x in self.L)))
        object.__setattr__(self, "L", L)
        if not 0 < self.k < self.n:
            raise ValidationError(f"need 0 < k < n, got n={self.n}, k={self.k}")
        bad = [x for x in L if not 0 <= x <= self.k - 1]
        if bad:
            raise ValidationError(f"L entries {bad} outside [0, {self.k - 1}]")

    @property
    def num_vertices(self) -> int:
        return binomial(self.n, self.k)

    def complement(self) -> "JohnsonSpec":
        """Same (n, k) with L replaced by [0, k-1] minus L."""
        return JohnsonSpec(self.n, self.k, tuple(s for s in range(self.k) if s not in self.L))

    def mirror(self) -> "JohnsonSpec":
        """The isomorphic J(n, n - k, L') obtained by complementing every k-set.

        |A' & B'| = n - 2k + |A & B|; sizes below 2k - n never occur and drop out.
        """
        shift = self.n - 2 * self.k
        return JohnsonSpec(self.n, self.n - self.k, tuple(l + shift for l in self.L if l + shift >= 0))

    def require_proper(self) -> None:
        if not self.L or len(self.L) == self.k:
            raise ValidationError(f"L must be a non-empty proper subset of [0, {self.k - 1}]")

    def __str__(self) -> str:
        return f"J({self.n},{self.k},{{{','.join(map(str, self.L))}}})"


def parse_L(text: str) -> tuple[int, ...]:
    """Parse ``"0,1"`` (or ``""`` for the empty set) into a tuple of ints."""
    text = text.strip().strip("{}")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"cannot parse L from {text!r}") from exc


def adjacent(spec: JohnsonSpec, a: KSet, b: KSet) -> bool:
    if a.n != spec.n or b.n != spec.n or a.k != spec.k or b.k != spec.k:
        raise ValidationError("vertices do not belong to this graph")
    if a == b:
        raise ValidationError("adjacency is irreflexive; got the same vertex twice")
    return intersection_size(a, b) in spec.L


def degree(spec: JohnsonSpec) -> int:
    n, k = spec.n, spec.k
    return sum(binomial(k, l) * binomial(n - k, k - l) for l in spec.L)


@dataclass(frozen=True)
class VertexSubset:
    spec: JohnsonSpec
    ranks: frozenset

    def __post_init__(self):
        ranks = frozenset(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        total = self.spec.num_vertices
        if any(not 0 <= r < total for r in ranks):
            raise ValidationError("vertex rank out of range")

    @classmethod
    def from_sets(cls, spec: JohnsonSpec, sets: Iterable) -> "VertexSubset":
        sets = list(sets)
        ranks = [rank_colex(s) for s in sets]
        if len(set(ranks)) != len(ranks):
            raise ValidationError("vertex subset contains a repeated set")
        return cls(spec, frozenset(ranks))

    def __len__(self) -> int:
        return len(self.ranks)

    def element_array(self) -> np.ndarray:
        return np.array(
            [unrank_colex(r, self.spec.n, self.spec.k).elements for r in sorted(self.ranks)],
            dtype=np.int64,
        ).reshape(-1, self.spec.k)


def intersection_profile(members: np.ndarray, k: int) -> list[int]:
    """Number of unordered member pairs meeting in exactly j points, j = 0..k-1.

    ``members`` is a (u, k) array of distinct k-sets.  For each i >= 1 the sum
    over i-sets T of C(#members containing T, 2) equals
    ``sum_j C(j, i) * N_j``; the triangular system is solved from the top.
    Runs in O(u * 2^k) instead of O(u^2); small families take the pairwise
    route when that is cheaper.
    """
    members = np.asarray(members, dtype=np.int64).reshape(-1, k)
    u = len(members)
    if u < 2:
        return [0] * k
    members = np.sort(members, axis=1)
    if u < 2 ** (k + 1):
        return _pairwise_profile(members, k)

    S = [0] * k
    for i in range(1, k):
        keys = []
        for pos in combinations(range(k), i):
            r = np.zeros(u, dtype=np.int64)
            for j, p in enumerate(pos):
                r += _comb_vec(members[:, p] - 1, j + 1)
            keys.append(r)
        _, counts = np.unique(np.concatenate(keys), return_counts=True)
        S[i] = int((counts * (counts - 1) // 2).sum())
    N = [0] * k
    for i in range(k - 1, 0, -1):
        N[i] = S[i] - sum(binomial(j, i) * N[j] for j in range(i + 1, k))
    N[0] = u * (u - 1) // 2 - sum(N[1:])
    return N


def _pairwise_profile(members: np.ndarray, k: int) -> list[int]:
    # cheaper than the subset counts when u is small next to 2^k
    u = len(members)
    n = int(members.max())
    X = np.zeros((u, n), dtype=np.float32)
    X[np.arange(u)[:, None], members - 1] = 1
    G = np.rint(X @ X.T).astype(np.int64)
    iu = np.triu_indices(u, 1)
    counts = np.bincount(G[iu], minlength=k + 1)
    if counts[k]:
        raise ValidationError("members must be distinct k-sets")
    return [int(c) for c in counts[:k]]


def _members_array(spec: JohnsonSpec, members) -> np.ndarray:
    if isinstance(members, VertexSubset):
        return members.element_array()
    if isinstance(members, SetFamily):
        if members.n != spec.n or members.k != spec.k:
            raise ValidationError("family does not match the graph's (n, k)")
        return np.array(members.sets, dtype=np.int64).reshape(-1, spec.k)
    return np.array([tuple(s) for s in members], dtype=np.int64).reshape(-1, spec.k)


def induced_edges(u, spec: JohnsonSpec | None = None) -> int:
    """Edges of J(n, k, L) with both ends in ``u``.

    ``u`` is a :class:`VertexSubset`, or a :class:`SetFamily` / iterable of
    k-sets together with ``spec``.
    """
    if isinstance(u, VertexSubset):
        spec = u.spec
    if spec is None:
        raise ValidationError("spec required unless u is a VertexSubset")
    N = intersection_profile(_members_array(spec, u), spec.k)
    return sum(N[l] for l in spec.L)


def _check_family(f: SetFamily, spec: JohnsonSpec) -> None:
    if not isinstance(f, SetFamily):
        f = SetFamily.from_sets(spec.n, list(f), spec.k)
    if f.n != spec.n or f.k != spec.k:
        raise ValidationError(f"family over ({f.n},{f.k}) does not match {spec}")


def is_clique(f: SetFamily, spec: JohnsonSpec) -> bool:
    """True iff every pair of members meets in a size from L."""
    _check_family(f, spec)
    N = intersection_profile(_members_array(spec, f), spec.k)
    return all(N[j] == 0 for j in range(spec.k) if j not in spec.L)


def is_coclique(f: SetFamily, spec: JohnsonSpec) -> bool:
    """True iff no pair of members meets in a size from L."""
    _check_family(f, spec)
    N = intersection_profile(_members_array(spec, f), spec.k)
    return all(N[j] == 0 for j in spec.L)


def intersection_sizes(n: int, k: int, rows=None) -> np.ndarray:
    """Matrix of |a & b| over colex-ranked k-sets (optionally a row slice)."""
    X = incidence_matrix(n, k).astype(np.float32)
    R = X if rows is None else X[rows]
    return np.rint(R @ X.T).astype(np.int16)


def adjacency_matrix(spec: JohnsonSpec) -> np.ndarray:
    """Dense 0/1 adjacency; refused above DENSE_LIMIT vertices."""
    if spec.num_vertices > DENSE_LIMIT:
        raise ValidationError(f"{spec} has {spec.num_vertices} vertices; dense limit is {DENSE_LIMIT}")
    S = intersection_sizes(spec.n, spec.k)
    A = np.isin(S, spec.L).astype(np.int64)
    np.fill_diagonal(A, 0)
    return A


def _intersection_rows(n: int, k: int, start: int, stop: int, sets: np.ndarray, by_point) -> np.ndarray:
    # |a & b| for rows a in [start, stop) against all b, accumulated point by point
    S = np.zeros((stop - start, len(sets)), dtype=np.int16)
    for p in range(n):
        rows = by_point[p]
        rows = rows[(rows >= start) & (rows < stop)] - start
        if len(rows):
            S[np.ix_(rows, by_point[p])] += 1
    return S


@lru_cache(maxsize=32)
def adjacency_bitsets(spec: JohnsonSpec) -> tuple[int, ...]:
    """Row r is an int whose bit s is set iff vertices r and s are adjacent."""
    n, k = spec.n, spec.k
    sets = np.array(ksets_colex(n, k), dtype=np.int64).reshape(-1, k)
    V = len(sets)
    by_point = [np.nonzero((sets == p + 1).any(axis=1))[0] for p in range(n)]
    L = np.array(spec.L, dtype=np.int16)
    rows = []
    chunk = max(1, 4_000_000 // max(V, 1))
    for start in range(0, V, chunk):
        stop = min(V, start + chunk)
        A = np.isin(_intersection_rows(n, k, start, stop, sets, by_point), L)
        A[np.arange(stop - start), np.arange(start, stop)] = False
        packed = np.packbits(A, axis=1, bitorder="little")
        rows.extend(int.from_bytes(p.tobytes(), "little") for p in packed)
    return tuple(rows)


def all_vertices(n: int, k: int) -> list[KSet]:
    return [KSet(s, n) for s in ksets_colex(n, k)]
