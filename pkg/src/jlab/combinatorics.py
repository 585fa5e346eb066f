"""Exact binomials, k-subsets of [n] and their colexicographic ranks.

Ground-set elements are 1-based: a k-set of [n] is a strictly increasing
tuple of integers in ``1..n``.  The colex rank of ``e_1 < ... < e_k`` is
``sum(C(e_i - 1, i))`` with 1-based positions ``i``, so rank 0 is
``{1, ..., k}`` and the ranks of k-sets of [n] form a prefix of the ranks
for [n + 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from jlab.errors import ValidationError


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero when k < 0 or k > n."""
    if n < 0:
        raise ValidationError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


@dataclass(frozen=True, order=False)
class KSet:
    """A k-element subset of [n], stored sorted."""

    elements: tuple[int, ...]
    n: int

    def __post_init__(self):
        els = tuple(sorted(int(e) for e in self.elements))
        object.__setattr__(self, "elements", els)
        if len(set(els)) != len(els):
            raise ValidationError(f"repeated element in {els}")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise ValidationError(f"{els} not within [1, {self.n}]")

    @property
    def k(self) -> int:
        return len(self.elements)

    @cached_property
    def mask(self) -> int:
        return mask_of(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _as_tuple(s) -> tuple[int, ...]:
    if isinstance(s, KSet):
        return s.elements
    return tuple(sorted(s))


def rank_colex(s) -> int:
    """Colex rank of a k-set (``KSet`` or any iterable of distinct ints)."""
    els = _as_tuple(s)
    return sum(math.comb(e - 1, i) for i, e in enumerate(els, start=1))


def unrank_colex(r: int, n: int, k: int) -> KSet:
    """Inverse of :func:`rank_colex` for k-sets of [n]."""
    total = binomial(n, k)
    if not 0 <= r < total:
        raise ValidationError(f"rank {r} out of range [0, {total})")
    out = []
    hi = n
    for i in range(k, 0, -1):
        # largest e <= hi with C(e - 1, i) <= r, by bisection
        lo = i
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid - 1, i) <= r:
                lo = mid
            else:
                hi = mid - 1
        out.append(lo)
        r -= math.comb(lo - 1, i)
        hi = lo - 1
    return KSet(tuple(reversed(out)), n)


def intersection_size(a: KSet, b: KSet) -> int:
    if a.n != b.n:
        raise ValidationError(f"ground sets differ: n={a.n} vs n={b.n}")
    return (a.mask & b.mask).bit_count()


def ksets_colex(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of [n] as sorted tuples, in colex order."""
    return sorted(combinations(range(1, n + 1), k), key=lambda s: s[::-1])


def incidence_matrix(n: int, k: int) -> np.ndarray:
    """0/1 matrix of shape (C(n, k), n); row r is the k-set of colex rank r."""
    sets = ksets_colex(n, k)
    X = np.zeros((len(sets), n), dtype=np.int8)
    if k:
        idx = np.array(sets, dtype=np.int64) - 1
        X[np.arange(len(sets))[:, None], idx] = 1
    return X


def subset_ranks(n: int, k: int, i: int) -> np.ndarray:
    """For every k-set (colex order), the colex ranks of its i-subsets.

    Shape (C(n, k), C(k, i)).  Used to histogram how many members of a
    family contain each i-set.
    """
    sets = np.array(ksets_colex(n, k), dtype=np.int64).reshape(-1, k)
    if i == 0:
        return np.zeros((len(sets), 1), dtype=np.int64)
    cols = []
    for pos in combinations(range(k), i):
        sub = sets[:, pos]
        r = np.zeros(len(sets), dtype=np.int64)
        for j in range(i):
            r += _comb_vec(sub[:, j] - 1, j + 1)
        cols.append(r)
    return np.stack(cols, axis=1)


def _comb_vec(a: np.ndarray, b: int) -> np.ndarray:
    out = np.ones_like(a)
    for t in range(b):
        out = out * (a - t) // (t + 1)
    return np.where(a >= b, out, 0)


def _sorted_set(s, n: int) -> tuple[int, ...]:
    return KSet(_as_tuple(s), n).elements


@dataclass(frozen=True)
class SetFamily:
    """A uniform family of k-subsets of [n] without repeats.

    Members are kept in colex order, so two families with the same members
    compare equal.
    """

    n: int
    k: int
    sets: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValidationError("n and k must be non-negative")
        sets = []
        for s in self.sets:
            t = _sorted_set(s, self.n)
            if len(t) != self.k:
                raise ValidationError(f"non-uniform family: {t} has size {len(t)} != {self.k}")
            sets.append(t)
        if len(set(sets)) != len(sets):
            raise ValidationError("family contains a repeated set")
        sets.sort(key=lambda s: s[::-1])
        object.__setattr__(self, "sets", tuple(sets))

    @classmethod
    def from_sets(cls, n: int, sets: Sequence, k: int | None = None) -> "SetFamily":
        sets = [_as_tuple(s) for s in sets]
        if k is None:
            if not sets:
                raise ValidationError("cannot infer k from an empty family")
            k = len(sets[0])
        return cls(n, k, tuple(sets))

    @classmethod
    def from_ranks(cls, n: int, k: int, ranks: Iterable[int]) -> "SetFamily":
        return cls(n, k, tuple(unrank_colex(int(r), n, k).elements for r in ranks))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, s) -> bool:
        return _as_tuple(s) in set(self.sets)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(s) for s in self.sets)

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        return tuple(rank_colex(s) for s in self.sets)

    def ksets(self) -> list[KSet]:
        return [KSet(s, self.n) for s in self.sets]

    def relabel(self, perm: Sequence[int]) -> "SetFamily":
        """Apply ``x -> perm[x - 1]`` to every element."""
        return SetFamily(self.n, self.k, tuple(tuple(perm[x - 1] for x in s) for s in self.sets))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k} {len(self.sets)}"]
        lines += [" ".join(map(str, s)) for s in self.sets]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SetFamily":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise ValidationError("empty family file")
        try:
            n, k, count = (int(x) for x in lines[0].split(" "))
        except ValueError as exc:
            raise ValidationError(f"bad header line {lines[0]!r}") from exc
        body = lines[1:]
        if len(body) != count:
            raise ValidationError(f"header promises {count} sets, file has {len(body)}")
        sets = []
        for line in body:
            try:
                s = tuple(int(x) for x in line.split(" ")) if line else ()
            except ValueError as exc:
                raise ValidationError(f"bad set line {line!r}") from exc
            if list(s) != sorted(set(s)):
                raise ValidationError(f"set line not strictly increasing: {line!r}")
            sets.append(s)
        return cls(n, k, tuple(sets))

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_text())

    @classmethod
    def read(cls, path) -> "SetFamily":
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
        if "\r" in text:
            raise ValidationError("family files use LF line endings")
        return cls.from_text(text)
