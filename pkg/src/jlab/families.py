"""Extremal families and closed-form bounds.

Frankl families, stars, projective planes over prime fields, the affine
plane AG(2, 3), Steiner system checks, the Deza-Erdos-Frankl product bound
and divisibility chain, and the Ahlswede-Khachatrian optimal ranges.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from jlab.combinatorics import SetFamily, binomial, ksets_colex, mask_of
from jlab.errors import InvariantViolation, ValidationError

__all__ = [
    "SetFamily",
    "FranklParams",
    "frankl_family",
    "frankl_size",
    "ak_optimal_r",
    "def_bound",
    "def_bound_report",
    "def_chain_holds",
    "def_threshold",
    "asymptotic_only",
    "steiner_verify",
    "steiner_divisibility",
    "projective_plane",
    "affine_plane_3",
    "star",
    "is_prime",
]


class FranklParams:
    """Parameters of F_{n,k,t,r} = {S : |S & [t + 2r]| >= t + r}."""

    __slots__ = ("n", "k", "t", "r")

    def __init__(self, n: int, k: int, t: int, r: int):
        if not n > k > t >= 1:
            raise ValidationError(f"need n > k > t >= 1, got n={n}, k={k}, t={t}")
        if r < 0 or t + 2 * r > n or t + r > k:
            raise ValidationError(f"r={r} invalid: need r >= 0, t + 2r <= n, t + r <= k")
        self.n, self.k, self.t, self.r = n, k, t, r

    def __iter__(self):
        return iter((self.n, self.k, self.t, self.r))

    def __repr__(self):
        return f"FranklParams(n={self.n}, k={self.k}, t={self.t}, r={self.r})"


def _params(p) -> FranklParams:
    return p if isinstance(p, FranklParams) else FranklParams(*p)


def frankl_family(p) -> SetFamily:
    p = _params(p)
    core = mask_of(range(1, p.t + 2 * p.r + 1))
    need = p.t + p.r
    sets = [s for s in ksets_colex(p.n, p.k) if (mask_of(s) & core).bit_count() >= need]
    return SetFamily(p.n, p.k, tuple(sets))


def frankl_size(p) -> int:
    p = _params(p)
    m = p.t + 2 * p.r
    return sum(binomial(m, j) * binomial(p.n - m, p.k - j) for j in range(p.t + p.r, m + 1))


def valid_frankl_r(n: int, k: int, t: int) -> list[int]:
    return [r for r in range(k - t + 1) if t + 2 * r <= n]


def ak_optimal_r(n: int, k: int, t: int) -> set[int]:
    """All r whose Ahlswede-Khachatrian interval contains n.

    The interval for r is
    ``(k - t + 1)(2 + (t - 1)/(r + 1)) <= n <= (k - t + 1)(2 + (t - 1)/r)``,
    with the right end infinite at r = 0.  Both ends are inclusive, so a
    boundary n belongs to two consecutive values of r.

    For n <= 2k - t every pair of k-sets is t-intersecting and no interval
    applies; there the r maximizing |F_{n,k,t,r}| are returned instead.
    """
    if not n > k > t >= 1:
        raise ValidationError(f"need n > k > t >= 1, got n={n}, k={k}, t={t}")
    if n <= 2 * k - t:
        sizes = {r: frankl_size((n, k, t, r)) for r in valid_frankl_r(n, k, t)}
        best = max(sizes.values())
        return {r for r, v in sizes.items() if v == best}
    base = k - t + 1
    out = set()
    for r in valid_frankl_r(n, k, t):
        lo = base * (2 + Fraction(t - 1, r + 1))
        if n < lo:
            continue
        if r > 0 and n > base * (2 + Fraction(t - 1, r)):
            continue
        out.add(r)
    return out


def _check_L(k: int, L: Iterable[int]) -> tuple[int, ...]:
    L = tuple(sorted(set(L)))
    if not L:
        raise ValidationError("L must be non-empty")
    if L[0] < 0 or L[-1] > k - 1:
        raise ValidationError(f"L must lie in [0, {k - 1}]")
    return L


def def_bound(n: int, k: int, L: Iterable[int]) -> Fraction:
    """prod_{l in L} (n - l)/(k - l), exact.

    An upper bound on (n, k, L)-systems only for n beyond an unspecified
    n0(k); see :func:`asymptotic_only`.
    """
    L = _check_L(k, L)
    if n < k:
        raise ValidationError(f"need n >= k, got n={n}, k={k}")
    out = Fraction(1)
    for l in L:
        out *= Fraction(n - l, k - l)
    return out


def asymptotic_only(n: int, k: int) -> bool:
    """Whether n is below the conventional 2^k * k proxy for n0(k)."""
    return n < (2 ** k) * k


def def_chain_holds(k: int, L: Iterable[int]) -> bool:
    """(l2 - l1) | (l3 - l2) | ... | (lr - l_{r-1}) | (k - lr)."""
    L = _check_L(k, L)
    diffs = [b - a for a, b in zip(L, L[1:])] + [k - L[-1]]
    return all(b % a == 0 for a, b in zip(diffs, diffs[1:]))


def def_threshold(n: int, k: int, r: int) -> int:
    """k^2 2^(r-1) n^(r-1), the size above which the chain condition is forced."""
    if r < 1:
        raise ValidationError(f"need r >= 1, got {r}")
    return k * k * 2 ** (r - 1) * n ** (r - 1)


def def_bound_report(n: int, k: int, L: Iterable[int]) -> dict:
    L = _check_L(k, L)
    return {
        "n": n,
        "k": k,
        "L": list(L),
        "bound": def_bound(n, k, L),
        "chain_holds": def_chain_holds(k, L),
        "threshold": def_threshold(n, k, len(L)),
        "asymptotic_only": asymptotic_only(n, k),
    }


def steiner_verify(f: SetFamily, t: int) -> bool:
    """Whether every t-subset of [n] lies in exactly one member of ``f``."""
    n, k = f.n, f.k
    if t > k:
        raise ValidationError(f"t={t} exceeds block size k={k}")
    if t < 0:
        raise ValidationError("t must be non-negative")
    seen: dict[tuple[int, ...], int] = {}
    for s in f.sets:
        for sub in combinations(s, t):
            seen[sub] = seen.get(sub, 0) + 1
    if len(seen) != binomial(n, t) or any(c != 1 for c in seen.values()):
        return False
    size = Fraction(binomial(n, t), binomial(k, t))
    if len(f) != size or len(f) * binomial(n - t, k - t) != binomial(n, k):
        raise InvariantViolation("Steiner system violates the block-count identity")
    return True


def steiner_divisibility(n: int, k: int, t: int) -> bool:
    """C(k - i, t - i) | C(n - i, t - i) for i = 0..t-1."""
    if not 0 <= t <= k <= n:
        raise ValidationError(f"need t <= k <= n, got t={t}, k={k}, n={n}")
    return all(binomial(n - i, t - i) % binomial(k - i, t - i) == 0 for i in range(t))


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _normalized(v: Sequence[int], q: int) -> tuple[int, ...]:
    for x in v:
        if x % q:
            inv = pow(x, -1, q)
            return tuple((y * inv) % q for y in v)
    raise ValueError("zero vector")


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    pts = set()
    for v in ((a, b, c) for a in range(q) for b in range(q) for c in range(q)):
        if any(v):
            pts.add(_normalized(v, q))
    return sorted(pts)


def projective_plane(q: int) -> SetFamily:
    """Lines of PG(2, q) for prime q, over points labelled 1..q^2 + q + 1.

    Points and lines are both the normalized nonzero vectors of GF(q)^3; a
    point lies on a line when their dot product vanishes mod q.
    """
    if not is_prime(q):
        raise ValidationError(f"q={q} is not prime; only prime orders are supported")
    pts = _projective_points(q)
    label = {p: i + 1 for i, p in enumerate(pts)}
    lines = []
    for l in pts:
        lines.append(tuple(label[p] for p in pts if sum(a * b for a, b in zip(p, l)) % q == 0))
    fam = SetFamily(len(pts), q + 1, tuple(lines))
    if not steiner_verify(fam, 2):
        raise InvariantViolation(f"PG(2,{q}) construction is not an S(2,{q + 1},{len(pts)})")
    return fam


def affine_plane_3() -> SetFamily:
    """The 12 lines of AG(2, 3), an S(2, 3, 9); point (i, j) is 3i + j + 1."""
    lines = []
    for slope in range(3):
        for b in range(3):
            lines.append(tuple(3 * x + (slope * x + b) % 3 + 1 for x in range(3)))
    for x in range(3):
        lines.append(tuple(3 * x + y + 1 for y in range(3)))
    fam = SetFamily(9, 3, tuple(lines))
    if not steiner_verify(fam, 2):
        raise InvariantViolation("AG(2,3) construction is not an S(2,3,9)")
    return fam


def star(n: int, k: int, t_set: Iterable[int]) -> SetFamily:
    """All k-subsets of [n] containing ``t_set``."""
    core = sorted(set(t_set))
    if any(not 1 <= x <= n for x in core):
        raise ValidationError(f"{core} not within [1, {n}]")
    if len(core) > k:
        raise ValidationError(f"|t_set|={len(core)} exceeds k={k}")
    rest = [x for x in range(1, n + 1) if x not in core]
    sets = [tuple(sorted(core + list(c))) for c in combinations(rest, k - len(core))]
    return SetFamily(n, k, tuple(sets))
