"""Exact maximum clique / coclique search on J(n, k, L).

Branch and bound over bitset adjacency (Python ints) with a greedy
sequential colouring bound, in the style of Tomita's MCQ and San Segundo's
BBMC.  Since J(n, k, L) is vertex-transitive, some maximum clique contains
{1, ..., k}; the optimum search therefore starts from that vertex and only
explores its neighbourhood.  Enumerating *all* maximum cliques is a separate
pass without that reduction, using the known optimum as the cut.

Budget refusal is always an exception, never an approximate answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from itertools import combinations

from jlab.combinatorics import SetFamily, binomial, ksets_colex, mask_of
from jlab.errors import BudgetExceeded, InvariantViolation, ValidationError
from jlab.graph import JohnsonSpec, adjacency_bitsets, is_clique, is_coclique

DEFAULT_VERTEX_BUDGET = 10_000
DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_MAX_WITNESSES = 1_000_000
ORBIT_NODE_BUDGET = 1_000_000  # orbits have at most 2n members


@dataclass(frozen=True)
class SearchOptions:
    all_witnesses: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET
    vertex_budget: int = DEFAULT_VERTEX_BUDGET
    max_witnesses: int = DEFAULT_MAX_WITNESSES
    symmetry: bool = True
    symmetry_depth: int = 3


@dataclass
class SearchResult:
    spec: JohnsonSpec
    mode: str
    optimum: int
    witnesses: list[SetFamily]
    nodes_explored: int
    wall_time: float
    truncated: bool = False

    def to_dict(self, include_witnesses: bool = True) -> dict:
        key = "omega" if self.mode == "clique" else "alpha"
        out = {
            "n": self.spec.n,
            "k": self.spec.k,
            "L": list(self.spec.L),
            "mode": self.mode,
            key: self.optimum,
            "nodes_explored": self.nodes_explored,
            "num_witnesses": len(self.witnesses),
            "truncated": self.truncated,
        }
        if include_witnesses:
            out["witnesses"] = [[list(s) for s in w.sets] for w in self.witnesses]
        return out


class _Done(Exception):
    pass


class _CliqueSearch:
    def __init__(self, adj: list[int], node_budget: int):
        self.adj = adj
        self.node_budget = node_budget
        self.nodes = 0
        self.best: list[int] = []
        self.floor = 0  # size of an incumbent held outside this search
        self.ceiling = None  # proven upper bound; reaching it ends the search
        self.target = None
        self.found: list[list[int]] = []
        self.max_found = None
        self.truncated = False

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(
                f"search exceeded {self.node_budget} nodes",
                nodes=self.nodes,
                limit=self.node_budget,
            )

    def _colour(self, P: int, kmin: int) -> tuple[list[int], list[int]]:
        # greedy sequential colouring in bit (= vertex order) order; only
        # vertices with colour >= kmin can lead anywhere, so only those are kept
        adj = self.adj
        verts, cols = [], []
        U = P
        col = 0
        while U:
            col += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U ^= low
                Q ^= low
                Q &= ~adj[v]
                if col >= kmin:
                    verts.append(v)
                    cols.append(col)
        return verts, cols

    def expand(self, R: list[int], P: int) -> None:
        self._tick()
        if self.target is None:
            kmin = max(len(self.best), self.floor) - len(R) + 1
        else:
            kmin = self.target - len(R)
        verts, cols = self._colour(P, kmin)
        adj = self.adj
        for idx in range(len(verts) - 1, -1, -1):
            v, c = verts[idx], cols[idx]
            if self.target is None:
                if len(R) + c <= max(len(self.best), self.floor):
                    return
            elif len(R) + c < self.target:
                return
            R.append(v)
            newP = P & adj[v]
            if newP:
                self.expand(R, newP)
            elif self.target is None:
                if len(R) > max(len(self.best), self.floor):
                    self.best = list(R)
                    if self.ceiling is not None and len(R) >= self.ceiling:
                        raise _Done
            elif len(R) == self.target:
                if len(self.found) >= self.max_found:
                    self.truncated = True
                    R.pop()
                    return
                self.found.append(list(R))
            R.pop()
            P &= ~(1 << v)
            if self.truncated:
                return


def _ordered_subgraph(adj_full: tuple[int, ...], members: list[int]):
    """Relabel ``members`` by descending degree inside them, ties by rank."""
    mset = 0
    for v in members:
        mset |= 1 << v
    deg = {v: (adj_full[v] & mset).bit_count() for v in members}
    order = sorted(members, key=lambda v: (-deg[v], v))
    pos = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        row = adj_full[v] & mset
        m = 0
        while row:
            low = row & -row
            m |= 1 << pos[low.bit_length() - 1]
            row ^= low
        adj.append(m)
    return order, adj


def _check_budget(spec: JohnsonSpec, opts: SearchOptions) -> None:
    if spec.num_vertices > opts.vertex_budget:
        raise BudgetExceeded(
            f"{spec} has {spec.num_vertices} vertices, above the budget of {opts.vertex_budget}",
            limit=opts.vertex_budget,
        )


def _venn_atoms(masks: list[int], n: int) -> list[int]:
    atoms = [(1 << n) - 1]
    for m in masks:
        atoms = [a for part in atoms for a in (part & m, part & ~m) if a]
    return atoms


class _OrbitSearch:
    """Orbit branching for the top levels, plain branch and bound below.

    With partial clique R and candidate set P equal to the full common
    neighbourhood of R, every permutation of [n] preserving each Venn atom of
    R fixes R and P.  Two candidates with equal intersection counts against
    every atom are in the same orbit, so one representative per orbit
    suffices.
    """

    def __init__(self, spec: JohnsonSpec, adj_full, opts: SearchOptions):
        self.spec = spec
        self.adj_full = adj_full
        self.opts = opts
        self.depth = opts.symmetry_depth
        self.nodes = 0
        self.best: list[int] = []
        self.ceiling = None
        self.masks = [mask_of(s) for s in ksets_colex(spec.n, spec.k)]

    def _bits(self, P: int) -> list[int]:
        out = []
        while P:
            low = P & -P
            out.append(low.bit_length() - 1)
            P ^= low
        return out

    def run(self) -> list[int]:
        try:
            self._branch([0], self.adj_full[0])
        except _Done:
            pass
        return self.best

    def _plain(self, R: list[int], P: int) -> None:
        members = self._bits(P)
        order, adj = _ordered_subgraph(self.adj_full, members)
        s = _CliqueSearch(adj, self.opts.node_budget - self.nodes)
        s.floor = max(0, len(self.best) - len(R))
        if self.ceiling is not None:
            s.ceiling = self.ceiling - len(R)
        try:
            s.expand([], (1 << len(order)) - 1)
        finally:
            self.nodes += s.nodes
            if s.best:
                self.best = R + [order[i] for i in s.best]

    def _branch(self, R: list[int], P: int) -> None:
        if not P:
            self.nodes += 1
            if len(R) > len(self.best):
                self.best = list(R)
                if self.ceiling is not None and len(R) >= self.ceiling:
                    raise _Done
            return
        if len(R) >= self.depth:
            self._plain(R, P)
            return
        self.nodes += 1
        if self.nodes > self.opts.node_budget:
            raise BudgetExceeded(f"search exceeded {self.opts.node_budget} nodes",
                                 nodes=self.nodes, limit=self.opts.node_budget)
        atoms = _venn_atoms([self.masks[v] for v in R], self.spec.n)
        reps: dict[tuple[int, ...], int] = {}
        for v in self._bits(P):
            key = tuple((self.masks[v] & a).bit_count() for a in atoms)
            reps.setdefault(key, v)
        # larger common neighbourhoods first, ties by rank
        cands = sorted(reps.values(), key=lambda v: (-(P & self.adj_full[v]).bit_count(), v))
        for v in cands:
            Pv = P & self.adj_full[v]
            if len(R) + 1 + _colour_bound(self.adj_full, Pv) <= len(self.best):
                continue
            self._branch(R + [v], Pv)


def _colour_bound(adj, P: int) -> int:
    U = P
    col = 0
    while U:
        col += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            U ^= low
            Q ^= low
            Q &= ~adj[v]
    return col


def link_spec(spec: JohnsonSpec) -> JohnsonSpec:
    """(n - 1, k - 1, {l - 1 : l in L, l >= 1}): members through a point, point removed."""
    return JohnsonSpec(spec.n - 1, spec.k - 1, tuple(l - 1 for l in spec.L if l >= 1))


def clique_ceiling(spec: JohnsonSpec, opts: SearchOptions | None = None) -> int:
    """A proven upper bound on the clique number, used to stop searches early.

    Members of a clique through a fixed point form, with the point deleted, a
    clique of the link graph; double counting incidences gives
    ``omega <= floor(n * omega(link) / k)``.  The link clique number is found
    exactly (recursively).
    """
    opts = opts or SearchOptions()
    V = spec.num_vertices
    if not spec.L:
        return 1
    if len(spec.L) == spec.k:
        return V
    if spec.k == 1:
        return V if 0 in spec.L else 1
    link = link_spec(spec)
    if link.num_vertices > opts.vertex_budget:
        return V
    try:
        w = max_clique(link, replace(opts, all_witnesses=False)).optimum
    except BudgetExceeded:
        return V
    return min(V, spec.n * w // spec.k)


def _trivial(spec: JohnsonSpec, opts: SearchOptions, t0: float) -> SearchResult:
    # edgeless (L empty) or complete (L full) graph
    V = spec.num_vertices
    truncated = False
    if spec.L:
        witnesses = [list(range(V))]
    elif opts.all_witnesses:
        witnesses = [[v] for v in range(min(V, opts.max_witnesses))]
        truncated = V > opts.max_witnesses
    else:
        witnesses = [[0]]
    fams = [SetFamily.from_ranks(spec.n, spec.k, w) for w in witnesses]
    return SearchResult(spec, "clique", len(witnesses[0]), fams, 1, time.perf_counter() - t0, truncated)


def max_clique(spec: JohnsonSpec, opts: SearchOptions | None = None) -> SearchResult:
    """Exact clique number of J(n, k, L) with one (or all) optimal witnesses."""
    opts = opts or SearchOptions()
    _check_budget(spec, opts)
    t0 = time.perf_counter()
    if not spec.L or len(spec.L) == spec.k:
        return _trivial(spec, opts, t0)
    adj_full = adjacency_bitsets(spec)
    V = len(adj_full)

    ceiling = clique_ceiling(spec, opts)
    if opts.symmetry:
        s = _OrbitSearch(spec, adj_full, opts)
        s.ceiling = ceiling
        try:
            best = s.run()
        except BudgetExceeded as exc:
            exc.incumbent = sorted(s.best)
            raise
    else:
        order, adj = _ordered_subgraph(adj_full, list(range(V)))
        s = _CliqueSearch(adj, opts.node_budget)
        s.ceiling = ceiling
        try:
            s.expand([], (1 << V) - 1)
        except _Done:
            pass
        except BudgetExceeded as exc:
            exc.incumbent = sorted(order[i] for i in s.best)
            raise
        best = [order[i] for i in s.best]
    nodes = s.nodes
    optimum = len(best)
    witnesses = [best]
    truncated = False

    if opts.all_witnesses:
        order, adj = _ordered_subgraph(adj_full, list(range(V)))
        s2 = _CliqueSearch(adj, opts.node_budget)
        s2.target = optimum
        s2.max_found = opts.max_witnesses
        s2.expand([], (1 << V) - 1)
        nodes += s2.nodes
        witnesses = [[order[i] for i in w] for w in s2.found]
        truncated = s2.truncated

    fams = [SetFamily.from_ranks(spec.n, spec.k, sorted(w)) for w in witnesses]
    for f in fams:
        if len(f) != optimum or not is_clique(f, spec):
            raise InvariantViolation(f"search witness fails clique validation in {spec}")
    return SearchResult(
        spec=spec,
        mode="clique",
        optimum=optimum,
        witnesses=fams,
        nodes_explored=nodes,
        wall_time=time.perf_counter() - t0,
        truncated=truncated,
    )


def max_coclique(spec: JohnsonSpec, opts: SearchOptions | None = None) -> SearchResult:
    """Exact coclique number: a clique search on the complementary relation."""
    opts = opts or SearchOptions()
    _check_budget(spec, opts)
    res = max_clique(spec.complement(), opts)
    for f in res.witnesses:
        if not is_coclique(f, spec):
            raise InvariantViolation(f"search witness fails coclique validation in {spec}")
    res.spec = spec
    res.mode = "coclique"
    return res


@dataclass(frozen=True)
class CombinatorialBound:
    value: int
    method: str  # exact | trivial | vertex-count | link | restriction | orbit | clique-coclique
    clique: tuple[int, ...] = ()  # ranks of the coclique behind a clique-coclique bound


def _rotate(m: int, n: int) -> int:
    return ((m << 1) | (m >> (n - 1))) & ((1 << n) - 1)


def _reflect(m: int, n: int) -> int:
    # i -> -i mod n on bit positions 0..n-1
    out = m & 1
    for i in range(1, n):
        if m >> i & 1:
            out |= 1 << (n - i)
    return out


def _cyclic_orbits(n: int, k: int) -> list[list[int]]:
    """Orbits of k-set masks under rotation, plus their dihedral closures."""
    seen: set[int] = set()
    cyc = []
    for s in ksets_colex(n, k):
        m = mask_of(s)
        if m in seen:
            continue
        orb = [m]
        x = _rotate(m, n)
        while x != m:
            orb.append(x)
            x = _rotate(x, n)
        seen.update(orb)
        cyc.append(orb)
    out = list(cyc)
    index = {m: i for i, orb in enumerate(cyc) for m in orb}
    for i, orb in enumerate(cyc):
        j = index[_reflect(orb[0], n)]
        if j > i:
            out.append(orb + cyc[j])
    return out


def _clique_number_of(masks: list[int], L: tuple[int, ...], budget: int) -> int:
    Ls = set(L)
    adj = []
    for a in masks:
        row = 0
        for j, b in enumerate(masks):
            if a != b and (a & b).bit_count() in Ls:
                row |= 1 << j
        adj.append(row)
    order, sub = _ordered_subgraph(tuple(adj), list(range(len(masks))))
    s = _CliqueSearch(sub, budget)
    s.expand([], (1 << len(masks)) - 1)
    return len(s.best)


class CliqueBounder:
    """Proven upper bounds on omega(J(n, k, L)) that use no eigenvalues.

    The symmetric group is transitive on k-sets, so for any set H of k-sets a
    clique meets an average image of H in |clique| |H| / C(n, k) members and
    omega <= floor(C(n, k) omega(H) / |H|).  H ranges over the k-sets of
    [n - 1] (restriction) and over cyclic and dihedral orbits (intervals give
    Katona's cycle).  Also used: omega <= floor(n omega(link) / k), and
    omega alpha <= C(n, k) with the largest coclique found within budget.
    Bounds for the smaller graphs are exact or proven in turn, and memoised.
    """

    def __init__(self, opts: SearchOptions | None = None):
        self.opts = replace(opts or SearchOptions(), all_witnesses=False)
        self.memo: dict[JohnsonSpec, CombinatorialBound] = {}

    def clique(self, spec: JohnsonSpec) -> CombinatorialBound:
        if spec not in self.memo:
            self.memo[spec] = self._compute(spec)
        return self.memo[spec]

    def coclique(self, spec: JohnsonSpec) -> CombinatorialBound:
        return self.clique(spec.complement())

    def _compute(self, spec: JohnsonSpec) -> CombinatorialBound:
        n, k, V = spec.n, spec.k, spec.num_vertices
        if not spec.L:
            return CombinatorialBound(1, "trivial")
        if len(spec.L) == k:
            return CombinatorialBound(V, "trivial")
        if 2 * k > n:
            return self.clique(spec.mirror())
        if V <= self.opts.vertex_budget:
            try:
                return CombinatorialBound(max_clique(spec, self.opts).optimum, "exact")
            except BudgetExceeded:
                pass
        cands = [CombinatorialBound(V, "vertex-count")]
        link = link_spec(spec)
        cands.append(CombinatorialBound(n * self.clique(link).value // k, "link"))
        if n - 1 > k:
            sub = self.clique(JohnsonSpec(n - 1, k, spec.L))
            cands.append(CombinatorialBound(V * sub.value // binomial(n - 1, k), "restriction"))
        for orb in _cyclic_orbits(n, k):
            try:
                w = _clique_number_of(orb, spec.L, ORBIT_NODE_BUDGET)
            except BudgetExceeded:
                continue
            cands.append(CombinatorialBound(V * w // len(orb), "orbit"))
        coclique = self._coclique_witness(spec)
        if coclique:
            cands.append(CombinatorialBound(V // len(coclique), "clique-coclique", tuple(coclique)))
        return min(cands, key=lambda b: b.value)

    def _coclique_witness(self, spec: JohnsonSpec) -> list[int]:
        if spec.num_vertices > self.opts.vertex_budget:
            return []
        try:
            found = list(max_coclique(spec, self.opts).witnesses[0].ranks)
        except BudgetExceeded as exc:
            found = exc.incumbent
        if found and not is_coclique(SetFamily.from_ranks(spec.n, spec.k, found), spec):
            raise InvariantViolation(f"incumbent fails coclique validation in {spec}")
        return found


def coclique_upper_bound(spec: JohnsonSpec, opts: SearchOptions | None = None,
                         bounder: CliqueBounder | None = None) -> CombinatorialBound:
    """An upper bound on alpha that uses no eigenvalues (see CliqueBounder)."""
    bounder = bounder or CliqueBounder(opts)
    return bounder.coclique(spec)


# -- maximum coclique classification for J(n, k, {1}) ------------------------


@dataclass(frozen=True)
class Verdict:
    kind: str  # "TwoStar" | "FranklR1" | "Other"
    witness: tuple[int, ...] = ()  # the pair or the 4-set

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "TwoStar":
            out["pair"] = list(self.witness)
        elif self.kind == "FranklR1":
            out["four_set"] = list(self.witness)
        return out


def classify_family(f: SetFamily) -> Verdict:
    """TwoStar, FranklR1 (some 4-set meets every member in >= 3) or Other."""
    n, k = f.n, f.k
    common = set(range(1, n + 1))
    for s in f.sets:
        common &= set(s)
    if len(common) >= 2 and len(f) == binomial(n - 2, k - 2):
        return Verdict("TwoStar", tuple(sorted(common))[:2])
    if f.sets and k >= 3 and n >= 4:
        masks = f.masks
        first = f.sets[0]
        seen = set()
        for core in combinations(first, 3):
            for x in range(1, n + 1):
                if x in core:
                    continue
                T = tuple(sorted(core + (x,)))
                if T in seen:
                    continue
                seen.add(T)
                tm = mask_of(T)
                if all((m & tm).bit_count() >= 3 for m in masks):
                    return Verdict("FranklR1", T)
    return Verdict("Other")


@dataclass
class CocliqueClassification:
    n: int
    k: int
    alpha: int
    verdicts: list[Verdict]
    witnesses: list[SetFamily]
    truncated: bool = False

    def counts(self) -> dict[str, int]:
        out = {"TwoStar": 0, "FranklR1": 0, "Other": 0}
        for v in self.verdicts:
            out[v.kind] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "alpha": self.alpha,
            "num_maximum_cocliques": len(self.verdicts),
            "counts": self.counts(),
            "truncated": self.truncated,
            "verdicts": [
                dict(v.to_dict(), family=[list(s) for s in w.sets])
                for v, w in zip(self.verdicts, self.witnesses)
            ],
        }


def classify_max_cocliques(n: int, k: int, opts: SearchOptions | None = None) -> CocliqueClassification:
    """Enumerate every maximum coclique of J(n, k, {1}) and classify it."""
    opts = opts or SearchOptions()
    opts = replace(opts, all_witnesses=True)
    spec = JohnsonSpec(n, k, (1,))
    res = max_coclique(spec, opts)
    verdicts = [classify_family(w) for w in res.witnesses]
    return CocliqueClassification(n, k, res.optimum, verdicts, res.witnesses, res.truncated)


# -- equality scanner ----------------------------------------------------------


def proper_subsets(k: int) -> list[tuple[int, ...]]:
    """Non-empty proper subsets of [0, k - 1], by size then lexicographically."""
    out = []
    for size in range(1, k):
        out.extend(combinations(range(k), size))
    return out


def is_prefix(L: tuple[int, ...]) -> bool:
    return bool(L) and L == tuple(range(len(L)))


@dataclass
class ScanRow:
    n: int
    k: int
    L: tuple[int, ...]
    alpha: int | None
    omega: int | None
    binom: int
    status: str = "ok"

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.k) if s not in self.L)

    @property
    def product(self) -> int | None:
        if self.alpha is None or self.omega is None:
            return None
        return self.alpha * self.omega

    @property
    def equality(self) -> bool | None:
        return None if self.product is None else self.product == self.binom

    @property
    def prefix_form(self) -> bool:
        return is_prefix(self.L) or is_prefix(self.complement)

    @property
    def flag(self) -> str:
        if self.status != "ok":
            return self.status
        if self.equality and not self.prefix_form:
            return "small-n exception"
        return ""


SCAN_COLUMNS = ["n", "L", "alpha", "omega", "product", "binom", "equality", "prefix_form", "flag"]


@dataclass
class EqualityReport:
    k: int
    rows: list = field(default_factory=list)

    def table(self) -> list[dict]:
        out = []
        for r in self.rows:
            out.append(
                {
                    "n": r.n,
                    "L": "{" + ",".join(map(str, r.L)) + "}",
                    "alpha": r.alpha,
                    "omega": r.omega,
                    "product": r.product,
                    "binom": r.binom,
                    "equality": r.equality,
                    "prefix_form": r.prefix_form,
                    "flag": r.flag,
                }
            )
        return out


def scan_equality(k: int, n_range, opts: SearchOptions | None = None) -> EqualityReport:
    """alpha * omega against C(n, k) for every non-empty proper L.

    Equality rows whose L is neither a prefix {0..t-1} nor the complement of
    one are flagged "small-n exception".  Raises InvariantViolation if the
    clique-coclique bound is ever exceeded.
    """
    opts = opts or SearchOptions()
    report = EqualityReport(k)
    for n in n_range:
        if n <= k:
            raise ValidationError(f"need n > k, got n={n}, k={k}")
        omega: dict[tuple[int, ...], int | None] = {}
        status: dict[tuple[int, ...], str] = {}
        for L in proper_subsets(k):
            try:
                omega[L] = max_clique(JohnsonSpec(n, k, L), opts).optimum
                status[L] = "ok"
            except BudgetExceeded:
                omega[L] = None
                status[L] = "budget refused"
        for L in proper_subsets(k):
            comp = tuple(s for s in range(k) if s not in L)
            row = ScanRow(
                n=n,
                k=k,
                L=L,
                alpha=omega[comp],
                omega=omega[L],
                binom=binomial(n, k),
                status="ok" if status[L] == status[comp] == "ok" else "budget refused",
            )
            if row.product is not None and row.product > row.binom:
                raise InvariantViolation(f"clique-coclique bound violated at n={n}, L={L}")
            report.rows.append(row)
    return report
