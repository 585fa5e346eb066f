"""Exact rational linear programming and ratio-type coclique certificates.

:func:`solve_lp` is a dense two-phase tableau simplex over
:class:`fractions.Fraction` with Bland's rule, returning primal values and a
dual vector that certifies optimality.  :func:`ratio_lp_bound` searches the
Bose-Mesner algebra of J(n, k) for a matrix ``M = sum_s x_s A_s`` with
``x_s >= 1`` off the edge classes and smallest possible largest eigenvalue;
for any coclique I, ``|I|^2 <= <M chi_I, chi_I> <= lambda_max |I|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from jlab.combinatorics import SetFamily, binomial
from jlab.errors import InvariantViolation, ValidationError
from jlab.graph import JohnsonSpec
from jlab.spectra import SchemeMatrix, eigen_table, scheme_eigenvalues

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class Constraint:
    coeffs: dict[str, Fraction]
    op: str
    rhs: Fraction


@dataclass
class RationalLP:
    """``sense`` c.x subject to rows ``a.x (<=|>=|=) b``.

    Every variable has a lower bound (default 0) or is free (``lower=None``).
    """

    sense: str = "min"
    variables: dict[str, Fraction | None] = field(default_factory=dict)
    objective: dict[str, Fraction] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)

    def add_variable(self, name: str, lower=0) -> None:
        if name in self.variables:
            raise ValidationError(f"duplicate variable {name!r}")
        self.variables[name] = None if lower is None else Fraction(lower)

    def set_objective(self, coeffs: dict, sense: str | None = None) -> None:
        if sense is not None:
            self.sense = sense
        self.objective = {v: Fraction(c) for v, c in coeffs.items()}

    def add_constraint(self, coeffs: dict, op: str, rhs) -> None:
        if op not in ("<=", ">=", "="):
            raise ValidationError(f"unknown constraint operator {op!r}")
        unknown = set(coeffs) - set(self.variables)
        if unknown:
            raise ValidationError(f"unknown variables {sorted(unknown)}")
        self.constraints.append(Constraint({v: Fraction(c) for v, c in coeffs.items()}, op, Fraction(rhs)))


@dataclass
class LPResult:
    status: str
    optimum: Fraction | None = None
    primal: dict[str, Fraction] = field(default_factory=dict)
    dual: list[Fraction] = field(default_factory=list)
    pivots: int = 0


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    row = T[r]
    piv = row[c]
    if piv != 1:
        T[r] = row = [x / piv for x in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]


def _simplex(T, basis, cost, allowed: int, counter: list[int]) -> str:
    """Minimize cost.x on tableau T (last column is the rhs), Bland's rule."""
    m = len(T)
    while True:
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            red = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
            if red < 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                key = (T[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        r = best[1]
        _pivot(T, r, entering)
        basis[r] = entering
        counter[0] += 1


def solve_lp(lp: RationalLP) -> LPResult:
    """Exact two-phase simplex; duals satisfy the checks in :func:`verify_lp_certificate`."""
    names = list(lp.variables)
    cols: list[tuple[str, int]] = []  # (variable, +1 or -1)
    for v in names:
        cols.append((v, 1))
        if lp.variables[v] is None:
            cols.append((v, -1))
    sign = -1 if lp.sense == "max" else 1
    if lp.sense not in ("min", "max"):
        raise ValidationError(f"unknown sense {lp.sense!r}")

    m = len(lp.constraints)
    nslack = sum(1 for c in lp.constraints if c.op != "=")
    N = len(cols) + nslack
    rows, row_sign = [], []
    slack = len(cols)
    for con in lp.constraints:
        row = [Fraction(0)] * (N + m + 1)
        rhs = con.rhs
        for j, (v, s) in enumerate(cols):
            a = con.coeffs.get(v, 0)
            row[j] = s * a
        for v, a in con.coeffs.items():
            lo = lp.variables[v]
            if lo is not None:
                rhs -= a * lo
        if con.op == "<=":
            row[slack] = Fraction(1)
            slack += 1
        elif con.op == ">=":
            row[slack] = Fraction(-1)
            slack += 1
        sg = 1
        if rhs < 0:
            sg = -1
            row = [-x for x in row]
            rhs = -rhs
        row[-1] = rhs
        rows.append(row)
        row_sign.append(sg)
    for i in range(m):
        rows[i][N + i] = Fraction(1)
    basis = [N + i for i in range(m)]
    counter = [0]

    phase1 = [Fraction(0)] * N + [Fraction(1)] * m
    _simplex(rows, basis, phase1, N + m, counter)
    infeas = sum(rows[i][-1] for i in range(m) if basis[i] >= N)
    if infeas > 0:
        return LPResult(INFEASIBLE, pivots=counter[0])
    for i in range(m):
        if basis[i] >= N:
            for j in range(N):
                if rows[i][j] != 0 and j not in basis:
                    _pivot(rows, i, j)
                    basis[i] = j
                    counter[0] += 1
                    break
            # otherwise the row is redundant; its artificial stays basic at 0

    cost = [Fraction(0)] * (N + m)
    for j, (v, s) in enumerate(cols):
        cost[j] = sign * s * lp.objective.get(v, Fraction(0))
    status = _simplex(rows, basis, cost, N, counter)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=counter[0])

    values = [Fraction(0)] * N
    for i, b in enumerate(basis):
        if b < N:
            values[b] = rows[i][-1]
    primal = {}
    for v in names:
        lo = lp.variables[v]
        primal[v] = Fraction(0) if lo is None else lo
    for j, (v, s) in enumerate(cols):
        primal[v] += s * values[j]
    # y' = c_B B^-1; B^-1 sits in the artificial block
    ystd = [sum(cost[basis[i]] * rows[i][N + r] for i in range(m)) for r in range(m)]
    dual = [sign * row_sign[r] * ystd[r] for r in range(m)]
    optimum = sum((lp.objective.get(v, 0) * x for v, x in primal.items()), Fraction(0))
    return LPResult(OPTIMAL, optimum, primal, dual, counter[0])


def verify_lp_certificate(lp: RationalLP, res: LPResult) -> bool:
    """Exact primal feasibility, dual feasibility and zero duality gap."""
    if res.status != OPTIMAL:
        return False
    x = res.primal
    for v, lo in lp.variables.items():
        if lo is not None and x[v] < lo:
            return False
    for con in lp.constraints:
        lhs = sum((a * x[v] for v, a in con.coeffs.items()), Fraction(0))
        if (con.op == "<=" and lhs > con.rhs) or (con.op == ">=" and lhs < con.rhs) or (
            con.op == "=" and lhs != con.rhs
        ):
            return False
    # for min: y_i >= 0 on >= rows, <= 0 on <= rows; flipped for max
    s = 1 if lp.sense == "min" else -1
    for y, con in zip(res.dual, lp.constraints):
        if con.op == ">=" and s * y < 0 or con.op == "<=" and s * y > 0:
            return False
    dual_obj = sum((y * con.rhs for y, con in zip(res.dual, lp.constraints)), Fraction(0))
    for v, lo in lp.variables.items():
        d = lp.objective.get(v, Fraction(0)) - sum(
            (y * con.coeffs.get(v, 0) for y, con in zip(res.dual, lp.constraints)), Fraction(0)
        )
        if lo is None:
            if d != 0:
                return False
        else:
            if s * d < 0:
                return False
            dual_obj += d * lo
    return dual_obj == res.optimum


# -- ratio / Delsarte certificates ---------------------------------------------


@dataclass
class RatioCertificate:
    spec: JohnsonSpec
    coeffs: SchemeMatrix
    bound: Fraction
    strict_classes: frozenset
    eigenvalues: list[tuple[Fraction, int]]
    lp: RationalLP | None = None
    result: LPResult | None = None

    @property
    def floor_bound(self) -> int:
        return self.bound.numerator // self.bound.denominator

    def to_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "k": self.spec.k,
            "L": list(self.spec.L),
            "bound": self.bound,
            "floor_bound": self.floor_bound,
            "coeffs": list(self.coeffs.coeffs),
            "strict_classes": sorted(self.strict_classes),
            "eigenvalues": [{"theta": t, "multiplicity": m} for t, m in self.eigenvalues],
        }


def _xname(s: int) -> str:
    return f"x{s}"


def ratio_lp(spec: JohnsonSpec, lower: dict[int, Fraction] | None = None) -> RationalLP:
    """min t s.t. sum_s x_s P[j][s] <= t for every eigenspace j.

    ``x_s >= 1`` for non-edge classes and the diagonal (s = k); x_s is free
    on edge classes.  ``lower`` raises individual lower bounds.
    """
    n, k = spec.n, spec.k
    lower = lower or {}
    table = eigen_table(n, k)
    lp = RationalLP(sense="min")
    for s in _live_classes(n, k):
        if s in spec.L:
            lp.add_variable(_xname(s), lower=None)
        else:
            lp.add_variable(_xname(s), lower=max(Fraction(1), Fraction(lower.get(s, 1))))
    lp.add_variable("t", lower=None)
    lp.set_objective({"t": 1})
    for row in table.P:
        coeffs = {_xname(s): row[s] for s in range(k + 1) if row[s]}
        coeffs["t"] = -1
        lp.add_constraint(coeffs, "<=", 0)
    return lp


def _live_classes(n: int, k: int) -> range:
    # intersection sizes below 2k - n never occur; their columns are all zero
    return range(max(0, 2 * k - n), k + 1)


def _certificate(spec: JohnsonSpec, lp: RationalLP, res: LPResult) -> RatioCertificate:
    k = spec.k
    if res.status != OPTIMAL:
        raise InvariantViolation(f"ratio LP for {spec} ended with status {res.status}")
    # an empty class gets any admissible coefficient
    x = [res.primal.get(_xname(s), Fraction(0) if s in spec.L else Fraction(1)) for s in range(k + 1)]
    M = SchemeMatrix(spec.n, k, tuple(x))
    eig = scheme_eigenvalues(M)
    strict = frozenset(s for s in range(k) if s not in spec.L and x[s] > 1)
    return RatioCertificate(spec, M, res.optimum, strict, eig, lp, res)


def ratio_lp_bound(spec: JohnsonSpec, lower: dict[int, Fraction] | None = None) -> RatioCertificate:
    """Optimal ratio certificate; alpha(J(n, k, L)) <= floor(bound)."""
    lp = ratio_lp(spec, lower)
    return _certificate(spec, lp, solve_lp(lp))


def verify_ratio_certificate(cert: RatioCertificate) -> bool:
    """Re-derive every eigenvalue from the eigen table and check feasibility."""
    spec = cert.spec
    x = cert.coeffs.coeffs
    for s in range(spec.k + 1):
        if s not in spec.L and x[s] < 1:
            return False
    thetas = [t for t, mult in scheme_eigenvalues(cert.coeffs) if mult]
    if [t for t, _ in cert.eigenvalues] != [t for t, _ in scheme_eigenvalues(cert.coeffs)]:
        return False
    return max(thetas) == cert.bound


@dataclass
class StrictnessVerdict:
    strict_class: int
    status: str  # "consistent" | "contradiction" | "inconclusive"
    refined_bound: Fraction
    per_witness: list[str]
    refined: RatioCertificate

    def to_dict(self) -> dict:
        return {
            "strict_class": self.strict_class,
            "status": self.status,
            "refined_bound": self.refined_bound,
            "per_witness": self.per_witness,
            "refined_coeffs": list(self.refined.coeffs.coeffs),
        }


def strict_lp_bound(spec: JohnsonSpec, s: int) -> RatioCertificate:
    """Ratio LP with the extra constraint x_s >= 1 + 1/C(n, k)."""
    if s in spec.L or not 0 <= s < spec.k:
        raise ValidationError(f"strict class {s} must be a non-edge intersection size below k")
    if s not in _live_classes(spec.n, spec.k):
        raise ValidationError(f"no two {spec.k}-sets of [{spec.n}] meet in {s} points")
    return ratio_lp_bound(spec, {s: 1 + Fraction(1, binomial(spec.n, spec.k))})


def strictness_refinement(
    cert: RatioCertificate,
    witnesses: Iterable[SetFamily],
    alpha: int | None = None,
    strict_class: int = 0,
) -> StrictnessVerdict:
    """Use a certificate with x_s > 1 to forbid class-s pairs in maximum cocliques.

    If some certificate with ``x_s > 1`` still has largest eigenvalue equal to
    alpha, every coclique of size alpha is tight in ``|I|^2 <= <M chi, chi>``,
    so no two of its members meet in exactly s points.
    """
    witnesses = list(witnesses)
    if alpha is None:
        if not witnesses:
            raise ValidationError("need alpha or at least one witness")
        alpha = len(witnesses[0])
    if cert.bound != alpha:
        raise ValidationError(
            f"refinement needs the certificate bound {cert.bound} to equal alpha = {alpha}"
        )
    refined = strict_lp_bound(cert.spec, strict_class)
    if refined.bound != cert.bound:
        return StrictnessVerdict(strict_class, "inconclusive", refined.bound, ["inconclusive"] * len(witnesses), refined)
    per = []
    for w in witnesses:
        bad = any((a & b).bit_count() == strict_class for i, a in enumerate(w.masks) for b in w.masks[i + 1:])
        per.append("contradiction" if bad else "consistent")
    status = "contradiction" if "contradiction" in per else "consistent"
    return StrictnessVerdict(strict_class, status, refined.bound, per, refined)
