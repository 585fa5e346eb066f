"""Command-line entry point: ``jlab <subcommand> ...``.

Exit codes: 0 success, 2 validation error, 3 budget refusal, 4 internal
invariant violation.  Errors go to stderr as one line of JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from jlab import __version__
from jlab.combinatorics import SetFamily, binomial
from jlab.errors import BudgetExceeded, InvariantViolation, ValidationError
from jlab.graph import JohnsonSpec, adjacency_matrix, degree, parse_L

EXIT_OK, EXIT_VALIDATION, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4
LP_ALPHA_LIMIT = 3000


# -- output ---------------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_plain(v) for v in items]
    if isinstance(obj, float):
        raise InvariantViolation("floating-point value in a primary output stream")
    return obj


def emit(report, fmt: str = "json") -> bytes:
    """Deterministic bytes for a report (dict, or list of row dicts for csv/table)."""
    if fmt == "json":
        return (json.dumps(_plain(report), sort_keys=True) + "\n").encode()
    rows = report if isinstance(report, list) else [report]
    rows = [_plain(r) for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_csv_cell(r[c]) for c in cols])
        return buf.getvalue().encode()
    if fmt == "table":
        if not rows:
            return b""
        cols = list(rows[0])
        cells = [[str(_csv_cell(r[c])) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
        return ("\n".join(lines) + "\n").encode()
    raise ValidationError(f"unknown output format {fmt!r}")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def csv_bytes(columns: list[str], rows: list[dict]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_csv_cell(_plain(r[c])) for c in columns])
    return buf.getvalue().encode()


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational P/Q: {text!r}")


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--format", choices=["json", "csv", "table"], default=None)
    p.add_argument("--output", default=None, help="write to this path instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive_int, default=None)
    p.add_argument("--budget", type=_positive_int, default=None, help="search node budget")
    p.add_argument("--debug-oracle", action="store_true")
    return p


def _spec_args(p, with_L=True):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    if with_L:
        p.add_argument("--L", required=True, help='comma-separated intersection sizes, e.g. "0,1"')


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="jlab", description="Extremal problems in generalized Johnson graphs.")
    parser.add_argument("--version", action="version", version=f"jlab {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    g = sub.add_parser("graph").add_subparsers(dest="action", parser_class=_Parser)
    g.required = True
    _spec_args(g.add_parser("info", parents=[common]))

    p = sub.add_parser("spectrum", parents=[common])
    _spec_args(p)
    p.add_argument("--check-dense", action="store_true")

    fam = sub.add_parser("family").add_subparsers(dest="action", parser_class=_Parser)
    fam.required = True
    p = fam.add_parser("frankl", parents=[common])
    _spec_args(p, with_L=False)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = fam.add_parser("star", parents=[common])
    _spec_args(p, with_L=False)
    p.add_argument("--fixed", required=True, help='fixed elements, e.g. "1,2"')
    p = fam.add_parser("plane", parents=[common])
    p.add_argument("--q", type=int, required=True)
    fam.add_parser("sts9", parents=[common])
    p = fam.add_parser("verify-steiner", parents=[common])
    p.add_argument("--t", type=int, required=True)
    p.add_argument("file")

    p = sub.add_parser("def-bound", parents=[common])
    _spec_args(p)

    for name in ("alpha", "omega"):
        p = sub.add_parser(name, parents=[common])
        _spec_args(p)
        p.add_argument("--all-witnesses", action="store_true")
        p.add_argument("--vertex-budget", type=_positive_int, default=None)

    p = sub.add_parser("scan-equality", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)

    p = sub.add_parser("classify-cocliques", parents=[common])
    _spec_args(p, with_L=False)

    p = sub.add_parser("lp-bound", parents=[common])
    _spec_args(p)
    p.add_argument("--require-strict-class", type=int, default=None)

    ss = sub.add_parser("supersat").add_subparsers(dest="action", parser_class=_Parser)
    ss.required = True
    p = ss.add_parser("bound", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p = ss.add_parser("coeff", parents=[common])
    p.add_argument("--c", type=_fraction, required=True)
    p = ss.add_parser("sample", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=_fraction, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--sampler", choices=["uniform", "greedy-dense"], default="uniform")
    p.add_argument("--out", default=None)
    return parser


# -- commands ------------------------------------------------------------------


def _spec(a) -> JohnsonSpec:
    return JohnsonSpec(a.n, a.k, parse_L(a.L))


def _search_opts(a, **kw):
    from jlab.search import DEFAULT_NODE_BUDGET, DEFAULT_VERTEX_BUDGET, SearchOptions

    return SearchOptions(
        node_budget=a.budget or DEFAULT_NODE_BUDGET,
        vertex_budget=getattr(a, "vertex_budget", None) or DEFAULT_VERTEX_BUDGET,
        **kw,
    )


def _cmd_graph(a):
    spec = _spec(a)
    d = degree(spec)
    return {"n": spec.n, "k": spec.k, "L": list(spec.L), "vertices": spec.num_vertices,
            "degree": d, "edges": spec.num_vertices * d // 2}


def _cmd_spectrum(a):
    from jlab.spectra import SchemeMatrix, dense_spectrum, matches_dense, scheme_eigenvalues

    spec = _spec(a)
    M = SchemeMatrix.adjacency(spec.n, spec.k, spec.L)
    eig = scheme_eigenvalues(M)
    out = {"n": spec.n, "k": spec.k, "L": list(spec.L),
           "eigenvalues": [{"theta": t, "multiplicity": m} for t, m in eig]}
    if a.check_dense:
        if spec.num_vertices > 2000:
            raise ValidationError("--check-dense needs C(n,k) <= 2000")
        A = adjacency_matrix(spec)
        out["dense_check"] = matches_dense(eig, A)
        if a.debug_oracle:
            out["dense_eigenvalues"] = [{"value": repr(v), "multiplicity": m} for v, m in dense_spectrum(A)]
    return out


def _family_bytes(fam: SetFamily) -> bytes:
    return fam.to_text().encode()


def _cmd_family(a):
    from jlab import families as F

    if a.action == "frankl":
        return _family_bytes(F.frankl_family((a.n, a.k, a.t, a.r)))
    if a.action == "star":
        return _family_bytes(F.star(a.n, a.k, parse_L(a.fixed)))
    if a.action == "plane":
        return _family_bytes(F.projective_plane(a.q))
    if a.action == "sts9":
        return _family_bytes(F.affine_plane_3())
    fam = SetFamily.read(a.file)
    ok = F.steiner_verify(fam, a.t)
    out = {"n": fam.n, "k": fam.k, "t": a.t, "size": len(fam), "steiner": ok}
    if ok:
        out["expected_size"] = Fraction(binomial(fam.n, a.t), binomial(fam.k, a.t))
    return out


def _cmd_def_bound(a):
    from jlab.families import def_bound_report

    return def_bound_report(a.n, a.k, parse_L(a.L))


def _cmd_search(a):
    from jlab.search import max_clique, max_coclique

    spec = _spec(a)
    opts = _search_opts(a, all_witnesses=a.all_witnesses)
    res = (max_coclique if a.command == "alpha" else max_clique)(spec, opts)
    return res.to_dict(include_witnesses=True)


def _cmd_scan(a):
    from jlab.search import SCAN_COLUMNS, scan_equality

    if a.n_from > a.n_to:
        raise ValidationError("--n-from must not exceed --n-to")
    rep = scan_equality(a.k, range(a.n_from, a.n_to + 1), _search_opts(a))
    return ("csv-rows", SCAN_COLUMNS, rep.table())


def _cmd_classify(a):
    from jlab.search import classify_max_cocliques

    return classify_max_cocliques(a.n, a.k, _search_opts(a)).to_dict()


def _cmd_lp(a):
    from jlab.lp import ratio_lp_bound, strict_lp_bound, verify_lp_certificate, verify_ratio_certificate
    from jlab.search import max_coclique

    spec = _spec(a)
    cert = ratio_lp_bound(spec)
    out = cert.to_dict()
    out["certificate_verified"] = verify_ratio_certificate(cert) and verify_lp_certificate(cert.lp, cert.result)
    if a.require_strict_class is not None:
        strict = strict_lp_bound(spec, a.require_strict_class)
        out["strict"] = {
            "class": a.require_strict_class,
            "bound": strict.bound,
            "coeffs": list(strict.coeffs.coeffs),
            "same_bound": strict.bound == cert.bound,
        }
    if spec.num_vertices <= LP_ALPHA_LIMIT:
        try:
            alpha = max_coclique(spec, _search_opts(a)).optimum
        except BudgetExceeded as exc:
            out["alpha"] = None
            out["alpha_status"] = str(exc)
        else:
            out["alpha"] = alpha
            out["floor_bound_ge_alpha"] = cert.floor_bound >= alpha
    return out


def _cmd_supersat(a):
    from jlab import supersat as S

    if a.action == "bound":
        return {"n": a.n, "size": a.size, "bound": S.spectral_edge_lower_bound(a.n, a.size)}
    if a.action == "coeff":
        coef = S.asymptotic_coefficient(a.c)
        return {"c": a.c, "coefficient": coef.value, "vacuous": coef.vacuous}
    res = S.sample_experiment(a.n, a.c, a.trials, a.seed, a.sampler)
    data = res.to_csv().encode()
    if a.out:
        with open(a.out, "wb") as fh:
            fh.write(data)
        return res.summary()
    return data


COMMANDS = {
    "graph": _cmd_graph,
    "spectrum": _cmd_spectrum,
    "family": _cmd_family,
    "def-bound": _cmd_def_bound,
    "alpha": _cmd_search,
    "omega": _cmd_search,
    "scan-equality": _cmd_scan,
    "classify-cocliques": _cmd_classify,
    "lp-bound": _cmd_lp,
    "supersat": _cmd_supersat,
}


def _threads(a) -> int:
    if a.threads is not None:
        return a.threads
    env = os.environ.get("JLAB_THREADS")
    if env is None:
        return 1
    try:
        v = int(env)
    except ValueError:
        raise ValidationError(f"JLAB_THREADS must be a positive integer, got {env!r}")
    if v < 1:
        raise ValidationError(f"JLAB_THREADS must be a positive integer, got {env!r}")
    return v


def _fail(kind: str, exc: Exception, code: int, stderr) -> int:
    stderr.write(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True) + "\n")
    return code


def dispatch(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout.buffer
    stderr = stderr or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        _threads(a)
        result = COMMANDS[a.command](a)
        if isinstance(result, tuple) and result[0] == "csv-rows":
            _, cols, rows = result
            fmt = a.format or "csv"
            data = csv_bytes(cols, rows) if fmt == "csv" else emit(rows, fmt)
        elif isinstance(result, bytes):
            data = result
        else:
            data = emit(result, a.format or "json")
        if a.output:
            with open(a.output, "wb") as fh:
                fh.write(data)
        else:
            stdout.write(data)
            stdout.flush()
        return EXIT_OK
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except ValidationError as exc:
        return _fail("validation", exc, EXIT_VALIDATION, stderr)
    except BudgetExceeded as exc:
        return _fail("budget", exc, EXIT_BUDGET, stderr)
    except InvariantViolation as exc:
        return _fail("invariant", exc, EXIT_INVARIANT, stderr)
    except OSError as exc:
        return _fail("validation", exc, EXIT_VALIDATION, stderr)


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
