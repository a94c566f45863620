"""Command-line front end.

Subcommands: ``coeffs`` (coefficient tables to JSON/CSV/LaTeX), ``verify``
(reduce the relations to normal form), ``matrix-check`` (exact matrix
realization gate plus relation evaluations), ``reduce`` (normal form of an
input expression).

Exit codes: 0 success, 1 relation failure, 2 usage, 3 internal integrity
(e.g. a non-exact division in the recursion route), 4 matrix gate failure.

Data outputs are byte-deterministic for fixed inputs; verification reports
carry wall-clock timings by design.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exactring import ExactDivisionError, LaurentPoly
from .freealg import ParseError, parse_expression
from .qnumbers import qbinomial
from .coefficients import ROUTES, CoeffTable, coeff_table
from .rewrite import normal_form, trace_reduction
from .verify import build_relation_lhs, verify_relation
from .matrixrep import CoidealParams, check_qdg, coideal_generators, eval_ncpoly

EXIT_OK = 0
EXIT_RELATION = 1
EXIT_USAGE = 2
EXIT_INTEGRITY = 3
EXIT_GATE = 4

TEST_HOOKS_ENV = "QONSAGER_TEST_HOOKS"


class UsageError(ValueError):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _fraction_list(text: str):
    return tuple(_fraction(part) for part in text.split(","))


def _write_output(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------


def table_to_json(table: CoeffTable) -> str:
    entries = []
    for (p, j), value in table.items_sorted():
        laurent = {str(e): str(value.terms[e]) for e in sorted(value.terms, reverse=True)}
        entries.append({"p": p, "j": j, "laurent": laurent})
    doc = {"r": table.r, "route": table.route, "entries": entries}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def table_to_csv(table: CoeffTable) -> str:
    lines = ["r,p,j,laurent"]
    for (p, j), value in table.items_sorted():
        lines.append(f"{table.r},{p},{j},{value.to_string()}")
    return "\n".join(lines) + "\n"


def _laurent_to_latex(value: LaurentPoly) -> str:
    if value.is_zero():
        return "0"
    parts = []
    for e in sorted(value.terms, reverse=True):
        c = value.terms[e]
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            qp = "q" if e == 1 else f"q^{{{e}}}"
            body = qp if mag == 1 else f"{mag}{qp}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


def _qbinom_index(r: int) -> dict:
    index = {}
    for n in range(2 * r + 3):
        for k in range(n // 2 + 1):
            index.setdefault(qbinomial(n, k), (n, k))
    return index


def table_to_latex(table: CoeffTable) -> str:
    """Rows p, j with the coefficient; entries equal to a Gaussian binomial
    print as \\qbinom{n}{k}, everything else as a raw Laurent polynomial."""
    index = _qbinom_index(table.r)
    one = LaurentPoly.one()
    lines = [
        f"% coefficient table r={table.r}, route={table.route}",
        "% \\newcommand{\\qbinom}[2]{\\left[\\begin{smallmatrix}#1\\\\#2\\end{smallmatrix}\\right]_q}",
        "\\begin{tabular}{rrl}",
        "\\hline",
        f"$p$ & $j$ & $c_j^{{[{table.r},p]}}$ \\\\",
        "\\hline",
    ]
    for (p, j), value in table.items_sorted():
        if value.is_zero():
            cell = "0"
        elif value == one:
            cell = "1"
        elif value in index:
            n, k = index[value]
            cell = f"\\qbinom{{{n}}}{{{k}}}"
        else:
            cell = _laurent_to_latex(value)
        lines.append(f"{p} & {j} & ${cell}$ \\\\")
    lines.extend(["\\hline", "\\end{tabular}"])
    return "\n".join(lines) + "\n"


_FORMATTERS = {"json": table_to_json, "csv": table_to_csv, "latex": table_to_latex}


def cmd_coeffs(args) -> int:
    table = coeff_table(args.r, args.route)
    _write_output(_FORMATTERS[args.format](table), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _parse_sabotage(spec: str):
    """Test hook syntax: c:R,P,J:+K perturbs entry (P, J) of the r=R table."""
    try:
        target, indices, delta = spec.split(":")
        if target != "c":
            raise ValueError
        r, p, j = (int(x) for x in indices.split(","))
        return r, p, j, int(delta)
    except ValueError as exc:
        raise UsageError(f"bad sabotage spec {spec!r}") from exc


def _perturb(table: CoeffTable, p: int, j: int, delta: int) -> CoeffTable:
    entries = dict(table.entries)
    entries[(p, j)] = entries[(p, j)] + delta
    return CoeffTable(r=table.r, route=table.route + "+sabotage", entries=entries)


def cmd_verify(args) -> int:
    sabotage = None
    if args.sabotage is not None:
        if os.environ.get(TEST_HOOKS_ENV) != "1":
            raise UsageError(
                f"--sabotage is a test hook; set {TEST_HOOKS_ENV}=1 to enable it")
        sabotage = _parse_sabotage(args.sabotage)
    families = (1, 2) if args.family == "both" else (int(args.family),)
    lines = []
    all_zero = True
    for r in range(1, args.r_max + 1):
        table = coeff_table(r, args.route)
        if sabotage is not None and sabotage[0] == r:
            table = _perturb(table, sabotage[1], sabotage[2], sabotage[3])
        for family in families:
            report = verify_relation(r, family=family, table=table)
            doc = report.to_json_dict()
            if not report.ok():
                all_zero = False
                doc["residual"] = report.residual.to_string()
            lines.append(json.dumps(doc, sort_keys=True))
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_zero else EXIT_RELATION


# ---------------------------------------------------------------------------
# matrix-check
# ---------------------------------------------------------------------------


def cmd_matrix_check(args) -> int:
    v = args.v if args.v is not None else tuple(Fraction(i) for i in range(1, args.sites + 1))
    if len(v) != args.sites:
        raise UsageError(f"--v needs exactly {args.sites} spectral parameters")
    params = CoidealParams(t=args.t, v=v, c0=args.c0, c1=args.c1,
                           cbar0=args.cbar0, cbar1=args.cbar1,
                           eps0=args.eps0, eps1=args.eps1)
    real = coideal_generators(params)
    rho0 = params.rho0 if args.rho0 is None else args.rho0
    rho1 = params.rho1 if args.rho1 is None else args.rho1
    lines = [json.dumps({
        "sites": args.sites, "dim": real.dim, "q": str(real.q),
        "rho0": str(rho0), "rho1": str(rho1)}, sort_keys=True)]
    if not check_qdg(real.A, real.Astar, rho0, rho1, real.q):
        lines.append(json.dumps({"gate": "failed"}, sort_keys=True))
        _write_output("\n".join(lines) + "\n", args.out)
        return EXIT_GATE
    lines.append(json.dumps({"gate": "passed"}, sort_keys=True))
    all_zero = True
    for r in range(1, args.r + 1):
        table = coeff_table(r, args.route)
        for family in (1, 2):
            lhs = build_relation_lhs(table, family=family)
            image = eval_ncpoly(lhs, real.A, real.Astar, real.q, rho0, rho1)
            zero = image.is_zero()
            all_zero = all_zero and zero
            lines.append(json.dumps(
                {"r": r, "family": family, "zero_matrix": zero}, sort_keys=True))
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_zero else EXIT_RELATION


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------


def cmd_reduce(args) -> int:
    expr = parse_expression(args.expression)
    if args.trace:
        trace = trace_reduction(expr)
        out = "".join(line + "\n" for line in trace.lines())
        out += trace.final.to_string() + "\n"
    else:
        out = normal_form(expr).to_string() + "\n"
    _write_output(out, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qonsager",
        description="Exact coefficient tables and verification of the "
                    "higher-order relations of the q-Onsager algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_coeffs = sub.add_parser("coeffs", help="emit a coefficient table")
    p_coeffs.add_argument("--r", type=int, required=True)
    p_coeffs.add_argument("--route", choices=ROUTES, default="genfun")
    p_coeffs.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    p_coeffs.add_argument("--out", default=None, metavar="PATH")
    p_coeffs.set_defaults(func=cmd_coeffs)

    p_verify = sub.add_parser("verify", help="reduce the relations to normal form")
    p_verify.add_argument("--r-max", type=int, required=True, dest="r_max")
    p_verify.add_argument("--route", choices=ROUTES, default="genfun")
    p_verify.add_argument("--family", choices=("1", "2", "both"), default="1")
    p_verify.add_argument("--out", default=None, metavar="PATH")
    p_verify.add_argument("--sabotage", default=None, metavar="SPEC",
                          help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    p_matrix = sub.add_parser("matrix-check", help="exact matrix realization checks")
    p_matrix.add_argument("--sites", type=int, default=1)
    p_matrix.add_argument("--t", type=_fraction, default=Fraction(3, 2))
    p_matrix.add_argument("--v", type=_fraction_list, default=None,
                          help="comma-separated spectral parameters, one per site")
    p_matrix.add_argument("--r", type=int, default=2)
    p_matrix.add_argument("--route", choices=ROUTES, default="genfun")
    for name, default in (("c0", "1"), ("c1", "1"), ("cbar0", "1"),
                          ("cbar1", "1"), ("eps0", "0"), ("eps1", "0")):
        p_matrix.add_argument(f"--{name}", type=_fraction, default=Fraction(default))
    p_matrix.add_argument("--rho0", type=_fraction, default=None,
                          help="override the c0*cbar0*(q+1/q)^2 identification")
    p_matrix.add_argument("--rho1", type=_fraction, default=None)
    p_matrix.add_argument("--out", default=None, metavar="PATH")
    p_matrix.set_defaults(func=cmd_matrix_check)

    p_reduce = sub.add_parser("reduce", help="normal form of an expression")
    p_reduce.add_argument("expression")
    p_reduce.add_argument("--trace", action="store_true")
    p_reduce.add_argument("--out", default=None, metavar="PATH")
    p_reduce.set_defaults(func=cmd_reduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExactDivisionError, AssertionError) as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
