"""Command-line front end.

    cone-green symbols --op "d^3 + t^-1 * d^2"
    cone-green invert  --op "d^2 + a*d + b" --param a=3/2 --param b=-2+i --terms 5
    cone-green basis   --op ... --delta 0 --depth 2
    cone-green green   --op ... --delta -1 [--text]
    cone-green verify  --suite all [--op ... --delta D]

Results go to stdout (or --output) as sorted, indented JSON.  Errors are
written to stderr as a JSON record and mapped to the exit codes of
``errors``: 2 parse, 3 precondition, 4 exponent field, 5 verification.
"""

import argparse
import os
import sys

from .asymptotic import strip_basis
from .checks import SUITES, run_suites
from .dsl import parse_fuchs
from .errors import ConeGreenError, ParseError, PreconditionViolation
from .field import gr
from .green import render_expansion, render_green_formula, verify_theorem_main
from .serialize import document, dumps, loads, operator_from_json, operator_to_json, rational_to_json
from .symbols import WeightContext, complete_symbol, invert_complete_symbol, residue_table

DEFAULT_MAX_DEPTH = 16


def max_depth():
    raw = os.environ.get("CONE_GREEN_MAX_DEPTH", str(DEFAULT_MAX_DEPTH))
    try:
        value = int(raw)
    except ValueError:
        raise ParseError("CONE_GREEN_MAX_DEPTH must be an integer, got %r" % raw) from None
    if value < 0:
        raise ParseError("CONE_GREEN_MAX_DEPTH must be nonnegative")
    return value


def _number(text, what):
    try:
        return gr(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError("bad %s %r" % (what, text)) from None


def _bindings(pairs):
    out = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ParseError("--param expects NAME=VALUE, got %r" % item)
        out[name.strip()] = _number(value.strip(), "parameter value")
    return out


def _delta(text):
    d = _number(text, "delta")
    if not d.is_real():
        raise PreconditionViolation("delta must be real, got %s" % text)
    return d


def load_operator(args):
    """FuchsOperator from --op, or from --op-file holding DSL text or a JSON record."""
    bindings = _bindings(args.param)
    if args.op is not None:
        return parse_fuchs(args.op, bindings, args.size, args.mu)
    with open(args.op_file, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        doc = loads(text)
        merged = {k: _number(v, "binding") for k, v in doc.get("bindings", {}).items()}
        merged.update(bindings)
        return operator_from_json(dict(doc, bindings=merged))
    return parse_fuchs(text, bindings, args.size, args.mu)


# -- subcommands -------------------------------------------------------------


def cmd_symbols(args):
    A = load_operator(args)
    S = complete_symbol(A)
    return document(
        "conormal_symbols",
        {
            "operator": operator_to_json(A),
            "mu": A.mu,
            "size": A.size,
            "terms": [rational_to_json(S.term(j)) for j in range(S.support)],
        },
    )


def cmd_invert(args):
    if args.terms < 0:
        raise PreconditionViolation("--terms must be nonnegative")
    A = load_operator(args)
    S = complete_symbol(A)
    Sinv = invert_complete_symbol(S, args.terms)
    terms, tables = [], []
    for k in range(args.terms + 1):
        terms.append(rational_to_json(Sinv.shifted_term(k)))
        tables.append(
            [{"pole": str(p), "residue": R.to_strings()} for p, R in residue_table(Sinv, k)]
        )
    return document(
        "inverse_symbol",
        {
            "operator": operator_to_json(A),
            "order": -A.mu,
            "argument_shift": A.mu,
            "terms": terms,
            "residue_tables": tables,
        },
    )


def _weight(args, A):
    return WeightContext(_delta(args.delta), A.mu)


def cmd_basis(args):
    A = load_operator(args)
    depth = A.mu if args.depth is None else args.depth
    if depth < 0:
        raise PreconditionViolation("--depth must be nonnegative")
    cap = max_depth()
    if depth > cap:
        raise PreconditionViolation("depth %d exceeds CONE_GREEN_MAX_DEPTH=%d" % (depth, cap))
    w = _weight(args, A)
    B = strip_basis(complete_symbol(A), w, depth)
    rec = B.to_record()
    rec["characteristic"] = [
        {"gamma": str(g), "lengths": list(ms)} for g, ms in B.characteristic
    ]
    rec["dimension"] = B.dimension
    rec["expansions"] = [render_expansion(v) for v in B.vectors]
    return document("strip_basis", {"operator": operator_to_json(A), "basis": rec})


def cmd_green(args):
    A = load_operator(args)
    if A.mu > max_depth():
        raise PreconditionViolation("order %d exceeds CONE_GREEN_MAX_DEPTH=%d" % (A.mu, max_depth()))
    report = verify_theorem_main(A, _weight(args, A))
    text, record = render_green_formula(report)
    body = report.to_record()
    body["formula"] = record
    body["text"] = text
    return document("green_report", {"operator": operator_to_json(A), "report": body}), report.verified, body["text"]


def cmd_verify(args):
    cases = None
    if args.op is not None or args.op_file is not None:
        if args.delta is None:
            raise ParseError("verify with an operator needs --delta")
        A = load_operator(args)
        cases = [("operator", A, _weight(args, A))]
    names = SUITES if args.suite == "all" else (args.suite,)
    results = run_suites(names, cases)
    passed = all(r.passed for r in results)
    doc = document("verify_report", {"passed": passed, "suites": [r.to_record() for r in results]})
    return doc, passed


# -- argument parsing --------------------------------------------------------


def _operator_options(p, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--op", help="operator expression, e.g. 'd^2 + a*d + b'")
    src.add_argument("--op-file", help="file with an expression or a JSON operator record")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="bind a parameter (repeatable)")
    p.add_argument("--size", type=int, help="matrix size N when it cannot be inferred")
    p.add_argument("--mu", type=int, help="order mu (defaults to the highest derivative order)")
    p.add_argument("--output", help="write the result here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="cone-green", description="Exact Green's formulas for Fuchs-type operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbols", help="conormal symbols")
    _operator_options(p)

    p = sub.add_parser("invert", help="inverse symbol terms and residue tables")
    _operator_options(p)
    p.add_argument("--terms", type=int, default=5, help="highest term index K (default 5)")

    p = sub.add_parser("basis", help="characteristic basis of the asymptotic space")
    _operator_options(p)
    p.add_argument("--delta", required=True)
    p.add_argument("--depth", type=int, help="strip depth (default mu)")

    p = sub.add_parser("green", help="Green's formula and its checks")
    _operator_options(p)
    p.add_argument("--delta", required=True)
    p.add_argument("--text", action="store_true", help="print only the rendered formula")

    p = sub.add_parser("verify", help="invariant suites")
    _operator_options(p, required=False)
    p.add_argument("--delta")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        status = 0
        if args.command == "symbols":
            out = dumps(cmd_symbols(args))
        elif args.command == "invert":
            out = dumps(cmd_invert(args))
        elif args.command == "basis":
            out = dumps(cmd_basis(args))
        elif args.command == "green":
            doc, ok, text = cmd_green(args)
            out = text + "\n" if args.text else dumps(doc)
            status = 0 if ok else 5
        else:
            doc, ok = cmd_verify(args)
            out = dumps(doc)
            status = 0 if ok else 5
        _emit(out, args.output)
        return status
    except ConeGreenError as exc:
        sys.stderr.write(dumps(document("error", {"error": exc.record()})))
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(dumps(document("error", {"error": {"kind": "io_error", "message": str(exc)}})))
        return 1


if __name__ == "__main__":
    sys.exit(main())
