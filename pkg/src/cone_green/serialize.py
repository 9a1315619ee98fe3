"""JSON records.  Every number is a string "a/b+c/d*i"; every document
carries "schema": "cone-green/1"."""

import json

from .errors import ParseError
from .field import gr
from .fuchs import FuchsOperator
from .matpoly import MatrixPolynomial, RationalMatrixFunction
from .matrix import Matrix
from .poly import Poly

SCHEMA = "cone-green/1"


def document(kind, body):
    doc = {"schema": SCHEMA, "kind": kind}
    doc.update(body)
    return doc


def dumps(doc):
    """Byte-stable text form."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("JSON document must be an object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise ParseError("unsupported schema %r" % doc.get("schema"))
    return doc


def _num(x):
    try:
        return gr(x)
    except (TypeError, ValueError) as exc:
        raise ParseError("bad number %r: %s" % (x, exc)) from None


def poly_to_json(p):
    return [str(c) for c in p.coeffs]


def poly_from_json(data):
    return Poly([_num(c) for c in data])


def matpoly_to_json(m):
    return [[poly_to_json(e) for e in r] for r in m.entries]


def matpoly_from_json(data):
    return MatrixPolynomial([[poly_from_json(e) for e in r] for r in data])


def matrix_to_json(M):
    return M.to_strings()


def matrix_from_json(data):
    return Matrix([[_num(x) for x in r] for r in data])


def rational_to_json(f):
    if isinstance(f, MatrixPolynomial):
        f = RationalMatrixFunction.from_poly(f)
    return {"numerator": matpoly_to_json(f.numerator), "denominator": poly_to_json(f.denominator)}


def rational_from_json(data):
    return RationalMatrixFunction(matpoly_from_json(data["numerator"]), poly_from_json(data["denominator"]))


def operator_to_json(A):
    from .dsl import fuchs_to_expression

    return document(
        "fuchs_operator",
        {
            "mu": A.mu,
            "size": A.size,
            "coeffs": [[[poly_to_json(e) for e in r] for r in a.entries] for a in A.coeffs],
            "expression": fuchs_to_expression(A),
        },
    )


def operator_from_json(doc):
    """Accepts a fuchs_operator record or {"expression", "bindings", "size", "mu"}."""
    if "coeffs" in doc:
        try:
            coeffs = [matpoly_from_json(a) for a in doc["coeffs"]]
            return FuchsOperator(int(doc["mu"]), int(doc["size"]), coeffs)
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError("malformed operator record: %s" % exc) from None
    if "expression" in doc:
        from .dsl import parse_fuchs

        return parse_fuchs(doc["expression"], doc.get("bindings", {}), doc.get("size"), doc.get("mu"))
    raise ParseError("operator record needs 'coeffs' or 'expression'")
