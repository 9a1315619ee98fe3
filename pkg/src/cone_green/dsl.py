"""Operator expressions: parsing, canonical printing, lowering to Fuchs form.

Grammar (precedence ^ > unary minus > * / > + -)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" ["-"] INT)?
    atom    := INT | "i" | "d" | "theta" | "t" | NAME | "(" expr ")" | matrix
    matrix  := "[" row ("," row)* "]"
    row     := "[" expr ("," expr)* "]"

``d`` is d/dt, ``theta`` is t d/dt.  Negative powers are allowed on ``t``
only.  Matrix entries must be scalar constants.
"""

import re
from dataclasses import dataclass, field

from .errors import NotFuchsType, ParseError, UnboundParameter
from .field import gr
from .fuchs import Operator
from .matrix import Matrix

KEYWORDS = ("d", "theta", "t", "i")

# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Num(Node):
    value: int
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Sym(Node):
    """One of d, theta, t, i."""

    name: str
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Param(Node):
    name: str
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Mat(Node):
    rows: tuple
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Neg(Node):
    arg: Node
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: int
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node
    pos: tuple = field(default=(1, 1), compare=False)


# -- tokens ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),\[\]]))")


def _tokens(src):
    out = []
    line, col0, i = 1, 0, 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col0 = i + 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise ParseError("unexpected character %r" % ch, line, i - col0 + 1)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        out.append((kind, m.group(kind), (line, start - col0 + 1)))
        i = m.end()
    out.append(("end", "", (line, len(src) - col0 + 1)))
    return out


class _Parser:
    def __init__(self, src):
        self.toks = _tokens(src)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, text):
        kind, val, pos = self.take()
        if val != text:
            raise ParseError("expected %r, found %s" % (text, _describe(kind, val)), *pos)

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected %s" % _describe(kind, val), *pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary(), pos)
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, val, epos = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer, found %s" % _describe(kind, val), *epos)
            return Pow(base, sign * int(val), pos)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "end" and self.k > 1:
            _, prev, ppos = self.toks[self.k - 2]
            raise ParseError("dangling operator %r" % prev, *ppos)
        if kind == "int":
            return Num(int(val), pos)
        if kind == "name":
            return Sym(val, pos) if val in KEYWORDS else Param(val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "op" and val == "[":
            rows = [self.row()]
            while self.peek()[1] == ",":
                self.take()
                rows.append(self.row())
            self.expect("]")
            n = len(rows)
            if any(len(r) != n for r in rows):
                raise ParseError("matrix literal must be square", *pos)
            return Mat(tuple(rows), pos)
        raise ParseError("unexpected %s" % _describe(kind, val), *pos)

    def row(self):
        self.expect("[")
        items = [self.expr()]
        while self.peek()[1] == ",":
            self.take()
            items.append(self.expr())
        self.expect("]")
        return tuple(items)


def _describe(kind, val):
    return "end of input" if kind == "end" else repr(val)


def parse_operator(src, bindings=None):
    """Parse and check that every parameter is bound."""
    node = _Parser(src).parse()
    if bindings is not None:
        for p in _params(node):
            if p.name not in bindings:
                raise UnboundParameter(p.name, *p.pos)
    return node


def _params(node):
    if isinstance(node, Param):
        yield node
    elif isinstance(node, Neg):
        yield from _params(node.arg)
    elif isinstance(node, Pow):
        yield from _params(node.base)
    elif isinstance(node, BinOp):
        yield from _params(node.left)
        yield from _params(node.right)
    elif isinstance(node, Mat):
        for r in node.rows:
            for e in r:
                yield from _params(e)


# -- canonical printing ----------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def unparse(node):
    """Canonical text; parse(unparse(n)) == n."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, (Sym, Param)):
        return node.name
    if isinstance(node, Mat):
        return "[%s]" % ", ".join("[%s]" % ", ".join(unparse(e) for e in r) for r in node.rows)
    if isinstance(node, Neg):
        inner = unparse(node.arg)
        return "-" + (inner if _prec(node.arg) >= 3 else "(%s)" % inner)
    if isinstance(node, Pow):
        inner = unparse(node.base)
        if _prec(node.base) < 5:
            inner = "(%s)" % inner
        return "%s^%d" % (inner, node.exp)
    p = _PREC[node.op]
    left = unparse(node.left)
    if _prec(node.left) < p:
        left = "(%s)" % left
    right = unparse(node.right)
    if _prec(node.right) <= p:
        right = "(%s)" % right
    return "%s %s %s" % (left, node.op, right)


# -- lowering --------------------------------------------------------------


def _matrix_size(node):
    sizes = set()

    def walk(n):
        if isinstance(n, Mat):
            sizes.add((len(n.rows), n.pos))
        elif isinstance(n, Neg):
            walk(n.arg)
        elif isinstance(n, Pow):
            walk(n.base)
        elif isinstance(n, BinOp):
            walk(n.left)
            walk(n.right)

    walk(node)
    found = {s for s, _ in sizes}
    if len(found) > 1:
        pos = sorted(p for _, p in sizes)[-1]
        raise ParseError("matrix literals of different sizes", *pos)
    return found.pop() if found else None


def _scalar_value(node, bindings):
    """Evaluate a constant scalar subexpression, or None if it is not one."""
    if isinstance(node, Num):
        return gr(node.value)
    if isinstance(node, Sym):
        return gr("0+1*i") if node.name == "i" else None
    if isinstance(node, Param):
        if node.name not in bindings:
            raise UnboundParameter(node.name, *node.pos)
        return gr(bindings[node.name])
    if isinstance(node, Neg):
        v = _scalar_value(node.arg, bindings)
        return None if v is None else -v
    if isinstance(node, Pow):
        v = _scalar_value(node.base, bindings)
        if v is None:
            return None
        if node.exp < 0 and not v:
            raise ParseError("zero raised to a negative power", *node.pos)
        return v**node.exp if node.exp >= 0 else v.inverse() ** (-node.exp)
    if isinstance(node, BinOp):
        a = _scalar_value(node.left, bindings)
        b = _scalar_value(node.right, bindings)
        if a is None or b is None:
            return None
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if not b:
            raise ParseError("division by zero", *node.pos)
        return a / b
    return None


def to_operator(node, bindings=None, size=None):
    """Evaluate the AST to a normal-ordered Operator."""
    bindings = dict(bindings or {})
    found = _matrix_size(node)
    if size is None:
        size = found or 1
    elif found is not None and found != size:
        raise ParseError("matrix literal of size %d, expected %d" % (found, size), *node.pos)

    def ev(n):
        c = _scalar_value(n, bindings)
        if c is not None:
            return Operator.scalar(c, size)
        if isinstance(n, Sym):
            return {"d": Operator.d, "theta": Operator.theta, "t": Operator.t_power}[n.name](
                *((1, size) if n.name == "t" else (size,))
            )
        if isinstance(n, Mat):
            rows = []
            for r in n.rows:
                row = []
                for e in r:
                    v = _scalar_value(e, bindings)
                    if v is None:
                        raise ParseError("matrix entries must be constants", *e.pos)
                    row.append(v)
                rows.append(row)
            return Operator.constant(Matrix(rows))
        if isinstance(n, Neg):
            return -ev(n.arg)
        if isinstance(n, Pow):
            if n.exp < 0:
                if isinstance(n.base, Sym) and n.base.name == "t":
                    return Operator.t_power(n.exp, size)
                raise ParseError("negative powers are allowed on t only", *n.pos)
            if isinstance(n.base, Sym) and n.base.name == "t":
                return Operator.t_power(n.exp, size)
            return ev(n.base) ** n.exp
        if isinstance(n, BinOp):
            a = ev(n.left)
            if n.op == "/":
                c = _scalar_value(n.right, bindings)
                if c is None:
                    raise ParseError("can only divide by a scalar constant", *n.right.pos)
                if not c:
                    raise ParseError("division by zero", *n.pos)
                return a * c.inverse()
            b = ev(n.right)
            return {"+": a.__add__, "-": a.__sub__, "*": a.__mul__}[n.op](b)
        raise ParseError("cannot evaluate expression", *n.pos)

    return ev(node)


def lower(node, bindings=None, size=None, mu=None):
    """FuchsOperator t^{-mu} sum a_j(t) D^j for the parsed expression."""
    op = to_operator(node, bindings, size)
    try:
        return op.to_fuchs(mu)
    except NotFuchsType as exc:
        raise NotFuchsType(str(exc), *node.pos) from None


def parse_fuchs(src, bindings=None, size=None, mu=None):
    return lower(parse_operator(src, bindings), bindings, size, mu)


def fuchs_to_expression(A):
    """Canonical DSL text of a Fuchs operator, sum of  M * t^e * theta^j  terms."""
    op = A.to_operator()
    parts = []
    for (e, j) in sorted(op.terms, key=lambda k: (-k[1], k[0])):
        M = op.terms[(e, j)]
        # D = -theta
        if j % 2:
            M = -M
        factors = []
        if M != Matrix.identity(A.size) or (e == 0 and j == 0):
            factors.append(_matrix_text(M))
        if e:
            factors.append("t" if e == 1 else "t^%d" % e)
        if j:
            factors.append("theta" if j == 1 else "theta^%d" % j)
        parts.append(" * ".join(factors))
    return " + ".join(parts) if parts else "0"


def _scalar_text(c):
    a, b = c.real, c.imag

    def rat(x):
        return str(x.numerator) if x.denominator == 1 else "%d / %d" % (x.numerator, x.denominator)

    if b == 0:
        return "(%s)" % rat(a) if (a < 0 or a.denominator != 1) else rat(a)
    im = "i" if b == 1 else ("-i" if b == -1 else "%s * i" % rat(b))
    if a == 0:
        return "(%s)" % im
    return "(%s + %s)" % (rat(a), im)


def _matrix_text(M):
    if M.nrows == 1:
        return _scalar_text(M[0, 0])
    return "[%s]" % ", ".join("[%s]" % ", ".join(_scalar_text(x) for x in r) for r in M.rows)


__all__ = [
    "Num",
    "Sym",
    "Param",
    "Mat",
    "Neg",
    "Pow",
    "BinOp",
    "parse_operator",
    "unparse",
    "to_operator",
    "lower",
    "parse_fuchs",
    "fuchs_to_expression",
]
