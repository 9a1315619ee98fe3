"""Boundary pairing on D(A_max)/D(A_min) and the Green's formula.

The quotient is represented by strip vectors with  w - mu < Re p < w,
w = dimX/2 - delta.  The pairing

    [Phi, Psi]_A = - sum_k sum_p Res_{z=p} <s^{mu-k}(z) Phi(p)[z-p], I Psi(q+k)[z-p]>

runs over  w - mu + k < Re p < w  with q = dimX - 2 delta - conj(p) - mu.
"""

from dataclasses import dataclass, field

from .asymptotic import (
    SpecialVector,
    StripBasis,
    _vector_sort_key,
    basis_from_vectors,
    conjugate_complete_basis,
    point_order,
    strip_basis,
)
from .chains import apply_series, matrix_series_from_taylor, pair_series
from .errors import DegenerateBasis, PreconditionViolation, VerificationFailure
from .field import ONE, ZERO, gr, pretty
from .local import taylor_matrices
from .matrix import Matrix, row_space, solve
from .symbols import adjoint_symbol, complete_symbol, ellipticity_check

# -- the quotient ----------------------------------------------------------


@dataclass(frozen=True)
class DomainQuotient:
    symbol: object
    weight: object
    basis: StripBasis
    operator: object = None

    @property
    def mu(self):
        return self.symbol.mu

    @property
    def dimension(self):
        return sum(self.lengths)

    @property
    def lengths(self):
        return tuple(self.basis.total_length(i) for i in range(len(self.basis.vectors)))

    @property
    def characteristic(self):
        return tuple(sorted(self.lengths, reverse=True))

    def jordan_basis(self):
        """[(i, r, T^r Phi_i)] in the order Phi_1, T Phi_1, ..., Phi_e, ..."""
        return self.basis.orbit()

    def with_vectors(self, vectors):
        """Same quotient, another basis (heights are recomputed)."""
        b = basis_from_vectors(vectors, self.weight, self.basis.depth, self.symbol.size)
        return DomainQuotient(self.symbol, self.weight, b, self.operator)

    def to_record(self):
        rec = self.basis.to_record()
        rec["dimension"] = self.dimension
        rec["characteristic"] = list(self.characteristic)
        return rec


def _check_elliptic(A, w, roots):
    rep = ellipticity_check(A, w, roots)
    if not rep.interior:
        raise PreconditionViolation("operator is not elliptic at t = 0")
    if not rep.weight_line_clear:
        bad = ", ".join(pretty(r) for r, _ in rep.offending_roots)
        raise PreconditionViolation("indicial roots %s lie on the weight line Re z = %s" % (bad, w.weight_line))


def domain_quotient(A, w, roots=None):
    """Strip basis of depth mu for the operator A and weight w."""
    _check_elliptic(A, w, roots)
    S = complete_symbol(A)
    return DomainQuotient(S, w, strip_basis(S, w, A.mu, roots), A)


def adjoint_quotient(primal, roots=None):
    R = adjoint_symbol(primal.symbol, primal.weight)
    if roots is not None:
        c = gr(primal.weight.adjoint_shift(0))
        roots = [(c - gr(r).conj(), m) for r, m in roots]
    return DomainQuotient(R, primal.weight, strip_basis(R, primal.weight, primal.mu, roots))


# -- the residue pairing ---------------------------------------------------


def boundary_pairing(S, w, phi, psi):
    """[Phi, Psi]_A from the residue formula; conjugation enters through I."""
    mu = S.mu
    W = w.weight_line
    c0 = gr(w.adjoint_shift(0))
    total = ZERO
    for k in range(mu):
        s = S.term(k)
        if s.is_zero():
            continue
        for p in phi.points:
            if not (W - mu + k < p.real < W):
                continue
            chain = phi.values[p]
            target = psi.at(c0 - p.conj() + k)
            if not target:
                continue
            ipsi = target.I()
            mats = taylor_matrices(s, p, chain.m + ipsi.m)
            prod = apply_series(matrix_series_from_taylor(mats), chain.series(), ipsi.m)
            total = total + pair_series(prod, ipsi.series(), -1).get(-1, ZERO)
    return -total


def pairing_matrix(S, w, rows, cols):
    return Matrix([[boundary_pairing(S, w, u, v) for v in cols] for u in rows])


# -- conjugate Jordan bases ------------------------------------------------


def _gram_route(primal, adjoint):
    """Conjugate vectors from the Gram matrix against the adjoint quotient."""
    S, w = primal.symbol, primal.weight
    rows = primal.jordan_basis()
    cols = adjoint.jordan_basis()
    n = len(rows)
    if len(cols) != n:
        raise DegenerateBasis("primal and adjoint quotients have dimensions %d and %d" % (n, len(cols)))
    G = pairing_matrix(S, w, [v for _, _, v in rows], [v for _, _, v in cols])
    lengths = primal.lengths
    out = []
    for i in range(len(primal.basis.vectors)):
        rhs = [-ONE if (k == i and r == lengths[i] - 1) else ZERO for k, r, _ in rows]
        sol = solve([list(r) for r in G.rows], n, rhs)
        if sol is None or sol[1]:
            raise DegenerateBasis("pairing matrix is singular")
        coef = [c.conj() for c in sol[0]]
        vec = SpecialVector.zero(S.size)
        for c, (_, _, v) in zip(coef, cols):
            if c:
                vec = vec + v.scale(c)
        out.append(vec)
    return out


def conjugate_jordan_basis(primal, roots=None, adjoint=None):
    """(conjugate quotient, tau); two independent routes must agree."""
    S, w = primal.symbol, primal.weight
    R = adjoint_symbol(S, w)
    depth = primal.basis.depth
    if not primal.basis.vectors:
        return DomainQuotient(R, w, StripBasis(w, depth, (), (), S.size)), ()
    conj, tau = conjugate_complete_basis(S, w, depth, primal.basis)
    if adjoint is None:
        adjoint = adjoint_quotient(primal, roots)
    gram = _gram_route(primal, adjoint)
    lengths = primal.lengths
    order = sorted(range(len(gram)), key=lambda h: _vector_sort_key(gram[h], lengths[h]))
    tau2 = [0] * len(gram)
    for new, h in enumerate(order):
        tau2[h] = new
    if tuple(tau2) != tuple(tau) or any(gram[h] != conj.vectors[tau[h]] for h in range(len(gram))):
        raise VerificationFailure("inverse-symbol and Gram-matrix routes disagree on the conjugate basis")
    return DomainQuotient(R, w, conj), tuple(tau)


# -- verification ----------------------------------------------------------


@dataclass(frozen=True)
class GreenReport:
    primal: DomainQuotient
    adjoint: DomainQuotient
    pairing: Matrix
    tau: tuple
    checks: dict
    formula: object = None
    failures: tuple = field(default=())

    @property
    def verified(self):
        return all(self.checks.values())

    def to_record(self):
        return {
            "primal": self.primal.to_record(),
            "adjoint": self.adjoint.to_record(),
            "tau": list(self.tau),
            "pairing": self.pairing.to_strings(),
            "checks": dict(self.checks),
            "verified": self.verified,
            "failures": list(self.failures),
            "formula": None if self.formula is None else self.formula.to_record(),
        }


def expected_pattern(primal, tau):
    """(-1)^{s+1} where j = tau(i) and r + s = m_i - 1."""
    rows = primal.jordan_basis()
    lengths = primal.lengths
    inv = {t: i for i, t in enumerate(tau)}
    cols = [(j, s) for j, m in enumerate(lengths_of(tau, lengths)) for s in range(m)]
    out = []
    for i, r, _ in rows:
        row = []
        for j, s in cols:
            hit = inv[j] == i and r + s == lengths[i] - 1
            row.append((ONE if s % 2 else -ONE) if hit else ZERO)
        out.append(row)
    return Matrix(out, len(cols))


def lengths_of(tau, lengths):
    out = [0] * len(tau)
    for h, t in enumerate(tau):
        out[t] = lengths[h]
    return out


def verify_theorem_main(A, w, roots=None):
    """Full pipeline with every check recorded; failures are reported, not repaired."""
    primal = domain_quotient(A, w, roots)
    S = primal.symbol
    adjoint = adjoint_quotient(primal, roots)
    failures = []
    try:
        conj, tau = conjugate_jordan_basis(primal, roots, adjoint)
        routes = True
    except VerificationFailure as exc:
        failures.append(str(exc))
        conj, tau = None, None
        routes = False
    if conj is None:
        checks = {"routes_agree": False}
        return GreenReport(primal, adjoint, Matrix([]), (), checks, None, tuple(failures))
    rows = [v for _, _, v in primal.jordan_basis()]
    cols = [v for _, _, v in conj.jordan_basis()]
    P = pairing_matrix(S, w, rows, cols)
    n = len(rows)
    checks = {"routes_agree": routes}
    checks["same_characteristic"] = primal.characteristic == conj.characteristic == adjoint.characteristic
    checks["nondegenerate"] = len(cols) == n and (n == 0 or len(row_space([list(r) for r in P.rows], n)[1]) == n)
    checks["pattern"] = P == expected_pattern(primal, tau) if n else True
    skew = True
    for u in rows:
        for v in cols:
            if boundary_pairing(S, w, u.T(), v) + boundary_pairing(S, w, u, v.T()):
                skew = False
    checks["skew_adjoint"] = skew
    for k, ok in checks.items():
        if not ok and k != "routes_agree":
            failures.append(k)
    formula = green_formula(primal, adjoint) if checks["nondegenerate"] else None
    return GreenReport(primal, conj, P, tau, checks, formula, tuple(failures))


# -- rendering -------------------------------------------------------------

GREEK = "αβγδεζηθικλνξοπρστυφχψω"
MACRON = "̄"
MINUS = "−"


@dataclass(frozen=True)
class Coordinate:
    name: str
    point: object
    log_power: int
    component: int

    def to_record(self):
        return {"name": self.name, "point": str(self.point), "log_power": self.log_power, "component": self.component}

    @classmethod
    def from_record(cls, rec):
        return cls(rec["name"], gr(rec["point"]), rec["log_power"], rec["component"])


def _coordinates(basis):
    """[(point, log power, component, window, column, row)] per quotient coordinate."""
    out = []
    for win, rows, piv in basis.space:
        for row, col in zip(rows, piv):
            x, k, comp = win.coordinate(col)
            out.append((x, k, comp, win, row))
    out.sort(key=lambda c: (point_order(c[0]), -c[1], c[2]))
    return out


def _name(letter, k, kmax, comp, several, dim):
    subs = []
    if several:
        subs.append(str(kmax - k))
    if dim > 1:
        subs.append(str(comp + 1))
    if not subs:
        return letter
    if len(subs) == 1:
        return "%s_%s" % (letter, subs[0])
    return "%s_{%s}" % (letter, ",".join(subs))


def _letters(count, start):
    out = []
    for i in range(start, start + count):
        out.append(GREEK[i] if i < len(GREEK) else "ω%d" % (i - len(GREEK) + 1))
    return out


def _named(coords, letters, dim):
    points = []
    for c in coords:
        if c[0] not in points:
            points.append(c[0])
    named = []
    for c in coords:
        x, k, comp = c[0], c[1], c[2]
        same = [d for d in coords if d[0] == x]
        ks = {d[1] for d in same}
        named.append(
            (Coordinate(_name(letters[points.index(x)], k, max(ks), comp, len(ks) > 1, dim), x, k, comp), c[3], c[4])
        )
    return named


@dataclass(frozen=True)
class GreenFormula:
    """[u,v]_A as sum of coefficient * (primal coordinate) * conj(dual coordinate)."""

    primal: tuple
    dual: tuple
    terms: tuple  # (primal index, dual index, coefficient)

    def text(self):
        if not self.terms:
            return "[u,v]_A = 0"
        parts = []
        for n, (i, j, c) in enumerate(self.terms):
            mono = self.primal[i].name + _conj_name(self.dual[j].name)
            sign, body = _coefficient(c)
            if n == 0:
                parts.append((MINUS if sign < 0 else "") + body + mono)
            else:
                parts.append((" %s " % (MINUS if sign < 0 else "+")) + body + mono)
        return "[u,v]_A = " + "".join(parts)

    def __str__(self):
        return self.text()

    def to_record(self):
        return {
            "text": self.text(),
            "primal": [c.to_record() for c in self.primal],
            "dual": [c.to_record() for c in self.dual],
            "terms": [{"primal": self.primal[i].name, "dual": self.dual[j].name, "coefficient": str(c)} for i, j, c in self.terms],
        }

    @classmethod
    def from_record(cls, rec):
        primal = tuple(Coordinate.from_record(r) for r in rec["primal"])
        dual = tuple(Coordinate.from_record(r) for r in rec["dual"])
        pi = {c.name: i for i, c in enumerate(primal)}
        di = {c.name: i for i, c in enumerate(dual)}
        terms = tuple((pi[t["primal"]], di[t["dual"]], gr(t["coefficient"])) for t in rec["terms"])
        return cls(primal, dual, terms)


def _conj_name(name):
    # the macron goes on the letter, before any subscript
    return name[0] + MACRON + name[1:]


def _coefficient(c):
    if c.is_real():
        sign = -1 if c.real < 0 else 1
        mag = abs(c.real)
        return sign, "" if mag == 1 else "%s·" % mag
    return 1, "(%s)·" % pretty(c)


def green_formula(primal, adjoint):
    """Pairing written in the quotient coordinates of both sides.

    ``adjoint`` must come from strip_basis so that its coordinate space is known.
    """
    S, w = primal.symbol, primal.weight
    pc = _coordinates(primal.basis)
    dc = _coordinates(adjoint.basis)
    p_named = _named(pc, _letters(len({c[0] for c in pc}), 0), S.size)
    d_named = _named(dc, _letters(len({c[0] for c in dc}), len({c[0] for c in pc})), S.size)
    terms = []
    for i, (_, win, row) in enumerate(p_named):
        u = win.to_vector(row)
        for j, (_, dwin, drow) in enumerate(d_named):
            v = dwin.to_vector(drow)
            c = boundary_pairing(S, w, u, v)
            if c:
                terms.append((i, j, c))
    return GreenFormula(tuple(c for c, _, _ in p_named), tuple(c for c, _, _ in d_named), tuple(terms))


def render_green_formula(report):
    """(text, structured record) of the report's Green formula."""
    f = report.formula
    if f is None:
        f = GreenFormula((), (), ())
    return f.text(), f.to_record()


# -- expansions ------------------------------------------------------------


def _power(e):
    if e == 0:
        return ""
    if e == 1:
        return "t"
    text = pretty(e)
    if not e.is_real() or e.real < 0 or e.real.denominator != 1:
        text = "(%s)" % text
    return "t^%s" % text


def _log(k):
    if k == 0:
        return ""
    if k == 1:
        return "log t"
    return "log^%d t" % k


def render_expansion(vec):
    """Sum of c (-1)^k/k! t^{-p} log^k t over the chains of a strip vector."""
    from math import factorial

    pieces = []
    for p in vec.points:
        chain = vec.values[p]
        m = chain.m
        for l, entry in enumerate(chain.entries):
            k = m - 1 - l
            scale = gr(-1 if k % 2 else 1) * gr(1) / gr(factorial(k))
            coef = tuple(scale * x for x in entry)
            if not any(coef):
                continue
            mono = "·".join(s for s in (_power(-p), _log(k)) if s)
            if len(coef) == 1:
                c = coef[0]
                sign, body = _coefficient(c)
                if not mono:
                    body = pretty(abs(c.real)) if c.is_real() else "(%s)" % pretty(c)
            else:
                sign, body = 1, "[%s]" % ", ".join(pretty(x) for x in coef) + ("·" if mono else "")
            pieces.append((sign, body + mono))
    if not pieces:
        return "0"
    out = []
    for n, (sign, body) in enumerate(pieces):
        if n == 0:
            out.append((MINUS if sign < 0 else "") + body)
        else:
            out.append((" %s " % (MINUS if sign < 0 else "+")) + body)
    return "".join(out)
