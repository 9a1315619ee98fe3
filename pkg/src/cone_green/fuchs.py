"""Differential operators on the half-line in Fuchs form.

Operators are kept normal-ordered as finite sums  M * t^e * D^j  with
D = -t d/dt and constant N x N matrices M on the left.  The single
commutation rule is  D t^e = t^e (D - e).
"""

from math import comb

from .errors import NotFuchsType
from .field import gr
from .matpoly import MatrixPolynomial
from .matrix import Matrix
from .poly import Poly


class Operator:
    """Normal-ordered differential operator  sum M_{e,j} t^e D^j."""

    __slots__ = ("size", "terms")

    def __init__(self, size, terms=None):
        self.size = size
        clean = {}
        for key, m in (terms or {}).items():
            if not m.is_zero():
                clean[key] = m
        self.terms = clean

    @classmethod
    def constant(cls, m):
        if not isinstance(m, Matrix):
            m = Matrix([[gr(m)]])
        return cls(m.nrows, {(0, 0): m})

    @classmethod
    def scalar(cls, c, size=1):
        return cls(size, {(0, 0): Matrix.scalar(size, c)})

    @classmethod
    def t_power(cls, e, size=1):
        return cls(size, {(e, 0): Matrix.identity(size)})

    @classmethod
    def euler(cls, size=1):
        """D = -t d/dt."""
        return cls(size, {(0, 1): Matrix.identity(size)})

    @classmethod
    def theta(cls, size=1):
        """t d/dt = -D."""
        return cls(size, {(0, 1): -Matrix.identity(size)})

    @classmethod
    def d(cls, size=1):
        """d/dt = -t^{-1} D."""
        return cls(size, {(-1, 1): -Matrix.identity(size)})

    @classmethod
    def from_t_poly(cls, mp, shift=0):
        """Multiplication by the matrix polynomial mp(t) times t^shift."""
        terms = {}
        for k, c in enumerate(mp.coeffs()):
            terms[(k + shift, 0)] = c
        return cls(mp.size, terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.size == other.size and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, m in other.terms.items():
            out[key] = out[key] + m if key in out else m
        return Operator(self.size, out)

    def __neg__(self):
        return Operator(self.size, {k: -m for k, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Operator):
            c = gr(other)
            return Operator(self.size, {k: m * c for k, m in self.terms.items()})
        out = {}
        for (e1, j1), m1 in self.terms.items():
            for (e2, j2), m2 in other.terms.items():
                m = m1 * m2
                if m.is_zero():
                    continue
                # D^j1 t^e2 = t^e2 (D - e2)^j1
                for r in range(j1 + 1):
                    c = comb(j1, r) * gr(-e2) ** (j1 - r)
                    if not c:
                        continue
                    key = (e1 + e2, r + j2)
                    add = m * c
                    out[key] = out[key] + add if key in out else add
        return Operator(self.size, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        out = Operator.scalar(1, self.size)
        for _ in range(n):
            out = out * self
        return out

    @property
    def order(self):
        return max((j for (_, j) in self.terms), default=0)

    def apply_monomial(self, m, vec):
        """Apply to t^m * vec; returns {power: vector}.  D t^m = -m t^m."""
        out = {}
        for (e, j), mat in self.terms.items():
            c = gr(-m) ** j
            if not c:
                continue
            v = tuple(c * x for x in mat.apply(vec))
            key = m + e
            if key in out:
                out[key] = tuple(a + b for a, b in zip(out[key], v))
            else:
                out[key] = v
        return {k: v for k, v in out.items() if any(v)}

    def to_fuchs(self, mu=None):
        """Rewrite as t^{-mu} sum_j a_j(t) D^j."""
        if mu is None:
            mu = self.order
        n = self.size
        buckets = {}
        for (e, j), m in self.terms.items():
            if j > mu:
                raise NotFuchsType("derivative order %d exceeds mu = %d" % (j, mu))
            power = e + mu
            if power < 0:
                raise NotFuchsType(
                    "t^%d D^%d survives with a negative power after multiplying by t^%d"
                    % (e, j, mu)
                )
            buckets.setdefault(j, {})[power] = m
        coeffs = []
        for j in range(mu + 1):
            powers = buckets.get(j, {})
            top = max(powers, default=-1)
            mats = [powers.get(k, Matrix.zeros(n)) for k in range(top + 1)]
            coeffs.append(MatrixPolynomial.from_coeffs(mats, n) if mats else MatrixPolynomial.zero(n))
        return FuchsOperator(mu, n, coeffs)


class FuchsOperator:
    """t^{-mu} sum_{j=0}^{mu} a_j(t) D^j with matrix polynomial a_j(t)."""

    __slots__ = ("mu", "size", "coeffs")

    def __init__(self, mu, size, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != mu + 1:
            raise ValueError("need exactly mu+1 coefficients a_0..a_mu")
        for c in coeffs:
            if c.size != size:
                raise ValueError("coefficient size mismatch")
        self.mu = mu
        self.size = size
        self.coeffs = coeffs

    @property
    def principal(self):
        """a_mu(0)."""
        return self.coeffs[self.mu].coeff(0)

    def __eq__(self, other):
        if not isinstance(other, FuchsOperator):
            return NotImplemented
        return (self.mu, self.size, self.coeffs) == (other.mu, other.size, other.coeffs)

    def __hash__(self):
        return hash((self.mu, self.size, self.coeffs))

    def to_operator(self):
        out = Operator(self.size)
        for j, a in enumerate(self.coeffs):
            for k, c in enumerate(a.coeffs()):
                key = (k - self.mu, j)
                out = out + Operator(self.size, {key: c})
        return out

    def compose(self, other):
        """Operator product self o other, in Fuchs form."""
        return (self.to_operator() * other.to_operator()).to_fuchs(self.mu + other.mu)

    def apply_monomial(self, m, vec):
        return self.to_operator().apply_monomial(m, vec)

    @property
    def t_degree(self):
        return max((a.degree for a in self.coeffs), default=-1)

    def __repr__(self):
        return "FuchsOperator(mu=%d, N=%d, a=%s)" % (
            self.mu,
            self.size,
            [[[e.to_str("t") for e in r] for r in a.entries] for a in self.coeffs],
        )


def _falling(m, k):
    out = 1
    for r in range(k):
        out *= m - r
    return out


def classical_apply_monomial(terms, m, vec):
    """Apply sum c_k(t) t^{-r} d^k/dt^k to t^m * vec, directly."""
    out = {}
    for coeff, k, r in terms:
        f = _falling(m, k)
        if not f:
            continue
        for e, mat in enumerate(coeff.coeffs()):
            v = tuple(gr(f) * x for x in mat.apply(vec))
            key = m - k - r + e
            if key in out:
                out[key] = tuple(a + b for a, b in zip(out[key], v))
            else:
                out[key] = v
    return {k: v for k, v in out.items() if any(v)}


def to_fuchs_form(terms, mu=None):
    """Rewrite sum_k c_k(t) t^{-r_k} d^k/dt^k into Fuchs form.

    ``terms`` holds triples (c_k, k, r_k) or pairs (c_k, k) with r_k = 0,
    where c_k is a MatrixPolynomial in t.
    """
    norm = []
    for item in terms:
        if len(item) == 2:
            c, k = item
            r = 0
        else:
            c, k, r = item
        norm.append((c, k, r))
    if not norm:
        raise ValueError("empty operator")
    size = norm[0][0].size
    op = Operator(size)
    for c, k, r in norm:
        op = op + Operator.from_t_poly(c, -r) * (Operator.d(size) ** k)
    return op.to_fuchs(mu)


def conormal_symbol(A, j):
    """sigma_c^{mu-j}(A)(z) = sum_k [t^j] a_k(t) z^k."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    n = A.size
    entries = [
        [Poly([a.entries[r][c].coeff(j) for a in A.coeffs]) for c in range(n)] for r in range(n)
    ]
    return MatrixPolynomial(entries)


def euler_power_operator(mu, size=1):
    """t^{-mu} D^mu, whose principal conormal symbol is z^mu."""
    coeffs = [MatrixPolynomial.zero(size) for _ in range(mu)] + [MatrixPolynomial.identity(size)]
    return FuchsOperator(mu, size, coeffs)

