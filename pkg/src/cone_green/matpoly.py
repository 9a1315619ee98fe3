"""Square matrix polynomials and rational matrix functions."""

from .errors import SingularSymbol
from .field import ONE, ZERO, gr
from .matrix import Matrix
from .poly import Poly, poly_lcm


class MatrixPolynomial:
    """N x N matrix whose entries are polynomials in one variable.

    Equivalently a sequence of constant coefficient matrices indexed by
    power; trailing zero coefficients are implicit.
    """

    __slots__ = ("entries", "size")

    def __init__(self, entries):
        self.entries = tuple(tuple(e if isinstance(e, Poly) else Poly([e]) for e in r) for r in entries)
        self.size = len(self.entries)
        for r in self.entries:
            if len(r) != self.size:
                raise ValueError("matrix polynomial must be square")

    @classmethod
    def from_coeffs(cls, mats, size=None):
        """Build from coefficient matrices [M_0, M_1, ...] (M_k multiplies z^k)."""
        mats = [m if isinstance(m, Matrix) else Matrix(m) for m in mats]
        if size is None:
            size = mats[0].nrows if mats else 0
        return cls(
            [[Poly([m[i, j] for m in mats]) for j in range(size)] for i in range(size)]
        )

    @classmethod
    def scalar(cls, p, size=1):
        p = p if isinstance(p, Poly) else Poly([p])
        zero = Poly([])
        return cls([[p if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def identity(cls, size):
        return cls.scalar(Poly([1]), size)

    @classmethod
    def zero(cls, size):
        return cls.scalar(Poly([]), size)

    @property
    def degree(self):
        """Largest entry degree; -1 for the zero polynomial."""
        return max((e.degree for r in self.entries for e in r), default=-1)

    def is_zero(self):
        return all(e.is_zero() for r in self.entries for e in r)

    def __bool__(self):
        return not self.is_zero()

    def coeff(self, k):
        return Matrix([[e.coeff(k) for e in r] for r in self.entries])

    def coeffs(self):
        return [self.coeff(k) for k in range(self.degree + 1)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, MatrixPolynomial):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def _map(self, f):
        return MatrixPolynomial([[f(e) for e in r] for r in self.entries])

    def __add__(self, other):
        return MatrixPolynomial(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        return MatrixPolynomial(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return self._map(lambda e: -e)

    def __mul__(self, other):
        if isinstance(other, MatrixPolynomial):
            n = self.size
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = Poly([])
                    for k in range(n):
                        a = self.entries[i][k]
                        b = other.entries[k][j]
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return MatrixPolynomial(out)
        if isinstance(other, Poly):
            return self._map(lambda e: e * other)
        c = gr(other)
        return self._map(lambda e: e * c)

    def __rmul__(self, other):
        if isinstance(other, (Poly,)):
            return self._map(lambda e: other * e)
        return self.__mul__(other)

    def __call__(self, z):
        z = gr(z)
        return Matrix([[e(z) for e in r] for r in self.entries])

    def shift(self, c):
        """M(z + c)."""
        return self._map(lambda e: e.shift(c))

    def compose_affine(self, alpha, beta):
        return self._map(lambda e: e.compose_affine(alpha, beta))

    def transpose(self):
        return MatrixPolynomial(list(zip(*self.entries)))

    def conj(self):
        """Conjugate coefficients entrywise."""
        return self._map(lambda e: e.conj())

    def taylor(self, p, count):
        """First ``count`` Taylor coefficient matrices at z = p."""
        shifted = self.shift(p)
        return [shifted.coeff(k) for k in range(count)]

    def det(self):
        return _bareiss_det([list(r) for r in self.entries])

    def adjugate(self):
        n = self.size
        if n == 1:
            return MatrixPolynomial([[Poly([1])]])
        cof = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [self.entries[r][c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
                d = _bareiss_det(minor)
                row.append(d if (i + j) % 2 == 0 else -d)
            cof.append(row)
        return MatrixPolynomial(cof)

    def __repr__(self):
        return "MatrixPolynomial(%s)" % [[str(e) for e in r] for r in self.entries]


def _bareiss_det(m):
    """Fraction-free determinant of a square list-of-lists of Poly."""
    n = len(m)
    if n == 0:
        return Poly([1])
    m = [list(r) for r in m]
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if swap is None:
                return Poly([])
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


class RationalMatrixFunction:
    """numerator(z) / denominator(z) with a monic scalar denominator.

    Kept reduced: the denominator shares no factor with the gcd of all
    numerator entries.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        if not isinstance(numerator, MatrixPolynomial):
            numerator = MatrixPolynomial(numerator)
        if denominator is None:
            denominator = Poly([1])
        elif not isinstance(denominator, Poly):
            denominator = Poly([denominator])
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = denominator
        for r in numerator.entries:
            for e in r:
                if g.degree <= 0:
                    break
                g = g.gcd(e)
        if g.degree > 0:
            numerator = numerator._map(lambda e: e.exact_div(g))
            denominator = denominator.exact_div(g)
        lead = denominator.lead()
        if lead != ONE:
            inv = lead.inverse()
            numerator = numerator * inv
            denominator = denominator * inv
        if numerator.is_zero():
            denominator = Poly([1])
        self.numerator = numerator
        self.denominator = denominator

    @classmethod
    def _trusted(cls, numerator, denominator):
        """Skip reduction; for maps that keep numerator and denominator coprime."""
        lead = denominator.lead()
        if lead != ONE:
            inv = lead.inverse()
            numerator = numerator * inv
            denominator = denominator * inv
        out = cls.__new__(cls)
        out.numerator = numerator
        out.denominator = denominator
        return out

    @classmethod
    def from_poly(cls, m):
        return cls(m, Poly([1]))

    @classmethod
    def identity(cls, size):
        return cls(MatrixPolynomial.identity(size))

    @classmethod
    def zero(cls, size):
        return cls(MatrixPolynomial.zero(size))

    @classmethod
    def scalar(cls, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num])
        return cls(MatrixPolynomial.scalar(num, 1), den)

    @property
    def size(self):
        return self.numerator.size

    def is_zero(self):
        return self.numerator.is_zero()

    def is_polynomial(self):
        return self.denominator.degree == 0

    def __eq__(self, other):
        if not isinstance(other, RationalMatrixFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        if self.denominator == other.denominator:
            return RationalMatrixFunction(self.numerator + other.numerator, self.denominator)
        den = poly_lcm(self.denominator, other.denominator)
        a = den.exact_div(self.denominator)
        b = den.exact_div(other.denominator)
        return RationalMatrixFunction(self.numerator * a + other.numerator * b, den)

    def __neg__(self):
        return RationalMatrixFunction._trusted(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalMatrixFunction):
            if self.is_zero() or other.is_zero():
                return RationalMatrixFunction.zero(self.size)
            return RationalMatrixFunction(
                self.numerator * other.numerator, self.denominator * other.denominator
            )
        if isinstance(other, MatrixPolynomial):
            return RationalMatrixFunction(self.numerator * other, self.denominator)
        return RationalMatrixFunction(self.numerator * gr(other), self.denominator)

    def __call__(self, z):
        z = gr(z)
        d = self.denominator(z)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.numerator(z) * d.inverse()

    def shift(self, c):
        """f(z + c)."""
        return RationalMatrixFunction._trusted(self.numerator.shift(c), self.denominator.shift(c))

    def compose_affine(self, alpha, beta):
        return RationalMatrixFunction(
            self.numerator.compose_affine(alpha, beta), self.denominator.compose_affine(alpha, beta)
        )

    def transpose(self):
        return RationalMatrixFunction._trusted(self.numerator.transpose(), self.denominator)

    def conj(self):
        return RationalMatrixFunction._trusted(self.numerator.conj(), self.denominator.conj())

    def reflect_adjoint(self, c):
        """z -> f(c - conj(z))^*, conjugate transpose of the reflected value.

        As a function of z this is again rational: conjugate all coefficients,
        transpose and substitute z -> conj(c) - z.
        """
        cc = gr(c).conj()
        return self.conj().transpose().compose_affine(-1, cc)

    def __repr__(self):
        return "RationalMatrixFunction(%r / %s)" % (self.numerator, self.denominator)


def matrix_inverse_rational(m):
    """Inverse of a matrix polynomial as adjugate / determinant."""
    det = m.det()
    if det.is_zero():
        raise SingularSymbol("determinant vanishes identically")
    return RationalMatrixFunction(m.adjugate(), det)
