"""Univariate polynomials over Q(i)."""

from ._backend import (
    ONE,
    ZERO,
    poly_add,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_taylor_shift,
    poly_trim,
)
from .field import gr, pretty


class Poly:
    """Immutable polynomial, coefficients stored lowest degree first.

    >>> p = Poly([0, 1]) * Poly([1, 1])
    >>> p.degree, str(p)
    (2, 'z^2 + z')
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        self.coeffs = tuple(poly_trim([gr(c) for c in coeffs]))
        self._hash = None

    @classmethod
    def _wrap(cls, coeffs):
        obj = cls.__new__(cls)
        obj.coeffs = tuple(poly_trim(list(coeffs)))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def z(cls):
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots, lead=1):
        out = cls([lead])
        for r in roots:
            out = out * cls([-gr(r), 1])
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lead(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return Poly._wrap(poly_add(list(self.coeffs), list(other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly._wrap(poly_mul(list(self.coeffs), list(other.coeffs)))
        try:
            c = gr(other)
        except TypeError:
            return NotImplemented
        if not c:
            return Poly._wrap([])
        return Poly._wrap([a * c for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        return self * c

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = poly_divmod(list(self.coeffs), list(other.coeffs))
        return Poly._wrap(q), Poly._wrap(r)

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self):
        return Poly._wrap(poly_monic(list(self.coeffs)))

    def gcd(self, other):
        """Monic greatest common divisor (zero only if both are zero)."""
        return Poly._wrap(poly_gcd(list(self.coeffs), list(other.coeffs)))

    def derivative(self):
        return Poly._wrap([c * k for k, c in enumerate(self.coeffs)][1:])

    def squarefree(self):
        """Product of the distinct monic irreducible factors."""
        if self.degree <= 0:
            return Poly([1])
        return self.exact_div(self.gcd(self.derivative())).monic()

    # -- evaluation and substitution -----------------------------------

    def __call__(self, x):
        return poly_eval(list(self.coeffs), gr(x))

    def shift(self, c):
        """p(z + c)."""
        c = gr(c)
        if not c:
            return self
        return Poly._wrap(poly_taylor_shift(list(self.coeffs), c))

    def taylor(self, p):
        """Taylor coefficients at z = p (so that p(z) = sum c_k (z-p)^k)."""
        return self.shift(p).coeffs

    def compose_affine(self, alpha, beta):
        """p(alpha*z + beta)."""
        alpha = gr(alpha)
        shifted = list(self.shift(beta).coeffs)
        scale = ONE
        for k in range(len(shifted)):
            shifted[k] = shifted[k] * scale
            scale = scale * alpha
        return Poly._wrap(shifted)

    def conj(self):
        """Conjugate every coefficient."""
        return Poly._wrap([c.conj() for c in self.coeffs])

    def order_at(self, p):
        """Multiplicity of p as a root (0 if p(z) != 0); infinite for zero."""
        if not self.coeffs:
            raise ValueError("zero polynomial has infinite order")
        for k, c in enumerate(self.taylor(p)):
            if c:
                return k
        return 0

    # -- comparison and text --------------------------------------------

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return "Poly(%s)" % str(self)

    def __str__(self):
        return self.to_str("z")

    def to_str(self, var="z"):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else "%s^%d" % (var, k))
            txt = pretty(c)
            compound = ("+" in txt[1:] or "-" in txt[1:]) and not c.is_real()
            if compound:
                txt = "(%s)" % txt
            if mono:
                if txt == "1":
                    txt = mono
                elif txt == "-1":
                    txt = "-" + mono
                else:
                    txt = "%s*%s" % (txt, mono)
            terms.append(txt)
        out = terms[0]
        for t in terms[1:]:
            if t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    try:
        return Poly([gr(x)])
    except TypeError:
        return None


def poly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        return Poly([])
    return (a * b).exact_div(a.gcd(b)).monic()
