"""Pure-Python arithmetic kernels.

Same interface as the compiled ``_ckernels`` module.  Used when the extension
is not built or when ``CONE_GREEN_PURE_PYTHON=1`` is set.
"""

from fractions import Fraction
from math import gcd

from ._numtext import format_parts, parse_parts

BACKEND = "python"


def _from_parts(re, im):
    # re, im are ints or Fractions; returns (a, b, d)
    re = Fraction(re)
    im = Fraction(im)
    d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
    return re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d


class GaussianRational:
    """Exact element (a + b*i)/d of Q(i), with d > 0 and gcd(a, b, d) = 1."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, real=0, imag=0):
        if isinstance(real, GaussianRational):
            if imag:
                other = real + GaussianRational(0, 1) * GaussianRational(imag)
                self._a, self._b, self._d = other._a, other._b, other._d
            else:
                self._a, self._b, self._d = real._a, real._b, real._d
            return
        if isinstance(real, str):
            other = parse_gaussian(real)
            self._a, self._b, self._d = other._a, other._b, other._d
            return
        if isinstance(real, complex) or isinstance(imag, complex):
            raise TypeError("floating complex values are not exact")
        if isinstance(real, float) or isinstance(imag, float):
            raise TypeError("floats are not exact; pass a Fraction or a string")
        a, b, d = _from_parts(real, imag)
        g = gcd(gcd(a, b), d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def _raw(cls, a, b, d):
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        obj = cls.__new__(cls)
        obj._a, obj._b, obj._d = a, b, d
        return obj

    @property
    def real(self):
        return Fraction(self._a, self._d)

    @property
    def imag(self):
        return Fraction(self._b, self._d)

    def parts(self):
        """Return the internal triple (a, b, d)."""
        return self._a, self._b, self._d

    def is_zero(self):
        return self._a == 0 and self._b == 0

    def is_real(self):
        return self._b == 0

    def conj(self):
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self):
        """|x|^2 as a Fraction."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if d == f:
            return GaussianRational._raw(a + c, b + e, d)
        return GaussianRational._raw(a * f + c * d, b * f + e * d, d * f)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if d == f:
            return GaussianRational._raw(a - c, b - e, d)
        return GaussianRational._raw(a * f - c * d, b * f - e * d, d * f)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        return GaussianRational._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self):
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational._raw(a * d, -b * d, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((Fraction(self._a, self._d), Fraction(self._b, self._d)))

    def sort_key(self):
        return (Fraction(self._a, self._d), Fraction(self._b, self._d))

    def __repr__(self):
        return "GaussianRational('%s')" % self.__str__()

    def __str__(self):
        return format_gaussian(self)

    def __reduce__(self):
        return (GaussianRational, (format_gaussian(self),))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        return GaussianRational._raw(int(x), 0, 1)
    if isinstance(x, int):
        return GaussianRational._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return GaussianRational._raw(x.numerator, 0, x.denominator)
    return None


def format_gaussian(x):
    """Serialize as 'a/b+c/d*i' with both parts in lowest terms."""
    return format_parts(x.real, x.imag)


def parse_gaussian(text):
    """Parse the serialized form and the looser forms '3/2', '-2+i', 'i'."""
    re, im = parse_parts(text)
    return GaussianRational(re, im)


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)


# ---------------------------------------------------------------------------
# polynomial kernels; a polynomial is a list of coefficients, lowest degree first


def poly_trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return p[:n]


def poly_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = out[k] + c
    return poly_trim(out)


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_eval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(p, q):
    """(quotient, remainder) of p by a nonzero trimmed q."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    rem = list(p)
    lead = q[dq]
    inv = None if lead == ONE else lead.inverse()
    quot = [ZERO] * max(len(rem) - dq, 0)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if not c:
            continue
        f = c if inv is None else c * inv
        quot[k - dq] = f
        base = k - dq
        for j in range(dq):
            rem[base + j] = rem[base + j] - f * q[j]
        rem[k] = ZERO
    return poly_trim(quot), poly_trim(rem[:dq])


def poly_monic(p):
    if not p or p[-1] == ONE:
        return list(p)
    inv = p[-1].inverse()
    return [c * inv for c in p]


def poly_gcd(p, q):
    """Monic gcd by Euclid with monic remainders."""
    a, b = poly_monic(poly_trim(list(p))), poly_monic(poly_trim(list(q)))
    while b:
        a, b = b, poly_monic(poly_divmod(a, b)[1])
    return a


def poly_taylor_shift(p, c):
    """Coefficients of p(z + c)."""
    out = list(p)
    n = len(out)
    if not c:
        return out
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + c * out[k + 1]
    return out


# ---------------------------------------------------------------------------
# dense linear algebra kernel


def rref(rows, ncols):
    """Reduced row-echelon form.

    rows: list of lists of GaussianRational (copied).  Returns (rows, pivots)
    with zero rows dropped and each pivot entry equal to one.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for col in range(ncols):
        if r >= nrows:
            break
        piv = None
        for k in range(r, nrows):
            if m[k][col]:
                piv = k
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        inv = prow[col].inverse()
        if inv != ONE:
            prow = [x * inv if x else x for x in prow]
            m[r] = prow
        nz = [j for j in range(col, ncols) if prow[j]]
        for k in range(nrows):
            if k == r:
                continue
            row = m[k]
            f = row[col]
            if f:
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(col)
        r += 1
    return m[:r], pivots
