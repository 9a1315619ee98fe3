# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels.

Mirrors ``_pykernels`` exactly; the test suite runs the same identities
against both.
"""

from fractions import Fraction
from math import gcd

from ._numtext import format_parts, parse_parts

BACKEND = "cython"


cdef inline GaussianRational _make(object a, object b, object d):
    cdef object g
    cdef GaussianRational obj
    if d < 0:
        a = -a
        b = -b
        d = -d
    g = gcd(gcd(a, b), d)
    if g != 1:
        a = a // g
        b = b // g
        d = d // g
    obj = GaussianRational.__new__(GaussianRational)
    obj._a = a
    obj._b = b
    obj._d = d
    return obj


cdef inline object _coerce(object x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        return _make(int(x), 0, 1)
    if isinstance(x, int):
        return _make(x, 0, 1)
    if isinstance(x, Fraction):
        return _make(x.numerator, 0, x.denominator)
    return None


cdef class GaussianRational:
    """Exact element (a + b*i)/d of Q(i), with d > 0 and gcd(a, b, d) = 1."""

    cdef object _a
    cdef object _b
    cdef object _d

    def __init__(self, real=0, imag=0):
        cdef GaussianRational other
        if isinstance(real, GaussianRational):
            other = real
            if imag:
                other = other + _make(0, 1, 1) * GaussianRational(imag)
            self._a, self._b, self._d = other._a, other._b, other._d
            return
        if isinstance(real, str):
            re, im = parse_parts(real)
        else:
            if isinstance(real, (complex, float)) or isinstance(imag, (complex, float)):
                raise TypeError("floats are not exact; pass a Fraction or a string")
            re, im = Fraction(real), Fraction(imag)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(gcd(a, b), d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def _raw(cls, a, b, d):
        return _make(a, b, d)

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
        return _make(self._a, -self._b, self._d)

    def norm(self):
        """|x|^2 as a Fraction."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __neg__(self):
        return _make(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __add__(self, other):
        cdef GaussianRational x, y
        if not isinstance(self, GaussianRational):
            self, other = other, self
        o = _coerce(other)
        if o is None:
            return NotImplemented
        x = self
        y = o
        if x._d == y._d:
            return _make(x._a + y._a, x._b + y._b, x._d)
        return _make(x._a * y._d + y._a * x._d, x._b * y._d + y._b * x._d, x._d * y._d)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef GaussianRational x, y
        o = _coerce(other)
        if o is None:
            return NotImplemented
        x = self
        y = o
        if x._d == y._d:
            return _make(x._a - y._a, x._b - y._b, x._d)
        return _make(x._a * y._d - y._a * x._d, x._b * y._d - y._b * x._d, x._d * y._d)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        cdef GaussianRational x, y
        if not isinstance(self, GaussianRational):
            self, other = other, self
        o = _coerce(other)
        if o is None:
            return NotImplemented
        x = self
        y = o
        return _make(x._a * y._a - x._b * y._b, x._a * y._b + x._b * y._a, x._d * y._d)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self):
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return _make(self._a * self._d, -self._b * self._d, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n, modulo=None):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = _make(1, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __richcmp__(self, other, int op):
        cdef GaussianRational x, y
        if op != 2 and op != 3:
            return NotImplemented
        o = _coerce(other)
        if o is None:
            return NotImplemented
        x = self
        y = o
        eq = x._a == y._a and x._b == y._b and x._d == y._d
        return eq if op == 2 else not eq

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((Fraction(self._a, self._d), Fraction(self._b, self._d)))

    def sort_key(self):
        return (Fraction(self._a, self._d), Fraction(self._b, self._d))

    def __repr__(self):
        return "GaussianRational('%s')" % self.__str__()

    def __str__(self):
        return format_parts(self.real, self.imag)

    def __reduce__(self):
        return (GaussianRational, (self.__str__(),))


def format_gaussian(x):
    """Serialize as 'a/b+c/d*i' with both parts in lowest terms."""
    return format_parts(x.real, x.imag)


def parse_gaussian(text):
    """Parse the serialized form and the looser forms '3/2', '-2+i', 'i'."""
    return GaussianRational(text)


ZERO = _make(0, 0, 1)
ONE = _make(1, 0, 1)


def poly_trim(list p):
    cdef Py_ssize_t n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return p[:n]


def poly_add(list p, list q):
    cdef Py_ssize_t k
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k in range(len(q)):
        out[k] = out[k] + q[k]
    return poly_trim(out)


def poly_mul(list p, list q):
    cdef Py_ssize_t i, j, np, nq
    cdef GaussianRational a, b, acc
    np = len(p)
    nq = len(q)
    if np == 0 or nq == 0:
        return []
    out = [ZERO] * (np + nq - 1)
    for i in range(np):
        a = _coerce(p[i])
        if a._a == 0 and a._b == 0:
            continue
        for j in range(nq):
            b = _coerce(q[j])
            if b._a == 0 and b._b == 0:
                continue
            acc = out[i + j]
            out[i + j] = acc + a * b
    return poly_trim(out)


def poly_eval(list p, x):
    cdef Py_ssize_t k
    acc = ZERO
    for k in range(len(p) - 1, -1, -1):
        acc = acc * x + p[k]
    return acc


cdef inline GaussianRational _submul(GaussianRational r, GaussianRational f, GaussianRational q):
    """r - f*q with a single normalization."""
    pa = f._a * q._a - f._b * q._b
    pb = f._a * q._b + f._b * q._a
    pd = f._d * q._d
    if r._d == pd:
        return _make(r._a - pa, r._b - pb, pd)
    return _make(r._a * pd - pa * r._d, r._b * pd - pb * r._d, r._d * pd)


cdef inline bint _is_one(GaussianRational x):
    return x._b == 0 and x._a == x._d


def poly_divmod(list p, list q):
    """(quotient, remainder) of p by a nonzero trimmed q."""
    cdef Py_ssize_t n = len(p), dq = len(q) - 1, k, j, base
    cdef GaussianRational c, f, inv = None
    cdef list rem, qq, quot
    if dq < 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [_coerce(x) for x in p]
    qq = [_coerce(x) for x in q]
    if not _is_one(qq[dq]):
        inv = qq[dq].inverse()
    quot = [ZERO] * (n - dq if n > dq else 0)
    for k in range(n - 1, dq - 1, -1):
        c = rem[k]
        if c._a == 0 and c._b == 0:
            continue
        f = c if inv is None else c * inv
        quot[k - dq] = f
        base = k - dq
        for j in range(dq):
            rem[base + j] = _submul(rem[base + j], f, qq[j])
        rem[k] = ZERO
    return poly_trim(quot), poly_trim(rem[:dq])


def poly_monic(list p):
    cdef GaussianRational lead, inv
    if not p:
        return []
    lead = _coerce(p[len(p) - 1])
    if _is_one(lead):
        return list(p)
    inv = lead.inverse()
    return [inv * c for c in p]


def poly_gcd(list p, list q):
    """Monic gcd by Euclid with monic remainders."""
    a = poly_monic(poly_trim(list(p)))
    b = poly_monic(poly_trim(list(q)))
    while b:
        a, b = b, poly_monic(poly_divmod(a, b)[1])
    return a


def poly_taylor_shift(list p, c):
    """Coefficients of p(z + c)."""
    cdef Py_ssize_t i, k, n
    out = list(p)
    n = len(out)
    if not c:
        return out
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + c * out[k + 1]
    return out


def rref(rows, Py_ssize_t ncols):
    """Reduced row-echelon form; see the pure-Python twin for the contract."""
    cdef list m = [list(src) for src in rows]
    cdef list pivots = []
    cdef list prow, row, nz
    cdef Py_ssize_t r = 0, nrows = len(m), col, k, j, piv
    for col in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for k in range(r, nrows):
            if m[k][col]:
                piv = k
                break
        if piv < 0:
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
