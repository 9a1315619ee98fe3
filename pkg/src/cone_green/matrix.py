"""Dense constant matrices over Q(i) and exact linear algebra."""

from ._backend import ONE, ZERO, rref
from .field import gr, pretty


class Matrix:
    """Immutable rows x cols matrix of Gaussian rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = tuple(tuple(gr(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def _wrap(cls, rows, ncols):
        obj = cls.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        obj.nrows = len(obj.rows)
        obj.ncols = ncols
        return obj

    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls._wrap([[ZERO] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, n):
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def scalar(cls, n, c):
        c = gr(c)
        return cls._wrap([[c if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def column(cls, vec):
        return cls._wrap([[gr(x)] for x in vec], 1)

    @classmethod
    def row(cls, vec):
        vec = [gr(x) for x in vec]
        return cls._wrap([vec], len(vec))

    @classmethod
    def outer(cls, u, v):
        """u v^T (bilinear, no conjugation)."""
        return cls._wrap([[a * b for b in v] for a in u], len(v))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_zero(self):
        return not any(x for r in self.rows for x in r)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return Matrix._wrap(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other):
        return Matrix._wrap(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __neg__(self):
        return Matrix._wrap([[-a for a in r] for r in self.rows], self.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch %s * %s" % (self.shape, other.shape))
            cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                row = []
                for c in cols:
                    acc = ZERO
                    for k, a in nz:
                        b = c[k]
                        if b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix._wrap(out, other.ncols)
        c = gr(other)
        return Matrix._wrap([[a * c for a in r] for r in self.rows], self.ncols)

    def __rmul__(self, other):
        c = gr(other)
        return Matrix._wrap([[c * a for a in r] for r in self.rows], self.ncols)

    def apply(self, vec):
        """Matrix times a vector given as a sequence."""
        out = []
        for r in self.rows:
            acc = ZERO
            for a, x in zip(r, vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Matrix._wrap(list(zip(*self.rows)) if self.rows else [], self.nrows)

    @property
    def T(self):
        return self.transpose()

    def conj(self):
        return Matrix._wrap([[a.conj() for a in r] for r in self.rows], self.ncols)

    def H(self):
        """Conjugate transpose."""
        return self.transpose().conj()

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = ONE
        for c in range(n):
            piv = next((k for k in range(c, n) if m[k][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            p = m[c][c]
            det = det * p
            inv = p.inverse()
            for k in range(c + 1, n):
                f = m[k][c]
                if f:
                    f = f * inv
                    for j in range(c, n):
                        m[k][j] = m[k][j] - f * m[c][j]
        return det

    def rank(self):
        return len(rref(self.rows, self.ncols)[1])

    def inverse(self):
        n = self.nrows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix._wrap([r[n:] for r in red], n)

    def nullspace(self):
        """Basis of the right kernel as a list of vectors (tuples)."""
        return nullspace(self.rows, self.ncols)

    def __repr__(self):
        return "Matrix(%s)" % [[pretty(x) for x in r] for r in self.rows]

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]


def nullspace(rows, ncols):
    """Right kernel basis, one vector per free column, in RREF normal form."""
    red, piv = rref(rows, ncols)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, pc in zip(red, piv):
            v[pc] = -r[free]
        basis.append(tuple(v))
    return basis


def solve(rows, ncols, rhs):
    """Solve rows * x = rhs.

    Returns (particular solution, kernel basis) or None if inconsistent.
    """
    aug = [list(r) + [gr(b)] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for r, pc in zip(red, piv):
        x[pc] = r[ncols]
    return tuple(x), nullspace(rows, ncols)


def row_space(vectors, ncols):
    """RREF basis and pivot columns of the span of the given vectors."""
    return rref([list(v) for v in vectors], ncols)


def reduce_against(vec, basis_rows, pivots):
    """Reduce vec modulo an RREF basis (zero out the pivot coordinates)."""
    v = list(vec)
    for r, pc in zip(basis_rows, pivots):
        f = v[pc]
        if f:
            for j, a in enumerate(r):
                if a:
                    v[j] = v[j] - f * a
    return tuple(v)


def is_independent(vectors, ncols):
    vectors = list(vectors)
    return len(rref([list(v) for v in vectors], ncols)[1]) == len(vectors)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_is_zero(u):
    return not any(u)


def dot(u, v):
    """Bilinear sum u_k v_k."""
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc
