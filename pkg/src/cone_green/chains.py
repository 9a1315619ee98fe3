"""Chain vectors and truncated Laurent data with vector coefficients.

A chain (phi_0, ..., phi_{m-1}) placed at p stands for
    Phi[z - p] = sum_r phi_r (z - p)^{-(m - r)}.
Laurent data are plain dicts {exponent: coefficient}; the caller keeps
track of how far a dict is valid.
"""

from .field import ONE, ZERO, gr, pretty
from .matrix import Matrix


def _vec(v):
    return tuple(gr(x) for x in v)


class ChainVector:
    """Finite sequence of vectors with leading zero entries trimmed."""

    __slots__ = ("entries", "dim")

    def __init__(self, entries, dim=None):
        entries = [_vec(e) for e in entries]
        if dim is None:
            if not entries:
                raise ValueError("dimension needed for an empty chain")
            dim = len(entries[0])
        k = 0
        while k < len(entries) and not any(entries[k]):
            k += 1
        self.entries = tuple(entries[k:])
        self.dim = dim

    @classmethod
    def _wrap(cls, entries, dim):
        obj = cls.__new__(cls)
        entries = list(entries)
        k = 0
        while k < len(entries) and not any(entries[k]):
            k += 1
        obj.entries = tuple(entries[k:])
        obj.dim = dim
        return obj

    @classmethod
    def zero(cls, dim):
        return cls._wrap((), dim)

    @classmethod
    def from_flat(cls, flat, dim):
        """From padded coordinates (phi_0 entries first)."""
        flat = list(flat)
        return cls._wrap([tuple(flat[i : i + dim]) for i in range(0, len(flat), dim)], dim)

    @property
    def m(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    @property
    def lead(self):
        return self.entries[0] if self.entries else None

    def padded(self, m):
        """Entries with leading zeros so that the length is m (m >= self.m)."""
        if m < self.m:
            raise ValueError("cannot pad to a shorter length")
        zero = (ZERO,) * self.dim
        return (zero,) * (m - self.m) + self.entries

    def flat(self, m):
        return tuple(x for e in self.padded(m) for x in e)

    def __eq__(self, other):
        if not isinstance(other, ChainVector):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, self.entries))

    def __add__(self, other):
        m = max(self.m, other.m)
        a, b = self.padded(m), other.padded(m)
        return ChainVector._wrap(
            [tuple(x + y for x, y in zip(u, v)) for u, v in zip(a, b)], self.dim
        )

    def __neg__(self):
        return ChainVector._wrap([tuple(-x for x in e) for e in self.entries], self.dim)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = gr(c)
        return ChainVector._wrap([tuple(c * x for x in e) for e in self.entries], self.dim)

    __rmul__ = scale

    def apply_matrix(self, M):
        return ChainVector._wrap([M.apply(e) for e in self.entries], M.nrows)

    # -- T and the involutions --------------------------------------------

    def T(self, k=1):
        """Right shift: drop the last k entries."""
        if k <= 0:
            return self
        return ChainVector._wrap(self.entries[: max(self.m - k, 0)], self.dim)

    def C(self):
        return ChainVector._wrap([tuple(x.conj() for x in e) for e in self.entries], self.dim)

    def J(self):
        """Entry r of an m-chain times (-1)^(m - r)."""
        m = self.m
        return ChainVector._wrap(
            [e if (m - r) % 2 == 0 else tuple(-x for x in e) for r, e in enumerate(self.entries)],
            self.dim,
        )

    def I(self):
        return self.J().C()

    # -- Laurent data -------------------------------------------------------

    def series(self):
        """{-(m - r): phi_r}."""
        m = self.m
        return {-(m - r): e for r, e in enumerate(self.entries)}

    def __repr__(self):
        return "ChainVector(%s)" % [[pretty(x) for x in e] for e in self.entries]

    def to_strings(self):
        return [[str(x) for x in e] for e in self.entries]


def tensor(phi, psi):
    """(Phi (x) Psi)[z-p] as {exponent: matrix}, bilinear phi psi^T.

    Both chains are padded to the common length m; the coefficient at
    (z-p)^{-(m-n)} is sum_{a+b=n} phi_a psi_b^T.
    """
    m = max(phi.m, psi.m)
    if m == 0:
        return {}
    a = phi.padded(m)
    b = psi.padded(m)
    out = {}
    for n in range(m):
        acc = None
        for i in range(n + 1):
            term = Matrix.outer(a[i], b[n - i])
            acc = term if acc is None else acc + term
        if not acc.is_zero():
            out[-(m - n)] = acc
    return out


def matrix_series_from_taylor(mats, shift=0):
    """{k + shift: M_k} for a list of coefficient matrices."""
    return {k + shift: M for k, M in enumerate(mats) if not M.is_zero()}


def apply_series(mats, vecs, upto):
    """Product of matrix and vector Laurent data, exponents <= upto."""
    out = {}
    for i, M in mats.items():
        for j, v in vecs.items():
            k = i + j
            if k > upto:
                continue
            w = M.apply(v)
            if k in out:
                out[k] = tuple(x + y for x, y in zip(out[k], w))
            else:
                out[k] = w
    return {k: v for k, v in out.items() if any(v)}


def add_series(a, b):
    out = dict(a)
    for k, v in b.items():
        if k in out:
            out[k] = tuple(x + y for x, y in zip(out[k], v))
        else:
            out[k] = v
    return {k: v for k, v in out.items() if any(v)}


def pair_series(u, v, upto):
    """Bilinear pairing sum_k u_k v_k of vector Laurent data."""
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            k = i + j
            if k > upto:
                continue
            acc = ZERO
            for x, y in zip(a, b):
                if x and y:
                    acc = acc + x * y
            if acc:
                out[k] = out[k] + acc if k in out else acc
    return {k: c for k, c in out.items() if c}


def principal(series):
    return {k: v for k, v in series.items() if k < 0}


def chain_from_principal(series, dim):
    """Inverse of ChainVector.series for data with only negative exponents."""
    if not series:
        return ChainVector.zero(dim)
    m = -min(series)
    zero = (ZERO,) * dim
    return ChainVector._wrap([series.get(-(m - r), zero) for r in range(m)], dim)


def unit_vector(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))
