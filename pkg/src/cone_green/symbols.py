"""Complete Mellin symbols: translation product, adjoint, inversion."""

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SingularSymbol, UnsupportedExponentField
from .field import GaussianRational, gr
from .fuchs import conormal_symbol
from .laurent import laurent_expand
from .matpoly import MatrixPolynomial, RationalMatrixFunction, matrix_inverse_rational
from .roots import rational_roots

DIM_X = 1  # the half-line; every weight formula reads it from here


class CompleteMellinSymbol:
    """Sequence of rational matrix functions s^{mu-j}(z), j = 0, 1, 2, ...

    Either finitely supported (``terms`` given, later terms zero) or
    generated on demand by ``generator(j, sym)``; generated terms are cached.
    """

    def __init__(self, mu, size, terms=(), generator=None):
        self.mu = mu
        self.size = size
        terms = [
            t if isinstance(t, RationalMatrixFunction) else RationalMatrixFunction.from_poly(t)
            for t in terms
        ]
        if generator is None:
            while len(terms) > 1 and terms[-1].is_zero():
                terms.pop()
            if not terms:
                terms = [RationalMatrixFunction.zero(size)]
        self._terms = terms
        self._generator = generator
        self._lock = threading.Lock()

    @property
    def is_finite(self):
        return self._generator is None

    @property
    def support(self):
        """Number of stored terms if finite, else None."""
        return len(self._terms) if self._generator is None else None

    def term(self, j):
        if j < 0:
            raise IndexError("negative term index")
        if j < len(self._terms):
            return self._terms[j]
        if self._generator is None:
            return RationalMatrixFunction.zero(self.size)
        with self._lock:
            while len(self._terms) <= j:
                self._terms.append(self._generator(len(self._terms), self))
            return self._terms[j]

    def terms(self, count):
        return [self.term(j) for j in range(count)]

    def __repr__(self):
        kind = "finite" if self.is_finite else "lazy"
        return "CompleteMellinSymbol(mu=%s, N=%d, %s)" % (self.mu, self.size, kind)

    def equal_through(self, other, count):
        return self.mu == other.mu and all(self.term(j) == other.term(j) for j in range(count))


def identity_symbol(size):
    return CompleteMellinSymbol(0, size, [MatrixPolynomial.identity(size)])


def complete_symbol(A):
    """All conormal symbols of a Fuchs operator, j = 0..deg_t."""
    terms = [conormal_symbol(A, j) for j in range(max(A.t_degree, 0) + 1)]
    return CompleteMellinSymbol(A.mu, A.size, terms)


def mtp(S, T):
    """Mellin translation product: u_l(z) = sum_{j+k=l} s_j(z+nu-k) t_k(z)."""
    if S.size != T.size:
        raise ValueError("symbol sizes differ")
    nu = T.mu

    def term(l, _sym=None):
        acc = RationalMatrixFunction.zero(S.size)
        for j in range(l + 1):
            k = l - j
            s = S.term(j)
            t = T.term(k)
            if s.is_zero() or t.is_zero():
                continue
            acc = acc + s.shift(nu - k) * t
        return acc

    if S.is_finite and T.is_finite:
        count = S.support + T.support - 1
        return CompleteMellinSymbol(S.mu + T.mu, S.size, [term(l) for l in range(count)])
    return CompleteMellinSymbol(S.mu + T.mu, S.size, generator=term)


@dataclass(frozen=True)
class WeightContext:
    """Reference weight delta (real) and order mu; dim X is fixed to 1."""

    delta: Fraction
    mu: int
    dim_x: int = field(default=DIM_X)

    def __post_init__(self):
        d = self.delta
        if isinstance(d, GaussianRational):
            if not d.is_real():
                raise ValueError("weight must be real")
            d = d.real
        object.__setattr__(self, "delta", Fraction(d))

    @property
    def weight_line(self):
        """Re z = dimX/2 - delta."""
        return Fraction(self.dim_x, 2) - self.delta

    def dual_exponent(self, p):
        """q = dimX - 2 delta - conj(p) - mu."""
        return gr(self.dim_x - 2 * self.delta - self.mu) - gr(p).conj()

    def adjoint_shift(self, j):
        """c_j with r^{mu-j}(z) = s^{mu-j}(c_j - conj z)^*."""
        return self.dim_x - 2 * self.delta - self.mu + j

    def boundary_lines(self):
        """Re z = w - mu + j, j = 0..mu."""
        w = self.weight_line
        return [w - self.mu + j for j in range(self.mu + 1)]


def adjoint_symbol(S, w):
    """r^{mu-j}(z) = s^{mu-j}(dimX - 2 delta - conj z - mu + j)^*."""
    mu = S.mu

    def term(j, _sym=None):
        s = S.term(j)
        return s.reflect_adjoint(w.dim_x - 2 * w.delta - mu + j)

    if S.is_finite:
        return CompleteMellinSymbol(mu, S.size, [term(j) for j in range(S.support)])
    return CompleteMellinSymbol(mu, S.size, generator=term)


@dataclass(frozen=True)
class EllipticityReport:
    interior: bool
    weight_line_clear: bool
    offending_roots: tuple
    roots: tuple
    note: str = "interior condition verified at t = 0 only, not for t > 0"

    @property
    def elliptic(self):
        return self.interior and self.weight_line_clear


def indicial_roots(S, roots=None):
    """Roots of det s^mu(z) with multiplicities, exact.

    ``roots`` may be supplied by the caller as (root, multiplicity) pairs;
    otherwise they are computed and a nonrational remainder is an error.
    """
    det = S.term(0).numerator.det()
    if det.is_zero():
        raise SingularSymbol("det of the principal conormal symbol vanishes identically")
    if roots is not None:
        return tuple((gr(r), m) for r, m in roots)
    rep = rational_roots(det)
    if rep.has_remainder:
        raise UnsupportedExponentField(
            "det of the principal conormal symbol has a factor %s without Gaussian-rational roots"
            % rep.remainder
        )
    return rep.roots


def ellipticity_check(A, w, roots=None):
    S = complete_symbol(A)
    principal = A.principal
    det_sym = S.term(0).numerator.det()
    interior = bool(principal.det()) and not det_sym.is_zero()
    if det_sym.is_zero():
        return EllipticityReport(False, False, (), ())
    rts = indicial_roots(S, roots)
    line = w.weight_line
    bad = tuple((r, m) for r, m in rts if r.real == line)
    return EllipticityReport(interior, not bad, bad, tuple(rts))


def _shifted_inverse_generator(S, s0_inv):
    # tau_l(z) = -sum_{j<l} tau_j(z - (l - j)) s_{l-j}(z) s_0(z)^{-1}
    cache = [s0_inv]
    lock = threading.Lock()

    def tau(l):
        if l < len(cache):
            return cache[l]
        with lock:
            return _extend(l)

    def _extend(l):
        while len(cache) <= l:
            n = len(cache)
            acc = RationalMatrixFunction.zero(S.size)
            for j in range(n):
                s = S.term(n - j)
                if s.is_zero() or cache[j].is_zero():
                    continue
                acc = acc + cache[j].shift(-(n - j)) * s
            cache.append(-(acc * s0_inv))
        return cache[l]

    return tau


class InverseSymbol(CompleteMellinSymbol):
    """Inverse of an elliptic symbol under the translation product.

    ``term(j)`` is t^{-mu-j}(z); ``shifted_term(j)`` is t^{-mu-j}(z + mu).
    """

    def __init__(self, S, K=None):
        s0 = S.term(0)
        try:
            num_inv = matrix_inverse_rational(s0.numerator)
        except SingularSymbol:
            raise SingularSymbol("principal conormal symbol is not invertible") from None
        s0_inv = num_inv * MatrixPolynomial.scalar(s0.denominator, S.size)
        self.source = S
        self._tau = _shifted_inverse_generator(S, s0_inv)
        mu = S.mu

        def gen(j, _sym):
            return self._tau(j).shift(-mu)

        super().__init__(-mu, S.size, generator=gen)
        if K is None:
            K = 2 * mu
        self.materialized = K + 1
        self.terms(K + 1)

    def shifted_term(self, j):
        return self._tau(j)


def invert_complete_symbol(S, K=None):
    """Inverse symbol of order -mu, with terms 0..K materialized."""
    return InverseSymbol(S, K)


def residue_table(Sinv, k, shifted=True):
    """[(pole, residue matrix)] of t^{-mu-k}(z + mu) (or unshifted)."""
    f = Sinv.shifted_term(k) if shifted else Sinv.term(k)
    den = f.denominator
    if den.degree <= 0:
        return []
    rep = rational_roots(den)
    if rep.has_remainder:
        raise UnsupportedExponentField("poles outside Q(i): %s" % rep.remainder)
    out = []
    for r, _ in rep.roots:
        out.append((r, laurent_expand(f, r, 0).residue()))
    out.sort(key=lambda pr: (-pr[0].real, pr[0].imag))
    return out


def inversion_residual(S, Sinv, l):
    """sum_{j+k=l} t^{-mu-j}(z - k + mu) s^{mu-k}(z) - delta_{0l} id.

    This is term l of mtp(Sinv, S) - identity, written with the shifted
    inverse terms; it vanishes for every l.
    """
    acc = RationalMatrixFunction.zero(S.size)
    for j in range(l + 1):
        k = l - j
        s = S.term(k)
        if s.is_zero():
            continue
        acc = acc + Sinv.shifted_term(j).shift(-k) * s
    if l == 0:
        acc = acc - RationalMatrixFunction.identity(S.size)
    return acc


def inversion_residual_literal(S, Sinv, l):
    """sum_{j+k=l} t^{-mu-j}(z + mu) s^{mu-k}(z + k) - delta_{0l} id, shifts as written."""
    acc = RationalMatrixFunction.zero(S.size)
    for j in range(l + 1):
        k = l - j
        s = S.term(k)
        if s.is_zero():
            continue
        acc = acc + Sinv.shifted_term(j) * s.shift(k)
    if l == 0:
        acc = acc - RationalMatrixFunction.identity(S.size)
    return acc
