"""Laurent expansions of rational matrix functions at a point."""

from .errors import TruncationError
from .field import ONE, ZERO, gr
from .matpoly import MatrixPolynomial, RationalMatrixFunction
from .matrix import Matrix
from .poly import Poly


def series_inverse(coeffs, n):
    """First n coefficients of 1/c(w), requires c(0) != 0."""
    c0 = coeffs[0]
    inv0 = c0.inverse()
    out = [inv0]
    for k in range(1, n):
        acc = ZERO
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            cj = coeffs[j]
            if cj:
                acc = acc + cj * out[k - j]
        out.append(-acc * inv0)
    return out


def series_mul(a, b, n):
    out = [ZERO] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in enumerate(b[: n - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


class LaurentExpansion:
    """f(z) = sum_{k=-nu}^{order} C_k (z-p)^k, with the tail unknown.

    ``principal[j]`` is the coefficient of (z-p)^(-nu+j), ``taylor[k]`` the
    coefficient of (z-p)^k.
    """

    __slots__ = ("point", "principal", "taylor", "order", "size")

    def __init__(self, point, principal, taylor, order, size):
        self.point = gr(point)
        self.principal = tuple(principal)
        self.taylor = tuple(taylor)
        self.order = order
        self.size = size
        if self.principal and self.principal[0].is_zero():
            raise ValueError("pole order is not tight")
        if len(self.taylor) != order + 1:
            raise ValueError("taylor part must hold order+1 coefficients")

    @property
    def pole_order(self):
        return len(self.principal)

    def coeff(self, k):
        """Coefficient of (z-p)^k."""
        nu = len(self.principal)
        if k < -nu:
            return Matrix.zeros(self.size)
        if k < 0:
            return self.principal[k + nu]
        if k > self.order:
            raise TruncationError(
                "coefficient %d requested beyond truncation order %d" % (k, self.order)
            )
        return self.taylor[k]

    def residue(self):
        return self.coeff(-1)

    def principal_function(self):
        """The principal part as a rational matrix function."""
        nu = len(self.principal)
        if nu == 0:
            return RationalMatrixFunction.zero(self.size)
        w = Poly([-self.point, 1])
        num = MatrixPolynomial.zero(self.size)
        for j, c in enumerate(self.principal):
            num = num + MatrixPolynomial.from_coeffs([c], self.size) * (w ** j)
        return RationalMatrixFunction(num, w ** nu)

    def __repr__(self):
        return "LaurentExpansion(p=%s, nu=%d, order=%d)" % (self.point, self.pole_order, self.order)


def laurent_expand(f, p, order):
    """Exact Laurent expansion of f at p through (z-p)^order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if isinstance(f, MatrixPolynomial):
        f = RationalMatrixFunction.from_poly(f)
    p = gr(p)
    den = f.denominator
    nu = den.order_at(p) if den.degree > 0 else 0
    rest = den.exact_div(Poly([-p, 1]) ** nu) if nu else den
    count = nu + order + 1
    inv = series_inverse(list(rest.shift(p).coeffs), count)
    n = f.size
    grid = [[None] * n for _ in range(n)]
    num = f.numerator.shift(p)
    for i in range(n):
        for j in range(n):
            grid[i][j] = series_mul(list(num.entries[i][j].coeffs), inv, count)
    mats = [Matrix._wrap([[grid[i][j][k] for j in range(n)] for i in range(n)], n) for k in range(count)]
    return LaurentExpansion(p, mats[:nu], mats[nu:], order, n)


def principal_part(f, p):
    """Principal part coefficients [F_0, ..., F_{nu-1}] of f at p."""
    return list(laurent_expand(f, p, 0).principal)
