"""The two worked operators and their closed-form data.

``first_example``  is  d^3 + t^-1 d^2  (delta = -1),
``second_example`` is  d^2 + a d + b   (delta = 0).
"""

from math import factorial

from .asymptotic import SpecialVector
from .chains import ChainVector
from .field import ONE, ZERO, gr
from .fuchs import Operator
from .poly import Poly
from .symbols import WeightContext


def first_example():
    """(operator in Fuchs form, weight)."""
    d = Operator.d()
    A = (d**3 + Operator.t_power(-1) * d**2).to_fuchs()
    return A, WeightContext(-1, A.mu)


def second_example(a, b):
    a, b = gr(a), gr(b)
    d = Operator.d()
    A = (d**2 + d * a + Operator.scalar(b)).to_fuchs()
    return A, WeightContext(0, A.mu)


def pi_sequence(a, b, n):
    """Pi_0 .. Pi_n with Pi_j = a Pi_{j-1} - b Pi_{j-2}."""
    a, b = gr(a), gr(b)
    out = [ONE, a]
    while len(out) <= n:
        out.append(a * out[-1] - b * out[-2])
    return out[: n + 1]


def inverse_term_closed_form(a, b, k):
    """Pi_k / ((z-k)(z-k+1)...z(z+1)) as (numerator, denominator)."""
    pi = pi_sequence(a, b, k)[k]
    den = Poly.from_roots([gr(r) for r in range(k, -2, -1)])
    return pi, den


def inverse_residue_closed_form(a, b, k, l):
    """(-1)^{k-l} Pi_k / ((k-l)! (l+1)!)."""
    pi = pi_sequence(a, b, k)[k]
    sign = ONE if (k - l) % 2 == 0 else -ONE
    return sign * pi / gr(factorial(k - l) * factorial(l + 1))


def second_example_series(a, b, order):
    """Taylor coefficients (t^0..t^order) of u_1, u_2, v_1, v_2."""
    a, b = gr(a), gr(b)
    pi = pi_sequence(a, b, order)
    pic = pi_sequence(a.conj(), b.conj(), order)
    u1 = [ONE] + [ZERO] * order
    u2 = [ZERO] * (order + 1)
    v1 = [ZERO] * (order + 1)
    v2 = [ZERO] * (order + 1)
    for j in range(order + 1):
        f = gr(factorial(j))
        sign = ONE if (j - 1) % 2 == 0 else -ONE
        if j >= 2:
            u1[j] = sign * b * pi[j - 2] / f
        if j >= 1:
            u2[j] = sign * pi[j - 1] / f
            v2[j] = -pic[j - 1] / f
        v1[j] = pic[j] / f
    return {"u1": u1, "u2": u2, "v1": v1, "v2": v2}


def boundary_form_at_zero(u, v, a):
    """u(0) conj v'(0) - u'(0) conj v(0) - a u(0) conj v(0) from Taylor data."""
    a = gr(a)
    return u[0] * v[1].conj() - u[1] * v[0].conj() - a * u[0] * v[0].conj()


def series_residual(A, coeffs):
    """A applied to sum c_n t^n; returns {power: value} (scalar operators)."""
    out = {}
    for n, c in enumerate(coeffs):
        if not c:
            continue
        for k, v in A.apply_monomial(n, (c,)).items():
            out[k] = out.get(k, ZERO) + v[0]
    return {k: v for k, v in out.items() if v}


def series_to_vector(coeffs, w, depth):
    """Coefficient of t^n becomes the chain (c_n) at -n, kept inside the strip."""
    W = w.weight_line
    vals = {}
    for n, c in enumerate(coeffs):
        if c and gr(-n).real > W - depth and -n < W:
            vals[gr(-n)] = ChainVector([(c,)])
    return SpecialVector(vals, 1)


def _random_scalar(rng, lo=-3, hi=3, complex_part=True):
    re = gr(rng.randint(lo, hi)) / gr(rng.choice((1, 1, 2)))
    im = gr(rng.randint(-1, 1)) if complex_part and rng.random() < 0.3 else gr(0)
    return re + im * gr("0+1*i")


def _random_invertible(rng, n):
    from .matrix import Matrix

    while True:
        M = Matrix([[_random_scalar(rng, -2, 2) for _ in range(n)] for _ in range(n)])
        if M.det():
            return M


ROOT_POOL = ("0", "-1", "-2", "1", "1/2", "-1/2", "-3/2", "1/3", "i", "-1+i", "1/2-1/2*i", "-2/3")


def planted_operator(rng, size, mu, roots=None, t_degree=2):
    """Fuchs operator whose principal conormal symbol is U diag(prod (z - r)) V.

    The roots are drawn from a small pool with lattice coincidences so that
    chains across p, p - 1, ... occur.  Higher conormal symbols are random.
    """
    from .matpoly import MatrixPolynomial
    from .matrix import Matrix
    from .fuchs import FuchsOperator

    if roots is None:
        roots = [[gr(rng.choice(ROOT_POOL)) for _ in range(mu)] for _ in range(size)]
    U = _random_invertible(rng, size)
    V = _random_invertible(rng, size)
    zero = Poly([])
    diag = MatrixPolynomial(
        [[Poly.from_roots(roots[i]) if i == j else zero for j in range(size)] for i in range(size)]
    )
    P = MatrixPolynomial.from_coeffs([U], size) * diag * MatrixPolynomial.from_coeffs([V], size)
    # a_k(t) = [z^k] P + sum_{j>=1} t^j B_{jk}
    coeffs = []
    for k in range(mu + 1):
        mats = [P.coeff(k)]
        for _ in range(t_degree):
            if rng.random() < 0.6:
                mats.append(Matrix([[_random_scalar(rng, -2, 2) for _ in range(size)] for _ in range(size)]))
            else:
                mats.append(Matrix.zeros(size))
        coeffs.append(MatrixPolynomial.from_coeffs(mats, size))
    return FuchsOperator(mu, size, coeffs)
