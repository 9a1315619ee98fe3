from hypothesis import given, settings
from hypothesis import strategies as st

from cone_green.field import ZERO, gr
from cone_green.laurent import laurent_expand
from cone_green.matpoly import MatrixPolynomial, RationalMatrixFunction, matrix_inverse_rational
from cone_green.matrix import Matrix, nullspace, solve
from cone_green.poly import Poly
from cone_green.roots import rational_roots

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
coeff = st.builds(lambda a, b: gr(a) + gr(b) * gr("i"), small, small)
polys = st.lists(coeff, min_size=1, max_size=5).map(Poly)
points = st.sampled_from(["0", "-1", "1/2", "i", "-1+i", "2"]).map(gr)


def test_poly_from_roots_and_eval():
    z = Poly.z()
    p = -z * (z + 1) ** 2
    assert p == Poly.from_roots([gr(0), gr(-1), gr(-1)], lead=-1)
    assert p(gr(-1)) == ZERO and p(gr(1)) == gr(-4)
    assert p.order_at(gr(-1)) == 2


@given(polys, polys)
def test_division_with_remainder(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys, coeff)
def test_shift_is_composition(p, c):
    assert p.shift(c)(gr(2)) == p(gr(2) + c)


def test_rational_roots_with_multiplicity():
    z = Poly.z()
    rep = rational_roots((z - gr("1/2")) ** 2 * (z - gr("-1+i")) * (z ** 2 + 2))
    assert dict(rep.roots) == {gr("1/2"): 2, gr("-1+i"): 1}
    assert rep.has_remainder and rep.remainder == z ** 2 + 2


def test_matrix_inverse_and_det():
    M = Matrix([[gr(1), gr(2)], [gr(3), gr("4+i")]])
    assert M * M.inverse() == Matrix.identity(2)
    assert M.det() == gr("-2+i")


def test_nullspace_and_solve():
    rows = [[gr(1), gr(2), gr(3)], [gr(2), gr(4), gr(6)]]
    ker = nullspace(rows, 3)
    assert len(ker) == 2
    for v in ker:
        assert all(sum((a * b for a, b in zip(r, v)), ZERO) == ZERO for r in rows)
    x, free = solve([[gr(1), gr(1)], [gr(1), gr(-1)]], 2, [gr(3), gr(1)])
    assert list(x) == [gr(2), gr(1)] and not free


def test_rational_inverse_of_matrix_polynomial():
    z = Poly.z()
    F = MatrixPolynomial([[z, Poly([gr(1)])], [Poly([]), z ** 2]])
    inv = matrix_inverse_rational(F)
    assert (inv * RationalMatrixFunction.from_poly(F)) == RationalMatrixFunction.identity(2)


@settings(max_examples=60)
@given(polys, polys, points, st.integers(0, 3))
def test_laurent_reassembly(num, extra, p, nu):
    """Principal part plus Taylor data reproduce f exactly near p."""
    w = Poly([-p, 1])
    den = w ** nu * (extra if extra.degree > 0 and extra(p) else Poly([gr(1)]))
    f = RationalMatrixFunction(MatrixPolynomial([[num]]), den)
    order = 4
    exp = laurent_expand(f, p, order)
    rest = f - exp.principal_function()
    tail = laurent_expand(rest, p, order)
    assert not tail.principal
    for k in range(order + 1):
        assert tail.coeff(k) == exp.coeff(k)
    if nu and num(p):
        assert exp.pole_order == nu
