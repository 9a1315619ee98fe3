import random
import threading

import pytest

from conftest import DELTAS
from cone_green.catalog import first_example, inverse_term_closed_form, planted_operator, second_example
from cone_green.errors import NotFuchsType, SingularSymbol
from cone_green.field import ONE, gr
from cone_green.fuchs import FuchsOperator, Operator, conormal_symbol, euler_power_operator, to_fuchs_form
from cone_green.matpoly import MatrixPolynomial, RationalMatrixFunction
from cone_green.matrix import Matrix
from cone_green.poly import Poly
from cone_green.symbols import (
    WeightContext,
    adjoint_symbol,
    complete_symbol,
    ellipticity_check,
    identity_symbol,
    invert_complete_symbol,
    mtp,
    residue_table,
)

z = Poly.z()


def scalar(p, den=None):
    return RationalMatrixFunction(MatrixPolynomial([[p]]), den)


def t_poly(*coeffs):
    return MatrixPolynomial([[Poly([gr(c) for c in coeffs])]])


# -- Fuchs form ---------------------------------------------------------------


def test_first_example_symbols():
    A, _ = first_example()
    assert A.mu == 3
    assert conormal_symbol(A, 0) == MatrixPolynomial([[-z * (z + 1) ** 2]])
    for j in range(1, 5):
        assert conormal_symbol(A, j).is_zero()


def test_classical_to_fuchs_agrees_on_monomials():
    a, b = gr("3/2"), gr("-2+i")
    terms = [(t_poly(1), 2), (t_poly(a), 1), (t_poly(b), 0)]
    A = to_fuchs_form(terms)
    assert A.mu == 2
    assert A.coeffs[2] == t_poly(1)
    assert A.coeffs[1] == t_poly(1, -a)
    assert A.coeffs[0] == t_poly(0, 0, b)
    d = Operator.d()
    classical = d ** 2 + d * a + Operator.scalar(b)
    for m in range(6):
        assert A.apply_monomial(m, (ONE,)) == classical.apply_monomial(m, (ONE,))


def test_order_zero_operator():
    A = to_fuchs_form([(t_poly(5), 0)])
    assert A.mu == 0 and A.coeffs == (t_poly(5),)


def test_negative_powers_that_survive_are_rejected():
    with pytest.raises(NotFuchsType):
        to_fuchs_form([(t_poly(1), 1, 3)])


def test_euler_power_symbol():
    for mu in range(4):
        assert conormal_symbol(euler_power_operator(mu), 0) == MatrixPolynomial([[z ** mu]])


# -- translation product and adjoint -----------------------------------------


def test_identity_is_a_unit():
    S = complete_symbol(first_example()[0])
    one = identity_symbol(1)
    assert mtp(S, one).equal_through(S, 4)
    assert mtp(one, S).equal_through(S, 4)


def test_product_of_first_order_symbols():
    d = complete_symbol(Operator.d().to_fuchs())
    dd = complete_symbol((Operator.d() ** 2).to_fuchs())
    assert mtp(d, d).term(0) == scalar(z * (z + 1))
    assert mtp(d, d).equal_through(dd, 3)


def test_symbol_map_is_multiplicative_on_first_example():
    A, _ = first_example()
    S = complete_symbol(A)
    assert complete_symbol(A.compose(A)).equal_through(mtp(S, S), 4)


def test_adjoint_of_first_example():
    A, w = first_example()
    R = adjoint_symbol(complete_symbol(A), w)
    assert R.term(0) == scalar(z * (z - 1) ** 2)
    assert all(R.term(j).is_zero() for j in range(1, 4))


def test_adjoint_of_second_example_is_the_formal_adjoint():
    a, b = gr("3/2+1/2*i"), gr("-2+i")
    A, w = second_example(a, b)
    d = Operator.d()
    star = (d ** 2 - d * a.conj() + Operator.scalar(b.conj())).to_fuchs()
    assert adjoint_symbol(complete_symbol(A), w).equal_through(complete_symbol(star), 4)


def test_adjoint_is_an_involution():
    rng = random.Random(7)
    for _ in range(5):
        mu = rng.randint(1, 3)
        A = planted_operator(rng, rng.randint(1, 3), mu)
        w = WeightContext(gr(rng.choice(DELTAS)), mu)
        S = complete_symbol(A)
        assert adjoint_symbol(adjoint_symbol(S, w), w).equal_through(S, S.support + 1)


# -- ellipticity -------------------------------------------------------------


def test_ellipticity_of_the_examples():
    A, w = first_example()
    rep = ellipticity_check(A, w)
    assert rep.interior and rep.weight_line_clear and not rep.offending_roots
    A, w = second_example(1, 1)
    assert ellipticity_check(A, w).elliptic


def test_degenerate_principal_coefficient_is_not_interior_elliptic():
    # t^-1 (t D^1 + 1): a_1(0) = 0
    A = FuchsOperator(1, 1, [t_poly(1), t_poly(0, 1)])
    assert not ellipticity_check(A, WeightContext(0, 1)).interior


def test_root_on_the_weight_line_is_reported():
    A, _ = first_example()
    rep = ellipticity_check(A, WeightContext(gr("1/2"), 3))
    assert not rep.weight_line_clear and rep.offending_roots == ((gr(0), 1),)


# -- inversion ---------------------------------------------------------------


def test_inverse_of_first_example():
    S = complete_symbol(first_example()[0])
    Sinv = invert_complete_symbol(S, 4)
    assert Sinv.shifted_term(0) == scalar(Poly([gr(-1)]), z * (z + 1) ** 2)
    assert all(Sinv.shifted_term(k).is_zero() for k in range(1, 5))
    # -1/(z(z+1)^2) = 1/(z+1)^2 + 1/(z+1) - 1/z
    assert residue_table(Sinv, 0) == [(gr(0), Matrix([[gr(-1)]])), (gr(-1), Matrix([[gr(1)]]))]


@pytest.mark.parametrize("a,b", [("3/2", "-2+i"), ("1", "0"), ("-1/3+i", "2")])
def test_inverse_of_second_example_first_terms(a, b):
    a, b = gr(a), gr(b)
    Sinv = invert_complete_symbol(complete_symbol(second_example(a, b)[0]), 2)
    assert Sinv.shifted_term(0) == scalar(Poly([ONE]), z * (z + 1))
    assert Sinv.shifted_term(1) == scalar(Poly([a]), (z - 1) * z * (z + 1))
    assert Sinv.shifted_term(2) == scalar(Poly([a * a - b]), (z - 2) * (z - 1) * z * (z + 1))
    for k in range(3):
        num, den = inverse_term_closed_form(a, b, k)
        assert Sinv.shifted_term(k) == scalar(Poly([num]), den)


def test_inverse_times_symbol_is_identity():
    S = complete_symbol(second_example(gr(2), gr("1+i"))[0])
    Sinv = invert_complete_symbol(S, 4)
    prod = mtp(Sinv, S)
    assert prod.term(0) == RationalMatrixFunction.identity(1)
    assert all(prod.term(l).is_zero() for l in range(1, 5))


def test_singular_symbol_cannot_be_inverted():
    A = FuchsOperator(1, 2, [MatrixPolynomial.zero(2), MatrixPolynomial.from_coeffs([Matrix([[1, 0], [0, 0]])], 2)])
    with pytest.raises(SingularSymbol):
        invert_complete_symbol(complete_symbol(A))


def test_holomorphic_term_has_no_residues():
    S = complete_symbol(first_example()[0])
    assert residue_table(invert_complete_symbol(S, 2), 1) == []


def test_inverse_cache_is_safe_under_concurrent_reads():
    S = complete_symbol(second_example(gr("1/2"), gr(3))[0])
    shared = invert_complete_symbol(S, 0)
    fresh = invert_complete_symbol(S, 6)
    seen = []

    def read():
        seen.append([shared.term(k) for k in range(6, -1, -1)])

    threads = [threading.Thread(target=read) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    want = [fresh.term(k) for k in range(6, -1, -1)]
    assert all(s == want for s in seen)
