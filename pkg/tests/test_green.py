import pytest

from conftest import usable_planted_cases
from cone_green.asymptotic import SpecialVector
from cone_green.catalog import first_example, second_example, second_example_series, series_to_vector
from cone_green.errors import PreconditionViolation
from cone_green.field import ZERO, gr
from cone_green.green import (
    boundary_pairing,
    conjugate_jordan_basis,
    domain_quotient,
    render_expansion,
    render_green_formula,
    verify_theorem_main,
)
from cone_green.matrix import Matrix
from cone_green.symbols import WeightContext, complete_symbol


def vec(points):
    return SpecialVector({gr(p): [(gr(x),) for x in xs] for p, xs in points.items()}, 1)


# -- domain quotients -------------------------------------------------------


def test_first_example_quotient_is_three_dimensional():
    Q = domain_quotient(*first_example())
    assert Q.dimension == 3 and Q.lengths == (1, 2)


def test_second_example_quotient_is_two_dimensional():
    Q = domain_quotient(*second_example(gr("3/2"), gr("-2+i")))
    assert Q.dimension == 2 and Q.lengths == (1, 1)


def test_no_strip_exponents_gives_zero_quotient():
    A, _ = first_example()
    Q = domain_quotient(A, WeightContext(-5, 3))
    assert Q.dimension == 0
    report = verify_theorem_main(A, WeightContext(-5, 3))
    assert report.verified
    assert render_green_formula(report)[0] == "[u,v]_A = 0"


def test_forbidden_weight_line_is_rejected():
    A, _ = first_example()
    with pytest.raises(PreconditionViolation):
        domain_quotient(A, WeightContext(gr("1/2"), 3))


# -- the pairing --------------------------------------------------------------


@pytest.mark.parametrize("a,b", [("3/2", "-2+i"), ("1", "0"), ("-1/2+i", "1/3")])
def test_second_example_pairing_on_series_solutions(a, b):
    """u(0) conj v'(0) - u'(0) conj v(0) - a u(0) conj v(0) on the initial data."""
    A, w = second_example(gr(a), gr(b))
    S = complete_symbol(A)
    series = second_example_series(gr(a), gr(b), 12)
    us = [series_to_vector(series[k], w, 2) for k in ("u1", "u2")]
    vs = [series_to_vector(series[k], w, 2) for k in ("v1", "v2")]
    table = [[boundary_pairing(S, w, u, v) for v in vs] for u in us]
    assert table == [[ZERO, gr(-1)], [gr(-1), ZERO]]


def test_disjoint_strips_pair_to_zero():
    A, w = first_example()
    S = complete_symbol(A)
    far = vec({-7: [1]})
    assert boundary_pairing(S, w, vec({0: [1]}), far) == ZERO


def test_pairing_is_skew_under_the_shift():
    A, w = first_example()
    S = complete_symbol(A)
    Q = domain_quotient(A, w)
    C, _ = conjugate_jordan_basis(Q)
    for _, _, u in Q.jordan_basis():
        for _, _, v in C.jordan_basis():
            assert boundary_pairing(S, w, u.T(), v) == -boundary_pairing(S, w, u, v.T())


# -- conjugate Jordan bases ----------------------------------------------------------


def test_first_example_conjugate_jordan_basis():
    Q = domain_quotient(*first_example())
    C, tau = conjugate_jordan_basis(Q)
    assert C.basis.vectors == (vec({1: [1, -1]}), vec({0: [1]}))
    assert tau == (1, 0)


def test_second_example_conjugate_recovers_initial_data():
    a, b = gr("3/2"), gr("-2+i")
    A, w = second_example(a, b)
    C, tau = conjugate_jordan_basis(domain_quotient(A, w))
    series = second_example_series(a, b, 4)
    assert C.basis.vectors == tuple(series_to_vector(series[k], w, 2) for k in ("v1", "v2"))


def test_rescaled_primal_rescales_the_partner():
    Q = domain_quotient(*first_example())
    C, tau = conjugate_jordan_basis(Q)
    phi1, phi2 = Q.basis.vectors
    C2, tau2 = conjugate_jordan_basis(Q.with_vectors([phi1.scale(2), phi2]))
    assert tau2 == tau
    assert C2.basis.vectors[tau[0]] == C.basis.vectors[tau[0]].scale("1/2")
    assert C2.basis.vectors[tau[1]] == C.basis.vectors[tau[1]]


# -- the full statement -----------------------------------------------------------------


def test_first_example_is_verified_with_the_expected_pattern():
    report = verify_theorem_main(*first_example())
    assert report.verified, report.failures
    # rows Phi_1, Phi_2, T Phi_2; columns Psi_1, T Psi_1, Psi_2
    assert report.pairing == Matrix([[ZERO, ZERO, gr(-1)], [ZERO, gr(1), ZERO], [gr(-1), ZERO, ZERO]])


def test_second_example_is_verified():
    report = verify_theorem_main(*second_example(gr("3/2"), gr("-2+i")))
    assert report.verified, report.failures
    assert report.checks["same_characteristic"] and report.checks["skew_adjoint"]


def test_planted_operators_are_verified():
    for seed, A, w in usable_planted_cases(3):
        report = verify_theorem_main(A, w)
        assert report.verified, (seed, report.failures)


# -- rendering ------------------------------------------------------------------------------


def test_first_example_formula():
    text, record = render_green_formula(verify_theorem_main(*first_example()))
    assert text == "[u,v]_A = −αδ̄ + β_0γ̄_0 + β_0γ̄_1 − β_1γ̄_0"
    assert record["text"] == text
    assert [t["primal"] for t in record["terms"]] == ["α", "β_0", "β_0", "β_1"]


def test_second_example_formula_carries_the_first_order_coefficient():
    text, _ = render_green_formula(verify_theorem_main(*second_example(gr("3/2"), gr("-2+i"))))
    assert text == "[u,v]_A = −3/2·αγ̄ + αδ̄ − βγ̄"


def test_log_convention_of_expansions():
    assert render_expansion(vec({-1: [1, 0]})) == "−t·log t"
    assert render_expansion(vec({0: [1]})) == "1"
    assert render_expansion(vec({})) == "0"
