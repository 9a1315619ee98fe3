import pytest

from conftest import usable_planted_cases
from cone_green.asymptotic import (
    SpecialVector,
    basis_from_vectors,
    conjugate_complete_basis,
    principal_part_residuals,
    generalized_keldysh_check,
    membership_violations,
    properness_check,
    strip_basis,
    theta,
)
from cone_green.catalog import first_example, second_example, second_example_series, series_to_vector
from cone_green.checks import dimension_law, pole_bound_violations, scheme_stable
from cone_green.errors import PreconditionViolation
from cone_green.field import gr
from cone_green.symbols import WeightContext, complete_symbol


def vec(points):
    """{point: entries} with scalar entries."""
    return SpecialVector({gr(p): [(gr(x),) for x in xs] for p, xs in points.items()}, 1)


@pytest.fixture(scope="module")
def first():
    A, w = first_example()
    S = complete_symbol(A)
    B = strip_basis(S, w, 3)
    C, tau = conjugate_complete_basis(S, w, 3, B)
    return S, w, B, C, tau


def second(a, b):
    A, w = second_example(gr(a), gr(b))
    S = complete_symbol(A)
    B = strip_basis(S, w, 2)
    C, tau = conjugate_complete_basis(S, w, 2, B)
    return S, w, B, C, tau


# -- theta ------------------------------------------------------------------------


def test_theta_vanishes_on_first_example_basis(first):
    S, w, B, _, _ = first
    phi2 = vec({-1: [1, 0]})
    assert B.vectors[1] == phi2
    assert theta(phi2, S, 0).is_holomorphic()
    for _, _, v in B.orbit():
        assert membership_violations(S, v, w, 3) == []


def test_theta_detects_a_violator(first):
    S, w, _, _, _ = first
    bad = vec({0: [1, 0]})  # 1/z^2 against a simple root
    assert theta(bad, S, 0).pole_order == 1
    assert membership_violations(S, bad, w, 3) == [gr(0)]


# -- strip bases --------------------------------------------------------------------


def test_first_example_basis(first):
    _, _, B, _, _ = first
    assert B.vectors == (vec({0: [1]}), vec({-1: [1, 0]}))
    # 0 enters the strip at level 2, -1 only at level 3
    assert B.characteristic == [(gr(0), (1, 1)), (gr(-1), (2,))]
    assert properness_check(B)


def test_second_example_characteristic():
    S, w, B, _, _ = second("3/2", "-2+i")
    assert B.characteristic == [(gr(0), (1, 1)), (gr(-1), (1,))]
    assert B.dimension == 2


def test_second_example_has_nothing_beyond_depth_two():
    S = complete_symbol(second_example(gr("3/2"), gr("-2+i"))[0])
    assert strip_basis(S, WeightContext(2, 2), 2).vectors == ()


def test_no_roots_in_strip_gives_empty_basis():
    S = complete_symbol(first_example()[0])
    B = strip_basis(S, WeightContext(-5, 3), 3)
    assert B.vectors == () and B.dimension == 0 and properness_check(B)


def test_root_on_a_strip_boundary_is_a_precondition_violation():
    S = complete_symbol(first_example()[0])
    with pytest.raises(PreconditionViolation):
        strip_basis(S, WeightContext(gr("-1/2"), 3), 3)


def test_non_proper_layering_is_rejected():
    _, w = first_example()
    layered = basis_from_vectors([vec({0: [1]}), vec({0: [1], -1: [1, 0]})], w, 3)
    assert not properness_check(layered)
    assert properness_check(basis_from_vectors([], w, 3))


def test_dimension_law_and_scheme_stability():
    for A, w in (first_example(), second_example(gr(2), gr("i"))):
        S = complete_symbol(A)
        B = strip_basis(S, w, A.mu)
        assert dimension_law(S, w, A.mu, B)[0]
        assert scheme_stable(B, strip_basis(S, w, 2 * A.mu))


# -- conjugate bases ------------------------------------------------------------------


def test_first_example_conjugate(first):
    _, _, _, C, tau = first
    assert C.vectors == (vec({1: [1, -1]}), vec({0: [1]}))
    # Phi_1 <-> Psi_2 and Phi_2 <-> Psi_1
    assert tau == (1, 0)


@pytest.mark.parametrize("a,b", [("3/2", "-2+i"), ("1", "0"), ("-1+1/2*i", "1/3")])
def test_second_example_conjugate_matches_series_solutions(a, b):
    S, w, B, C, tau = second(a, b)
    series = second_example_series(gr(a), gr(b), 4)
    v1 = series_to_vector(series["v1"], w, 2)
    v2 = series_to_vector(series["v2"], w, 2)
    assert C.vectors == (v1, v2)
    # u_1 <-> v_2, u_2 <-> v_1
    assert tau == (1, 0)


def test_empty_primal_has_empty_conjugate():
    S = complete_symbol(first_example()[0])
    w = WeightContext(-5, 3)
    C, tau = conjugate_complete_basis(S, w, 3, strip_basis(S, w, 3))
    assert C.vectors == () and tau == ()


def test_principal_parts_are_reconstructed_on_the_examples():
    for A, w in (first_example(), second_example(gr("3/2"), gr("-2+i"))):
        S = complete_symbol(A)
        B = strip_basis(S, w, 2 * A.mu)
        C, tau = conjugate_complete_basis(S, w, 2 * A.mu, B)
        assert principal_part_residuals(S, w, B, C, tau, jmax=A.mu) == []


def test_principal_parts_on_planted_operators():
    for _, A, w in usable_planted_cases(4):
        S = complete_symbol(A)
        B = strip_basis(S, w, 2 * A.mu)
        C, tau = conjugate_complete_basis(S, w, 2 * A.mu, B)
        assert principal_part_residuals(S, w, B, C, tau, jmax=A.mu) == []


# -- generalized Keldysh ------------------------------------------------------------------


def test_keldysh_level_zero_on_first_example(first):
    S, w, B, C, tau = first
    for p in (0, -1, -2):
        assert generalized_keldysh_check(S, w, B, C, tau, p, 0, 0) == []
    assert pole_bound_violations(S, w, B, C, tau, 0) == []


@pytest.mark.parametrize("a,b", [("3/2", "-2+i"), ("1", "0"), ("0", "1")])
def test_second_example_two_term_sum(a, b):
    S, w, B, C, tau = second(a, b)
    assert generalized_keldysh_check(S, w, B, C, tau, -1, 1, 0) == []
    assert pole_bound_violations(S, w, B, C, tau, 0) == []


@pytest.mark.xfail(
    strict=True,
    reason="at p=-1, l=j=1 the pair (u_1, v_1) leaves -1/(z+1) + O(1) for a=1, b=0 against bound 0",
)
def test_second_example_leading_bound_only():
    S, w, B, C, tau = second("1", "0")
    assert generalized_keldysh_check(S, w, B, C, tau, -1, 1, 1) == []


def test_second_example_leading_bound_holds_when_a_vanishes():
    S, w, B, C, tau = second("0", "1")
    assert generalized_keldysh_check(S, w, B, C, tau, -1, 1, 1) == []


def test_keldysh_level_zero_on_planted_operators():
    for _, A, w in usable_planted_cases(4):
        S = complete_symbol(A)
        B = strip_basis(S, w, A.mu)
        C, tau = conjugate_complete_basis(S, w, A.mu, B)
        assert pole_bound_violations(S, w, B, C, tau, 0) == []
