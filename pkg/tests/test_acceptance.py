"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import planted_matrix_function, usable_planted_cases  # noqa: E402
from cone_green.asymptotic import (  # noqa: E402
    conjugate_complete_basis,
    principal_part_residuals,
    strip_basis,
)
from cone_green.catalog import (  # noqa: E402
    boundary_form_at_zero,
    first_example,
    inverse_residue_closed_form,
    inverse_term_closed_form,
    pi_sequence,
    planted_operator,
    second_example,
    second_example_series,
    series_to_vector,
)
from cone_green.checks import pole_bound_violations, local_point_checks  # noqa: E402
from cone_green.field import gr  # noqa: E402
from cone_green.green import boundary_pairing, render_green_formula, verify_theorem_main  # noqa: E402
from cone_green.matpoly import MatrixPolynomial, RationalMatrixFunction  # noqa: E402
from cone_green.poly import Poly  # noqa: E402
from cone_green.symbols import (  # noqa: E402
    WeightContext,
    adjoint_symbol,
    complete_symbol,
    identity_symbol,
    inversion_residual,
    inversion_residual_literal,
    invert_complete_symbol,
    mtp,
    residue_table,
)

z = Poly.z()
SAMPLES = [("3/2", "-2+i"), ("1", "0"), ("-1/3+i", "2"), ("1/2-1/2*i", "-1/4")]

REPORT = {}


def record(n, ok, what):
    line = "criterion %2d %s: %s" % (n, "PASS" if ok else "FAIL", what)
    REPORT[n] = line
    print(line)
    return ok


def scalar(p, den=None):
    return RationalMatrixFunction(MatrixPolynomial([[p]]), den)


# -- criteria ------------------------------------------------------------------------


def criterion_1():
    A, w = first_example()
    S = complete_symbol(A)
    R = adjoint_symbol(S, w)
    ok = S.term(0) == scalar(-z * (z + 1) ** 2)
    ok &= all(S.term(j).is_zero() for j in range(1, 6))
    ok &= R.term(0) == scalar(z * (z - 1) ** 2)
    ok &= all(R.term(j).is_zero() for j in range(1, 6))
    return ok, "first example conormal symbols -z(z+1)^2, 0, ... and adjoint z(z-1)^2"


def criterion_2():
    from cone_green.asymptotic import SpecialVector

    def vec(points):
        return SpecialVector({gr(p): [(gr(x),) for x in xs] for p, xs in points.items()}, 1)

    A, w = first_example()
    S = complete_symbol(A)
    B = strip_basis(S, w, A.mu)
    C, tau = conjugate_complete_basis(S, w, A.mu, B)
    ok = B.vectors == (vec({0: [1]}), vec({-1: [1, 0]}))
    ok &= C.vectors == (vec({1: [1, -1]}), vec({0: [1]}))
    ok &= tau == (1, 0)
    return ok, "first example Phi_1(0)=(1), Phi_2(-1)=(1,0); Psi_1(1)=(1,-1), Psi_2(0)=(1); tau swaps 1 and 2"


def criterion_3():
    report = verify_theorem_main(*first_example())
    text, _ = render_green_formula(report)
    ok = text == "[u,v]_A = −αδ̄ + β_0γ̄_0 + β_0γ̄_1 − β_1γ̄_0"
    ok &= all(report.checks[k] for k in ("pattern", "nondegenerate", "skew_adjoint"))
    return ok, "first example Green formula %s; sign pattern, non-degeneracy, skew-adjointness" % text


def criterion_4():
    ok = True
    for a, b in SAMPLES:
        a, b = gr(a), gr(b)
        Sinv = invert_complete_symbol(complete_symbol(second_example(a, b)[0]), 8)
        for k in range(9):
            num, den = inverse_term_closed_form(a, b, k)
            ok &= Sinv.shifted_term(k) == scalar(Poly([num]), den)
            table = residue_table(Sinv, k)
            want = [(gr(l), inverse_residue_closed_form(a, b, k, l)) for l in range(k, -2, -1)]
            if num.is_zero():
                want = []
            ok &= [(p, r[0, 0]) for p, r in table] == want
    return ok, "second example inverse terms and residues for k <= 8 on %d (a,b) samples" % len(SAMPLES)


def criterion_5():
    ok = True
    for a, b in SAMPLES:
        a, b = gr(a), gr(b)
        pi = pi_sequence(a, b, 12)
        for l in range(2, 13):
            for j in range(l - 1):
                ok &= pi[l] == pi[j + 1] * pi[l - j - 1] - b * pi[j] * pi[l - j - 2]
        conj = pi_sequence(-a.conj(), b.conj(), 12)
        ok &= all(conj[j] == gr((-1) ** j) * pi[j].conj() for j in range(13))
    return ok, "Pi splitting identity for 2 <= l <= 12 and conjugation symmetry for j <= 12"


def criterion_6():
    ok = True
    for a, b in SAMPLES:
        a, b = gr(a), gr(b)
        A, w = second_example(a, b)
        S = complete_symbol(A)
        series = second_example_series(a, b, 12)
        for un in ("u1", "u2"):
            for vn in ("v1", "v2"):
                u, v = series[un], series[vn]
                direct = boundary_form_at_zero(u, v, a)
                residue = boundary_pairing(S, w, series_to_vector(u, w, 2), series_to_vector(v, w, 2))
                expected = gr(-1) if (un, vn) in (("u1", "v2"), ("u2", "v1")) else gr(0)
                ok &= direct == residue == expected
    return ok, "second example residue pairing equals the boundary form on series solutions"


def _random_symbols(rng, count):
    out = []
    for _ in range(count):
        n = rng.randint(1, 3)
        out.append((n, [planted_operator(rng, n, rng.randint(0, 3) if n < 3 else rng.randint(0, 2)) for _ in range(3)]))
    return out


def criterion_7():
    rng = random.Random(77)
    ok = True
    for n, (A, B, C) in _random_symbols(rng, 5):
        S, T, U = (complete_symbol(X) for X in (A, B, C))
        span = 4
        ok &= mtp(mtp(S, T), U).equal_through(mtp(S, mtp(T, U)), span)
        ok &= mtp(S, identity_symbol(n)).equal_through(S, span)
        ok &= mtp(identity_symbol(n), S).equal_through(S, span)
        delta = gr(rng.choice(("-1", "0", "1/2", "-3/2")))
        lhs = adjoint_symbol(mtp(S, T), WeightContext(delta, S.mu + T.mu))
        rhs = mtp(adjoint_symbol(T, WeightContext(delta, T.mu)), adjoint_symbol(S, WeightContext(delta, S.mu)))
        ok &= lhs.equal_through(rhs, span)
        ok &= complete_symbol(A.compose(B)).equal_through(mtp(S, T), span)
    return ok, "associativity, unit, adjoint anti-homomorphism, operator-to-symbol homomorphism on 5 random instances"


def _inversion_cases():
    rng = random.Random(88)
    cases = [complete_symbol(first_example()[0])]
    cases += [complete_symbol(second_example(gr(a), gr(b))[0]) for a, b in SAMPLES[:2]]
    while len(cases) < 8:
        n = rng.randint(1, 2)
        A = planted_operator(rng, n, rng.randint(1, 2))
        cases.append(complete_symbol(A))
    return cases


def _inversion_holds(residual):
    ok = True
    for S in _inversion_cases():
        Sinv = invert_complete_symbol(S, 6)
        ok &= all(residual(S, Sinv, l).is_zero() for l in range(7))
    return ok


def criterion_8():
    literal = _inversion_holds(inversion_residual_literal)
    product = _inversion_holds(inversion_residual)
    what = "inversion identity for l <= 6 with the shifts t(z+mu) s(z+k) as written: %s; " % (
        "holds" if literal else "does not hold"
    )
    what += "in translation-product form t(z+mu-k) s(z): %s" % ("holds" if product else "does not hold")
    return literal, what


def criterion_9():
    rng = random.Random(2024)
    ok = True
    for _ in range(20):
        p = rng.choice(["0", "-1", "1/2", "i", "2-1/2*i"])
        F, mult = planted_matrix_function(rng, rng.randint(1, 3), p)
        ok &= all(passed for _, passed, _ in local_point_checks(F, gr(p), mult))
    return ok, "chain dimension, principal part, Keldysh and antidiagonal pairing on 20 planted matrix functions"


def criterion_10():
    cases = [first_example(), second_example(gr("3/2"), gr("-2+i"))]
    cases += [(A, w) for _, A, w in usable_planted_cases(5)]
    ok = True
    for A, w in cases:
        S = complete_symbol(A)
        B = strip_basis(S, w, 2 * A.mu)
        C, tau = conjugate_complete_basis(S, w, 2 * A.mu, B)
        ok &= principal_part_residuals(S, w, B, C, tau, jmax=A.mu) == []
        B1 = strip_basis(S, w, A.mu)
        C1, tau1 = conjugate_complete_basis(S, w, A.mu, B1)
        ok &= pole_bound_violations(S, w, B1, C1, tau1, 0) == []
    return ok, "principal-part reconstruction for j < mu and pole-order bounds at j = 0 on 7 operators"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


# -- pytest ------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 9, 10])
def test_criterion(n):
    ok, what = CRITERIA[n - 1]()
    assert record(n, ok, what)


@pytest.mark.xfail(strict=True, reason="the shifts as written do not give the identity once s^{mu-1} is nonzero")
def test_criterion_8_as_written():
    ok, what = criterion_8()
    assert record(8, ok, what)


def test_inversion_identity_in_translation_product_form():
    assert _inversion_holds(inversion_residual)


if __name__ == "__main__":
    for n, fn in enumerate(CRITERIA, 1):
        record(n, *fn())
    sys.exit(0 if all("PASS" in line for line in REPORT.values()) else 1)
