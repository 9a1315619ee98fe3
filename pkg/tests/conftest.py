import random
import sys

import pytest

from cone_green.catalog import planted_operator
from cone_green.errors import PreconditionViolation
from cone_green.field import gr
from cone_green.matpoly import MatrixPolynomial
from cone_green.matrix import Matrix
from cone_green.poly import Poly
from cone_green.symbols import WeightContext, complete_symbol
from cone_green.asymptotic import strip_basis

DELTAS = ("-1", "-1/2", "0", "1/2", "1", "-3/2", "1/4", "-3/4")


def small_scalar(rng, lo=-2, hi=2):
    re = gr(rng.randint(lo, hi)) / gr(rng.choice((1, 2)))
    im = gr(rng.randint(-1, 1)) if rng.random() < 0.3 else gr(0)
    return re + im * gr("i")


def random_matrix(rng, n):
    return Matrix([[small_scalar(rng) for _ in range(n)] for _ in range(n)])


def random_invertible(rng, n):
    while True:
        M = random_matrix(rng, n)
        if M.det():
            return M


def planted_case(seed):
    """(operator, weight) drawn the same way for every seed."""
    rng = random.Random(seed)
    N = rng.choice((1, 1, 2))
    mu = rng.choice((1, 2, 3)) if N == 1 else rng.choice((1, 2))
    A = planted_operator(rng, N, mu)
    delta = gr(rng.choice(DELTAS))
    return A, WeightContext(delta, mu)


def usable_planted_cases(count, start=0, need_basis=True):
    """First ``count`` planted operators whose strips avoid boundary roots."""
    out = []
    seed = start
    while len(out) < count:
        A, w = planted_case(seed)
        seed += 1
        try:
            B = strip_basis(complete_symbol(A), w, A.mu)
            strip_basis(complete_symbol(A), w, 2 * A.mu)
        except PreconditionViolation:
            continue
        if need_basis and not B.vectors:
            continue
        out.append((seed - 1, A, w))
    return out


def planted_matrix_function(rng, n, p, max_order=3):
    """F = U(z) diag((z-p)^k_i) V(z) with U(p), V(p) invertible."""
    p = gr(p)
    w = Poly([-p, 1])
    U = MatrixPolynomial.from_coeffs([random_invertible(rng, n), random_matrix(rng, n)], n)
    V = MatrixPolynomial.from_coeffs([random_invertible(rng, n), random_matrix(rng, n)], n)
    U = U.compose_affine(gr(1), -p)
    V = V.compose_affine(gr(1), -p)
    ks = [rng.randint(0, max_order) for _ in range(n)]
    if not any(ks):
        ks[0] = 1
    zero = Poly([])
    D = MatrixPolynomial([[w ** ks[i] if i == j else zero for j in range(n)] for i in range(n)])
    return U * D * V, sum(ks)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    report = getattr(sys.modules.get("test_acceptance"), "REPORT", None)
    if report:
        terminalreporter.section("acceptance criteria")
        for n in sorted(report):
            terminalreporter.write_line(report[n])
