"""Invariant suites behind ``cone-green verify``.

Each suite takes a list of cases (label, operator, weight) and returns a
SuiteResult whose checks are (name, passed, detail) triples.  Nothing is
repaired; a failing identity is reported as it was found.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .asymptotic import (
    conjugate_complete_basis,
    principal_part_residuals,
    generalized_keldysh_check,
    membership_violations,
    point_order,
    properness_check,
    strip_basis,
)
from .catalog import first_example, second_example
from .errors import ConeGreenError, PreconditionViolation
from .field import ONE, ZERO, gr, pretty
from .green import verify_theorem_main
from .local import (
    conjugate_local_basis,
    det_order,
    inverse_principal,
    jordan_chains,
    keldysh_check,
    local_pairing,
    tensor_sum,
)
from .symbols import complete_symbol, indicial_roots, invert_complete_symbol, inversion_residual

SUITES = ("global", "green", "local")


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def to_record(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
        }


def catalog_cases():
    A1, w1 = first_example()
    A2, w2 = second_example(gr("3/2"), gr("-2+1*i"))
    return [("first_example", A1, w1), ("second_example", A2, w2)]


def _guard(out, name, fn):
    try:
        ok, detail = fn()
    except ConeGreenError as exc:
        ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
    out.append((name, bool(ok), detail))


# -- local -------------------------------------------------------------------


def pairing_pattern_violations(F, p, primal, conjugate):
    """Entries of [T^r Phi_i, T^s Psi_j] differing from 1 iff i=j, r+s=m_i-1."""
    bad = []
    for i, phi in enumerate(primal.basis):
        for j, psi in enumerate(conjugate.basis):
            for r in range(phi.m):
                for s in range(psi.m):
                    want = ONE if i == j and r + s == phi.m - 1 else ZERO
                    if local_pairing(F, p, phi.T(r), psi.T(s)) != want:
                        bad.append((i, j, r, s))
    return bad


def local_point_checks(F, p, mult=None):
    """Local spectral checks of one analytic matrix function at one point."""
    out = []
    state = {}

    def chains():
        lt = jordan_chains(F, p)
        state["primal"] = lt
        want = det_order(F, p) if mult is None else mult
        return lt.dimension == want, "dim %d, multiplicity %d" % (lt.dimension, want)

    def reconstruct():
        conj = conjugate_local_basis(F, p, state["primal"])
        state["conj"] = conj
        pairs = list(zip(state["primal"].basis, conj.basis))
        return tensor_sum(pairs) == inverse_principal(F, p), ""

    def keldysh():
        bad = keldysh_check(F, p, state["primal"], state["conj"])
        return not bad, "violations %s" % bad if bad else ""

    def pattern():
        bad = pairing_pattern_violations(F, p, state["primal"], state["conj"])
        return not bad, "violations %s" % bad if bad else ""

    _guard(out, "jordan_chains", chains)
    if "primal" in state:
        _guard(out, "conjugate_reconstruction", reconstruct)
    if "conj" in state:
        _guard(out, "keldysh", keldysh)
        _guard(out, "pairing_pattern", pattern)
    return out


def local_suite(cases):
    checks = []
    for label, A, w in cases:
        S = complete_symbol(A)
        F = S.term(0)
        for p, m in indicial_roots(S):
            for name, ok, detail in local_point_checks(F, p, m):
                checks.append(("%s@%s:%s" % (label, pretty(p), name), ok, detail))
    return SuiteResult("local", tuple(checks))


# -- global ------------------------------------------------------------------


def dimension_law(S, w, depth, basis):
    W = w.weight_line
    expected = sum(m for r, m in indicial_roots(S) if W - depth < r.real < W)
    return basis.dimension == expected, "dimension %d, roots in strip %d" % (basis.dimension, expected)


def scheme_stable(small, large):
    """Columns of the deeper scheme restricted to the shallower depth agree."""
    d = small.depth
    a = sorted((str(v.gamma), row) for v, row in zip(small.vectors, small.scheme))
    b = sorted(
        (str(v.gamma), row[:d]) for v, row in zip(large.vectors, large.scheme) if any(row[:d])
    )
    return a == b


def pole_bound_violations(S, w, primal, conjugate, tau, j=0):
    """(p, l, h, h*) where the pole-order bound at level j fails."""
    W = w.weight_line
    depth = primal.depth
    pts = sorted(
        {x - k for v in primal.vectors for x in v.values for k in range(depth)}, key=point_order
    )
    bad = []
    for p in pts:
        if not W - depth < p.real < W:
            continue
        for l in range(j, depth):
            if (p + l).real >= W:
                break
            for h, hs in generalized_keldysh_check(S, w, primal, conjugate, tau, p, l, j):
                bad.append((str(p), l, h, hs))
    return bad


def global_checks(A, w, inversion_terms=None):
    """Strip-level checks; the inversion identity is checked for l <= 2 mu by default."""
    S = complete_symbol(A)
    mu = A.mu
    if inversion_terms is None:
        inversion_terms = 2 * mu + 1
    out = []
    st = {}

    def basis():
        st["B"] = strip_basis(S, w, mu)
        return properness_check(st["B"]), ""

    def deep_basis():
        # the doubled depth is the suite's own choice, so its boundary lines only skip
        try:
            st["B2"] = strip_basis(S, w, 2 * mu)
        except PreconditionViolation as exc:
            return True, "skipped: %s" % exc
        return properness_check(st["B2"]), ""

    def membership():
        bad = []
        for _, _, v in st["B"].orbit():
            bad += membership_violations(S, v, w, mu)
        return not bad, "poles at %s" % [str(x) for x in bad] if bad else ""

    def dimension():
        return dimension_law(S, w, mu, st["B"])

    def stable():
        return scheme_stable(st["B"], st["B2"]), ""

    def conjugate():
        st["Sinv"] = invert_complete_symbol(S, 2 * mu)
        st["C"] = conjugate_complete_basis(S, w, mu, st["B"], st["Sinv"])
        st["C2"] = conjugate_complete_basis(S, w, 2 * mu, st["B2"], st["Sinv"])
        return True, ""

    def principal_parts():
        C, tau = st["C2"]
        bad = principal_part_residuals(S, w, st["B2"], C, tau, jmax=mu, Sinv=st["Sinv"])
        return not bad, "mismatch at %s" % [(str(p), j) for p, j in bad] if bad else ""

    def pole_bounds():
        C, tau = st["C"]
        bad = pole_bound_violations(S, w, st["B"], C, tau, 0)
        return not bad, "violations %s" % bad if bad else ""

    def inversion():
        Sinv = invert_complete_symbol(S, inversion_terms)
        bad = [l for l in range(inversion_terms) if not inversion_residual(S, Sinv, l).is_zero()]
        return not bad, "nonzero at l=%s" % bad if bad else ""

    _guard(out, "proper_basis", basis)
    if "B" in st:
        _guard(out, "membership", membership)
        _guard(out, "dimension_law", dimension)
        _guard(out, "deep_basis", deep_basis)
    if "B2" in st:
        _guard(out, "scheme_stable", stable)
        _guard(out, "conjugate_basis", conjugate)
    if "C2" in st:
        _guard(out, "principal_parts", principal_parts)
        _guard(out, "pole_bounds_j0", pole_bounds)
    _guard(out, "inversion", inversion)
    return out


def global_suite(cases):
    checks = []
    for label, A, w in cases:
        for name, ok, detail in global_checks(A, w):
            checks.append(("%s:%s" % (label, name), ok, detail))
    return SuiteResult("global", tuple(checks))


# -- green -------------------------------------------------------------------


def green_suite(cases):
    checks = []
    for label, A, w in cases:
        try:
            rep = verify_theorem_main(A, w)
        except ConeGreenError as exc:
            checks.append(("%s:pipeline" % label, False, "%s: %s" % (type(exc).__name__, exc)))
            continue
        for name in sorted(rep.checks):
            checks.append(("%s:%s" % (label, name), bool(rep.checks[name]), ""))
    return SuiteResult("green", tuple(checks))


RUNNERS = {"global": global_suite, "green": green_suite, "local": local_suite}


def run_suites(names, cases=None):
    """Run the named suites; results come back ordered by suite name."""
    if cases is None:
        cases = catalog_cases()
    names = sorted(set(names))
    if len(names) == 1:
        return [RUNNERS[names[0]](cases)]
    with ThreadPoolExecutor(max_workers=len(names)) as pool:
        futures = {n: pool.submit(RUNNERS[n], cases) for n in names}
        return [futures[n].result() for n in names]
