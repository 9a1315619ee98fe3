"""Gaussian-rational roots of polynomials over Q(i).

Numerical roots of the squarefree part locate candidates; each candidate is
snapped onto the lattice (1/c) Z[i], where c is the leading coefficient of an
integral multiple of the polynomial, and then confirmed by exact division.
A confirmed root is exact; a rejected candidate is retried at higher
precision before the factor is declared nonrational.
"""

from dataclasses import dataclass
from math import lcm

import mpmath

from .field import GaussianRational, gr
from .poly import Poly


@dataclass(frozen=True)
class RootReport:
    roots: tuple  # ((root, multiplicity), ...) sorted by (Re, Im) descending
    remainder: Poly  # monic cofactor without Gaussian-rational roots

    @property
    def has_remainder(self):
        return self.remainder.degree > 0

    def multiplicity(self, x):
        x = gr(x)
        for r, m in self.roots:
            if r == x:
                return m
        return 0


def _integral(p):
    """Scale p so that all coefficients lie in Z[i]."""
    dens = [c.parts()[2] for c in p.coeffs]
    return p * lcm(*dens)


def _round_gaussian(z, lead):
    """Nearest point of (1/lead) Z[i] to the mpc value z."""
    a, b, d = lead.parts()
    lr = mpmath.mpf(a) / d
    li = mpmath.mpf(b) / d
    wr = z.real * lr - z.imag * li
    wi = z.real * li + z.imag * lr
    g = GaussianRational(int(mpmath.nint(wr)), int(mpmath.nint(wi)))
    return g / lead


def _candidates(sqf, dps):
    coeffs = [mpmath.mpc(mpmath.mpf(c.real.numerator) / c.real.denominator,
                         mpmath.mpf(c.imag.numerator) / c.imag.denominator)
              for c in reversed(sqf.coeffs)]
    with mpmath.workdps(dps):
        found = mpmath.polyroots(coeffs, maxsteps=200 + 20 * sqf.degree, extraprec=4 * dps)
    return found


def rational_roots(den):
    """Exact Gaussian-rational roots with multiplicities.

    >>> z = Poly.z()
    >>> rep = rational_roots(-z * (z + 1) ** 2)
    >>> [(str(r), m) for r, m in rep.roots], rep.has_remainder
    ([('0/1+0/1*i', 1), ('-1/1+0/1*i', 2)], False)
    """
    if den.is_zero():
        raise ValueError("zero polynomial has no finite root multiset")
    remaining = den.monic()
    found = {}
    # roots at zero first; they are common and cheap
    while remaining.degree > 0 and not remaining.coeff(0):
        remaining = Poly(remaining.coeffs[1:])
        found[gr(0)] = found.get(gr(0), 0) + 1
    dps = 50
    while remaining.degree > 0 and dps <= 400:
        sqf = remaining.squarefree()
        lead = _integral(sqf).lead()
        progress = False
        with mpmath.workdps(dps):
            try:
                approx = _candidates(sqf, dps)
            except mpmath.libmp.NoConvergence:
                approx = []
            for z in approx:
                cand = _round_gaussian(z, lead)
                if sqf(cand):
                    continue
                lin = Poly([-cand, 1])
                while True:
                    q, r = remaining.divmod(lin)
                    if r:
                        break
                    remaining = q
                    found[cand] = found.get(cand, 0) + 1
                    progress = True
        if not progress:
            dps *= 2
    roots = sorted(found.items(), key=lambda rm: (-rm[0].real, -rm[0].imag))
    return RootReport(tuple(roots), remaining.monic())


def roots_in_box(den, re_lo, re_hi, closed_lo=True, closed_hi=False):
    """Roots (with multiplicity) whose real part lies in the given range."""
    out = []
    for r, m in rational_roots(den).roots:
        x = r.real
        lo_ok = x >= re_lo if closed_lo else x > re_lo
        hi_ok = x <= re_hi if closed_hi else x < re_hi
        if lo_ok and hi_ok:
            out.append((r, m))
    return out
