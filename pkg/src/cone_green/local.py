"""Local asymptotic types of an analytic matrix function at one point.

A chain (phi_0..phi_{m-1}) lies in L_F at p when F(z) Phi[z-p] is
holomorphic at p, i.e. sum_{n+r=l} F_n phi_r = 0 for l < m, where F_n are
the Taylor coefficients of F at p.
"""

from dataclasses import dataclass

from .chains import ChainVector, apply_series, matrix_series_from_taylor, pair_series, tensor
from .errors import DegenerateBasis, SingularSymbol
from .field import ONE, ZERO, gr
from .laurent import laurent_expand
from .matpoly import MatrixPolynomial, RationalMatrixFunction, matrix_inverse_rational
from .matrix import Matrix, nullspace, reduce_against, row_space, solve


def taylor_matrices(F, p, count):
    """First ``count`` Taylor coefficients of F at p; F must be holomorphic there."""
    p = gr(p)
    if isinstance(F, MatrixPolynomial):
        return F.taylor(p, count)
    exp = laurent_expand(F, p, max(count - 1, 0))
    if exp.pole_order:
        raise ValueError("function has a pole at %s" % p)
    return list(exp.taylor[:count])


def det_order(F, p):
    """Order of p as a zero of det F."""
    if isinstance(F, RationalMatrixFunction):
        num, den = F.numerator, F.denominator
        det = num.det()
        if det.is_zero():
            raise SingularSymbol("det F vanishes identically")
        return det.order_at(p) - F.size * (den.order_at(p) if den.degree > 0 else 0)
    det = F.det()
    if det.is_zero():
        raise SingularSymbol("det F vanishes identically")
    return det.order_at(p)


def _size(F):
    return F.size


@dataclass(frozen=True)
class LocalType:
    point: object
    basis: tuple
    dim: int

    @property
    def characteristic(self):
        return tuple(c.m for c in self.basis)

    @property
    def dimension(self):
        return sum(self.characteristic)

    def orbit(self):
        """[(i, s, T^s Phi_i)] in basis order."""
        return [(i, s, c.T(s)) for i, c in enumerate(self.basis) for s in range(c.m)]


def toeplitz_rows(mats, M, N):
    """Equations sum_{n+r=l} F_n phi_r = 0, l < M, on padded coordinates."""
    rows = []
    for l in range(M):
        for a in range(N):
            row = [ZERO] * (M * N)
            for r in range(l + 1):
                F = mats[l - r]
                for b in range(N):
                    row[r * N + b] = F[a, b]
            rows.append(row)
    return rows


def characteristic_basis(vectors, M, N):
    """Jordan generators of a T-invariant space of padded chains.

    ``vectors`` span a subspace K of C^{NM} (padded chain coordinates) that
    is closed under T.  Layers are processed from the longest length down;
    each layer is reduced to row-echelon form against what lies below it.
    """
    K_rows, _ = row_space(vectors, M * N) if vectors else ([], [])
    if not K_rows:
        return []

    def shorter_than(k):
        # K intersected with {first (M-k)*N coordinates vanish}
        if k >= M:
            return [tuple(r) for r in K_rows]
        if k <= 0:
            return []
        cut = (M - k) * N
        # solve for combinations of K_rows with the cut coordinates zero
        coeff_rows = [[K_rows[i][c] for i in range(len(K_rows))] for c in range(cut)]
        ker = nullspace(coeff_rows, len(K_rows)) if coeff_rows else [
            tuple(ONE if i == j else ZERO for i in range(len(K_rows))) for j in range(len(K_rows))
        ]
        out = []
        for coef in ker:
            v = [ZERO] * (M * N)
            for c, r in zip(coef, K_rows):
                if c:
                    for j, x in enumerate(r):
                        if x:
                            v[j] = v[j] + c * x
            out.append(tuple(v))
        return out

    def shift(v):
        return (ZERO,) * N + tuple(v[: (M - 1) * N])

    gens = []
    layers = {k: shorter_than(k) for k in range(0, M + 2)}
    for k in range(M, 0, -1):
        below = list(layers[k - 1]) + [shift(v) for v in layers[k + 1]]
        s_rows, s_piv = row_space(below, M * N) if below else ([], [])
        cands = [reduce_against(v, s_rows, s_piv) for v in layers[k]]
        cands = [c for c in cands if any(c)]
        if not cands:
            continue
        c_rows, _ = row_space(cands, M * N)
        for r in c_rows:
            chain = ChainVector.from_flat(r, N)
            if chain.m != k:
                raise DegenerateBasis("layer vector of wrong length %d != %d" % (chain.m, k))
            gens.append(chain)
    return gens


def _sort_chains(chains):
    return sorted(chains, key=lambda c: (-c.m, [x.sort_key() for x in c.lead]))


def jordan_chains(F, p):
    """Characteristic basis of L_F at p, deterministically normalized."""
    p = gr(p)
    N = _size(F)
    M = det_order(F, p)
    if M == 0:
        return LocalType(p, (), N)
    mats = taylor_matrices(F, p, M)
    ker = nullspace(toeplitz_rows(mats, M, N), M * N)
    gens = characteristic_basis(ker, M, N)
    lt = LocalType(p, tuple(_sort_chains(gens)), N)
    if lt.dimension != M:
        raise DegenerateBasis(
            "chain dimension %d differs from det multiplicity %d" % (lt.dimension, M)
        )
    return lt


def in_local_type(F, p, chain):
    """Block-Toeplitz membership of one chain."""
    if chain.is_zero():
        return True
    mats = taylor_matrices(F, p, chain.m)
    prod = apply_series(matrix_series_from_taylor(mats), chain.series(), -1)
    return not prod


def inverse_principal(F, p):
    """{-k: P_k} principal part of F^{-1} at p."""
    if isinstance(F, MatrixPolynomial):
        F = RationalMatrixFunction.from_poly(F)
    inv = matrix_inverse_rational(F.numerator) * MatrixPolynomial.scalar(F.denominator, F.size)
    exp = laurent_expand(inv, p, 0)
    nu = exp.pole_order
    return {-(nu - j): c for j, c in enumerate(exp.principal) if not c.is_zero()}


def tensor_sum(pairs):
    out = {}
    for phi, psi in pairs:
        for k, M in tensor(phi, psi).items():
            out[k] = out[k] + M if k in out else M
    return {k: M for k, M in out.items() if not M.is_zero()}


def conjugate_local_basis(F, p, primal):
    """Unique Psi_i with [F^{-1}]_p = sum_i (Phi_i (x) Psi_i)[z-p]."""
    p = gr(p)
    N = _size(F)
    basis = primal.basis
    if not basis:
        return LocalType(p, (), N)
    target = inverse_principal(F, p)
    offsets = []
    total = 0
    for c in basis:
        offsets.append(total)
        total += c.m * N
    mmax = max(c.m for c in basis)
    depth = max(mmax, -min(target, default=0))
    rows, rhs = [], []
    for k in range(1, depth + 1):
        P = target.get(-k, Matrix.zeros(N))
        for r in range(N):
            for col in range(N):
                row = [ZERO] * total
                for i, c in enumerate(basis):
                    n = c.m - k  # coefficient index in the padded tensor
                    if n < 0:
                        continue
                    for a in range(n + 1):
                        b = n - a
                        coef = c.entries[a][r]
                        if coef:
                            row[offsets[i] + b * N + col] = row[offsets[i] + b * N + col] + coef
                rows.append(row)
                rhs.append(P[r, col])
    sol = solve(rows, total, rhs)
    if sol is None:
        raise DegenerateBasis("no conjugate chains reproduce the principal part of F^-1")
    x, kernel = sol
    if kernel:
        raise DegenerateBasis("conjugate chains are not unique (%d free parameters)" % len(kernel))
    psis = []
    for i, c in enumerate(basis):
        flat = x[offsets[i] : offsets[i] + c.m * N]
        psi = ChainVector.from_flat(flat, N)
        if psi.m != c.m:
            raise DegenerateBasis("conjugate chain %d has length %d, expected %d" % (i, psi.m, c.m))
        psis.append(psi)
    return LocalType(p, tuple(psis), N)


def keldysh_residual(F, p, phi, psi):
    """Principal part of <F(z) Phi[z-p], Psi[z-p]> as {exponent: scalar}."""
    n = phi.m + psi.m
    mats = taylor_matrices(F, p, n)
    prod = apply_series(matrix_series_from_taylor(mats), phi.series(), psi.m)
    return {k: c for k, c in pair_series(prod, psi.series(), -1).items()}


def keldysh_check(F, p, primal, conjugate):
    """Pairs (i, j) where <F Phi_i, Psi_j> - delta_ij (z-p)^{-m_i} has a pole."""
    bad = []
    for i, phi in enumerate(primal.basis):
        for j, psi in enumerate(conjugate.basis):
            res = keldysh_residual(F, p, phi, psi)
            if i == j:
                expected = {-phi.m: ONE}
            else:
                expected = {}
            if res != expected:
                bad.append((i, j))
    return bad


def local_pairing(F, p, phi, psi):
    """Res_{z=p} <F(z) Phi[z-p], Psi[z-p]>."""
    if phi.is_zero() or psi.is_zero():
        return ZERO
    return keldysh_residual(F, p, phi, psi).get(-1, ZERO)
