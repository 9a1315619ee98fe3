"""Strip-level asymptotic types: special vectors, L_S modulo depth, conjugate bases.

A special vector assigns a chain to each point of a lattice p - N_0.  The
space L_S collects the vectors Phi for which every defect function

    Theta at x = sum_k s^{mu-k}(z + k) Phi(x + k)[z - x]

is holomorphic at x.  Everything here works modulo a depth d: only points
with  w - d < Re x < w  are kept, where w = dimX/2 - delta is the weight line.
"""

from dataclasses import dataclass, field
from math import ceil, floor

from .chains import ChainVector, apply_series, matrix_series_from_taylor, pair_series
from .errors import DegenerateBasis, PreconditionViolation
from .field import ONE, ZERO, gr
from .laurent import laurent_expand
from .local import taylor_matrices
from .matrix import Matrix, nullspace, reduce_against, row_space, solve
from .symbols import WeightContext, adjoint_symbol, indicial_roots

# -- special vectors -------------------------------------------------------


def class_key(x):
    """Points p, p' interact only if p - p' is an integer."""
    re = x.real
    return (re - floor(re), x.imag)


def point_order(x):
    return (-x.real, x.imag)


class SpecialVector:
    """Chains attached to exponents; zero chains are not stored."""

    __slots__ = ("values", "dim")

    def __init__(self, values, dim):
        clean = {}
        for x, c in values.items():
            if not isinstance(c, ChainVector):
                c = ChainVector(c, dim)
            if c:
                clean[gr(x)] = c
        self.values = clean
        self.dim = dim

    @classmethod
    def single(cls, point, chain, dim=None):
        if not isinstance(chain, ChainVector):
            chain = ChainVector(chain, dim)
        return cls({point: chain}, chain.dim if dim is None else dim)

    @classmethod
    def zero(cls, dim):
        return cls({}, dim)

    @property
    def points(self):
        return sorted(self.values, key=point_order)

    @property
    def gamma(self):
        """Exponent with the largest real part (None for the zero vector)."""
        pts = self.points
        return pts[0] if pts else None

    @property
    def is_special(self):
        return len({class_key(x) for x in self.values}) <= 1 and all(
            (self.gamma - x).is_real() for x in self.values
        )

    def at(self, x):
        return self.values.get(gr(x), ChainVector.zero(self.dim))

    def m_at(self, x):
        return self.at(x).m

    def height(self, x):
        """Largest chain length over the points x, x+1, x+2, ..."""
        x = gr(x)
        best = 0
        for y, c in self.values.items():
            d = y - x
            if d.is_real() and d.imag == 0 and d.real >= 0 and d.real.denominator == 1:
                best = max(best, c.m)
        return best

    def is_zero(self):
        return not self.values

    def __bool__(self):
        return bool(self.values)

    def __eq__(self, other):
        if not isinstance(other, SpecialVector):
            return NotImplemented
        return self.dim == other.dim and self.values == other.values

    def __hash__(self):
        return hash((self.dim, frozenset(self.values.items())))

    def _map(self, f):
        return SpecialVector({x: f(c) for x, c in self.values.items()}, self.dim)

    def __add__(self, other):
        out = dict(self.values)
        for x, c in other.values.items():
            out[x] = out[x] + c if x in out else c
        return SpecialVector(out, self.dim)

    def __neg__(self):
        return self._map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = gr(c)
        return self._map(lambda ch: ch.scale(c))

    __rmul__ = scale

    def T(self, k=1):
        return self._map(lambda c: c.T(k))

    def C(self):
        return self._map(lambda c: c.C())

    def J(self):
        return self._map(lambda c: c.J())

    def I(self):
        return self._map(lambda c: c.I())

    def restrict(self, keep):
        """Keep the points x with keep(x) true."""
        return SpecialVector({x: c for x, c in self.values.items() if keep(x)}, self.dim)

    def above(self, bound):
        """Points with Re x > bound."""
        return self.restrict(lambda x: x.real > bound)

    def to_record(self):
        return {
            "gamma": None if self.gamma is None else str(self.gamma),
            "chains": [{"point": str(x), "entries": self.values[x].to_strings()} for x in self.points],
        }

    def __repr__(self):
        body = ", ".join("%s: %r" % (x, self.values[x]) for x in self.points)
        return "SpecialVector({%s})" % body


# -- Theta -----------------------------------------------------------------


@dataclass(frozen=True)
class ThetaValue:
    """Laurent data of Theta_l at x = base - l, valid through (z-x)^order."""

    point: object
    series: dict
    order: int

    @property
    def principal(self):
        return {k: v for k, v in self.series.items() if k < 0}

    @property
    def pole_order(self):
        return -min(self.principal, default=0)

    def is_holomorphic(self):
        return not self.principal


def theta(phi, S, l, base=None, order=0):
    """Theta_l(Phi; S) at base - l; base defaults to gamma(Phi)."""
    if base is None:
        base = phi.gamma
        if base is None:
            return ThetaValue(None, {}, order)
    base = gr(base)
    x = base - l
    out = {}
    for k in range(l + 1):
        chain = phi.at(x + k)
        if not chain:
            continue
        s = S.term(k)
        if s.is_zero():
            continue
        mats = taylor_matrices(s, x + k, chain.m + order + 1)
        part = apply_series(matrix_series_from_taylor(mats), chain.series(), order)
        for e, v in part.items():
            out[e] = tuple(a + b for a, b in zip(out[e], v)) if e in out else v
    return ThetaValue(x, {e: v for e, v in out.items() if any(v)}, order)


# -- windows ---------------------------------------------------------------


class _Window:
    """Coordinates for one residue class: points top-down, padded chains."""

    def __init__(self, points, mults, dim, weight_line):
        self.points = list(points)
        self.dim = dim
        self.mults = list(mults)
        self.bounds = []
        acc = 0
        for m in self.mults:
            acc += m
            self.bounds.append(acc)
        self.offsets = []
        off = 0
        for b in self.bounds:
            self.offsets.append(off)
            off += b * dim
        self.size = off
        self.levels = [floor(weight_line - x.real) + 1 for x in self.points]
        self.index = {x: k for k, x in enumerate(self.points)}

    def cut(self, j):
        """Number of coordinates belonging to points of level <= j."""
        n = 0
        for k, lev in enumerate(self.levels):
            if lev <= j:
                n = self.offsets[k] + self.bounds[k] * self.dim
        return n

    def to_vector(self, flat):
        vals = {}
        for k, x in enumerate(self.points):
            n = self.bounds[k] * self.dim
            if n:
                chain = ChainVector.from_flat(flat[self.offsets[k] : self.offsets[k] + n], self.dim)
                if chain:
                    vals[x] = chain
        return SpecialVector(vals, self.dim)

    def from_vector(self, vec):
        flat = [ZERO] * self.size
        for x, c in vec.values.items():
            k = self.index.get(x)
            if k is None or c.m > self.bounds[k]:
                raise ValueError("vector does not fit the window at %s" % x)
            off = self.offsets[k]
            for i, v in enumerate(c.flat(self.bounds[k])):
                flat[off + i] = v
        return tuple(flat)

    def shift(self, flat, s=1):
        """T^s on padded coordinates."""
        if s <= 0:
            return tuple(flat)
        out = [ZERO] * self.size
        N = self.dim
        for k, B in enumerate(self.bounds):
            off = self.offsets[k]
            for r in range(s, B):
                for b in range(N):
                    out[off + r * N + b] = flat[off + (r - s) * N + b]
        return tuple(out)

    def length_upto(self, flat, j):
        """Chain length modulo points of level > j (running max)."""
        best = 0
        N = self.dim
        for k, B in enumerate(self.bounds):
            if self.levels[k] > j:
                break
            off = self.offsets[k]
            for r in range(B):
                if any(flat[off + r * N : off + (r + 1) * N]):
                    best = max(best, B - r)
                    break
        return best

    def coordinate(self, col):
        """(point, log power, component) of a padded coordinate."""
        for k in range(len(self.points) - 1, -1, -1):
            if col >= self.offsets[k]:
                rel = col - self.offsets[k]
                r, comp = divmod(rel, self.dim)
                return self.points[k], self.bounds[k] - r - 1, comp
        raise IndexError(col)


def _require_holomorphic(S, count):
    for j in range(count):
        t = S.term(j)
        if t.denominator.degree > 0:
            raise PreconditionViolation("complete symbol term %d has poles; a holomorphic symbol is required" % j)


def _windows(S, w, depth, roots=None):
    """One window per residue class that carries roots inside the strip."""
    W = w.weight_line
    lo = W - depth
    rts = indicial_roots(S, roots)
    classes = {}
    for r, m in rts:
        d = W - r.real
        if d.denominator == 1 and 0 <= d < depth:
            if d == 0:
                raise PreconditionViolation("indicial root %s lies on the weight line Re z = %s" % (r, W))
            raise PreconditionViolation(
                "indicial root %s lies on the strip boundary line Re z = %s" % (r, r.real)
            )
        if lo < r.real < W:
            classes.setdefault(class_key(r), {})[r] = m
    out = []
    for key in sorted(classes, key=lambda k: (k[0], k[1])):
        found = classes[key]
        top = max(found, key=lambda x: x.real)
        pts = []
        x = top
        while x.real > lo:
            pts.append(x)
            x = x - 1
        mults = [found.get(x, 0) for x in pts]
        out.append(_Window(pts, mults, S.size, W))
    return out


def _membership_rows(S, win):
    N = win.dim
    rows = []
    cache = {}

    def tay(kk, i, count):
        key = (kk, i)
        if key not in cache or len(cache[key]) < count:
            cache[key] = taylor_matrices(S.term(kk), win.points[i], count)
        return cache[key]

    for k in range(len(win.points)):
        maxB = max(win.bounds[: k + 1])
        for e in range(1, maxB + 1):
            block = [[ZERO] * win.size for _ in range(N)]
            for i in range(k + 1):
                kk = k - i
                Bi = win.bounds[i]
                if Bi == 0 or S.term(kk).is_zero():
                    continue
                mats = tay(kk, i, Bi)
                for r in range(Bi):
                    n = Bi - r - e
                    if n < 0 or n >= len(mats):
                        continue
                    M = mats[n]
                    base = win.offsets[i] + r * N
                    for a in range(N):
                        row = block[a]
                        for b in range(N):
                            c = M[a, b]
                            if c:
                                row[base + b] = row[base + b] + c
            rows.extend(block)
    return rows


def _space(S, win):
    """RREF basis (rows, pivots) of L_S on the window."""
    if win.size == 0:
        return [], []
    ker = nullspace(_membership_rows(S, win), win.size)
    if not ker:
        return [], []
    return row_space(ker, win.size)


# -- the level-by-level construction ---------------------------------------


def _matpow(M, k, d):
    out = Matrix.identity(d)
    for _ in range(k):
        out = M * out
    return out


def _kernel(M, k, d):
    if k <= 0:
        return []
    P = _matpow(M, k, d)
    return nullspace([list(r) for r in P.rows], d)


def _combine(vectors, coefs, size):
    out = [ZERO] * size
    for c, v in zip(coefs, vectors):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] = out[i] + c * x
    return tuple(out)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _scale(c, u):
    return tuple(c * a for a in u)


def _rank(vectors, d):
    if not vectors:
        return 0
    return len(row_space(vectors, d)[1])


def _class_basis(win, Vrows, Vpiv, depth):
    """Filtration-compatible characteristic basis of one class window."""
    gens = []  # dicts: vec (full coordinates), m (list indexed by level 0..depth)
    size = win.size
    for j in range(1, depth + 1):
        lo_cut, hi_cut = win.cut(j - 1), win.cut(j)
        for g in gens:
            g["m"].append(g["m"][-1])
        if hi_cut == lo_cut:
            continue
        frows = [(r, p) for r, p in zip(Vrows, Vpiv) if lo_cut <= p < hi_cut]
        if not frows:
            continue
        d = len(frows)
        kpiv = [p for _, p in frows]
        full = [r for r, _ in frows]

        def kcoords(vec):
            return tuple(vec[p] for p in kpiv)

        def lift(c):
            return _combine(full, c, size)

        cols = []
        for r in full:
            t = win.shift(r, 1)
            cols.append(kcoords(t))
        M = Matrix._wrap([[cols[c][r] for c in range(d)] for r in range(d)], d)
        powers = [Matrix.identity(d)]
        for _ in range(d + 1):
            powers.append(M * powers[-1])

        def mlen(v):
            for ell in range(d + 1):
                if not any(powers[ell].apply(v)):
                    return ell
            return d + 1

        kers = {ell: _kernel(M, ell, d) for ell in range(0, d + 2)}

        def d_space(ell):
            vecs = list(kers[ell - 1]) + [M.apply(v) for v in kers[ell + 1]]
            return [v for v in vecs if any(v)]

        accepted = []  # (index, kvec, ell)
        order = sorted(range(len(gens)), key=lambda i: (-gens[i]["m"][j - 1], i))
        for y in order:
            g = gens[y]
            my = g["m"][j - 1]
            ex_full = win.shift(g["vec"], my)
            ex = kcoords(ex_full)
            moves = []  # (kvector, full-vector correction)
            for b in range(d):
                e = tuple(ONE if t == b else ZERO for t in range(d))
                moves.append((powers[my].apply(e), lift(e)))
            for x, xex, xell in accepted:
                gx = gens[x]
                mx = gx["m"][j - 1]
                rmin = max([0] + [gx["m"][l] - g["m"][l] for l in range(j)])
                for r in range(rmin, rmin + d + 1):
                    s = r + my - mx
                    kv = powers[s].apply(xex) if s >= 0 else None
                    if kv is None or not any(kv):
                        break
                    moves.append((kv, win.shift(gx["vec"], r)))
            ell = 0
            while True:
                basis = list(kers[ell]) + [mv for mv, _ in moves]
                if not basis:
                    sol = None if any(ex) else ((), [])
                else:
                    rows = [[v[t] for v in basis] for t in range(d)]
                    sol = solve(rows, len(basis), ex)
                if sol is not None:
                    break
                ell += 1
            coef = sol[0][len(kers[ell]) :]
            vec = g["vec"]
            for c, (mv, corr) in zip(coef, moves):
                if c:
                    ex = _sub(ex, _scale(c, mv))
                    vec = _sub(vec, _scale(c, corr))
            g["vec"] = vec
            if ell:
                same = [xex for _, xex, xl in accepted if xl == ell]
                base = d_space(ell) + same
                if _rank(base + [ex], d) == _rank(base, d):
                    raise DegenerateBasis(
                        "no filtration-compatible extension at level %d (window top %s)"
                        % (j, win.points[0])
                    )
            accepted.append((y, ex, ell))
            g["m"][j] = my + ell
        # complete with new generators living in the new slab
        top = max(mlen(v) for v in [tuple(ONE if t == b else ZERO for t in range(d)) for b in range(d)])
        used = sum(ell for _, _, ell in accepted)
        for ell in range(top, 0, -1):
            span = d_space(ell) + [xex for _, xex, xl in accepted if xl == ell]
            cand, _ = row_space(kers[ell], d) if kers[ell] else ([], [])
            for c in cand:
                c = tuple(c)
                if _rank(span + [c], d) > _rank(span, d):
                    span.append(c)
                    used += ell
                    gens.append({"vec": lift(c), "m": [0] * j + [ell]})
        if used != d:
            raise DegenerateBasis("layer at level %d has dimension %d but orbits cover %d" % (j, d, used))
    out = []
    for g in gens:
        vec = g["vec"]
        lead = next(x for x in vec if x)
        vec = _scale(lead.inverse(), vec)
        for lev in range(1, depth + 1):
            if win.length_upto(vec, lev) != g["m"][lev]:
                raise DegenerateBasis("scheme bookkeeping mismatch at level %d" % lev)
        out.append((win.to_vector(vec), tuple(g["m"][1:])))
    return out


def _vector_sort_key(vec, m):
    g = vec.gamma
    entries = []
    for x in vec.points:
        for e in vec.values[x].entries:
            entries.extend(v.sort_key() for v in e)
    return (-g.real, g.imag, -m, entries)


@dataclass(frozen=True)
class StripBasis:
    """Characteristic basis of L_S^delta modulo L_S^{delta+depth}."""

    weight: WeightContext
    depth: int
    vectors: tuple
    scheme: tuple  # scheme[i][j-1] = m_i^j
    dim: int = 1
    space: tuple = field(default=(), compare=False)  # (window, rows, pivots) per class

    @property
    def characteristic(self):
        """[(gamma, (m^{j_i}, ..., m^depth))] with leading zero levels dropped."""
        out = []
        for v, row in zip(self.vectors, self.scheme):
            first = next(k for k, m in enumerate(row) if m)
            out.append((v.gamma, tuple(row[first:])))
        return out

    @property
    def dimension(self):
        return sum(row[-1] for row in self.scheme) if self.scheme else 0

    def total_length(self, i):
        return self.scheme[i][-1] if self.depth else 0

    def orbit(self):
        return [(i, r, v.T(r)) for i, v in enumerate(self.vectors) for r in range(self.total_length(i))]

    def to_record(self):
        return {
            "delta": str(gr(self.weight.delta)),
            "depth": self.depth,
            "vectors": [v.to_record() for v in self.vectors],
            "scheme": [list(r) for r in self.scheme],
        }


def strip_basis(S, w, depth, roots=None):
    """Filtration-compatible characteristic basis modulo the given depth."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth == 0:
        return StripBasis(w, 0, (), (), S.size)
    wins = _windows(S, w, depth, roots)
    if S.is_finite:
        _require_holomorphic(S, S.support)
    items = []
    spaces = []
    for win in wins:
        rows, piv = _space(S, win)
        if len(rows) != sum(win.mults):
            raise DegenerateBasis(
                "space at window top %s has dimension %d, expected %d"
                % (win.points[0], len(rows), sum(win.mults))
            )
        spaces.append((win, tuple(tuple(r) for r in rows), tuple(piv)))
        items.extend(_class_basis(win, rows, piv, depth))
    items.sort(key=lambda vm: _vector_sort_key(vm[0], vm[1][-1]))
    return StripBasis(
        w, depth, tuple(v for v, _ in items), tuple(m for _, m in items), S.size, tuple(spaces)
    )


def basis_from_vectors(vectors, w, depth, dim=None):
    """Wrap hand-made special vectors; the scheme is read off the vectors."""
    vectors = tuple(vectors)
    if dim is None:
        dim = vectors[0].dim if vectors else 1
    W = w.weight_line
    scheme = []
    for v in vectors:
        row = []
        for j in range(1, depth + 1):
            part = v.above(W - j)
            row.append(max((c.m for c in part.values.values()), default=0))
        scheme.append(tuple(row))
    return StripBasis(w, depth, vectors, tuple(scheme), dim)


def _flatten(vec):
    """Intrinsic coordinates {(point, exponent, component): value}."""
    out = {}
    for x, c in vec.values.items():
        m = c.m
        for r, e in enumerate(c.entries):
            for comp, val in enumerate(e):
                if val:
                    out[(x, m - r, comp)] = val
    return out


def _independent(vectors):
    flats = [_flatten(v) for v in vectors]
    keys = sorted({k for f in flats for k in f}, key=lambda k: (point_order(k[0]), k[1], k[2]))
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for f in flats:
        row = [ZERO] * len(keys)
        for k, v in f.items():
            row[index[k]] = v
        rows.append(row)
    if not rows:
        return True
    return len(row_space(rows, len(keys))[1]) == len(rows)


def properness_check(basis):
    """Leading chains independent modulo each deeper level (and the scheme is right)."""
    W = basis.weight.weight_line
    for j in range(1, basis.depth + 1):
        leads = []
        for v, row in zip(basis.vectors, basis.scheme):
            part = v.above(W - j)
            m = max((c.m for c in part.values.values()), default=0)
            if m != row[j - 1]:
                return False
            if m:
                leads.append(part.T(m - 1))
        if not _independent(leads):
            return False
    return True


def membership_violations(S, vec, w, depth):
    """Points x of the window where Theta at x has a pole."""
    W = w.weight_line
    bad = []
    pts = set()
    for x in vec.values:
        for k in range(depth + 1):
            y = x - k
            if W - depth < y.real < W:
                pts.add(y)
    for y in sorted(pts, key=point_order):
        top = max((x for x in vec.values if class_key(x) == class_key(y)), key=lambda x: x.real)
        l = top - y
        if not theta(vec, S, int(l.real), base=top).is_holomorphic():
            bad.append(y)
    return bad


# -- conjugate bases (inverse-symbol route) ----------------------------------


def _window_points(vec_list, W, depth):
    """All lattice points of the window in the classes used by the vectors."""
    tops = {}
    for v in vec_list:
        for x in v.values:
            key = class_key(x)
            if key not in tops or x.real > tops[key].real:
                tops[key] = x
    pts = []
    for top in tops.values():
        # inverse-symbol poles sit at root + n as well, so start at the weight line
        x = top + (ceil(W - top.real) - 1)
        while x.real > W - depth:
            pts.append(x)
            x = x - 1
    return sorted(pts, key=point_order)


def conjugate_complete_basis(S, w, depth, primal, Sinv=None):
    """Conjugate basis from the principal parts of the inverse symbol.

    Returns (StripBasis over the adjoint symbol, tau) where tau[h] is the
    index of the partner of primal vector h.  The heights of the unknown
    chains are fixed by the primal scheme, which keeps the system linear.
    """
    from .symbols import invert_complete_symbol

    N = S.size
    mu = S.mu
    W = w.weight_line
    conj_weight = WeightContext(w.delta + mu - depth, mu, w.dim_x)
    if not primal.vectors:
        return StripBasis(conj_weight, depth, (), (), N), ()
    if Sinv is None:
        Sinv = invert_complete_symbol(S, depth)
    vecs = primal.vectors
    total = [primal.total_length(h) for h in range(len(vecs))]
    pts = _window_points(vecs, W, depth)
    ptset = set(pts)

    def H(h, x):
        return vecs[h].height(x)

    # unknown layout: X_h(p) = conj(Psi_h(q(p))) padded to L = M_h - H_h(p+1)
    layout = {}
    n_unknowns = 0
    for h in range(len(vecs)):
        for p in pts:
            if class_key(p) != class_key(vecs[h].gamma):
                continue
            L = total[h] - H(h, p + 1)
            if L > 0:
                layout[(h, p)] = (n_unknowns, L)
                n_unknowns += L * N
    rows, rhs = [], []
    for p in pts:
        for j in range(depth):
            if (p - j) not in ptset:
                break
            tau = Sinv.shifted_term(j)
            exp = laurent_expand(tau, p, 0)
            target = {-(exp.pole_order - k): c for k, c in enumerate(exp.principal)}
            terms = []
            nmax = exp.pole_order
            for h in range(len(vecs)):
                if (h, p) not in layout:
                    continue
                n = H(h, p - j) - H(h, p + 1)
                if n <= 0:
                    continue
                start, L = layout[(h, p)]
                phi = vecs[h].at(p - j).padded(H(h, p - j))[:n]
                terms.append((phi, start, L, n))
                nmax = max(nmax, n)
            for e in range(1, nmax + 1):
                k_idx = None
                P = target.get(-e, Matrix.zeros(N))
                for r in range(N):
                    for c in range(N):
                        row = [ZERO] * n_unknowns
                        for phi, start, L, n in terms:
                            k_idx = n - e  # coefficient index in the length-n tensor
                            if k_idx < 0:
                                continue
                            for a in range(k_idx + 1):
                                b = k_idx - a
                                fa = phi[a][r]
                                if not fa:
                                    continue
                                sign = ONE if (L - b) % 2 == 0 else -ONE
                                col = start + b * N + c
                                row[col] = row[col] + sign * fa
                        rows.append(row)
                        rhs.append(P[r, c])
    if n_unknowns == 0:
        raise DegenerateBasis("conjugate system has no unknowns")
    sol = solve(rows, n_unknowns, rhs)
    if sol is None:
        raise DegenerateBasis("inverse-symbol principal parts admit no conjugate basis")
    x, kernel = sol
    if kernel:
        raise DegenerateBasis("conjugate basis is not unique (%d free parameters)" % len(kernel))
    c0 = w.adjoint_shift(0)
    psis = []
    for h in range(len(vecs)):
        vals = {}
        for p in pts:
            if (h, p) not in layout:
                continue
            start, L = layout[(h, p)]
            flat = [v.conj() for v in x[start : start + L * N]]
            chain = ChainVector.from_flat(flat, N)
            if chain:
                vals[gr(c0) - p.conj()] = chain
        psis.append(SpecialVector(vals, N))
    if any(not v for v in psis):
        raise DegenerateBasis("a conjugate vector vanishes")
    order = sorted(range(len(psis)), key=lambda h: _vector_sort_key(psis[h], total[h]))
    sorted_psis = [psis[h] for h in order]
    tau = [0] * len(psis)
    for new, h in enumerate(order):
        tau[h] = new
    conj_basis = basis_from_vectors(sorted_psis, conj_weight, depth, N)
    return conj_basis, tuple(tau)


def principal_part_residuals(S, w, primal, conjugate, tau, depth=None, jmax=None, Sinv=None):
    """(p, j) pairs where the inverse-symbol principal part is not reproduced.

    The tensor of each term is taken at the common length
    H_h(p-j) - H_h(p+1) fixed by the primal heights.
    """
    from .symbols import invert_complete_symbol

    depth = primal.depth if depth is None else depth
    jmax = depth if jmax is None else jmax
    if Sinv is None:
        Sinv = invert_complete_symbol(S, jmax)
    W = w.weight_line
    vecs = primal.vectors
    pts = _window_points(vecs, W, depth) if vecs else []
    ptset = set(pts)
    c0 = gr(w.adjoint_shift(0))
    bad = []
    for p in pts:
        for j in range(jmax):
            if (p - j) not in ptset:
                break
            exp = laurent_expand(Sinv.shifted_term(j), p, 0)
            target = {-(exp.pole_order - k): c for k, c in enumerate(exp.principal) if not c.is_zero()}
            acc = {}
            for h, v in enumerate(vecs):
                hp = v.height(p + 1)
                n = v.height(p - j) - hp
                if n <= 0:
                    continue
                psi = conjugate.vectors[tau[h]]
                q = c0 - p.conj()
                M = primal.total_length(h)
                L = M - hp
                jpsi = psi.at(q).J()
                padded_psi = jpsi.padded(L)[:n] if jpsi.m <= L else None
                if padded_psi is None:
                    bad.append((p, j))
                    break
                phi = v.at(p - j).padded(v.height(p - j))[:n]
                for k in range(n):
                    mat = None
                    for a in range(k + 1):
                        term = Matrix.outer(phi[a], tuple(z.conj() for z in padded_psi[k - a]))
                        mat = term if mat is None else mat + term
                    e = -(n - k)
                    acc[e] = acc[e] + mat if e in acc else mat
            acc = {e: m for e, m in acc.items() if not m.is_zero()}
            if acc != target:
                bad.append((p, j))
    return sorted(set(bad), key=lambda pj: (point_order(pj[0]), pj[1]))


def generalized_keldysh_check(S, w, primal, conjugate, tau, p, l, j):
    """(h, h*) pairs violating the generalized Keldysh pole-order bound at p."""
    p = gr(p)
    c0 = gr(w.adjoint_shift(0))
    q = c0 - p.conj()
    bad = []
    for h, phi in enumerate(primal.vectors):
        top_cut = phi.height(p + l + 1)
        lead = phi.height(p) - top_cut
        bound = phi.height(p) - phi.height(p + j)
        phis = phi.T(top_cut)
        for hs, psi in enumerate(conjugate.vectors):
            psis = psi.I().T(psi.height(q + 1))
            total = {}
            for r in range(j, l + 1):
                # Theta_{l-r}(Phi')[z + r] at base p + l: sum_k s_k(z+r+k) Phi'(p+r+k)[z-p]
                th = {}
                for k in range(l - r + 1):
                    chain = phis.at(p + r + k)
                    if not chain:
                        continue
                    s = S.term(k)
                    if s.is_zero():
                        continue
                    pc = psis.at(q - r)
                    need = chain.m + pc.m + 1
                    mats = taylor_matrices(s, p + r + k, need)
                    part = apply_series(matrix_series_from_taylor(mats), chain.series(), pc.m)
                    for e, v in part.items():
                        th[e] = tuple(a + b for a, b in zip(th[e], v)) if e in th else v
                pc = psis.at(q - r)
                for e, c in pair_series(th, pc.series(), -1).items():
                    total[e] = total[e] + c if e in total else c
            if tau[h] == hs and lead > 0:
                total[-lead] = total.get(-lead, ZERO) - ONE
            total = {e: c for e, c in total.items() if c}
            order = -min(total, default=0)
            if order > bound:
                bad.append((h, hs))
    return bad


def adjoint_strip_basis(S, w, depth, roots=None):
    return strip_basis(adjoint_symbol(S, w), w, depth, roots)
