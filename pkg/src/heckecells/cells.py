"""The a-function, gamma-constants, two-sided cells, distinguished
involutions, the asymptotic ring on the symbols t_x, and the
homomorphism Phi (with its specializations Phi^v and Phi^1).

Everything here is derived from the structure constants r_{x,y}^z of
the Kazhdan-Lusztig c-basis:

  a(z)            = max over x,y of the v-degree of r_{x,y}^z,
  gamma(x,y,z)    = coefficient of v^{a(z)} in r_{x,y}^z
                    (this is the gamma_{x,y,z^-1} of the t-ring, so
                     t_x t_y = sum_z gamma(x,y,z) t_z),
  cells           = strongly connected components of the preorder
                    generated by left/right c_s-multiplication,
  D               = support of the unit of the t-ring (unit solve),
  Phi(c_x^dagger) = sum over z, d in D with a(d) = a(z) of r_{x,d}^z t_z.

The heavy pass streams one y-column of products c_x c_y at a time and
never materializes the full r-table.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly, ONE, ZERO, V, VINV
from . import hecke
from .hecke import mu_value, c_dagger_elt


class CellData:
    """All cell-level data of one system, built once and cached."""

    def __init__(self, sys):
        self.sys = sys
        self._prepare_mu()
        self._stream_pass()
        self._find_cells()
        self._solve_unit()
        self._build_phi()

    # -- preparation ---------------------------------------------------

    def _prepare_mu(self):
        sys = self.sys
        size = sys.size
        # mu_below[x] = [(z, mu(z,x))] over z < x with mu != 0
        mu_below = [[] for _ in range(size)]
        by_len = sorted(range(size), key=lambda i: sys.length[i])
        for x in range(size):
            lx = sys.length[x]
            for z in range(size):
                d = lx - sys.length[z]
                if d <= 0 or d % 2 == 0:
                    continue
                m = mu_value(sys, z, x)
                if m:
                    mu_below[x].append((z, m))
        self.mu_below = mu_below
        # mu_below_desc[g][x] = [(z, mu)] with additionally s_g z < z
        self.mu_below_desc = [
            [
                [(z, m) for (z, m) in mu_below[x] if (sys.ldesc[z] >> g) & 1]
                for x in range(size)
            ]
            for g in range(sys.ngens)
        ]

    def _column(self, y):
        """col[x] = {z: r_{x,y}^z as LaurentPoly} for all x, by dynamic
        programming over l(x)."""
        sys = self.sys
        size = sys.size
        order = sorted(range(size), key=lambda i: (sys.length[i], i))
        col = [None] * size
        col[sys.e] = {y: ONE}
        vv = V + VINV
        lmul = sys.lmul
        ldesc = sys.ldesc
        for x in order:
            if col[x] is not None:
                continue
            m = sys.ldesc[x]
            g = (m & -m).bit_length() - 1
            xp = lmul[x][g]
            # c_s * col[xp]
            base = {}
            mbd = self.mu_below_desc[g]
            for z, p in col[xp].items():
                pc = p.coeffs
                if (ldesc[z] >> g) & 1:
                    # (v + v^-1) * p
                    tgt = base.setdefault(z, {})
                    for e, c in pc.items():
                        tgt[e + 1] = tgt.get(e + 1, 0) + c
                        tgt[e - 1] = tgt.get(e - 1, 0) + c
                else:
                    tgt = base.setdefault(lmul[z][g], {})
                    for e, c in pc.items():
                        tgt[e] = tgt.get(e, 0) + c
                    for zp, mu in mbd[z]:
                        tgt = base.setdefault(zp, {})
                        for e, c in pc.items():
                            tgt[e] = tgt.get(e, 0) + mu * c
            # subtract mu-corrections: - sum_{z<xp, s_g z<z} mu(z,xp) col[z]
            for z, mu in mbd[xp]:
                for w, p in col[z].items():
                    tgt = base.setdefault(w, {})
                    for e, c in p.coeffs.items():
                        tgt[e] = tgt.get(e, 0) - mu * c
            col[x] = {
                z: LaurentPoly(d) for z, d in base.items() if any(d.values())
            }
        return col

    def _stream_pass(self):
        """Two streaming passes over y-columns: first find a(z), then
        harvest the top coefficients gamma."""
        sys = self.sys
        size = sys.size
        maxdeg = [0] * size  # a(e) = 0 is witnessed by c_e c_e = c_e
        for y in range(size):
            col = self._column(y)
            for x in range(size):
                for z, p in col[x].items():
                    d = p.degree()
                    if d > maxdeg[z]:
                        maxdeg[z] = d
        self.a = maxdeg
        gamma = {}
        for y in range(size):
            col = self._column(y)
            for x in range(size):
                row = None
                for z, p in col[x].items():
                    c = p[maxdeg[z]]
                    if c:
                        if row is None:
                            row = gamma.setdefault((x, y), {})
                        row[z] = c
        self.gamma_table = gamma

    def gamma(self, x, y, z):
        """gamma_{x,y,z^-1}: the t-ring structure constant of t_z in
        t_x t_y."""
        return self.gamma_table.get((x, y), {}).get(z, 0)

    def t_mul(self, u, w):
        """Product in the t-ring of two sparse vectors {x: coeff}."""
        out = {}
        for x, cx in u.items():
            for y, cy in w.items():
                row = self.gamma_table.get((x, y))
                if row:
                    c = cx * cy
                    for z, g in row.items():
                        s = out.get(z, 0) + c * g
                        if s:
                            out[z] = s
                        else:
                            del out[z]
        return out

    # -- cells ---------------------------------------------------------

    def _find_cells(self):
        sys = self.sys
        size = sys.size
        # elementary preorder edges: x -> x' when c_{x'} appears in
        # c_s c_x or c_x c_s for some s
        succ = [set() for _ in range(size)]
        for x in range(size):
            for g in range(sys.ngens):
                if not (sys.ldesc[x] >> g) & 1:
                    succ[x].add(sys.lmul[x][g])
                    for z, _ in self.mu_below_desc[g][x]:
                        succ[x].add(z)
                if not (sys.rdesc[x] >> g) & 1:
                    succ[x].add(sys.rmul[x][g])
                    # right version via inverses: mu(z, x) with z s < z
                    for z, m in self.mu_below[x]:
                        if (sys.rdesc[z] >> g) & 1:
                            succ[x].add(z)
            succ[x].discard(x)
        # strongly connected components (iterative Tarjan)
        index = [None] * size
        low = [0] * size
        on_stack = [False] * size
        stack = []
        comp_of = [None] * size
        comps = []
        counter = [0]

        for root in range(size):
            if index[root] is not None:
                continue
            work = [(root, iter(succ[root]))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            on_stack[root] = True
            while work:
                node, it = work[-1]
                advanced = False
                for nxt in it:
                    if index[nxt] is None:
                        index[nxt] = low[nxt] = counter[0]
                        counter[0] += 1
                        stack.append(nxt)
                        on_stack[nxt] = True
                        work.append((nxt, iter(succ[nxt])))
                        advanced = True
                        break
                    elif on_stack[nxt]:
                        if index[nxt] < low[node]:
                            low[node] = index[nxt]
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    if low[node] < low[parent]:
                        low[parent] = low[node]
                if low[node] == index[node]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == node:
                            break
                    comps.append(sorted(comp))
        for ci, comp in enumerate(comps):
            for w in comp:
                comp_of[w] = ci
        # order cells deterministically by (a-value, min element)
        key = sorted(range(len(comps)), key=lambda ci: (self.a[comps[ci][0]], comps[ci][0]))
        renumber = {old: new for new, old in enumerate(key)}
        self.cells = [comps[old] for old in key]
        self.cell_of = [renumber[comp_of[w]] for w in range(self.sys.size)]
        # cell order: c' <= c  iff some element of c reaches some element
        # of c' through succ (appears in products built from c)
        ncells = len(self.cells)
        reach = [set() for _ in range(ncells)]
        for x in range(size):
            for y in succ[x]:
                if self.cell_of[x] != self.cell_of[y]:
                    reach[self.cell_of[x]].add(self.cell_of[y])
        # transitive closure
        changed = True
        while changed:
            changed = False
            for c in range(ncells):
                add = set()
                for d in reach[c]:
                    add |= reach[d] - reach[c]
                if add:
                    reach[c] |= add
                    changed = True
        # cell_leq[c1][c2]: cell c1 precedes-or-equals c2 (c1 appears in
        # products of c2's elements)
        self.cell_reach = reach

    def cell_leq(self, c1, c2):
        """Whether cell c1 is below-or-equal cell c2 in the preorder
        (every element of c1 appears in products built from c2)."""
        return c1 == c2 or c1 in self.cell_reach[c2]

    def elements_strictly_below(self, x):
        """All y with y strictly below x in the preorder (y appears in
        products of x but not conversely)."""
        cx = self.cell_of[x]
        out = []
        for c in self.cell_reach[cx]:
            out.extend(self.cells[c])
        return sorted(out)

    def left_cells(self):
        """Left cells via the left-only preorder (SCCs)."""
        sys = self.sys
        size = sys.size
        succ = [set() for _ in range(size)]
        for x in range(size):
            for g in range(sys.ngens):
                if not (sys.ldesc[x] >> g) & 1:
                    succ[x].add(sys.lmul[x][g])
                    for z, _ in self.mu_below_desc[g][x]:
                        succ[x].add(z)
            succ[x].discard(x)
        return _scc_partition(size, succ)

    def eps_stable_cells(self):
        """Indices of two-sided cells stable under eps."""
        sys = self.sys
        out = []
        for ci, comp in enumerate(self.cells):
            if all(self.cell_of[sys.eps_elt[w]] == ci for w in comp):
                out.append(ci)
        return out

    # -- distinguished involutions ------------------------------------

    def _solve_unit(self):
        """Find u with u t_x = t_x for all x; the support is D."""
        sys = self.sys
        size = sys.size
        # group the gamma table by second factor: for x, rows (d -> {z: g})
        by_y = {}
        for (d, x), row in self.gamma_table.items():
            by_y.setdefault(x, []).append((d, row))
        # Gaussian elimination, equations added until unique solution:
        # unknown u_d; equation per (x, z): sum_d gamma(d,x,z) u_d = delta
        pivots = {}  # column -> reduced row {col: coeff}, rhs
        pivot_order = []
        for x in range(size):
            eqs = {}
            for d, row in by_y.get(x, []):
                for z, g in row.items():
                    eqs.setdefault(z, {})[d] = Fraction(g)
            for z, row in sorted(eqs.items()):
                rhs = Fraction(1) if z == x else Fraction(0)
                row = dict(row)
                # reduce against existing pivots until no pivot column left
                while True:
                    hit = next((c for c in row if c in pivots), None)
                    if hit is None:
                        break
                    prow, prhs = pivots[hit]
                    f = row.pop(hit)
                    for c2, v2 in prow.items():
                        row[c2] = row.get(c2, Fraction(0)) - f * v2
                        if not row[c2]:
                            del row[c2]
                    rhs -= f * prhs
                row = {c: v for c, v in row.items() if v}
                if not row:
                    if rhs:
                        raise ArithmeticError("inconsistent unit solve")
                    continue
                col = min(row)
                f = row[col]
                row = {c: v / f for c, v in row.items()}
                rhs = rhs / f
                del row[col]
                pivots[col] = (row, rhs)
                pivot_order.append(col)
            if len(pivots) == size:
                break
        if len(pivots) != size:
            raise ArithmeticError("unit solve underdetermined")
        # back-substitute in reverse creation order (a pivot row can only
        # reference pivots created after it)
        u = {}
        for col in reversed(pivot_order):
            row, rhs = pivots[col]
            val = rhs - sum(v * u.get(c, Fraction(0)) for c, v in row.items())
            if val:
                u[col] = val
        # sanity: coefficients should be exactly 1 on a set of involutions
        for d, cval in u.items():
            if cval != 1:
                raise ArithmeticError("unit has a non-unit coefficient")
            if sys.inv[d] != d:
                raise ArithmeticError("distinguished element is not an involution")
        self.D = sorted(u)

    # -- Phi -----------------------------------------------------------

    def _build_phi(self):
        """phimat[x][z] = sum over d in D with a(d) = a(z) of r_{x,d}^z."""
        sys = self.sys
        size = sys.size
        phimat = [dict() for _ in range(size)]
        for d in self.D:
            ad = self.a[d]
            col = self._column(d)
            for x in range(size):
                for z, p in col[x].items():
                    if self.a[z] == ad:
                        row = phimat[x]
                        if z in row:
                            row[z] = row[z] + p
                            if not row[z]:
                                del row[z]
                        else:
                            row[z] = p
        self.phimat = phimat
        # Phi^1: matrix of Phi at v = 1 on the basis c_x^dagger|_{v=1};
        # convert to the group basis through C1[y][x] = (-1)^{l(y)} P_{y,x}(1)
        M1 = [[0] * size for _ in range(size)]  # M1[z][x]
        for x in range(size):
            for z, p in phimat[x].items():
                M1[z][x] = p.at_one()
        C1 = [[0] * size for _ in range(size)]  # C1[y][x]
        for x in range(size):
            for y in range(size):
                if sys.length[y] <= sys.length[x] and sys.bruhat_leq(y, x):
                    p = hecke.kl_polynomial(sys, y, x)
                    if p:
                        C1[y][x] = (-1 if sys.length[y] % 2 else 1) * p.at_one()
        # pi = C1 * M1^{-1} : coordinates of (Phi^1)^{-1}(t_z) in the group
        # basis; solve M1^T X^T = C1^T i.e. for each row of pi solve with M1
        self.pi = _mat_solve_right(C1, M1)  # pi[w][z], Fractions

    def phi_image(self, x, k=0):
        """Phi~(c_{x phi^k}^dagger) as {(z, k): LaurentPoly}."""
        return {(z, k % self.sys.c): p for z, p in self.phimat[x].items()}

    def phi1_matrix(self):
        """The matrix of Phi^1 on the group basis: columns w |-> t-coords."""
        # inverse of pi
        return _invert_fraction_matrix(self.pi)


def _scc_partition(size, succ):
    """Partition into strongly connected components (simple iterative
    algorithm); returns list of sorted components."""
    index = [None] * size
    low = [0] * size
    on_stack = [False] * size
    stack = []
    comps = []
    counter = [0]
    for root in range(size):
        if index[root] is not None:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if index[nxt] is None:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
                elif on_stack[nxt]:
                    if index[nxt] < low[node]:
                        low[node] = index[nxt]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                comps.append(sorted(comp))
    return comps


def _mat_solve_right(C, M):
    """Return X with X M = C (all integer inputs), over Q."""
    n = len(M)
    # solve M^T Y = C^T, then X = Y^T
    MT = [[Fraction(M[j][i]) for j in range(n)] for i in range(n)]
    CT = [[Fraction(C[j][i]) for j in range(n)] for i in range(n)]
    # gaussian elimination with the n right-hand sides
    aug = [MT[i] + CT[i] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ArithmeticError("Phi^1 matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    Y = [row[n:] for row in aug]
    return [[Y[i][j] for i in range(n)] for j in range(n)]  # X = Y^T


def _invert_fraction_matrix(A):
    n = len(A)
    aug = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


_CELL_CACHE = {}


def cell_data(sys):
    """Build (or fetch) the CellData of a system."""
    key = id(sys)
    hit = _CELL_CACHE.get(key)
    if hit is None or hit[0] is not sys:
        hit = (sys, CellData(sys))
        _CELL_CACHE[key] = hit
    return hit[1]


def a_value(sys, z):
    return cell_data(sys).a[z]


def gamma(sys, x, y, z):
    return cell_data(sys).gamma(x, y, z)


def two_sided_cells(sys):
    cd = cell_data(sys)
    return cd.cells, cd.cell_reach


def distinguished_involutions(sys):
    return cell_data(sys).D


def phi_image(sys, x, k=0):
    return cell_data(sys).phi_image(x, k)


def a_coeffs(sys, x):
    """Lower-cell correction coefficients of c_x^dagger.

    Returns a dict mapping y (in cells strictly below that of x) to the
    rational function a_{y,x} in v such that

        (-1)^{l(x)} c_x^dagger - sum_y (-1)^{l(y)} a_{y,x} c_y^dagger

    acts as zero on every irreducible module whose two-sided cell
    differs from that of x.  Equivalently, sum_y (-1)^{l(y)} a_{y,x}
    c_y^dagger is the projection of (-1)^{l(x)} c_x^dagger onto the
    isotypic blocks of those modules.  The projection is computed with
    the central idempotents of the split algebra over Q(v), whose
    denominators are the generic degrees f_E^v; the coefficients come
    out as quotients of integral Laurent polynomials.
    """
    from . import reps as reps_mod
    from .laurent import RationalFunction, poly_gcd, poly_divide_exact

    cd = cell_data(sys)
    R = reps_mod.system_reps(sys)
    cx = cd.cell_of[x]
    bad = [lab for lab in R.table.labels if R.cell_of_label(lab) != cx]
    if not bad:
        return {}
    fs = {lab: R.f_v(lab) for lab in bad}
    D = ONE
    for f in fs.values():
        D = D * poly_divide_exact(f, poly_gcd(D, f))
    # weight[w] = sum over excluded E of (D / f_E) tr(T_{w^-1}, E^v)
    weight = [ZERO] * sys.size
    for lab in bad:
        tau = R.ttrace(lab)
        m = poly_divide_exact(D, fs[lab])
        for w in range(sys.size):
            t = tau[sys.inv[w]]
            if t:
                weight[w] = weight[w] + m * t
    # accumulate U = sum_w weight[w] (T_w c_x^dagger) along a length BFS
    order = sorted(range(sys.size), key=lambda w: (sys.length[w], w))
    V = [None] * sys.size
    acc = {}
    for w in order:
        if sys.length[w] == 0:
            V[w] = c_dagger_elt(sys, x)
        else:
            g = next(g for g in range(sys.ngens) if (sys.ldesc[w] >> g) & 1)
            V[w] = V[sys.lmul[w][g]].mul_gen_left(g)
        if weight[w]:
            for key, p in V[w].terms.items():
                q = acc.get(key, ZERO) + weight[w] * p
                if q:
                    acc[key] = q
                elif key in acc:
                    del acc[key]
    U = hecke.HeckeElt(sys, acc)
    coords = hecke.expand_in_c_dagger(sys, U)
    out = {}
    for (y, i), p in coords.items():
        if not p:
            continue
        assert i == 0
        assert cd.cell_of[y] in cd.cell_reach[cx], \
            "projection escapes the strictly lower cells"
        if (sys.length[x] + sys.length[y]) % 2:
            p = -p
        out[y] = RationalFunction(p, D)
    return out
