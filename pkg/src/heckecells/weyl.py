"""Weyl groups with a diagram automorphism eps and the extended group
W~ = W x <phi>.

Every supported group is materialized as a set of permutations of its
root system; this gives one uniform element model (hashable, O(#roots)
multiplication) for the symmetric groups, type D, and E6 alike, and
lets a parabolic subgroup reuse the parent's element universe.

Supported families:
  ("2A", n)   W = S_n acting on the A_{n-1} roots, eps = Ad(w_0);
  ("2D", n)   W = W'_n (index 2 in the hyperoctahedral group),
              eps = conjugation by the sign flip of e_n (fork flip);
  ("3D4",)    W = W(D_4), eps = triality of order 3;
  ("2E6",)    W = W(E_6), eps = Ad(w_0);
  ("A", n), ("D", n), ("E6",)  the same groups untwisted (eps = id).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm


# ---------------------------------------------------------------------
# root system construction
# ---------------------------------------------------------------------


def _roots_A(n):
    """Roots of A_{n-1} in R^n; simple roots e_i - e_{i+1}."""
    dim = n
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                v = [0] * dim
                v[i], v[j] = 1, -1
                roots.append(tuple(v))
    simples = []
    for i in range(n - 1):
        v = [0] * dim
        v[i], v[i + 1] = 1, -1
        simples.append(tuple(v))
    return roots, simples


def _roots_D(n):
    """Roots of D_n: +-e_i +- e_j; simple roots e_i - e_{i+1} and e_{n-1}+e_n."""
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    roots.append(tuple(v))
    simples = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simples.append(tuple(v))
    v = [0] * n
    v[n - 2], v[n - 1] = 1, 1
    simples.append(tuple(v))
    return roots, simples


def _roots_E6():
    """Roots of E6 in R^8 (Bourbaki numbering), scaled by 2 to stay integral."""
    roots = []
    # +-e_i +- e_j for 1 <= i < j <= 5  (coordinates doubled)
    for i in range(5):
        for j in range(i + 1, 5):
            for si in (2, -2):
                for sj in (2, -2):
                    v = [0] * 8
                    v[i], v[j] = si, sj
                    roots.append(tuple(v))
    # +-(e8 - e7 - e6 + sum +-e_i)/2 with an even number of minus signs
    # in e1..e5
    for signs in itertools.product((1, -1), repeat=5):
        if signs.count(-1) % 2 == 0:
            v = list(signs) + [-1, -1, 1]
            roots.append(tuple(v))
            roots.append(tuple(-x for x in v))
    assert len(roots) == 72
    a1 = (1, -1, -1, -1, -1, -1, -1, 1)
    a2 = (2, 2, 0, 0, 0, 0, 0, 0)
    a3 = (-2, 2, 0, 0, 0, 0, 0, 0)
    a4 = (0, -2, 2, 0, 0, 0, 0, 0)
    a5 = (0, 0, -2, 2, 0, 0, 0, 0)
    a6 = (0, 0, 0, -2, 2, 0, 0, 0)
    return roots, [a1, a2, a3, a4, a5, a6]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _reflect(root, alpha):
    """Reflection of `root` in the hyperplane of `alpha`."""
    num = 2 * _dot(root, alpha)
    den = _dot(alpha, alpha)
    if num % den == 0:
        k = num // den
        return tuple(r - k * a for r, a in zip(root, alpha))
    k = Fraction(num, den)
    return tuple(r - k * a for r, a in zip(root, alpha))


# ---------------------------------------------------------------------
# the main system class
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class ExtElt:
    """An element w * phi^k of the extended group."""

    sys: "TwistedWeylSystem"
    w: int  # element index in sys
    k: int  # exponent of phi, mod sys.c

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % self.sys.c)

    def __mul__(self, other):
        if self.sys is not other.sys:
            raise ValueError("elements of different systems")
        s = self.sys
        w2 = other.w
        for _ in range(self.k % s.r if s.r > 1 else 0):
            w2 = s.eps_elt[w2]
        return ExtElt(s, s.mult(self.w, w2), self.k + other.k)

    def length(self):
        return self.sys.length[self.w]

    def serialize(self):
        word = self.sys.word(self.w)
        body = ".".join(f"s{g + 1}" for g in word) if word else "e"
        return f"{body}*phi^{self.k}" if self.k else body


class TwistedWeylSystem:
    """A (possibly parabolic) Weyl group with diagram automorphism,
    fully materialized: element list, generator multiplication tables,
    lengths, descent sets, eps, w_0."""

    def __init__(self, family, n, roots, gen_roots, eps_linear, parent=None,
                 gen_names=None):
        self.family = family
        self.n = n
        self.parent = parent
        self.roots = roots
        self.root_index = {r: i for i, r in enumerate(roots)}
        self.gen_roots = list(gen_roots)
        self.ngens = len(gen_roots)
        # generator names: indices into the parent's generator list (so a
        # parabolic's word serialization uses the ambient labels)
        self.gen_names = list(gen_names) if gen_names is not None else list(range(self.ngens))

        nr = len(roots)
        # positivity of each root w.r.t. THIS system's simple roots: a root
        # of the subsystem is positive iff its expansion in the sub-simples
        # has nonnegative coefficients.  For a full system this matches the
        # usual notion.  Roots outside the span get pos = None.
        self._compute_positivity()

        # generator permutations of the root list
        self.gen_perms = []
        for a in gen_roots:
            perm = tuple(self.root_index[_reflect(r, a)] for r in roots)
            self.gen_perms.append(perm)

        # eps as a root permutation (conjugation realizes eps on W)
        if eps_linear is None:
            self.eps_perm = tuple(range(nr))
        else:
            self.eps_perm = tuple(self.root_index[tuple(eps_linear(r))] for r in roots)

        self._enumerate()
        self._build_eps()
        self.r = self._eps_order()
        self.c = lcm(2, self.r)
        self._bruhat_memo = {}

    # -- construction helpers -----------------------------------------

    def _compute_positivity(self):
        """Mark each root index positive/negative for this system."""
        import fractions

        simples = [list(map(Fraction, a)) for a in self.gen_roots]
        # Gram-matrix solve: coefficients of root in the simple basis
        k = len(simples)
        G = [[_dot(simples[i], simples[j]) for j in range(k)] for i in range(k)]
        self.is_pos = []
        self.in_span = []
        for r in self.roots:
            b = [_dot(r, s) for s in simples]
            coef = _solve_linear(G, b)
            # check the root really is this combination
            vec = [Fraction(0)] * len(r)
            for c, s in zip(coef, simples):
                for i in range(len(vec)):
                    vec[i] += c * s[i]
            inside = all(vec[i] == r[i] for i in range(len(r)))
            self.in_span.append(inside)
            if inside:
                self.is_pos.append(all(c >= 0 for c in coef))
            else:
                self.is_pos.append(None)
        self.sub_root_idx = [i for i in range(len(self.roots)) if self.in_span[i]]
        self.npos = sum(1 for i in self.sub_root_idx if self.is_pos[i])

    def _enumerate(self):
        """BFS over generator right-multiplication; deterministic final
        order: (length, permutation tuple)."""
        nr = len(self.roots)
        ident = tuple(range(nr))
        seen = {ident}
        frontier = [ident]
        allp = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.gen_perms:
                    q = tuple(p[g[i]] for i in range(nr))
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
                        allp.append(q)
            frontier = nxt

        def length_of(p):
            return sum(
                1
                for i in self.sub_root_idx
                if self.is_pos[i] and not self.is_pos[p[i]]
            )

        allp.sort(key=lambda p: (length_of(p), p))
        self.perms = allp
        self.index = {p: i for i, p in enumerate(allp)}
        self.size = len(allp)
        self.length = [length_of(p) for p in allp]
        self.e = self.index[ident]
        assert self.e == 0

        # generator multiplication tables
        self.rmul = []  # rmul[w][g] = index of w * s_g
        self.lmul = []  # lmul[w][g] = index of s_g * w
        for p in allp:
            self.rmul.append(
                tuple(self.index[tuple(p[g[i]] for i in range(nr))] for g in self.gen_perms)
            )
            self.lmul.append(
                tuple(self.index[tuple(g[p[i]] for i in range(nr))] for g in self.gen_perms)
            )
        self.inv = [0] * self.size
        for i, p in enumerate(allp):
            q = [0] * nr
            for a, b in enumerate(p):
                q[b] = a
            self.inv[i] = self.index[tuple(q)]
        # w0: unique longest element
        self.w0 = max(range(self.size), key=lambda i: (self.length[i], -i))
        assert self.length.count(self.length[self.w0]) == 1
        # descent bitmasks
        self.ldesc = [
            sum(1 << g for g in range(self.ngens) if self.length[self.lmul[w][g]] < self.length[w])
            for w in range(self.size)
        ]
        self.rdesc = [
            sum(1 << g for g in range(self.ngens) if self.length[self.rmul[w][g]] < self.length[w])
            for w in range(self.size)
        ]

    def _build_eps(self):
        nr = len(self.roots)
        pi = self.eps_perm
        ipi = [0] * nr
        for a, b in enumerate(pi):
            ipi[b] = a
        self.eps_elt = []
        for p in self.perms:
            q = tuple(pi[p[ipi[i]]] for i in range(nr))
            self.eps_elt.append(self.index[q])
        # eps as a permutation of generators
        self.eps_gen = []
        for g in range(self.ngens):
            img = self.eps_elt[self.rmul[self.e][g]]
            hit = [h for h in range(self.ngens) if self.rmul[self.e][h] == img]
            if len(hit) != 1:
                raise ValueError("eps does not permute the generators")
            self.eps_gen.append(hit[0])

    def _eps_order(self):
        order = 1
        g = list(self.eps_gen)
        ident = list(range(self.ngens))
        cur = g
        while cur != ident:
            cur = [g[i] for i in cur]
            order += 1
        return order

    # -- group operations ---------------------------------------------

    def mult(self, i, j):
        """Index of the product w_i * w_j."""
        p, q = self.perms[i], self.perms[j]
        return self.index[tuple(p[q[k]] for k in range(len(p)))]

    def word(self, i):
        """Lexicographically smallest reduced word (generator indices,
        in this system's own numbering)."""
        out = []
        while i != self.e:
            m = self.ldesc[i]
            g = (m & -m).bit_length() - 1
            out.append(g)
            i = self.lmul[i][g]
        return out

    def from_word(self, word):
        i = self.e
        for g in word:
            i = self.rmul[i][g]
        return i

    def serialize_elt(self, i):
        w = self.word(i)
        if not w:
            return "e"
        return ".".join(f"s{self.gen_names[g] + 1}" for g in w)

    def elt_from_string(self, s):
        """Parse "s1.s2" or "s1.s2*phi^1" (ambient generator numbers)."""
        s = s.strip()
        k = 0
        if "*" in s:
            s, phi = s.split("*")
            assert phi.startswith("phi^")
            k = int(phi[4:])
        i = self.e
        if s != "e":
            name_to_local = {name: g for g, name in enumerate(self.gen_names)}
            for tok in s.split("."):
                i = self.rmul[i][name_to_local[int(tok[1:]) - 1]]
        return ExtElt(self, i, k)

    def coxeter_matrix(self):
        m = [[1] * self.ngens for _ in range(self.ngens)]
        for a in range(self.ngens):
            for b in range(self.ngens):
                if a != b:
                    x = self.rmul[self.rmul[self.e][a]][b]
                    start = x
                    order = 1
                    cur = x
                    while cur != self.e:
                        cur = self.mult(cur, start)
                        order += 1
                    m[a][b] = order
        return m

    def validate(self):
        """Reject constructions outside the standing hypotheses: eps must
        preserve the Coxeter matrix, and two generators in one eps-orbit
        must not braid with order >= 4."""
        m = self.coxeter_matrix()
        g = self.eps_gen
        for a in range(self.ngens):
            for b in range(self.ngens):
                if m[g[a]][g[b]] != m[a][b]:
                    raise ValueError("eps does not preserve the Coxeter matrix")
        # orbits of eps on generators
        for a in range(self.ngens):
            b = g[a]
            while b != a:
                if m[a][b] >= 4:
                    raise ValueError("eps-orbit contains a braid of order >= 4")
                b = g[b]
        return True

    # -- Bruhat order --------------------------------------------------

    def bruhat_leq(self, y, x):
        """Standard Bruhat order via the descent recursion."""
        if y == x or y == self.e:
            return True
        key = (y, x)
        memo = self._bruhat_memo
        if key in memo:
            return memo[key]
        ly, lx = self.length[y], self.length[x]
        if ly >= lx:
            memo[key] = False
            return False
        m = self.ldesc[x]
        g = (m & -m).bit_length() - 1
        sx = self.lmul[x][g]
        if self.length[self.lmul[y][g]] < ly:
            res = self.bruhat_leq(self.lmul[y][g], sx)
        else:
            res = self.bruhat_leq(y, sx)
        memo[key] = res
        return res

    # -- twisted conjugacy --------------------------------------------

    def twisted_classes(self):
        """Orbits of x |-> y x eps(y)^{-1}; ordered by (min length, min
        index), each orbit sorted."""
        unseen = set(range(self.size))
        classes = []
        while unseen:
            seed = min(unseen, key=lambda i: (self.length[i], i))
            orbit = {seed}
            frontier = [seed]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in range(self.ngens):
                        eg = self.eps_gen[g]
                        y = self.rmul[self.lmul[x][g]][eg]
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            unseen -= orbit
            classes.append(sorted(orbit, key=lambda i: (self.length[i], i)))
        classes.sort(key=lambda c: (self.length[c[0]], c[0]))
        return classes

    def twisted_class_reps(self):
        return [c[0] for c in self.twisted_classes()]

    # -- parabolic data ------------------------------------------------

    def eps_stable_proper_subsets(self):
        """All proper subsets I of the generators with eps(I) = I, sorted."""
        out = []
        for size in range(self.ngens):
            for I in itertools.combinations(range(self.ngens), size):
                if set(self.eps_gen[g] for g in I) == set(I):
                    out.append(tuple(I))
        return out

    def parabolic(self, I):
        """The parabolic subsystem on generator subset I, sharing this
        system's root universe.  eps is inherited (I must be eps-stable
        for the twisted structure to make sense; untwisted use is fine)."""
        sub = TwistedWeylSystem(
            family=f"{self.family}|I={','.join(str(g+1) for g in I)}",
            n=self.n,
            roots=self.roots,
            gen_roots=[self.gen_roots[g] for g in I],
            eps_linear=None,
            parent=self,
            gen_names=[self.gen_names[g] for g in I],
        )
        # inherit eps by conjugation with the parent's root permutation
        sub.eps_perm = self.eps_perm
        sub._build_eps()
        sub.r = sub._eps_order()
        sub.c = lcm(2, sub.r)
        return sub

    def subgroup_indices(self, I):
        """Indices (in this system) of the elements of W_I."""
        seen = {self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for w in frontier:
                for g in I:
                    x = self.rmul[w][g]
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return seen

    def to_parent_index(self, i):
        """Index of this (parabolic) system's element i inside the parent."""
        return self.parent.index[self.perms[i]]

    # -- linear-algebra view ------------------------------------------

    def matrix(self, i, twist_power=0):
        """Matrix of w_i (optionally composed with eps^twist_power) in the
        ambient coordinates, as a tuple of row tuples of Fractions."""
        dim = len(self.roots[0])
        # choose a basis of roots: the generator roots (independent)
        basis = [list(map(Fraction, a)) for a in self.gen_roots]
        if len(basis) < dim:
            # extend with further roots to a spanning set if needed; for
            # ranks below the ambient dimension we return the action on
            # the span only (callers use full-rank systems for this).
            raise ValueError("matrix() needs a full-rank system")
        p = self.perms[i]
        if twist_power:
            pi = self.eps_perm
            for _ in range(twist_power):
                p = tuple(pi[p[j]] for j in range(len(p)))
                # conjugation is eps(w) = pi o w o pi^-1; composing ON THE
                # LEFT only gives the linear map (eps as linear) o w when
                # pi is itself the linear map's permutation
            # note: p now represents (eps_linear o w) as a root permutation
        images = []
        for g in range(self.ngens):
            ridx = self.root_index[tuple(self.gen_roots[g])]
            images.append(list(map(Fraction, self.roots[p[ridx]])))
        # solve M * basis_g = image_g  =>  M = images^T * (basis^T)^{-1}
        A = [[basis[j][r] for j in range(len(basis))] for r in range(dim)]
        B = [[images[j][r] for j in range(len(images))] for r in range(dim)]
        Ainv = _invert(A)
        M = [
            tuple(sum(B[r][k] * Ainv[k][s] for k in range(dim)) for s in range(dim))
            for r in range(dim)
        ]
        return tuple(M)

    def has_eigenvalue_one(self, i, twist_power=0):
        """Whether w_i (composed with the linear eps^twist_power) fixes a
        nonzero vector of the reflection representation."""
        M = self.matrix(i, twist_power)
        dim = len(M)
        A = [[M[r][c] - (1 if r == c else 0) for c in range(dim)] for r in range(dim)]
        return _rank(A) < dim

    # -- anisotropy ----------------------------------------------------

    def is_D_anisotropic(self, w):
        """No x and proper eps-stable I with x w eps(x)^{-1} in W_I."""
        fam = self.family
        if fam == "2A":
            # closed criterion: anisotropic iff w*w0 has odd order
            x = self.mult(w, self.w0)
            order = 1
            cur = x
            while cur != self.e:
                cur = self.mult(cur, x)
                order += 1
            return order % 2 == 1
        if fam == "2D":
            # anisotropic iff w composed with the sign flip has no
            # eigenvalue 1 in the reflection representation
            return not self.has_eigenvalue_one(w, twist_power=1)
        return self._anisotropic_brute(w)

    def _anisotropic_brute(self, w):
        if self.size > 10**4:
            raise ValueError("brute-force anisotropy needs |W| <= 10^4")
        # twisted class of w
        orbit = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for x in frontier:
                for g in range(self.ngens):
                    eg = self.eps_gen[g]
                    y = self.rmul[self.lmul[x][g]][eg]
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        for I in self.eps_stable_proper_subsets():
            WI = self.subgroup_indices(I)
            if orbit & WI:
                return False
        return True

    def __repr__(self):
        return f"TwistedWeylSystem({self.family}, n={self.n}, |W|={self.size}, r={self.r})"


# ---------------------------------------------------------------------
# linear algebra helpers (exact, small matrices)
# ---------------------------------------------------------------------


def _solve_linear(A, b):
    """Solve A x = b over Q (A square invertible)."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def _invert(A):
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def _rank(A):
    M = [list(map(Fraction, row)) for row in A]
    rows, cols = len(M), len(M[0]) if M else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------
# system factory
# ---------------------------------------------------------------------


def build_system(family, n=None):
    """Construct a TwistedWeylSystem for one of the supported families."""
    if family == "2A":
        if n is None or n < 2:
            raise ValueError("2A needs n >= 2")
        roots, simples = _roots_A(n)
        sys_ = TwistedWeylSystem("2A", n, roots, simples, None)
        _set_eps_ad_w0(sys_)
    elif family == "2D":
        if n is None or n < 2:
            raise ValueError("2D needs n >= 2")
        roots, simples = _roots_D(n)

        def flip(r):
            r = list(r)
            r[n - 1] = -r[n - 1]
            return tuple(r)

        sys_ = TwistedWeylSystem("2D", n, roots, simples, flip)
    elif family == "3D4":
        roots, simples = _roots_D(4)
        # triality: alpha_1 -> alpha_3 -> alpha_4 -> alpha_1, alpha_2 fixed
        perm = {0: 2, 1: 1, 2: 3, 3: 0}
        lin = _simple_perm_linear(roots, simples, perm)
        sys_ = TwistedWeylSystem("3D4", 4, roots, simples, lin)
    elif family == "2E6":
        roots, simples = _roots_E6()
        sys_ = TwistedWeylSystem("2E6", 6, roots, simples, None)
        _set_eps_ad_w0(sys_)
    elif family == "A":
        if n is None or n < 1:
            raise ValueError("A needs n >= 1")
        roots, simples = _roots_A(n + 1)
        sys_ = TwistedWeylSystem("A", n + 1, roots, simples, None)
    elif family == "D":
        if n is None or n < 2:
            raise ValueError("D needs n >= 2")
        roots, simples = _roots_D(n)
        sys_ = TwistedWeylSystem("D", n, roots, simples, None)
    elif family == "E6":
        roots, simples = _roots_E6()
        sys_ = TwistedWeylSystem("E6", 6, roots, simples, None)
    else:
        raise ValueError(f"unsupported family: {family}")
    sys_.validate()
    return sys_


def _simple_perm_linear(roots, simples, perm):
    """Linear map sending alpha_i to alpha_{perm(i)}, as a function on
    root vectors (every root is an integer combination of simples)."""
    k = len(simples)
    simplesF = [list(map(Fraction, a)) for a in simples]
    G = [[_dot(simplesF[i], simplesF[j]) for j in range(k)] for i in range(k)]

    def lin(r):
        b = [_dot(r, s) for s in simplesF]
        coef = _solve_linear(G, b)
        out = [Fraction(0)] * len(r)
        for i, c in enumerate(coef):
            tgt = simplesF[perm[i]]
            for j in range(len(out)):
                out[j] += c * tgt[j]
        return tuple(int(x) if x.denominator == 1 else x for x in out)

    return lin


def _set_eps_ad_w0(sys_):
    """Install eps = Ad(w_0) on an already-enumerated system: as a root
    permutation this is (-1) o w_0, and on elements it is conjugation by
    w_0."""
    nr = len(sys_.roots)
    w0p = sys_.perms[sys_.w0]
    neg = [sys_.root_index[tuple(-x for x in r)] for r in sys_.roots]
    sys_.eps_perm = tuple(neg[w0p[i]] for i in range(nr))
    sys_._build_eps()
    sys_.r = sys_._eps_order()
    sys_.c = lcm(2, sys_.r)


@lru_cache(maxsize=None)
def cached_system(family, n=None):
    return build_system(family, n)
