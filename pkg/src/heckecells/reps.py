"""Characters of the finite Weyl groups in play, their twisted
extensions, and the trace data built on top of the asymptotic ring:
t-traces, Hecke-module traces, the f-polynomials, the virtual
characters aleph, and the coset induction map between a group and a
stable parabolic.

Character values come from two independent sources: Murnaghan-Nakayama
rules for the symmetric and hyperoctahedral families (with type D by
restriction), and an exact Dixon-Schneider computation for arbitrary
small permutation groups (used for the triality-extended group, for
parabolic subgroups, and as an oracle for the combinatorial rules).
All values are exact rationals.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from .laurent import LaurentPoly, RationalFunction, ZERO, ONE
from . import hecke, cells


# ---------------------------------------------------------------------
# partitions and bipartitions
# ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n as non-increasing tuples, lex-decreasing."""
    if n == 0:
        return ((),)
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(n, n, [])
    return tuple(out)


@lru_cache(maxsize=None)
def bipartitions(n):
    """All ordered pairs of partitions with total size n."""
    out = []
    for k in range(n + 1):
        for a in partitions(k):
            for b in partitions(n - k):
                out.append((a, b))
    return tuple(out)


def _beta_set(lam, length):
    """First-column hook lengths padded to the given length."""
    lam = list(lam) + [0] * (length - len(lam))
    return sorted(lam[i] + (length - 1 - i) for i in range(length))


def _strip_removals(beta, m):
    """Ways to remove an m-strip from a beta-set: pairs (new beta set,
    sign) with sign the usual height sign (-1)^ht."""
    out = []
    bs = set(beta)
    for b in beta:
        if b - m >= 0 and (b - m) not in bs:
            ht = sum(1 for x in beta if b - m < x < b)
            nb = sorted(bs - {b} | {b - m})
            out.append((tuple(nb), -1 if ht % 2 else 1))
    return out


@lru_cache(maxsize=None)
def _sn_char_beta(beta, mu):
    """Symmetric-group character via strip removal on a beta-set."""
    if not mu:
        return 1
    m = mu[0]
    rest = mu[1:]
    total = 0
    for nb, sign in _strip_removals(beta, m):
        total += sign * _sn_char_beta(nb, rest)
    return total


def sn_char(lam, mu):
    """chi_lam(class of cycle type mu) in S_n."""
    n = sum(lam)
    assert sum(mu) == n
    beta = tuple(_beta_set(lam, max(len(lam), 1)))
    return _sn_char_beta(beta, tuple(sorted(mu, reverse=True)))


@lru_cache(maxsize=None)
def _bn_char_beta(ba, bb, pos, neg):
    """Hyperoctahedral character via strip removal on two beta-sets.

    An m-cycle with positive sign removes an m-strip from either
    component with the usual sign; an m-cycle with negative sign removes
    from the first component with sign +(-1)^ht and from the second with
    sign -(-1)^ht.
    """
    if not pos and not neg:
        return 1
    if pos:
        m, rest = pos[0], (pos[1:], neg)
        total = 0
        for nb, s in _strip_removals(ba, m):
            total += s * _bn_char_beta(nb, bb, *rest)
        for nb, s in _strip_removals(bb, m):
            total += s * _bn_char_beta(ba, nb, *rest)
        return total
    m, rest = neg[0], (pos, neg[1:])
    total = 0
    for nb, s in _strip_removals(ba, m):
        total += s * _bn_char_beta(nb, bb, *rest)
    for nb, s in _strip_removals(bb, m):
        total -= s * _bn_char_beta(ba, nb, *rest)
    return total


def bn_char(pair, cls):
    """chi_{(alpha,beta)}(class (pos,neg)) in the hyperoctahedral group:
    pair = (alpha, beta), cls = (positive cycle lengths, negative cycle
    lengths)."""
    alpha, beta = pair
    pos, neg = cls
    n = sum(alpha) + sum(beta)
    assert sum(pos) + sum(neg) == n
    la = max(len(alpha), len(beta), 1)
    ba = tuple(_beta_set(alpha, la))
    bb = tuple(_beta_set(beta, la))
    return _bn_char_beta(ba, bb,
                         tuple(sorted(pos, reverse=True)),
                         tuple(sorted(neg, reverse=True)))


# ---------------------------------------------------------------------
# class types of elements in the root-permutation model
# ---------------------------------------------------------------------

def point_perm(sys, i):
    """For a type A system on n points: the permutation of the points
    underlying element i (image of e_a - e_b is e_{sigma a} - e_{sigma b})."""
    n = len(sys.roots[0])
    p = sys.perms[i]
    sigma = [None] * n
    for a in range(n):
        b = (a + 1) % n
        r = [0] * n
        r[a], r[b] = 1, -1
        img = sys.roots[p[sys.root_index[tuple(r)]]]
        sigma[a] = img.index(1)
    return tuple(sigma)


def cycle_type(sigma):
    """Cycle type of a permutation, as a partition."""
    n = len(sigma)
    seen = [False] * n
    out = []
    for a in range(n):
        if not seen[a]:
            ln = 0
            b = a
            while not seen[b]:
                seen[b] = True
                b = sigma[b]
                ln += 1
            out.append(ln)
    return tuple(sorted(out, reverse=True))


def signed_perm(sys, i, flip_last=False):
    """For a type D system in R^n: the signed permutation of element i,
    as a tuple of +-(c+1).  With flip_last, compose on the right with
    the sign change of the last coordinate."""
    n = len(sys.roots[0])
    p = sys.perms[i]
    out = [0] * n
    for a in range(n):
        b = (a + 1) % n
        r1 = [0] * n
        r1[a], r1[b] = 1, -1
        r2 = [0] * n
        r2[a], r2[b] = 1, 1
        i1 = sys.roots[p[sys.root_index[tuple(r1)]]]
        i2 = sys.roots[p[sys.root_index[tuple(r2)]]]
        s = [(x + y) // 2 for x, y in zip(i1, i2)]  # image of e_a
        c = next(j for j in range(n) if s[j])
        out[a] = (c + 1) * s[c]
    if flip_last:
        out[n - 1] = -out[n - 1]
    return tuple(out)


def signed_cycle_type(tau):
    """Signed cycle type (positive lengths, negative lengths) of a
    signed permutation given as images +-(c+1) of the points."""
    n = len(tau)
    seen = [False] * n
    pos, neg = [], []
    for a in range(n):
        if not seen[a]:
            ln, sign, b = 0, 1, a
            while not seen[b]:
                seen[b] = True
                t = tau[b]
                if t < 0:
                    sign = -sign
                b = abs(t) - 1
                ln += 1
            (pos if sign > 0 else neg).append(ln)
    return (tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True)))


# ---------------------------------------------------------------------
# generic exact character tables (Dixon-Schneider)
# ---------------------------------------------------------------------

def _perm_mul(p, q):
    return tuple(p[q[k]] for k in range(len(p)))


def _perm_inv(p):
    out = [0] * len(p)
    for a, b in enumerate(p):
        out[b] = a
    return tuple(out)


class PermGroup:
    """A finite permutation group given by generators, with conjugacy
    class data; sizes up to a few thousand."""

    def __init__(self, gens):
        ident = tuple(range(len(gens[0])))
        elems = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _perm_mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        self.gens = gens
        self.elements = sorted(elems)
        self.pos = {g: k for k, g in enumerate(self.elements)}
        self.n = len(self.elements)
        self._find_classes()

    def _find_classes(self):
        gens = self.gens
        inv_gens = [_perm_inv(g) for g in gens]
        class_of = {}
        classes = []
        for x in self.elements:
            if x in class_of:
                continue
            ci = len(classes)
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g, gi in zip(gens, inv_gens):
                        z = _perm_mul(g, _perm_mul(y, gi))
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            for y in orbit:
                class_of[y] = ci
            classes.append(sorted(orbit))
        self.classes = classes
        self.class_of = class_of
        self.reps = [c[0] for c in classes]
        self.k = len(classes)

    def element_order(self, x):
        o, y = 1, x
        ident = tuple(range(len(x)))
        while y != ident:
            y = _perm_mul(y, x)
            o += 1
        return o

    def power_class(self, ci, j):
        """Class index of g^j for g in class ci."""
        g = self.reps[ci]
        y = tuple(range(len(g)))
        for _ in range(j % self.element_order(g)):
            y = _perm_mul(y, g)
        return self.class_of[y]


def _mod_inv(a, p):
    return pow(a, p - 2, p)


def _char_table_modp(G, p, z_exp):
    """Simultaneous eigenvectors of the class-algebra matrices over F_p.
    Returns rows omega[chi][class] = |C| chi(g) / chi(1) mod p."""
    k = G.k
    sizes = [len(c) for c in G.classes]
    # class matrices M_i[j][l] = #{(a,b) in C_i x C_j : ab = rep_l}
    # computed transposed: for each product over C_i x {rep_j}^G ... use
    # the standard count via a*rep_l^... simpler: a in C_i, b with ab=g_l
    # <=> b = a^-1 g_l; count those b in C_j.
    def class_matrix(i):
        M = [[0] * k for _ in range(k)]
        for a in G.classes[i]:
            ainv = _perm_inv(a)
            for l, g in enumerate(G.reps):
                b = _perm_mul(ainv, g)
                M[G.class_of[b]][l] += 1
            # this fills column-wise: for fixed a and each l, b runs; we
            # need M_i[j][l] = #{a in C_i: class(a^-1 g_l) = j}
        return M

    Ms = [class_matrix(i) for i in range(k)]
    rng = random.Random(12345)
    for _attempt in range(40):
        coeffs = [rng.randrange(p) for _ in range(k)]
        A = [[sum(c * M[r][s] for c, M in zip(coeffs, Ms)) % p for s in range(k)]
             for r in range(k)]
        # characteristic polynomial roots by brute evaluation
        roots = []
        for lam in range(p):
            B = [[(A[r][s] - (lam if r == s else 0)) % p for s in range(k)]
                 for r in range(k)]
            if _det_modp(B, p) == 0:
                roots.append(lam)
                if len(roots) == k:
                    break
        if len(roots) < k:
            continue
        vecs = []
        good = True
        for lam in roots:
            B = [[(A[r][s] - (lam if r == s else 0)) % p for s in range(k)]
                 for r in range(k)]
            ker = _kernel_modp(B, p)
            if len(ker) != 1:
                good = False
                break
            vecs.append(ker[0])
        if good:
            break
    else:
        raise ArithmeticError("class algebra did not split")
    # normalize: eigenvector v with v[identity-class] = 1 gives
    # omega(C_i) = v[i] (class algebra homomorphism values)
    id_cls = G.class_of[tuple(range(len(G.reps[0])))]
    rows = []
    for v in vecs:
        s = _mod_inv(v[id_cls], p)
        rows.append([x * s % p for x in v])
    return rows


def _det_modp(A, p):
    n = len(A)
    A = [row[:] for row in A]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = _mod_inv(A[c][c], p)
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv % p
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[c])]
    return det % p


def _kernel_modp(A, p):
    n = len(A)
    A = [row[:] for row in A]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = _mod_inv(A[r][c], p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, c in enumerate(pivots):
            v[c] = (-A[i][fc]) % p
        basis.append(v)
    return basis


class RationalCharTable:
    """Exact character table of a permutation group, restricted to the
    rational irreducible characters (which is all of them for the Weyl
    groups handled here); values are integers."""

    def __init__(self, gens):
        G = PermGroup(gens)
        self.group = G
        sizes = [len(c) for c in G.classes]
        self.sizes = sizes
        self.order = G.n
        orders = [G.element_order(g) for g in G.reps]
        exponent = 1
        for o in orders:
            exponent = exponent * o // _gcd(exponent, o)
        # prime p = 1 mod exponent, larger than 2 * group order
        p = exponent + 1
        while True:
            if p > 2 * G.n and _is_prime(p) and (p - 1) % exponent == 0:
                break
            p += exponent
        self.p = p
        # primitive exponent-th root of unity mod p
        z = None
        for cand in range(2, p):
            if pow(cand, exponent, p) == 1 and all(
                    pow(cand, exponent // q, p) != 1 for q in _prime_factors(exponent)):
                z = cand
                break
        omega_rows = _char_table_modp(G, p, z)
        id_cls = G.class_of[tuple(range(len(G.reps[0])))]
        rows = []
        for om in omega_rows:
            # chi(1)^2 = |G| / sum_i om_i om_{i*} / |C_i| ; recover chi(1)
            inv_cls = [G.class_of[_perm_inv(g)] for g in G.reps]
            s = sum(om[i] * om[inv_cls[i]] * _mod_inv(sizes[i], p) % p
                    for i in range(G.k)) % p
            d2 = G.n * _mod_inv(s, p) % p
            d = _sqrt_modp(d2, p)
            if d is None:
                continue  # not realizable (should not happen)
            d = min(d, p - d)  # degree is < p/2
            chi_mod = [om[i] * d % p * _mod_inv(sizes[i], p) % p
                       for i in range(G.k)]
            row = self._lift_row(G, chi_mod, d, orders, z, exponent, p)
            if row is not None:
                rows.append(row)
        self.rows = rows
        self.degrees = [r[id_cls] for r in rows]

    def _lift_row(self, G, chi_mod, degree, orders, z, exponent, p):
        """Lift a mod-p character row to exact integer values through
        root-of-unity multiplicities; return None if not rational."""
        values = [0] * G.k
        for ci in range(G.k):
            o = orders[ci]
            zo = pow(z, exponent // o, p)  # primitive o-th root mod p
            inv_o = _mod_inv(o, p)
            ms = []
            for l in range(o):
                m = 0
                zpow = 1  # zo^{-l j}
                step = _mod_inv(pow(zo, l, p), p)
                for j in range(o):
                    m = (m + chi_mod[G.power_class(ci, j)] * zpow) % p
                    zpow = zpow * step % p
                m = m * inv_o % p
                if m > degree:
                    return None  # multiplicity out of range: not consistent
                ms.append(m)
            # rationality: multiplicities constant on primitive-order orbits
            val = 0
            for d in sorted(set(_divisors(o))):
                prim = [l for l in range(o) if o // _gcd(l, o) == d]
                md = ms[prim[0]]
                if any(ms[l] != md for l in prim):
                    return None
                val += md * _moebius(d)
            values[ci] = val
        # verify the lift against the modular row
        for ci in range(G.k):
            if values[ci] % p != chi_mod[ci]:
                return None
        return values

    def value(self, row, element):
        """Character value of a row on a group element (a permutation)."""
        return self.rows[row][self.group.class_of[element]]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _moebius(n):
    out = 1
    for q in _prime_factors(n):
        if n % (q * q) == 0:
            return 0
        out = -out
    return out


def _sqrt_modp(a, p):
    """A square root of a mod p (p odd prime), by Tonelli-Shanks."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    nqr = 2
    while pow(nqr, (p - 1) // 2, p) == 1:
        nqr += 1
    c = pow(nqr, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        t = t * b % p * b % p
        c = b * b % p
        m = i
    return x


# ---------------------------------------------------------------------
# character tables of the systems in the root-permutation model
# ---------------------------------------------------------------------

def _conj_classes(sys):
    """Ordinary conjugacy classes of W, ordered like twisted_classes."""
    unseen = set(range(sys.size))
    classes = []
    gens = [sys.rmul[sys.e][g] for g in range(sys.ngens)]
    while unseen:
        seed = min(unseen, key=lambda i: (sys.length[i], i))
        orbit = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = sys.mult(sys.mult(g, x), sys.inv[g])
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        unseen -= orbit
        classes.append(sorted(orbit, key=lambda i: (sys.length[i], i)))
    classes.sort(key=lambda c: (sys.length[c[0]], c[0]))
    return classes


class CharTable:
    """Rational character table of the underlying Weyl group W, with
    class data and family-specific labels."""

    def __init__(self, sys, classes, labels, rows):
        self.sys = sys
        self.classes = classes
        self.sizes = [len(c) for c in classes]
        self.reps = [c[0] for c in classes]
        self.class_of = [None] * sys.size
        for ci, c in enumerate(classes):
            for w in c:
                self.class_of[w] = ci
        self.labels = labels
        self.rows = rows
        self.by_label = {lab: i for i, lab in enumerate(labels)}

    def value(self, label, w):
        return self.rows[self.by_label[label]][self.class_of[w]]

    def dim(self, label):
        return self.value(label, self.sys.e)


def _base_family(sys):
    fam = sys.family
    if "|I=" in fam:
        return "parabolic"
    return fam


def _label_str(label):
    return repr(label)


def _gen_perms(sys):
    return [sys.perms[sys.rmul[sys.e][g]] for g in range(sys.ngens)]


def _eps_perm_tuple(sys):
    return tuple(sys.eps_perm)


def _eps_perm_order(eps):
    ident = tuple(range(len(eps)))
    o, y = 1, eps
    while y != ident:
        y = _perm_mul(y, eps)
        o += 1
    return o


class SystemReps:
    """All representation-theoretic data of one (twisted) system."""

    def __init__(self, sys):
        self.sys = sys
        self.fam = _base_family(sys)
        self._build_classes()
        self._build_table()
        self._build_stable()
        self._cd = None
        self._T = {}        # i -> {label: [int per z]} traces tr(t_z phi^i, .)
        self._ctrv = {}     # (label, i) -> [LaurentPoly per y]
        self._ttrace = {}   # label -> [LaurentPoly per x] (untwisted T-traces)
        self._fv = {}

    # -- class structure ----------------------------------------------

    def _build_classes(self):
        sys = self.sys
        self.uclasses = _conj_classes(sys)
        self.uclass_of = [None] * sys.size
        for ci, c in enumerate(self.uclasses):
            for w in c:
                self.uclass_of[w] = ci
        self.tclasses = sys.twisted_classes()
        self.tclass_of = [None] * sys.size
        for ci, c in enumerate(self.tclasses):
            for w in c:
                self.tclass_of[w] = ci

    # -- untwisted table ----------------------------------------------

    def _build_table(self):
        sys = self.sys
        fam = self.fam
        reps_elts = [c[0] for c in self.uclasses]
        if fam in ("A", "2A"):
            n = len(sys.roots[0])
            labels = list(partitions(n))
            types = [cycle_type(point_perm(sys, w)) for w in reps_elts]
            rows = [[sn_char(lam, t) for t in types] for lam in labels]
        elif fam in ("D", "2D", "3D4"):
            n = len(sys.roots[0])
            types = [signed_cycle_type(signed_perm(sys, w)) for w in reps_elts]
            labels = []
            rows = []
            pairs = sorted(
                {tuple(sorted((a, b), reverse=True))
                 for (a, b) in bipartitions(n) if a != b})
            for (a, b) in pairs:
                labels.append(("pair", a, b))
                rows.append([bn_char((a, b), t) for t in types])
            splits = [a for a in partitions(n // 2)] if n % 2 == 0 else []
            if splits:
                dx = RationalCharTable(_gen_perms(sys))
                used = set()
                pair_vecs = {tuple(r) for r in rows}
                split_rows = [tuple(r) for r in
                              (tuple(dx.rows[i][dx.group.class_of[sys.perms[w]]]
                                     for w in reps_elts)
                               for i in range(len(dx.rows)))
                              if tuple(r) not in pair_vecs]
                # match each split pair [a,a]+- : the two rows summing to
                # the restricted chi_{(a,a)}
                for a in splits:
                    target = [bn_char((a, a), t) for t in types]
                    found = []
                    for r1 in split_rows:
                        for r2 in split_rows:
                            if r1 <= r2 and [x + y for x, y in zip(r1, r2)] == target:
                                found = [r1, r2]
                        if found:
                            break
                    assert found, "split characters not located"
                    for half, r in enumerate(found):
                        labels.append(("split", a, half))
                        rows.append(list(r))
        elif fam in ("E6", "2E6"):
            dx = RationalCharTable(_gen_perms(sys))
            labels = []
            rows = []
            for i in range(len(dx.rows)):
                vec = [dx.rows[i][dx.group.class_of[sys.perms[w]]]
                       for w in reps_elts]
                labels.append(("e6", dx.degrees[i], i))
                rows.append(vec)
        else:  # parabolic subsystems and anything else: generic route
            dx = RationalCharTable(_gen_perms(sys))
            labels = []
            rows = []
            ordered = sorted(range(len(dx.rows)),
                             key=lambda i: (dx.degrees[i], dx.rows[i]))
            for k, i in enumerate(ordered):
                vec = [dx.rows[i][dx.group.class_of[sys.perms[w]]]
                       for w in reps_elts]
                labels.append(("chi", dx.degrees[i], k))
                rows.append(vec)
        self.table = CharTable(self.sys, self.uclasses, labels, rows)

    # -- stable irreducibles and coset values -------------------------

    def _is_stable(self, label):
        t = self.table
        sys = self.sys
        row = t.rows[t.by_label[label]]
        return all(row[t.class_of[sys.eps_elt[c[0]]]] == row[ci]
                   for ci, c in enumerate(t.classes))

    def _build_stable(self):
        sys = self.sys
        fam = self.fam
        self.stable = [lab for lab in self.table.labels if self._is_stable(lab)]
        self._ext_cache = {}
        if fam == "3D4":
            gens = _gen_perms(sys)
            eps = _eps_perm_tuple(sys)
            self._ext_table = RationalCharTable(gens + [eps])
            self._ext_eps = eps
            self._ext_m = 3
            self._pick_ext_rows()
        elif fam == "parabolic" or fam == "E6":
            gens = _gen_perms(sys)
            eps = _eps_perm_tuple(sys)
            self._ext_table = RationalCharTable(gens + [eps])
            self._ext_eps = eps
            self._ext_m = _eps_perm_order(eps)
            self._pick_ext_rows()

    def _pick_ext_rows(self):
        """Match extended-group rows with simple restriction to the
        stable labels of the untwisted table."""
        sys = self.sys
        tab = self._ext_table
        self._ext_row = {}
        order_w = sys.size
        for i in range(len(tab.rows)):
            s = sum(tab.rows[i][tab.group.class_of[sys.perms[w]]] ** 2
                    for w in range(sys.size))
            if s != order_w:
                continue  # restriction not irreducible
            vec = tuple(tab.rows[i][tab.group.class_of[sys.perms[c[0]]]]
                        for c in self.uclasses)
            for lab in self.stable:
                if tuple(self.table.rows[self.table.by_label[lab]]) == vec:
                    # keep the first matching row (its negative is the
                    # other extension)
                    self._ext_row.setdefault(lab, i)
        missing = [lab for lab in self.stable if lab not in self._ext_row]
        assert not missing, f"no rational extension found for {missing}"

    def coset_value(self, label, x, i=1):
        """tr(x phi^i, E) for the chosen extension E of the stable
        irreducible with this label."""
        sys = self.sys
        fam = self.fam
        if fam in ("A", "2A"):
            w = x if i % 2 == 0 else sys.mult(x, sys.w0)
            lam = label
            return sn_char(lam, cycle_type(point_perm(sys, w)))
        if fam in ("D", "2D"):
            _, a, b = label
            t = signed_cycle_type(signed_perm(sys, x, flip_last=bool(i % 2)))
            return bn_char((a, b), t)
        if fam in ("3D4", "parabolic", "E6"):
            tab = self._ext_table
            g = sys.perms[x]
            e = self._ext_eps
            for _ in range(i % self._ext_m):
                g = _perm_mul(g, e)
            return tab.rows[self._ext_row[label]][tab.group.class_of[g]]
        if fam == "2E6":
            w = x if i % 2 == 0 else sys.mult(x, sys.w0)
            t = self.table
            return t.rows[t.by_label[label]][t.class_of[w]]
        raise ValueError(f"no coset values for family {fam}")

    # -- asymptotic-ring traces ---------------------------------------

    @property
    def cd(self):
        if self._cd is None:
            self._cd = cells.cell_data(self.sys)
        return self._cd

    def t_traces(self, i=0):
        """{label: [tr(t_z phi^i, E^infty) for z in W]} (stable labels for
        i not divisible by c's twist order; all labels for i = 0)."""
        if i in self._T:
            return self._T[i]
        sys = self.sys
        cd = self.cd
        size = sys.size
        if i == 0:
            # aggregate pi rows over ordinary classes
            agg = [[Fraction(0)] * size for _ in self.uclasses]
            for w in range(size):
                row = cd.pi[w]
                tgt = agg[self.uclass_of[w]]
                for z in range(size):
                    if row[z]:
                        tgt[z] += row[z]
            out = {}
            for lab in self.table.labels:
                chi = self.table.rows[self.table.by_label[lab]]
                vals = []
                for z in range(size):
                    s = sum(chi[c] * agg[c][z] for c in range(len(agg)))
                    assert s.denominator == 1
                    vals.append(int(s))
                out[lab] = vals
        else:
            agg = [[Fraction(0)] * size for _ in self.tclasses]
            # the i-twisted classes coincide with eps-twisted classes for
            # i coprime to the twist; aggregate elementwise to stay exact
            coset = {lab: [self.coset_value(lab, c[0], i) for c in self.tclasses]
                     for lab in self.stable}
            if i % self.sys.r == 1 or self.sys.r <= 2:
                for w in range(size):
                    row = cd.pi[w]
                    tgt = agg[self.tclass_of[w]]
                    for z in range(size):
                        if row[z]:
                            tgt[z] += row[z]
                out = {}
                for lab in self.stable:
                    cv = coset[lab]
                    vals = []
                    for z in range(size):
                        s = sum(cv[c] * agg[c][z] for c in range(len(agg)))
                        assert s.denominator == 1
                        vals.append(int(s))
                    out[lab] = vals
            else:
                out = {}
                for lab in self.stable:
                    vals = []
                    for z in range(size):
                        s = sum(cd.pi[w][z] * self.coset_value(lab, w, i)
                                for w in range(size) if cd.pi[w][z])
                        assert s.denominator == 1
                        vals.append(int(s))
                    out[lab] = vals
        self._T[i] = out
        return out

    def ctrv(self, label, i=0):
        """[tr(c_{y phi^i}^dagger, E^v) for y in W] as LaurentPolys."""
        key = (label, i)
        if key not in self._ctrv:
            sys = self.sys
            cd = self.cd
            T = self.t_traces(i)[label]
            out = []
            for y in range(sys.size):
                acc = ZERO
                for z, p in cd.phimat[y].items():
                    if T[z]:
                        acc = acc + p * LaurentPoly({0: T[z]})
                out.append(acc)
            self._ctrv[key] = out
        return self._ctrv[key]

    def ttrace(self, label):
        """[tr(T_x, E^v) for x in W] (untwisted), by triangular
        inversion of the c^dagger expansion."""
        if label not in self._ttrace:
            sys = self.sys
            ct = self.ctrv(label, 0)
            order = sorted(range(sys.size), key=lambda i: (sys.length[i], i))
            tau = [None] * sys.size
            for x in order:
                acc = ct[x]
                lx = sys.length[x]
                for y in range(sys.size):
                    ly = sys.length[y]
                    if ly < lx and tau[y] is not None and sys.bruhat_leq(y, x):
                        P = hecke.kl_polynomial(sys, y, x)
                        if P:
                            A = P.subs_v_squared().bar().shifted(lx - ly)
                            if ly % 2:
                                A = -A
                            acc = acc - A * tau[y]
                tau[x] = acc if lx % 2 == 0 else -acc
            self._ttrace[label] = tau
        return self._ttrace[label]

    def f_v(self, label):
        if label not in self._fv:
            tau = self.ttrace(label)
            dim = self.table.dim(label)
            s = ZERO
            for p in tau:
                s = s + p * p
            from .laurent import poly_divide_exact
            self._fv[label] = poly_divide_exact(s, LaurentPoly({0: dim}))
        return self._fv[label]

    def f_inf(self, label):
        T = self.t_traces(0)[label]
        dim = self.table.dim(label)
        s = sum(t * t for t in T)
        assert s % dim == 0
        return s // dim

    def cell_of_label(self, label):
        """Two-sided cell supporting the t-traces of the restriction."""
        cd = self.cd
        T = self.t_traces(0)[label]
        dim = self.table.dim(label)
        for ci, comp in enumerate(cd.cells):
            s = sum(T[d] for d in cd.D if cd.cell_of[d] == ci)
            if s == dim:
                return ci
            if s != 0:
                raise ArithmeticError("block unit trace neither 0 nor dim")
        raise ArithmeticError("no supporting cell found")


_REPS_CACHE = {}


def system_reps(sys):
    key = id(sys)
    hit = _REPS_CACHE.get(key)
    if hit is None or hit[0] is not sys:
        hit = (sys, SystemReps(sys))
        _REPS_CACHE[key] = hit
    return hit[1]


# ---------------------------------------------------------------------
# public types and module-level API
# ---------------------------------------------------------------------

class CosetClassFunction:
    """A function on the coset W phi, constant on twisted classes;
    stored as one rational value per twisted class."""

    __slots__ = ("sys", "values")

    def __init__(self, sys, values):
        self.sys = sys
        self.values = list(values)

    def at(self, x):
        """Value at x phi."""
        return self.values[system_reps(self.sys).tclass_of[x]]

    def __add__(self, other):
        assert self.sys is other.sys
        return CosetClassFunction(
            self.sys, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        assert self.sys is other.sys
        return CosetClassFunction(
            self.sys, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c):
        return CosetClassFunction(self.sys, [c * a for a in self.values])

    def __eq__(self, other):
        return (isinstance(other, CosetClassFunction)
                and self.sys is other.sys and self.values == other.values)

    def is_zero(self):
        return all(v == 0 for v in self.values)

    def __repr__(self):
        return f"CosetClassFunction({self.values})"


class ExtIrr:
    """An irreducible of the extended group: an eps-stable irreducible
    of W together with a chosen extension to the coset."""

    def __init__(self, sys, label, preferred=True):
        self.sys = sys
        self.label = label
        self.is_preferred = preferred

    @property
    def coset_values(self):
        R = system_reps(self.sys)
        return CosetClassFunction(
            self.sys,
            [R.coset_value(self.label, c[0], 1) for c in R.tclasses])

    def phi(self):
        """The class function phi_E = tr(. phi, E) on the coset."""
        return self.coset_values

    def dim(self):
        return system_reps(self.sys).table.dim(self.label)

    def __repr__(self):
        return f"ExtIrr({self.sys.family},{self.label})"


def char_table(sys):
    return system_reps(sys).table


def preferred_extensions(sys):
    """The set of chosen extensions, one per eps-stable irreducible,
    ordered by (a-value, label)."""
    R = system_reps(sys)
    labs = sorted(
        R.stable,
        key=lambda lab: (R.cd.a[R.cd.cells[R.cell_of_label(lab)][0]],
                         _label_str(lab)))
    return [ExtIrr(sys, lab) for lab in labs]


def inner_coset(f, g):
    """|W|^{-1} sum over x in W of f(x phi) g(x phi)."""
    assert f.sys is g.sys
    R = system_reps(f.sys)
    s = sum(Fraction(len(c)) * a * b
            for c, a, b in zip(R.tclasses, f.values, g.values))
    return s / f.sys.size


def trace_tinf(xt, E):
    """tr(t_x phi^i, E^infty) for an extended element x phi^i."""
    R = system_reps(xt.sys)
    i = xt.k % xt.sys.c
    if i == 0:
        return R.t_traces(0)[E.label][xt.w]
    return R.t_traces(i)[E.label][xt.w]


def trace_Ev(h, E):
    """tr(h, E^v) for h in the extended Hecke algebra."""
    R = system_reps(h.sys)
    coords = hecke.expand_in_c_dagger(h.sys, h)
    acc = ZERO
    for (y, i), p in coords.items():
        acc = acc + p * R.ctrv(E.label, i % h.sys.c)[y]
    return acc


def f_values(E):
    R = system_reps(E.sys)
    return (R.f_v(E.label), R.f_inf(E.label))


def cell_of(E):
    R = system_reps(E.sys)
    ci = R.cell_of_label(E.label)
    return (ci, R.cd.a[R.cd.cells[ci][0]])


def aleph(sys, x):
    """The class function aleph_{x phi} = sum over E in the chosen set
    of tr(t_x phi, E^infty) phi_E."""
    R = system_reps(sys)
    T1 = R.t_traces(1)
    vals = [0] * len(R.tclasses)
    for lab in R.stable:
        t = T1[lab][x]
        if t:
            for ci, c in enumerate(R.tclasses):
                vals[ci] += t * R.coset_value(lab, c[0], 1)
    return CosetClassFunction(sys, vals)


# -- parabolic induction ----------------------------------------------

_PARA_CACHE = {}


def parabolic_system(sys, I):
    """Cached eps-stable parabolic subsystem (shared so that per-system
    caches are reused)."""
    key = (id(sys), tuple(I))
    hit = _PARA_CACHE.get(key)
    if hit is not None and hit[0] is sys:
        return hit[1]
    sub = sys.parabolic(tuple(I))
    _PARA_CACHE[key] = (sys, sub)
    return sub


def hom_mult(sys, I, sub_label, label, sub_sign=1):
    """dim Hom over the extended parabolic group of the chosen extension
    E' (sub_label, possibly iota-twisted by sub_sign=-1) with the
    restriction of the chosen extension E (label) of the big group.
    Only the order-2 twist case is supported."""
    sub = parabolic_system(sys, I)
    if sub.c != 2 or sys.c != 2:
        raise ValueError("hom_mult supports order-2 twists only")
    Rsub = system_reps(sub)
    R = system_reps(sys)
    s0 = s1 = Fraction(0)
    for x in range(sub.size):
        xp = sub.to_parent_index(x)
        s0 += Rsub.coset_value(sub_label, x, 0) * R.coset_value(label, xp, 0)
        s1 += (sub_sign * Rsub.coset_value(sub_label, x, 1)
               * R.coset_value(label, xp, 1))
    val = (s0 + s1) / (2 * sub.size)
    assert val.denominator == 1 and val >= 0
    return int(val)


def _j_coeff(sys, I, sub_label, label):
    """<E',E> - <E', E tensor iota>: the coefficient of phi_E in the
    truncated induction of phi_{E'} (before the a-value restriction)."""
    sub = parabolic_system(sys, I)
    Rsub = system_reps(sub)
    R = system_reps(sys)
    s = Fraction(0)
    for x in range(sub.size):
        xp = sub.to_parent_index(x)
        s += Rsub.coset_value(sub_label, x, 1) * R.coset_value(label, xp, 1)
    s /= sub.size
    assert s.denominator == 1
    return int(s)


def j_induce(sys, I, f):
    """Truncated induction of a coset class function from the parabolic
    on generator subset I to the big group."""
    sub = parabolic_system(sys, I)
    Rsub = system_reps(sub)
    R = system_reps(sys)
    out = [Fraction(0)] * len(R.tclasses)
    for sub_lab in Rsub.stable:
        fE = ExtIrr(sub, sub_lab).phi()
        coef = inner_coset(f, fE)
        if coef == 0:
            continue
        a_sub = Rsub.cd.a[Rsub.cd.cells[Rsub.cell_of_label(sub_lab)][0]]
        for lab in R.stable:
            a_big = R.cd.a[R.cd.cells[R.cell_of_label(lab)][0]]
            if a_big != a_sub:
                continue
            c = _j_coeff(sys, I, sub_lab, lab)
            if c:
                for ci, cl in enumerate(R.tclasses):
                    out[ci] += coef * c * R.coset_value(lab, cl[0], 1)
    return CosetClassFunction(sys, out)


def j_restrict(sys, I, f):
    """Truncated restriction: the adjoint map, from the big group's
    coset functions to the parabolic's."""
    sub = parabolic_system(sys, I)
    Rsub = system_reps(sub)
    R = system_reps(sys)
    out = [Fraction(0)] * len(Rsub.tclasses)
    for lab in R.stable:
        fE = ExtIrr(sys, lab).phi()
        coef = inner_coset(f, fE)
        if coef == 0:
            continue
        a_big = R.cd.a[R.cd.cells[R.cell_of_label(lab)][0]]
        for sub_lab in Rsub.stable:
            a_sub = Rsub.cd.a[Rsub.cd.cells[Rsub.cell_of_label(sub_lab)][0]]
            if a_sub != a_big:
                continue
            c = _j_coeff(sys, I, sub_lab, lab)
            if c:
                for ci, cl in enumerate(Rsub.tclasses):
                    out[ci] += coef * c * Rsub.coset_value(sub_lab, cl[0], 1)
    return CosetClassFunction(sub, out)
