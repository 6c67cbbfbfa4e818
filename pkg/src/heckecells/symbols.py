"""Symbol combinatorics for the twisted type-D classification.

A symbol is an ordered pair (S, T) of distinct m-element subsets of the
nonnegative integers with total sum n + m^2 - m; symbols label the
irreducible modules of the ambient signed-permutation group whose
restriction to the rotation subgroup stays irreducible.  Collapsing
(S, T) to (M, N) = (symmetric difference, intersection) gives a
bar-symbol; bar-symbols label the epsilon-stable two-sided cells.  On
each bar-symbol the fiber of the collapse map is indexed by the half-
size subsets H of M, and the linear forms eta on the F_2-space of even
subsets of M with eta(M) = 1 index the objects in the corresponding
family.  Admissible arrangements (non-crossing perfect matchings of M,
nesting allowed) cut out the subspaces cc_Phi and the half-sum class
functions c(M, N, Phi, Phihat) used to split the family.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations


# -- symbols and bar-symbols ------------------------------------------

def _sym_sum(n, m):
    return n + m * m - m


def enum_X(n, m):
    """All symbols (S, T): ordered pairs of distinct m-subsets of the
    naturals with entry sum n + m^2 - m, sorted lexicographically."""
    total = _sym_sum(n, m)
    out = []
    universe = range(0, n + m)
    for S in combinations(universe, m):
        s = sum(S)
        if s > total:
            continue
        for T in combinations(universe, m):
            if T != S and s + sum(T) == total:
                out.append((S, T))
    out.sort()
    return out


def enum_barX(n):
    """Bar-symbols (M, N) at the canonical size m = n: disjoint subsets
    with M nonempty, |M| + 2|N| = 2n and sum(M) + 2 sum(N) = n^2."""
    m = n
    total = _sym_sum(n, m)
    universe = list(range(n + m - 1, -1, -1))  # descending
    out = []

    def rec(idx, cm, cn, t, Ms, Ns):
        if cm == 0 and cn == 0:
            if t == 0:
                out.append((tuple(sorted(Ms)), tuple(sorted(Ns))))
            return
        need = cm + cn
        rest = universe[idx:]
        if len(rest) < need or t < 0:
            return
        # largest achievable: weight 2 on the cn largest, 1 on the next cm
        hi = 2 * sum(rest[:cn]) + sum(rest[cn:cn + cm])
        if hi < t:
            return
        lo = 2 * sum(rest[len(rest) - cn:]) + \
            sum(rest[len(rest) - cn - cm:len(rest) - cn])
        if lo > t:
            return
        x = universe[idx]
        if cm:
            rec(idx + 1, cm - 1, cn, t - x, Ms + [x], Ns)
        if cn:
            rec(idx + 1, cm, cn - 1, t - 2 * x, Ms, Ns + [x])
        rec(idx + 1, cm, cn, t, Ms, Ns)

    for size_m in range(2, 2 * m + 1, 2):
        rec(0, size_m, m - size_m // 2, total, [], [])
    out.sort()
    return out


def zeta(sym):
    """Collapse a symbol to its bar-symbol (S xor T, S and T)."""
    S, T = set(sym[0]), set(sym[1])
    return (tuple(sorted(S ^ T)), tuple(sorted(S & T)))


def half_subsets(M):
    """The subsets of M of cardinal |M|/2, in a fixed order."""
    return list(combinations(M, len(M) // 2))


def fiber(bar):
    """The symbols collapsing to (M, N), indexed by H in half_subsets(M):
    H maps to (N u H, N u (M - H))."""
    M, N = bar
    out = []
    for H in half_subsets(M):
        rest = tuple(x for x in M if x not in H)
        out.append((tuple(sorted(N + H)), tuple(sorted(N + rest))))
    return out


def bipartition_of_symbol(sym):
    """The pair of partitions obtained by subtracting the staircase from
    each row of the symbol and dropping zeros."""
    out = []
    for row in sym:
        parts = sorted((x - i for i, x in enumerate(sorted(row))),
                       reverse=True)
        out.append(tuple(p for p in parts if p > 0))
    return tuple(out)


# -- the F_2 structure on even subsets of M ---------------------------

def t_map(M):
    """t_M(x) = number of smaller elements of M, mod 2."""
    Ms = sorted(M)
    return {x: i % 2 for i, x in enumerate(Ms)}


def sharp(M, H):
    """H -> t_M^{-1}(1) * H (symmetric difference), an even subset."""
    t = t_map(M)
    odd = {x for x in M if t[x] == 1}
    return tuple(sorted(odd ^ set(H)))


def t_map_and_sharp(M, H):
    return (t_map(M), sharp(M, H))


def _basis_coords(M, E):
    """Coordinates of the even subset E in the basis of consecutive
    pairs {m_1,m_2}, {m_2,m_3}, ... of the sorted M."""
    Ms = sorted(M)
    E = set(E)
    coords = []
    count = 0
    for x in Ms[:-1]:
        count += x in E
        coords.append(count % 2)
    return coords


class EtaForm:
    """A linear form on the even subsets of M with eta(M) = 1, stored by
    its values on the consecutive-pair basis."""

    def __init__(self, M, bits):
        self.M = tuple(sorted(M))
        self.bits = tuple(bits)
        assert len(self.bits) == len(self.M) - 1
        assert self.value(self.M) == 1

    def value(self, E):
        return sum(b * c for b, c in
                   zip(self.bits, _basis_coords(self.M, E))) % 2

    def __eq__(self, other):
        return (isinstance(other, EtaForm)
                and self.M == other.M and self.bits == other.bits)

    def __hash__(self):
        return hash((self.M, self.bits))

    def __repr__(self):
        return "EtaForm(%s)" % ("".join(str(b) for b in self.bits),)


def enum_eta(M):
    """All 2^{|M|-2} forms, ordered by their bit strings."""
    k = len(M) - 1
    # M itself is the sum of the odd-position basis vectors
    out = []
    for code in range(1 << k):
        bits = [(code >> (k - 1 - i)) & 1 for i in range(k)]
        if sum(bits[0::2]) % 2 == 1:
            out.append(EtaForm(M, bits))
    return out


# -- admissible arrangements ------------------------------------------

def _pairings(elts):
    if not elts:
        yield ()
        return
    first = elts[0]
    for j in range(1, len(elts)):
        pair = (first, elts[j])
        rest = elts[1:j] + elts[j + 1:]
        for sub in _pairings(rest):
            yield (pair,) + sub


def _compatible(c1, c2):
    a1, b1 = min(c1), max(c1)
    a2, b2 = min(c2), max(c2)
    nested = (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2)
    disjoint = b1 < a2 or b2 < a1
    return nested or disjoint


def admissible_arrangements(M):
    """All perfect matchings of M by pairs whose intervals are pairwise
    nested or disjoint (never crossing)."""
    out = []
    for phi in _pairings(tuple(sorted(M))):
        if all(_compatible(c1, c2) for c1, c2 in combinations(phi, 2)):
            out.append(tuple(sorted(phi)))
    out.sort()
    return out


def cc_phi(M, phi):
    """The subspace of even subsets that are unions of pairs of phi."""
    out = []
    for k in range(len(phi) + 1):
        for chosen in combinations(phi, k):
            E = []
            for pair in chosen:
                E.extend(pair)
            out.append(tuple(sorted(E)))
    out.sort(key=lambda E: (len(E), E))
    return out


def marking_to_form(M, phi, phihat):
    """View the odd marking Phihat of phi as the linear form xi on
    cc_phi with xi(M) = 1: the union of a subset Psi of phi corresponds
    under # to an element of cc_phi and gets |Phihat ^ Psi| mod 2."""
    table = {}
    for k in range(len(phi) + 1):
        for psi in combinations(phi, k):
            t = t_map(M)
            E0 = {x for pair in psi for x in pair if t[x] == 0}
            E1 = {x for pair in phi for x in pair
                  if pair not in psi and t[x] == 1}
            key = sharp(M, tuple(sorted(E0 | E1)))
            table[key] = len(set(psi) & set(phihat)) % 2
    return table


def c_function(sys, bar, phi, phihat):
    """The half-sum class function c(M, N, Phi, Phihat) on the twisted
    coset, built from the coset characters of the fiber symbols."""
    from . import reps
    M, N = bar
    assert len(phihat) % 2 == 1
    t = t_map(M)
    R = reps.system_reps(sys)
    nclasses = len(R.tclasses)
    vals = [Fraction(0)] * nclasses
    npairs = len(phi)
    for k in range(npairs + 1):
        for psi in combinations(phi, k):
            sign = -1 if len(set(psi) & set(phihat)) % 2 else 1
            in_psi = {x for pair in psi for x in pair}
            S = sorted(N + tuple(x for pair in phi for x in pair
                                 if (x in in_psi) == (t[x] == 0)))
            T = sorted(N + tuple(x for pair in phi for x in pair
                                 if (x in in_psi) == (t[x] == 1)))
            ab = bipartition_of_symbol((tuple(S), tuple(T)))
            for ci, cl in enumerate(R.tclasses):
                tau = reps.signed_cycle_type(
                    reps.signed_perm(sys, cl[0], flip_last=True))
                vals[ci] += Fraction(sign * reps.bn_char(ab, tau), 2)
    return reps.CosetClassFunction(sys, vals)


# -- counting ---------------------------------------------------------

@lru_cache(maxsize=None)
def _partition_count_pairs(n):
    """Number of ordered pairs of partitions with total size n."""
    def partitions_count(k, mx):
        if k == 0:
            return 1
        return sum(partitions_count(k - i, i) for i in range(min(k, mx), 0, -1))
    return sum(partitions_count(k, k) * partitions_count(n - k, n - k)
               for k in range(n + 1))


def p2(k):
    """Number of bipartitions of k (irreducible characters of the rank-k
    signed permutation group); p2(0) = 1."""
    return _partition_count_pairs(k)


def count_by_cells(n):
    """Sum of 2^{|M|-2} over the bar-symbols of rank n."""
    return sum(1 << (len(M) - 2) for (M, N) in enum_barX(n))


def count_by_squares(n):
    """Sum of p2(k) over odd s >= 1 with s^2 + k = n."""
    s = 1
    total = 0
    while s * s <= n:
        total += p2(n - s * s)
        s += 2
    return total


def object_count(n):
    """Number of objects in the rank-n twisted type-D classification,
    computed by cells and cross-checked against the square expansion."""
    a = count_by_cells(n)
    b = count_by_squares(n)
    assert a == b, (n, a, b)
    return a
