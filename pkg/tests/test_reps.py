from fractions import Fraction

import pytest

from heckecells import reps, weyl


def test_sn_char_small_values():
    # S_3: standard character table
    assert reps.sn_char((3,), (1, 1, 1)) == 1
    assert reps.sn_char((1, 1, 1), (2, 1)) == -1
    assert reps.sn_char((2, 1), (1, 1, 1)) == 2
    assert reps.sn_char((2, 1), (3,)) == -1
    assert reps.sn_char((2, 1), (2, 1)) == 0


def test_sn_char_orthogonality():
    from heckecells.reps import partitions
    import math
    n = 5
    parts = partitions(n)

    def class_size(mu):
        cnt = {}
        for p in mu:
            cnt[p] = cnt.get(p, 0) + 1
        denom = 1
        for p, k in cnt.items():
            denom *= (p ** k) * math.factorial(k)
        return math.factorial(n) // denom

    for la in parts:
        for lb in parts:
            s = sum(class_size(mu) * reps.sn_char(la, mu)
                    * reps.sn_char(lb, mu) for mu in parts)
            assert s == (math.factorial(n) if la == lb else 0)


def test_bn_char_orthogonality():
    from heckecells.reps import bipartitions, partitions
    import math
    n = 3
    order = (2 ** n) * math.factorial(n)

    def classes():
        for k in range(n + 1):
            for pos in partitions(k):
                for neg in partitions(n - k):
                    yield (pos, neg)

    def class_size(cls):
        pos, neg = cls
        denom = 1
        for part in (pos, neg):
            cnt = {}
            for p in part:
                cnt[p] = cnt.get(p, 0) + 1
            for p, k in cnt.items():
                denom *= ((2 * p) ** k) * math.factorial(k)
        return order // denom

    labels = bipartitions(n)
    for la in labels:
        for lb in labels:
            s = sum(class_size(c) * reps.bn_char(la, c)
                    * reps.bn_char(lb, c) for c in classes())
            assert s == (order if la == lb else 0)


@pytest.mark.parametrize("fam,n", [("2A", 3), ("2D", 3), ("3D4", 4)])
def test_preferred_extensions_orthonormal(fam, n):
    sys = weyl.cached_system(fam, n)
    exts = reps.preferred_extensions(sys)
    for i, E in enumerate(exts):
        for F in exts[i:]:
            ip = reps.inner_coset(E.phi(), F.phi())
            assert ip == (1 if E.label == F.label else 0)


def test_dim_from_f_v():
    # f_E^v at v=1 is |W| / dim E
    sys = weyl.cached_system("2A", 3)
    R = reps.system_reps(sys)
    for lab in R.table.labels:
        dim = R.table.dim(lab)
        assert R.f_v(lab).at_one() * dim == sys.size


def test_coset_values_are_class_functions():
    sys = weyl.cached_system("2A", 4)
    R = reps.system_reps(sys)
    for cl in R.tclasses:
        for lab in R.stable:
            vals = {R.coset_value(lab, w, 1) for w in cl}
            assert len(vals) == 1


def test_aleph_integral_and_conjugation_stable():
    sys = weyl.cached_system("2A", 3)
    for x in range(sys.size):
        f = reps.aleph(sys, x)
        for v in f.values:
            assert Fraction(v).denominator == 1


def test_trace_tinf_matches_t_traces():
    sys = weyl.cached_system("2A", 3)
    R = reps.system_reps(sys)
    T1 = R.t_traces(1)
    for lab in R.stable:
        E = reps.ExtIrr(sys, lab)
        for x in range(sys.size):
            xt = weyl.ExtElt(sys, x, 1)
            assert reps.trace_tinf(xt, E) == T1[lab][x]


def test_hom_mult_nonnegative_and_adds_to_dim():
    sys = weyl.cached_system("2A", 4)
    R = reps.system_reps(sys)
    for I in sys.eps_stable_proper_subsets():
        if not I:
            continue
        sub = reps.parabolic_system(sys, I)
        Rsub = reps.system_reps(sub)
        for lab in R.stable:
            dim = R.table.dim(lab)
            tot = 0
            for sl in Rsub.stable:
                mp = reps.hom_mult(sys, I, sl, lab, 1)
                mm = reps.hom_mult(sys, I, sl, lab, -1)
                assert mp >= 0 and mm >= 0
                tot += (mp + mm) * Rsub.table.dim(sl)
            # stable constituents of the restriction account for at
            # most the full dimension
            assert tot <= dim
