from itertools import combinations

from hypothesis import given, settings, strategies as st

from heckecells import symbols as sy


def test_enum_X_rank_two():
    assert sy.enum_X(2, 1) == [((0,), (2,)), ((2,), (0,))]


def test_enum_barX_small():
    assert sy.enum_barX(2) == [((0, 2), (1,)), ((1, 3), (0,))]
    bars = sy.enum_barX(4)
    assert len(bars) == 7
    assert ((2, 3, 4, 5), (0, 1)) in bars
    for M, N in bars:
        assert len(M) % 2 == 0 and len(M) >= 2
        assert not set(M) & set(N)
        assert len(M) + 2 * len(N) == 8
        assert sum(M) + 2 * sum(N) == 16


def test_zeta_fiber_roundtrip():
    for n in range(2, 6):
        for bar in sy.enum_barX(n):
            fib = sy.fiber(bar)
            assert len(fib) == len(sy.half_subsets(bar[0]))
            for sym in fib:
                assert sy.zeta(sym) == bar


def test_bipartition_sizes():
    for n in range(2, 6):
        for bar in sy.enum_barX(n):
            for sym in sy.fiber(bar):
                a, b = sy.bipartition_of_symbol(sym)
                assert sum(a) + sum(b) == n


def test_t_map_and_sharp():
    M = (0, 1, 2, 3)
    t = sy.t_map(M)
    assert t == {0: 0, 1: 1, 2: 0, 3: 1}
    # sharp is an involution onto even subsets
    for H in sy.half_subsets(M):
        E = sy.sharp(M, H)
        assert len(E) % 2 == 0
        assert tuple(sorted(set(E) ^ {1, 3})) == tuple(H)


def test_eta_count_and_value_on_M():
    for M in ((0, 1), (0, 1, 2, 3), (0, 1, 2, 3, 4, 5)):
        etas = sy.enum_eta(M)
        assert len(etas) == 1 << (len(M) - 2)
        for eta in etas:
            assert eta.value(M) == 1
            assert eta.value(()) == 0


def test_eta_linearity():
    M = (0, 1, 2, 3, 4, 5)
    evens = [E for k in range(0, 7, 2)
             for E in combinations(M, k)]
    for eta in sy.enum_eta(M)[:4]:
        for E1 in evens[:8]:
            for E2 in evens[:8]:
                s = tuple(sorted(set(E1) ^ set(E2)))
                assert eta.value(s) == (eta.value(E1) + eta.value(E2)) % 2


def test_arrangement_catalan_counts():
    catalan = [1, 1, 2, 5, 14, 42]
    for k in range(1, 6):
        arrs = sy.admissible_arrangements(tuple(range(2 * k)))
        assert len(arrs) == catalan[k]


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(min_value=0, max_value=15),
               min_size=2, max_size=8).filter(lambda s: len(s) % 2 == 0))
def test_arrangements_are_noncrossing_matchings(M):
    M = tuple(sorted(M))
    for phi in sy.admissible_arrangements(M):
        flat = sorted(x for pair in phi for x in pair)
        assert flat == list(M)
        for (a1, b1), (a2, b2) in combinations(phi, 2):
            assert not (a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1)


def test_cc_phi_is_subspace():
    M = (0, 1, 2, 3, 4, 5)
    for phi in sy.admissible_arrangements(M):
        cc = sy.cc_phi(M, phi)
        assert len(cc) == 1 << len(phi)
        ccset = {tuple(E) for E in cc}
        for E1 in cc:
            for E2 in cc:
                assert tuple(sorted(set(E1) ^ set(E2))) in ccset


def test_counting_identity():
    values = {2: 2, 3: 5, 4: 10, 5: 20, 6: 36, 7: 65, 8: 110,
              9: 186, 10: 302, 11: 486, 12: 762}
    for n, v in values.items():
        assert sy.count_by_cells(n) == v
        assert sy.count_by_squares(n) == v
        assert sy.object_count(n) == v


def test_fiber_union_exceeds_objects_at_rank_four():
    # the fibers over-count the objects: 18 symbols vs 10 objects
    total = sum(len(sy.fiber(bar)) for bar in sy.enum_barX(4))
    assert total == 18
    assert sy.object_count(4) == 10
