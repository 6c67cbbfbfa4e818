from itertools import combinations

import pytest

from heckecells import weyl


@pytest.fixture(scope="module")
def a3():
    return weyl.cached_system("A", 3)


def test_orders():
    assert weyl.cached_system("A", 2).size == 6
    assert weyl.cached_system("A", 3).size == 24
    assert weyl.cached_system("D", 4).size == 192
    assert weyl.cached_system("2A", 4).size == 24
    assert weyl.cached_system("2D", 3).size == 24
    assert weyl.cached_system("3D4", 4).size == 192


def test_longest_element(a3):
    assert a3.length[a3.w0] == 6
    assert a3.mult(a3.w0, a3.w0) == a3.e
    # w0 reverses descents
    assert a3.ldesc[a3.w0] == (1 << a3.ngens) - 1


def test_length_and_words(a3):
    for w in range(a3.size):
        word = a3.word(w)
        assert len(word) == a3.length[w]
        acc = a3.e
        for g in word:
            acc = a3.rmul[acc][g]
        assert acc == w


def test_descents_match_length(a3):
    for w in range(a3.size):
        for g in range(a3.ngens):
            longer = a3.length[a3.lmul[w][g]] > a3.length[w]
            assert ((a3.ldesc[w] >> g) & 1) == (0 if longer else 1)


def _subword_products(sys, word):
    out = set()
    for k in range(len(word) + 1):
        for pick in combinations(range(len(word)), k):
            acc = sys.e
            for i in pick:
                acc = sys.rmul[acc][word[i]]
            out.add(acc)
    return out


def test_bruhat_subword_oracle(a3):
    # y <= x iff y is a product of a subword of a reduced word of x
    for x in range(a3.size):
        below = _subword_products(a3, a3.word(x))
        for y in range(a3.size):
            assert a3.bruhat_leq(y, x) == (y in below)


def test_bruhat_pair_count_s3():
    s3 = weyl.cached_system("A", 2)
    pairs = sum(1 for y in range(s3.size) for x in range(s3.size)
                if s3.bruhat_leq(y, x))
    assert pairs == 19


def test_eps_is_length_preserving_automorphism():
    for fam, n in (("2A", 3), ("2D", 3), ("3D4", 4)):
        sys = weyl.cached_system(fam, n)
        eps = sys.eps_elt
        assert sorted(eps) == list(range(sys.size))
        for x in range(sys.size):
            assert sys.length[eps[x]] == sys.length[x]
        for x in range(0, sys.size, 5):
            for y in range(0, sys.size, 7):
                assert eps[sys.mult(x, y)] == sys.mult(eps[x], eps[y])


def test_eps_orders():
    assert weyl.cached_system("2A", 3).r == 2
    assert weyl.cached_system("3D4", 4).r == 3
    assert weyl.cached_system("3D4", 4).c == 6
    assert weyl.cached_system("D", 4).r == 1


def test_twisted_classes_partition():
    sys = weyl.cached_system("2A", 3)
    classes = sys.twisted_classes()
    seen = sorted(w for cl in classes for w in cl)
    assert seen == list(range(sys.size))
    # x ~ y x eps(y)^-1
    for cl in classes:
        x = cl[0]
        for y in range(sys.size):
            img = sys.mult(sys.mult(y, x), sys.inv[sys.eps_elt[y]])
            assert img in cl


def test_parabolic_embedding():
    sys = weyl.cached_system("2A", 4)
    for I in sys.eps_stable_proper_subsets():
        if not I:
            continue
        sub = sys.parabolic(I)
        for x in range(sub.size):
            xp = sub.to_parent_index(x)
            assert sys.length[xp] == sub.length[x]
        # subgroup closure
        for x in range(sub.size):
            for y in range(sub.size):
                p = sys.mult(sub.to_parent_index(x), sub.to_parent_index(y))
                pi = sub.to_parent_index(sub.mult(x, y))
                assert p == pi
