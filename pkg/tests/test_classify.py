from fractions import Fraction

import pytest

from heckecells import classify, weyl


def test_table_shapes():
    assert sum(len(c["objects"])
               for c in classify.classify("2A", 4).cells) == 5
    assert sum(len(c["objects"])
               for c in classify.classify("2D", 4).cells) == 10
    assert sum(len(c["objects"])
               for c in classify.classify("3D4").cells) == 8
    assert sum(len(c["objects"])
               for c in classify.classify("2E6").cells) == 28


def test_gram_identity_all_families():
    for table in (classify.classify("2A", 5), classify.classify("2D", 5),
                  classify.classify("3D4"), classify.classify("2E6")):
        rep = classify.verify_table(table)
        assert rep["gram"], table
        assert rep["rows_nonzero"] and rep["columns_nonzero"]


def test_3d4_family_block():
    table = classify.classify("3D4")
    h = Fraction(1, 2)
    block = [c for c in table.cells if len(c["objects"]) == 4][0]
    assert block["columns"] == ["8", "2", "6"]
    assert block["pairing"] == [[h, h, h], [h, h, -h],
                                [h, -h, h], [h, -h, -h]]


def test_2e6_eight_family_normalization():
    table = classify.classify("2E6")
    block = [c for c in table.cells if len(c["objects"]) == 8][0]
    k = block["columns"].index("80_7")
    col = [row[k] for row in block["pairing"]]
    assert sum(x * x for x in col) == 1
    assert col[0] == Fraction(-1, 6)


def sy_half_count(M):
    # unordered half/complement pairs index the columns
    from heckecells import symbols as sy
    halves = sy.half_subsets(M)
    seen = set()
    out = []
    for H in halves:
        key = frozenset(H)
        comp = frozenset(set(M) - set(H))
        if comp in seen:
            continue
        seen.add(key)
        out.append(H)
    return out


def test_2d_pairing_entries_and_signs():
    table = classify.classify("2D", 4)
    for cell in table.cells:
        M, N = cell["key"]
        scale = Fraction(1, 2 ** (len(M) // 2 - 1))
        for row in cell["pairing"]:
            assert all(abs(x) == scale for x in row)
        assert len(cell["objects"]) == 1 << (len(M) - 2)
        assert len(cell["columns"]) == len(sy_half_count(M))


def test_duality_involution():
    for table in (classify.classify("2A", 6), classify.classify("2D", 4),
                  classify.classify("3D4"), classify.classify("2E6")):
        dual = classify.duality(table)
        for key, (img, sg) in dual.items():
            assert dual[img] == (key, sg)


def test_duality_3d4_fixes_family():
    table = classify.classify("3D4")
    dual = classify.duality(table)
    names = {k[1][1]: v[0][1][1] for k, v in dual.items()}
    assert names["1"] == "1'" and names["1'"] == "1"
    assert names["4"] == "4'"
    assert {names[x] for x in "abcd"} == set("abcd")


def test_2e6_duality_name_map():
    table = classify.classify("2E6")
    dual = classify.duality(table)
    names = {k[1][1]: v[0][1][1] for k, v in dual.items()}
    assert names["1_0"] == "1_36"
    assert names["6_1"] == "6_25"
    assert names["a_3"] == "a_15"
    assert names["a"] == "a"


def test_cuspidal_3d4():
    sys = weyl.cached_system("3D4", 4)
    table = classify.classify("3D4")
    cusp = classify.cuspidal_objects(table, sys)
    assert sorted(cusp) == [("A", "c"), ("A", "d")]


def test_cuspidal_2a_counts():
    for n in range(2, 8):
        cusp = classify.cuspidal_objects(classify.classify("2A", n))
        assert len(cusp) == (1 if n in (3, 6) else 0)


def test_decompose_indicator_for_halfsum_functions():
    from heckecells import symbols as sy
    sysd = weyl.cached_system("2D", 3)
    table = classify.classify("2D", 3)
    for ci, cell in enumerate(table.cells):
        M, N = cell["key"]
        for phi in sy.admissible_arrangements(M):
            phihat = (phi[0],)
            f = sy.c_function(sysd, (M, N), phi, phihat)
            coords = classify.decompose(table, sysd, f)
            xi = sy.marking_to_form(M, phi, phihat)
            k = 0
            for cj, c2 in enumerate(table.cells):
                for obj in c2["objects"]:
                    want = 0
                    if cj == ci:
                        eta = sy.EtaForm(M, obj[2])
                        want = int(all(eta.value(E) == v
                                       for E, v in xi.items()))
                    assert coords[k] == want
                    k += 1


def test_decompose_positive_on_aleph():
    from heckecells import reps
    sys = weyl.cached_system("2A", 3)
    table = classify.classify("2A", 3)
    R = reps.system_reps(sys)
    for cl in R.tclasses:
        coords = classify.decompose(table, sys, reps.aleph(sys, cl[0]))
        for v in coords:
            assert v.denominator == 1 and v >= 0


def test_classify_2e6_does_not_build_reflection_group(monkeypatch):
    import heckecells.weyl as weyl_mod

    def boom(*a, **k):
        raise AssertionError("reflection group was built")

    monkeypatch.setattr(weyl_mod, "build_system", boom)
    monkeypatch.setattr(weyl_mod, "cached_system", boom)
    table = classify.classify("2E6")
    assert sum(len(c["objects"]) for c in table.cells) == 28
    classify.verify_table(table)
