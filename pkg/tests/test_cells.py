import pytest

from heckecells import cells, weyl
from heckecells.laurent import RationalFunction, ONE, V


@pytest.fixture(scope="module")
def a2():
    return weyl.cached_system("A", 2)


def test_a2_cell_structure(a2):
    cd = cells.cell_data(a2)
    sizes = sorted(len(c) for c in cd.cells)
    assert sizes == [1, 1, 4]
    assert cd.a[a2.e] == 0
    assert cd.a[a2.w0] == 3
    mid = [w for w in range(a2.size) if w not in (a2.e, a2.w0)]
    assert len({cd.cell_of[w] for w in mid}) == 1
    assert {cd.a[w] for w in mid} == {1}


def test_distinguished_involutions(a2):
    cd = cells.cell_data(a2)
    for d in cd.D:
        assert a2.mult(d, d) == a2.e
    lcells = cd.left_cells()
    assert len(cd.D) == len(lcells)
    for lc in lcells:
        assert sum(1 for d in cd.D if d in lc) == 1


def test_gamma_unit(a2):
    cd = cells.cell_data(a2)
    # sum of t_d over distinguished d is a two-sided unit
    unit = {d: 1 for d in cd.D}
    for x in range(a2.size):
        assert cd.t_mul(unit, {x: 1}) == {x: 1}
        assert cd.t_mul({x: 1}, unit) == {x: 1}


def test_gamma_cell_support():
    a3 = weyl.cached_system("A", 3)
    cd = cells.cell_data(a3)
    # t_x t_y is supported on the two-sided cell of x when nonzero
    for x in range(0, a3.size, 5):
        for y in range(0, a3.size, 7):
            prod = cd.t_mul({x: 1}, {y: 1})
            for z in prod:
                assert cd.cell_of[z] == cd.cell_of[x]
                assert cd.cell_of[z] == cd.cell_of[y]


def test_a_coeffs_rank_one():
    a1 = weyl.cached_system("A", 1)
    s = a1.w0
    out = cells.a_coeffs(a1, a1.e)
    # the single correction coefficient is -v / (1 + v^2)
    assert set(out) == {s}
    assert out[s] == RationalFunction(-V, ONE + V * V)


def test_a_coeffs_kill_property(a2):
    # (-1)^{l(x)} c_x^dagger - sum_y (-1)^{l(y)} a_{y,x} c_y^dagger
    # acts by zero on the modules of every other two-sided cell
    from heckecells import reps
    cd = cells.cell_data(a2)
    R = reps.system_reps(a2)
    zero = RationalFunction(0)
    for x in range(a2.size):
        out = cells.a_coeffs(a2, x)
        for y in out:
            assert cd.cell_of[y] != cd.cell_of[x]
        sx = -1 if a2.length[x] % 2 else 1
        for lab in R.table.labels:
            ct = R.ctrv(lab, 0)
            total = RationalFunction(ct[x]) * sx
            for y, a in out.items():
                sy = -1 if a2.length[y] % 2 else 1
                total = total - a * RationalFunction(ct[y]) * sy
            if R.cell_of_label(lab) == cd.cell_of[x]:
                assert total != zero
            else:
                assert total == zero
