"""Classification tables of unipotent character sheaves on the twisted
families.

Each table lists the objects cell by cell together with the pairing
matrix (A : R_E) against the chosen coset extensions:

* twisted type A: one object per irreducible of the symmetric group,
  with a diagonal sign pairing;
* twisted type D: one object per linear form eta in V'_M for each
  bar-symbol cell (M, N), with entries 2^{1-|M|/2} (-1)^{eta(H#)};
* triality D4 and twisted E6: finite tables stored as data, with the
  blocks of size 4 and 8 given by the displayed inversion formulas
  (e.g. R_8 = (a+b+c+d)/2 in the triality-D4 family).

The tables carry the sign epsilon^A per object, the duality A -> A°
(a signed permutation induced by tensoring the basis with sign), and a
cuspidality flag decided by the support test: A is cuspidal iff its
pairing against the character of every non-anisotropic twisted class
vanishes.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import symbols as sy


def _nfn(lam):
    """n(lambda) = sum (i-1) lambda_i; the a-invariant of the symmetric
    group irreducible with this partition (trivial = one row)."""
    return sum(i * p for i, p in enumerate(lam))


def _transpose(lam):
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def _partitions(n):
    from .reps import partitions
    return partitions(n)


class ClassificationTable:
    """Object set, pairing and attached data, grouped by two-sided
    cell.  Each cell record holds:
      key      -- cell label (partition for 2A, bar-symbol for 2D, name)
      a        -- a-invariant of the cell (None if not modelled)
      objects  -- object labels
      columns  -- labels of the chosen extensions spanning the cell
      pairing  -- rows = objects, columns as above, Fraction entries
      eps      -- epsilon^A per object
      cuspidal -- True/False per object, or None when not computed
    """

    def __init__(self, family, n, cells):
        self.family = family
        self.n = n
        self.cells = cells

    def object_labels(self):
        return [(ci, lab) for ci, cell in enumerate(self.cells)
                for lab in cell["objects"]]

    def column_labels(self):
        return [(ci, lab) for ci, cell in enumerate(self.cells)
                for lab in cell["columns"]]

    def pairing_row(self, ci, oi):
        return self.cells[ci]["pairing"][oi]

    def __repr__(self):
        nobj = sum(len(c["objects"]) for c in self.cells)
        return (f"ClassificationTable({self.family}, n={self.n}, "
                f"{len(self.cells)} cells, {nobj} objects)")


# -- twisted type A ---------------------------------------------------

def _classify_2A(n):
    cells = []
    lw0 = n * (n - 1) // 2
    for lam in sorted(_partitions(n), key=lambda l: (_nfn(l), l)):
        e = (-1) ** (_nfn(_transpose(lam)) + lw0)
        eps = e * (-1) ** _nfn(lam)
        cells.append({
            "key": lam,
            "a": _nfn(lam),
            "objects": [("A", lam)],
            "columns": [lam],
            "pairing": [[Fraction(e)]],
            "eps": [eps],
            "cuspidal": [_cuspidal_2A(n, lam)],
        })
    return ClassificationTable("2A", n, cells)


def _cuspidal_2A(n, lam):
    """Support test: the pairing against the class of w phi is (up to
    sign) the symmetric group character at w w0, and w is anisotropic
    exactly when w w0 has odd order."""
    from .reps import sn_char
    for mu in _partitions(n):
        if any(p % 2 == 0 for p in mu):  # even order permutation class
            if sn_char(lam, mu) != 0:
                return False
    return True


# -- twisted type D ---------------------------------------------------

def _pref_pair(ab):
    a, b = ab
    x, y = sorted((a, b), reverse=True)
    return ("pair", x, y)


def _classify_2D(n):
    cells = []
    for bar in sy.enum_barX(n):
        M, N = bar
        halves = sy.half_subsets(M)
        etas = sy.enum_eta(M)
        scale = Fraction(1, 2 ** (len(M) // 2 - 1))
        columns = []
        col_H = []
        seen = set()
        for H in halves:
            rest = tuple(x for x in M if x not in H)
            ab = sy.bipartition_of_symbol(
                (tuple(sorted(N + H)), tuple(sorted(N + rest))))
            lab = _pref_pair(ab)
            if lab in seen:
                continue
            seen.add(lab)
            # use the half whose first row matches the label's first
            # component (the opposite choice gives the same entry)
            columns.append(lab)
            col_H.append(H if ab[0] == lab[1] else rest)
        pairing = [[scale * (-1) ** eta.value(sy.sharp(M, H))
                    for H in col_H] for eta in etas]
        cells.append({
            "key": bar,
            "a": None,
            "objects": [("eta", bar, eta.bits) for eta in etas],
            "columns": columns,
            "pairing": pairing,
            "eps": [1] * len(etas),
            "cuspidal": None,  # filled below
        })
    table = ClassificationTable("2D", n, cells)
    _fill_cuspidal_2D(table)
    return table


def _noniso_classes_2D(n):
    """Signed cycle types (pos, neg) of the outer coset with an odd
    number of negative cycles, restricted to the non-anisotropic ones
    (at least one positive cycle: an eigenvalue 1)."""
    out = []
    for k in range(1, n + 1):
        for pos in _partitions(k):
            for neg in _partitions(n - k):
                if len(neg) % 2 == 1:
                    out.append((pos, neg))
    return out


def _fill_cuspidal_2D(table):
    from .reps import bn_char
    n = table.n
    classes = _noniso_classes_2D(n)
    for cell in table.cells:
        M, N = cell["key"]
        halves = sy.half_subsets(M)
        labels = []
        for H in halves:
            rest = tuple(x for x in M if x not in H)
            labels.append(sy.bipartition_of_symbol(
                (tuple(sorted(N + H)), tuple(sorted(N + rest)))))
        flags = []
        for obj in cell["objects"]:
            eta = sy.EtaForm(M, obj[2])
            signs = [(-1) ** eta.value(sy.sharp(M, H)) for H in halves]
            cusp = True
            for cls in classes:
                if sum(s * bn_char(ab, cls)
                       for s, ab in zip(signs, labels)) != 0:
                    cusp = False
                    break
            flags.append(cusp)
        cell["cuspidal"] = flags


# -- triality D4 ------------------------------------------------------

def _classify_3D4():
    h = Fraction(1, 2)
    cells = [
        {"key": "cell_a0", "a": 0, "objects": [("A", "1")],
         "columns": ["1"], "pairing": [[Fraction(1)]]},
        {"key": "cell_a1", "a": 1, "objects": [("A", "4")],
         "columns": ["4"], "pairing": [[Fraction(1)]]},
        # R_8=(a+b+c+d)/2, R_2=(a+b-c-d)/2, R_6=(a-b+c-d)/2
        {"key": "cell_a3", "a": 3,
         "objects": [("A", "a"), ("A", "b"), ("A", "c"), ("A", "d")],
         "columns": ["8", "2", "6"],
         "pairing": [[h, h, h], [h, h, -h], [h, -h, h], [h, -h, -h]]},
        {"key": "cell_a7", "a": 7, "objects": [("A", "4'")],
         "columns": ["4'"], "pairing": [[Fraction(1)]]},
        {"key": "cell_a12", "a": 12, "objects": [("A", "1'")],
         "columns": ["1'"], "pairing": [[Fraction(1)]]},
    ]
    for cell in cells:
        k = len(cell["objects"])
        cell["eps"] = [1] * k
        cell["cuspidal"] = None
    return ClassificationTable("3D4", 4, cells)


# -- twisted E6 -------------------------------------------------------

# singleton relations R_E = s_E A_E
_E6_SINGLETONS = [
    ("1_0", 0, 1), ("6_1", 1, -1), ("20_2", 2, 1), ("60_5", 5, -1),
    ("24_6", 6, 1), ("81_6", 6, 1), ("81_10", 10, 1), ("24_12", 12, 1),
    ("60_11", 11, -1), ("20_20", 20, 1), ("6_25", 25, -1), ("1_36", 36, 1),
]

# -R_{30} = (a+b+c+d)/2, -R_{15} = (a+b-c-d)/2, -R_{~15} = (a-b+c-d)/2
def _e6_family4(tag, a_val):
    h = Fraction(1, 2)
    objects = [("A", x + tag) for x in ("a", "b", "c", "d")]
    columns = ["30" + tag, "15" + tag, "~15" + tag]
    pairing = [[-h, -h, -h], [-h, -h, h], [-h, h, -h], [-h, h, h]]
    return {"key": "cell" + tag, "a": a_val, "objects": objects,
            "columns": columns, "pairing": pairing}


# -R_{80_7}=(a+3b+2c+2d+e+3f+2g+2h)/6, R_{60_7}=(a+b-e-f)/2,
# R_{90_7}=(a+2c-d+e-g-h)/3, R_{10_7}=(a-c+2d+e-g-h)/3,
# -R_{20_7}=(a-3b+2c+2d+e-3f+2g+2h)/6
def _e6_family8():
    F = Fraction
    objects = [("A", x) for x in "abcdefgh"]
    columns = ["80_7", "60_7", "90_7", "10_7", "20_7"]
    coeff80 = [1, 3, 2, 2, 1, 3, 2, 2]
    coeff60 = [1, 1, 0, 0, -1, -1, 0, 0]
    coeff90 = [1, 0, 2, -1, 1, 0, -1, -1]
    coeff10 = [1, 0, -1, 2, 1, 0, -1, -1]
    coeff20 = [1, -3, 2, 2, 1, -3, 2, 2]
    pairing = [[F(-c80, 6), F(c60, 2), F(c90, 3), F(c10, 3), F(-c20, 6)]
               for c80, c60, c90, c10, c20
               in zip(coeff80, coeff60, coeff90, coeff10, coeff20)]
    return {"key": "cell_a7", "a": 7, "objects": objects,
            "columns": columns, "pairing": pairing}


def _classify_2E6():
    cells = []
    for name, a_val, s in _E6_SINGLETONS:
        cells.append({"key": "cell_" + name, "a": a_val,
                      "objects": [("A", name)], "columns": [name],
                      "pairing": [[Fraction(s)]]})
    cells.append(_e6_family4("_3", 3))
    cells.append(_e6_family4("_15", 15))
    cells.append(_e6_family8())
    cells.sort(key=lambda c: (c["a"], c["key"]))
    for cell in cells:
        k = len(cell["objects"])
        cell["eps"] = [1] * k
        cell["cuspidal"] = None
    return ClassificationTable("2E6", 6, cells)


def classify(family, n=None):
    """Build the classification table for a twisted family."""
    if family == "2A":
        if n is None:
            raise ValueError("2A needs a rank n")
        return _classify_2A(n)
    if family == "2D":
        if n is None:
            raise ValueError("2D needs a rank n")
        return _classify_2D(n)
    if family == "3D4":
        return _classify_3D4()
    if family == "2E6":
        return _classify_2E6()
    raise ValueError(f"unsupported family {family!r}")


# -- bridging a table to the character data ---------------------------

def column_extension(table, sys, ci, col):
    """The chosen-extension object (reps.ExtIrr) whose coset character
    is the column's R-basis element."""
    from . import reps
    fam = table.family
    if fam == "2A":
        return reps.ExtIrr(sys, col)
    if fam == "2D":
        return reps.ExtIrr(sys, col)
    R = reps.system_reps(sys)
    if fam == "3D4":
        want = {"1": (1, 0), "4": (4, 1), "2": (2, 3), "6": (6, 3),
                "8": (8, 3), "4'": (4, 7), "1'": (1, 12)}[col]
    elif fam == "2E6":
        dim, a_val = col.lstrip("~").split("_")
        want = (int(dim), int(a_val))
    else:
        raise ValueError(fam)
    hits = []
    for lab in R.stable:
        E = reps.ExtIrr(sys, lab)
        a_val = reps.cell_of(E)[1]
        if (E.dim(), a_val) == want:
            hits.append(E)
    if len(hits) != 1:
        raise ArithmeticError(f"column {col} matches {len(hits)} extensions")
    return hits[0]


def decompose(table, sys, f):
    """Coordinates of R_f in the object basis: expand the coset class
    function f over the chosen extensions and apply the pairing."""
    from . import reps
    coeff = {}
    residual = None
    for ci, cell in enumerate(table.cells):
        for col in cell["columns"]:
            E = column_extension(table, sys, ci, col)
            c = reps.inner_coset(f, E.phi())
            coeff[(ci, col)] = c
            if c:
                g = E.phi().scale(c)
                residual = g if residual is None else residual + g
    if residual is None:
        residual = reps.CosetClassFunction(sys, [0] * len(f.values))
    if (f - residual).values != [0] * len(f.values):
        raise ArithmeticError("class function outside the spanned space")
    out = []
    for ci, cell in enumerate(table.cells):
        for oi in range(len(cell["objects"])):
            out.append(sum(cell["pairing"][oi][k] * coeff[(ci, col)]
                           for k, col in enumerate(cell["columns"])))
    return out


def cuspidal_objects(table, sys=None):
    """Object labels passing the anisotropy support test."""
    from . import reps
    if table.family in ("2A", "2D"):
        return [lab for ci, cell in enumerate(table.cells)
                for lab, c in zip(cell["objects"], cell["cuspidal"]) if c]
    if sys is None:
        raise ValueError("character data needed for this family")
    R = reps.system_reps(sys)
    bad = set()
    for I in sys.eps_stable_proper_subsets():
        sub = sys.parabolic(tuple(I))
        for x in range(sub.size):
            bad.add(sub.to_parent_index(x))
    noniso = [cl[0] for cl in R.tclasses if any(w in bad for w in cl)]
    out = []
    for ci, cell in enumerate(table.cells):
        cols = [column_extension(table, sys, ci, col)
                for col in cell["columns"]]
        flags = []
        for oi, lab in enumerate(cell["objects"]):
            cusp = True
            for w in noniso:
                s = sum(cell["pairing"][oi][k]
                        * R.coset_value(E.label, w, 1)
                        for k, E in enumerate(cols))
                if s != 0:
                    cusp = False
                    break
            flags.append(cusp)
            if cusp:
                out.append(lab)
        cell["cuspidal"] = flags
    return out


# -- duality ----------------------------------------------------------

def _dual_columns(table):
    """Column map induced by tensoring with sign: col -> (col', sigma)
    with phi_{col'} = sigma * sgn * phi_col on the twisted coset."""
    fam = table.family
    out = {}
    if fam == "2A":
        n = table.n
        sg = (-1) ** (n * (n - 1) // 2)
        for ci, cell in enumerate(table.cells):
            lam = cell["columns"][0]
            out[(ci, lam)] = (_transpose(lam), sg)
    elif fam == "2D":
        for ci, cell in enumerate(table.cells):
            for col in cell["columns"]:
                _, a, b = col
                swapped = _pref_pair((_transpose(b), _transpose(a)))
                sg = -1 if swapped[1] == _transpose(b) else 1
                out[(ci, col)] = (swapped, sg)
    elif fam == "3D4":
        pair = {"1": "1'", "1'": "1", "4": "4'", "4'": "4",
                "2": "2", "6": "6", "8": "8"}
        for ci, cell in enumerate(table.cells):
            for col in cell["columns"]:
                out[(ci, col)] = (pair[col], 1)
    elif fam == "2E6":
        pair = {"1_0": "1_36", "6_1": "6_25", "20_2": "20_20",
                "30_3": "30_15", "15_3": "15_15", "~15_3": "~15_15",
                "60_5": "60_11", "81_6": "81_10", "24_6": "24_12",
                "80_7": "80_7", "60_7": "60_7", "90_7": "90_7",
                "10_7": "10_7", "20_7": "20_7"}
        pair.update({v: k for k, v in pair.items()})
        for ci, cell in enumerate(table.cells):
            for col in cell["columns"]:
                out[(ci, col)] = (pair[col], 1)
    else:
        raise ValueError(fam)
    return out


def duality(table):
    """The signed object permutation A -> A° solving
    d(R_E) = R_{E tensor sign} in the object basis."""
    dual_col = _dual_columns(table)
    col_pos = {}
    for ci, cell in enumerate(table.cells):
        for k, col in enumerate(cell["columns"]):
            col_pos[col] = (ci, k)
    # full pairing rows indexed over the global column list
    ncols = sum(len(c["columns"]) for c in table.cells)
    col_index = {}
    for ci, cell in enumerate(table.cells):
        for col in cell["columns"]:
            col_index[(ci, col)] = len(col_index)
    rows = {}
    dual_rows = {}
    for ci, cell in enumerate(table.cells):
        for oi, lab in enumerate(cell["objects"]):
            row = [Fraction(0)] * ncols
            drow = [Fraction(0)] * ncols
            for k, col in enumerate(cell["columns"]):
                row[col_index[(ci, col)]] = cell["pairing"][oi][k]
                tgt, sg = dual_col[(ci, col)]
                tci, tk = col_pos[tgt]
                drow[col_index[(tci, tgt)]] = sg * cell["pairing"][oi][k]
            rows[(ci, lab)] = tuple(row)
            dual_rows[(ci, lab)] = tuple(drow)
    # objects with the same visible row (possible when a family has
    # fewer chosen extensions than objects) are matched index-wise
    by_row = {}
    for key in sorted(rows, key=repr):
        by_row.setdefault(rows[key], []).append(key)
    out = {}
    for row, group in by_row.items():
        for idx, key in enumerate(group):
            drow = dual_rows[key]
            if drow in by_row:
                out[key] = (by_row[drow][idx], 1)
            elif tuple(-x for x in drow) in by_row:
                out[key] = (by_row[tuple(-x for x in drow)][idx], -1)
            else:
                raise ArithmeticError(f"duality image of {key} not an object")
    return out


# -- verification -----------------------------------------------------

def verify_table(table, sys=None):
    """Run the structural checks; returns {check: bool}."""
    from . import reps
    report = {}
    # Gram identity per cell block (cells are orthogonal by purity)
    ok = True
    for cell in table.cells:
        P = cell["pairing"]
        ncol = len(cell["columns"])
        for i in range(ncol):
            for j in range(ncol):
                s = sum(row[i] * row[j] for row in P)
                if s != (1 if i == j else 0):
                    ok = False
    report["gram"] = ok
    report["columns_nonzero"] = all(
        any(row[k] for row in cell["pairing"])
        for cell in table.cells for k in range(len(cell["columns"])))
    report["rows_nonzero"] = all(
        any(x for x in row)
        for cell in table.cells for row in cell["pairing"])
    report["purity"] = True  # block structure by construction
    try:
        dual = duality(table)
        report["duality"] = all(
            dual[dual[k][0]][0] == k and dual[dual[k][0]][1] == dual[k][1]
            for k in dual)
    except ArithmeticError:
        report["duality"] = False
    if sys is not None:
        R = reps.system_reps(sys)
        cd = R.cd
        pos = True
        eps_ok = True
        eps = [e for cell in table.cells for e in cell["eps"]]
        for cl in R.tclasses:
            x = cl[0]
            coords = decompose(table, sys, reps.aleph(sys, x))
            for v in coords:
                if v.denominator != 1 or v < 0:
                    pos = False
            sign = (-1) ** ((sys.length[x] - cd.a[x]) % 2)
            for k, v in enumerate(coords):
                if v and eps[k] != sign:
                    eps_ok = False
        report["positivity"] = pos
        report["epsilon"] = eps_ok
    return report
