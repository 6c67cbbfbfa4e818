"""Batch front end: build systems, dump tables, run the classification
and the verification suites, with deterministic machine-readable output.

Subcommands: hecke (Kazhdan-Lusztig / bar-coefficient tables as TSV),
cells (cell partition as JSON), traces (asymptotic coset traces as TSV),
symbols (arrangement and counting utilities), classify (classification
tables as JSON), verify (identity suites with per-check pass lines).

Exit codes: 0 on success, 1 on verification failure, 2 on usage errors.
"""

from __future__ import annotations

import json
import sys as _sys
from fractions import Fraction

import click

from . import cells as cells_mod
from . import classify as classify_mod
from . import hecke
from . import reps
from . import symbols as sy
from . import weyl
from .laurent import ZERO, LaurentPoly

FAMILIES = ("A", "2A", "D", "2D", "3D4", "2E6")


# ---------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------


def rat_str(x):
    """Canonical form of an exact scalar: int, or "p/q"."""
    f = Fraction(x)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def rat_parse(s):
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s)


def json_bytes(obj):
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"))
            + "\n").encode()


def _emit(data, out):
    if isinstance(data, str):
        data = data.encode()
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        _sys.stdout.buffer.write(data)
        _sys.stdout.flush()


def _get_system(family, n):
    if family not in FAMILIES:
        raise click.UsageError(f"unknown family {family!r}")
    if family in ("3D4", "2E6"):
        n = 4 if family == "3D4" else 6
    elif n is None:
        raise click.UsageError(f"family {family} needs --n")
    return weyl.cached_system(family, n)


def _word_str(sys, w):
    word = sys.word(w)
    return "-".join(str(g) for g in word) if word else "e"


# ---------------------------------------------------------------------
# classification table <-> JSON
# ---------------------------------------------------------------------


def _obj_json(family, lab, cusp, eps):
    entry = {"cuspidal": cusp, "eps": eps}
    if family == "2A":
        entry["partition"] = list(lab[1])
    elif family == "2D":
        entry["eta"] = "".join(str(b) for b in lab[2])
    else:
        entry["name"] = lab[1]
    return entry


def _col_json(family, col):
    if family == "2A":
        return list(col)
    if family == "2D":
        return [list(col[1]), list(col[2])]
    return col


def table_to_json(table):
    cells = []
    for cell in table.cells:
        cusp = cell["cuspidal"] or [None] * len(cell["objects"])
        entry = {
            "a": cell["a"],
            "columns": [_col_json(table.family, c) for c in cell["columns"]],
            "objects": [_obj_json(table.family, lab, cu, ep)
                        for lab, cu, ep in
                        zip(cell["objects"], cusp, cell["eps"])],
            "pairing": [[rat_str(x) for x in row]
                        for row in cell["pairing"]],
        }
        if table.family == "2D":
            entry["M"] = list(cell["key"][0])
            entry["N"] = list(cell["key"][1])
        elif table.family == "2A":
            entry["key"] = list(cell["key"])
        else:
            entry["key"] = cell["key"]
        cells.append(entry)
    checks = {k: bool(v) for k, v in
              classify_mod.verify_table(table).items()}
    return {"family": table.family, "n": table.n,
            "cells": cells, "checks": checks}


def table_from_json(doc):
    """Rebuild a ClassificationTable from its JSON form."""
    family = doc["family"]
    cells = []
    for entry in doc["cells"]:
        if family == "2D":
            key = (tuple(entry["M"]), tuple(entry["N"]))
            objects = [("eta", key, tuple(int(c) for c in o["eta"]))
                       for o in entry["objects"]]
            columns = [("pair", tuple(c[0]), tuple(c[1]))
                       for c in entry["columns"]]
        elif family == "2A":
            key = tuple(entry["key"])
            objects = [("A", tuple(o["partition"]))
                       for o in entry["objects"]]
            columns = [tuple(c) for c in entry["columns"]]
        else:
            key = entry["key"]
            objects = [("A", o["name"]) for o in entry["objects"]]
            columns = list(entry["columns"])
        cusp = [o["cuspidal"] for o in entry["objects"]]
        if all(c is None for c in cusp):
            cusp = None
        cells.append({
            "key": key, "a": entry["a"], "objects": objects,
            "columns": columns,
            "pairing": [[rat_parse(x) for x in row]
                        for row in entry["pairing"]],
            "eps": [o["eps"] for o in entry["objects"]],
            "cuspidal": cusp,
        })
    return classify_mod.ClassificationTable(family, doc["n"], cells)


def tables_equal(t1, t2):
    return (t1.family == t2.family and t1.n == t2.n
            and t1.cells == t2.cells)


# ---------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------


def _sample(sys, limit):
    if sys.size <= limit:
        return list(range(sys.size))
    step = sys.size // limit
    return list(range(0, sys.size, step))[:limit]


def _coset_trace_polys(sys, labs, k):
    """{label: [tr(T_{x phi^k}, E^v) for x in W]} via the c^dagger
    expansion of each basis element."""
    R = reps.system_reps(sys)
    c = sys.c
    out = {lab: [None] * sys.size for lab in labs}
    for x in range(sys.size):
        coords = hecke.expand_in_c_dagger(
            sys, hecke.HeckeElt.basis(sys, x, k))
        for lab in labs:
            acc = ZERO
            for (y, i), p in coords.items():
                acc = acc + p * R.ctrv(lab, i % c)[y]
            out[lab][x] = acc
    return out


def suite_traces(family, n):
    """Trace identities on the extended Hecke algebra and its
    asymptotic form, for every chosen extension."""
    sys = _get_system(family, n)
    R = reps.system_reps(sys)
    cd = R.cd
    c = sys.c
    labs = [E.label for E in reps.preferred_extensions(sys)]
    exts = {lab: reps.ExtIrr(sys, lab) for lab in labs}
    a_of = {lab: reps.cell_of(exts[lab])[1] for lab in labs}
    dim = {lab: R.table.dim(lab) for lab in labs}
    T1 = R.t_traces(1)
    tau1 = _coset_trace_polys(sys, labs, 1)
    tau0 = _coset_trace_polys(sys, labs, 0)
    xs = _sample(sys, 24)
    out = {}

    # tr(T_{w^{-1}}) = tr(T_w) on the twisted coset
    ok = True
    for x in xs:
        xi = sys.inv[x]
        for _ in range((c - 1) % sys.r):
            xi = sys.eps_elt[xi]
        h = hecke.HeckeElt.basis(sys, xi, c - 1)
        for lab in labs:
            if reps.trace_Ev(h, exts[lab]) != tau1[lab][x]:
                ok = False
    out["inverse_trace"] = ok

    # bar-invariance of the c^dagger traces
    out["bar_invariance"] = all(
        R.ctrv(lab, 1)[x].bar() == R.ctrv(lab, 1)[x]
        for lab in labs for x in range(sys.size))

    # dagger conjugation: tr(h^dagger) = (-1)^{l} bar(tr(h))
    ok = True
    for x in xs:
        dg = hecke.dagger(hecke.HeckeElt.basis(sys, x, 1))
        for lab in labs:
            want = tau1[lab][x].bar()
            if sys.length[x] % 2:
                want = -want
            if reps.trace_Ev(dg, exts[lab]) != want:
                ok = False
    out["dagger_conjugate"] = ok

    # Schur sums of the untwisted T-traces: sum tr(T_x)^2 = f^v dim
    ok = True
    for lab in labs:
        s = ZERO
        for x in range(sys.size):
            s = s + tau0[lab][x] * tau0[lab][x]
        if s != R.f_v(lab) * LaurentPoly({0: dim[lab]}):
            ok = False
    out["schur_v_untwisted"] = ok

    # coset orthogonality of the v-traces
    ok = True
    for la in labs:
        for lb in labs:
            s = ZERO
            for x in range(sys.size):
                s = s + tau1[la][x] * tau1[lb][x]
            want = R.f_v(la) * LaurentPoly({0: dim[la]}) \
                if la == lb else ZERO
            if s != want:
                ok = False
    out["schur_v_coset"] = ok

    # coset orthogonality of the group characters
    ok = True
    for i, la in enumerate(labs):
        for lb in labs[i:]:
            s = reps.inner_coset(exts[la].phi(), exts[lb].phi())
            if s != (1 if la == lb else 0):
                ok = False
    out["schur_group_coset"] = ok

    # leading coefficient of the c^dagger traces is the t-trace
    ok = True
    for lab in labs:
        ct = R.ctrv(lab, 1)
        aE = a_of[lab]
        for x in range(sys.size):
            p = ct[x]
            if p and p.valuation() < -aE:
                ok = False
            if p[-aE] != T1[lab][x]:
                ok = False
    out["leading_asymptotic"] = ok

    # leading coefficient of the T-traces is the signed t-trace
    ok = True
    for lab in labs:
        aE = a_of[lab]
        for x in range(sys.size):
            p = tau1[lab][x]
            if p and p.valuation() < -aE:
                ok = False
            want = T1[lab][x] * (-1 if sys.length[x] % 2 else 1)
            if p[-aE] != want:
                ok = False
    out["leading_asymptotic_T"] = ok

    # f^v = f^infty v^{-2a} + higher order
    ok = True
    for lab in labs:
        fv = R.f_v(lab)
        if fv.valuation() != -2 * a_of[lab]:
            ok = False
        if fv[fv.valuation()] != R.f_inf(lab):
            ok = False
    out["f_leading"] = ok

    # orthogonality of the asymptotic traces
    ok = True
    for la in labs:
        for lb in labs:
            s = sum(T1[la][x] * T1[lb][x] for x in range(sys.size))
            want = R.f_inf(la) * dim[la] if la == lb else 0
            if s != want:
                ok = False
    out["schur_asymptotic"] = ok

    # the supporting two-sided cell is twist-stable
    ok = True
    for lab in labs:
        ci = R.cell_of_label(lab)
        if any(cd.cell_of[sys.eps_elt[z]] != ci for z in cd.cells[ci]):
            ok = False
    out["cell_eps_stable"] = ok

    # aleph inverts the asymptotic trace table
    ok = True
    alephs = [reps.aleph(sys, x) for x in range(sys.size)]
    nclasses = len(R.tclasses)
    for lab in labs:
        acc = [0] * nclasses
        for x in range(sys.size):
            t = T1[lab][x]
            if t:
                for ci in range(nclasses):
                    acc[ci] += t * alephs[x].values[ci]
        phi = exts[lab].phi().values
        fd = R.f_inf(lab) * dim[lab]
        if acc != [fd * v for v in phi]:
            ok = False
    out["aleph_expansion"] = ok

    # aleph recovered from the v-traces with lower-cell corrections
    ok = True
    for x in _sample(sys, 12):
        ax = cd.a[x]
        ay = cells_mod.a_coeffs(sys, x)
        coef = {}
        parity_ok = True
        for lab in labs:
            ct = R.ctrv(lab, 1)
            val = Fraction(ct[x][-ax])
            for y, a_yx in ay.items():
                q = ct[y]
                if not q:
                    continue
                lo = q.valuation()
                j = 1
                while -ax - j >= lo:
                    ajy = a_yx.series_coeff(j)
                    if ajy and (j - sys.length[x] - sys.length[y]) % 2:
                        parity_ok = False
                    if ajy:
                        sgn = -1 if (sys.length[x] + sys.length[y]) % 2 \
                            else 1
                        val -= sgn * ajy * q[-ax - j]
                    j += 1
            coef[lab] = val
        vals = [sum(coef[lab] * exts[lab].phi().values[ci]
                    for lab in labs) for ci in range(nclasses)]
        if vals != [Fraction(v) for v in alephs[x].values]:
            ok = False
        if not parity_ok:
            ok = False
    out["aleph_lower_correction"] = ok
    return out


def suite_induction(family, n):
    """Parabolic restriction/induction identities, for every nonempty
    twist-stable proper generator subset."""
    sys = _get_system(family, n)
    R = reps.system_reps(sys)
    cd = R.cd
    labs = [E.label for E in reps.preferred_extensions(sys)]
    T1 = R.t_traces(1)
    tau1 = _coset_trace_polys(sys, labs, 1)
    a_of = {lab: reps.cell_of(reps.ExtIrr(sys, lab))[1] for lab in labs}
    out = {}
    for I in sys.eps_stable_proper_subsets():
        if not I:
            continue
        tag = "I=" + ",".join(str(g) for g in I)
        sub = reps.parabolic_system(sys, I)
        Rsub = reps.system_reps(sub)
        sub_labs = [E.label for E in reps.preferred_extensions(sub)]
        sub_a = {sl: reps.cell_of(reps.ExtIrr(sub, sl))[1]
                 for sl in sub_labs}
        T1s = Rsub.t_traces(1)
        taus = _coset_trace_polys(sub, sub_labs, 1)
        mult = {(sl, lab): (reps.hom_mult(sys, I, sl, lab, 1),
                            reps.hom_mult(sys, I, sl, lab, -1))
                for sl in sub_labs for lab in labs}
        parents = [sub.to_parent_index(x) for x in range(sub.size)]

        # restriction of coset characters by multiplicities
        ok_g = ok_h = True
        for lab in labs:
            E = reps.ExtIrr(sys, lab)
            for x in range(sub.size):
                lhs_g = R.coset_value(lab, parents[x], 1)
                lhs_h = tau1[lab][parents[x]]
                rhs_g = 0
                rhs_h = ZERO
                for sl in sub_labs:
                    m_plus, m_minus = mult[(sl, lab)]
                    m = m_plus - m_minus
                    if m:
                        rhs_g += m * Rsub.coset_value(sl, x, 1)
                        rhs_h = rhs_h + LaurentPoly({0: m}) * taus[sl][x]
                if lhs_g != rhs_g:
                    ok_g = False
                if lhs_h != rhs_h:
                    ok_h = False
        out[f"restriction_trace_group[{tag}]"] = ok_g
        out[f"restriction_trace_hecke[{tag}]"] = ok_h

        # asymptotic restriction keeps only the a-matching constituents
        ok = True
        for lab in labs:
            for x in range(sub.size):
                lhs = T1[lab][parents[x]]
                rhs = 0
                for sl in sub_labs:
                    if sub_a[sl] != a_of[lab]:
                        continue
                    m_plus, m_minus = mult[(sl, lab)]
                    rhs += (m_plus - m_minus) * T1s[sl][x]
                if lhs != rhs:
                    ok = False
        out[f"restriction_asymptotic[{tag}]"] = ok

        # truncated induction fixes the aleph functions
        ok = True
        for x in range(sub.size):
            big = reps.aleph(sys, parents[x])
            ind = reps.j_induce(sys, I, reps.aleph(sub, x))
            if [Fraction(v) for v in big.values] != \
                    [Fraction(v) for v in ind.values]:
                ok = False
        out[f"induction_fixes_aleph[{tag}]"] = ok

        # cell compatibility of nonzero multiplicities
        ok_a = ok_b = True
        for sl in sub_labs:
            csub = Rsub.cell_of_label(sl)
            imgs = {cd.cell_of[parents[z]] for z in Rsub.cd.cells[csub]}
            if len(imgs) != 1:
                ok_a = False
                continue
            cbig = imgs.pop()
            for lab in labs:
                m_plus, m_minus = mult[(sl, lab)]
                if m_plus == 0 and m_minus == 0:
                    continue
                cE = R.cell_of_label(lab)
                if not cd.cell_leq(cE, cbig):
                    ok_a = False
                if sub_a[sl] == a_of[lab] and cE != cbig:
                    ok_b = False
        out[f"cell_embedding[{tag}]"] = ok_a
        out[f"cell_match_equal_a[{tag}]"] = ok_b
    return out


def suite_cells(family, n):
    """Structural invariants of the cell partition and the asymptotic
    ring."""
    sys = _get_system(family, n)
    cd = cells_mod.cell_data(sys)
    out = {}
    out["a_identity"] = cd.a[sys.e] == 0
    out["a_longest"] = cd.a[sys.w0] == sys.length[sys.w0]
    out["a_constant_on_cells"] = all(
        len({cd.a[w] for w in comp}) == 1 for comp in cd.cells)
    lcells = cd.left_cells()
    inv = {w for w in cd.D
           if sys.mult(w, w) == sys.e}
    out["distinguished_involutions"] = (
        set(cd.D) == inv and len(cd.D) == len(lcells)
        and all(sum(1 for d in cd.D if d in lc) == 1 for lc in lcells))
    # associativity of the asymptotic ring on sampled triples
    xs = _sample(sys, 8)
    ok = True
    for u in xs:
        for v in xs:
            uv = cd.t_mul({u: 1}, {v: 1})
            for w in xs:
                vw = cd.t_mul({v: 1}, {w: 1})
                lhs = cd.t_mul(uv, {w: 1})
                rhs = cd.t_mul({u: 1}, vw)
                if lhs != rhs:
                    ok = False
    out["j_ring_associative"] = ok
    # sum of the distinguished basis elements is a unit
    ok = True
    unit = {d: 1 for d in cd.D}
    for x in _sample(sys, 12):
        if cd.t_mul(unit, {x: 1}) != {x: 1} or \
                cd.t_mul({x: 1}, unit) != {x: 1}:
            ok = False
    out["j_ring_unit"] = ok
    if family == "2D":
        expected = {2: 2, 3: 5, 4: 7}
        if n in expected:
            out["stable_cell_count"] = \
                len(cd.eps_stable_cells()) == expected[n]
    return out


_ARRANGEMENTS_6 = [
    (((0, 1), (2, 3), (4, 5))),
    (((0, 1), (2, 5), (3, 4))),
    (((0, 3), (1, 2), (4, 5))),
    (((0, 5), (1, 2), (3, 4))),
    (((0, 5), (1, 4), (2, 3))),
]


def suite_symbols(family=None, n=None):
    """Arrangement and counting identities of the symbol calculus."""
    out = {}
    out["arrangements_of_six"] = \
        sy.admissible_arrangements((0, 1, 2, 3, 4, 5)) == _ARRANGEMENTS_6
    catalan = [1, 1, 2, 5, 14, 42]
    out["arrangement_catalan"] = all(
        len(sy.admissible_arrangements(tuple(range(2 * k)))) == catalan[k]
        for k in range(1, 6))
    out["counting_identity"] = all(
        sy.count_by_cells(m) == sy.count_by_squares(m)
        for m in range(2, 13))
    # inner products of half-sum functions count the common refinements
    ok = True
    for M in ((0, 1, 2, 3), (1, 2, 4, 7), (0, 1, 2, 3, 4, 5),
              (0, 2, 3, 5, 6, 8)):
        etas = sy.enum_eta(M)
        arrs = sy.admissible_arrangements(M)
        from itertools import combinations as _comb
        marks = []
        for phi in arrs:
            for k in range(1, len(phi) + 1, 2):
                for phihat in _comb(phi, k):
                    marks.append((phi, sy.marking_to_form(M, phi, phihat)))
        for phi1, xi1 in marks:
            cc1 = set(sy.cc_phi(M, phi1))
            for phi2, xi2 in marks:
                cc2 = set(sy.cc_phi(M, phi2))
                common = sorted(cc1 & cc2)
                ip = Fraction(sum((-1) ** ((xi1[E] + xi2[E]) % 2)
                                  for E in common), 2)
                cnt = sum(1 for eta in etas
                          if all(eta.value(E) == v for E, v in xi1.items())
                          and all(eta.value(E) == v
                                  for E, v in xi2.items()))
                if ip != cnt:
                    ok = False
    out["halfsum_inner_products"] = ok
    return out


def suite_classify(family, n, enable_e6_cells=False):
    """Structural checks of a classification table, with the character
    data when the reflection group is tractable."""
    if family in ("3D4", "2E6"):
        n = 4 if family == "3D4" else 6
    if family not in ("2A", "2D", "3D4", "2E6"):
        raise click.UsageError(f"no classification for family {family!r}")
    table = classify_mod.classify(family, n)
    use_sys = (family == "3D4"
               or (family == "2A" and n <= 4)
               or (family == "2D" and n <= 4)
               or (family == "2E6" and enable_e6_cells))
    sys = _get_system(family, n) if use_sys else None
    out = dict(classify_mod.verify_table(table, sys))
    if sys is not None and family in ("3D4", "2E6"):
        classify_mod.cuspidal_objects(table, sys)
    if family == "2A":
        cusp = classify_mod.cuspidal_objects(table)
        want = 1 if n in (3, 6) else 0
        out["cuspidal_count"] = len(cusp) == want
    elif family == "2D":
        cusp = classify_mod.cuspidal_objects(table)
        want = 1 if n == 9 else 0
        out["cuspidal_count"] = len(cusp) == want
    doc = table_to_json(table)
    out["json_roundtrip"] = tables_equal(
        table_from_json(json.loads(json_bytes(doc).decode())), table)
    return out


SUITES = {
    "traces": suite_traces,
    "induction": suite_induction,
    "cells": suite_cells,
    "symbols": suite_symbols,
    "classify": suite_classify,
}


# ---------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------


@click.group()
def cli():
    """Exact tables for twisted Hecke algebras, cells and the
    classification of the twisted families."""


@cli.command("hecke")
@click.option("--family", required=True)
@click.option("--n", type=int, default=None)
@click.option("--table", "which", type=click.Choice(["p", "r"]),
              default="p")
@click.option("--format", "fmt", type=click.Choice(["tsv"]),
              default="tsv")
@click.option("--out", default=None)
def hecke_cmd(family, n, which, fmt, out):
    """Dump the Kazhdan-Lusztig (p) or bar-coefficient (r) table as
    TSV lines "y<TAB>x<TAB>poly"."""
    sys = _get_system(family, n)
    lines = []
    for x in range(sys.size):
        if which == "p":
            for y in range(sys.size):
                if sys.bruhat_leq(y, x):
                    P = hecke.kl_polynomial(sys, y, x)
                    lines.append(f"{_word_str(sys, y)}\t{_word_str(sys, x)}"
                                 f"\t{P.text()}")
        else:
            barred = hecke.HeckeElt.basis(sys, x).bar()
            for y in range(sys.size):
                p = barred.coefficient(y)
                if p:
                    lines.append(f"{_word_str(sys, y)}\t{_word_str(sys, x)}"
                                 f"\t{p.text()}")
    _emit("\n".join(lines) + "\n", out)


@cli.command("cells")
@click.option("--family", required=True)
@click.option("--n", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["json"]),
              default="json")
@click.option("--out", default=None)
def cells_cmd(family, n, fmt, out):
    """Dump the two-sided cell partition, order and distinguished
    involutions as JSON."""
    sys = _get_system(family, n)
    cd = cells_mod.cell_data(sys)
    doc = {
        "cells": [{"a": cd.a[comp[0]],
                   "elements": [_word_str(sys, w) for w in comp]}
                  for comp in cd.cells],
        "order": [[i, j] for i in range(len(cd.cells))
                  for j in range(len(cd.cells))
                  if i != j and cd.cell_leq(i, j)],
        "distinguished": [_word_str(sys, d) for d in cd.D],
    }
    _emit(json_bytes(doc), out)


@cli.command("traces")
@click.option("--family", required=True)
@click.option("--n", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["tsv"]),
              default="tsv")
@click.option("--out", default=None)
def traces_cmd(family, n, fmt, out):
    """Dump tr(t_x phi, E^infty): one row per twisted class
    representative, one column per chosen extension."""
    sys = _get_system(family, n)
    R = reps.system_reps(sys)
    exts = reps.preferred_extensions(sys)
    T1 = R.t_traces(1)
    header = "x\t" + "\t".join(
        json.dumps(E.label, sort_keys=True) for E in exts)
    lines = [header]
    for cl in R.tclasses:
        x = cl[0]
        lines.append(_word_str(sys, x) + "\t"
                     + "\t".join(str(T1[E.label][x]) for E in exts))
    _emit("\n".join(lines) + "\n", out)


@cli.group("symbols")
def symbols_grp():
    """Symbol-calculus utilities."""


@symbols_grp.command("arrangements")
@click.option("--set", "elts", required=True,
              help="comma-separated even-size support set")
@click.option("--out", default=None)
def arrangements_cmd(elts, out):
    """List the admissible arrangements of a support set."""
    try:
        M = tuple(int(t) for t in elts.split(","))
    except ValueError:
        raise click.UsageError("--set wants comma-separated integers")
    if len(M) % 2 != 0 or len(set(M)) != len(M):
        raise click.UsageError("--set wants distinct, even count")
    arrs = sy.admissible_arrangements(M)
    _emit(json_bytes([[list(p) for p in phi] for phi in arrs]), out)


@symbols_grp.command("cells")
@click.option("--n", type=int, required=True)
@click.option("--out", default=None)
def barx_cmd(n, out):
    """List the bar-symbols of rank n with their object counts."""
    doc = [{"M": list(M), "N": list(N), "objects": 1 << (len(M) - 2)}
           for M, N in sy.enum_barX(n)]
    _emit(json_bytes(doc), out)


@symbols_grp.command("count")
@click.option("--n", type=int, required=True)
@click.option("--out", default=None)
def count_cmd(n, out):
    """Total object count in rank n, with the two counting formulas."""
    doc = {"n": n, "by_cells": sy.count_by_cells(n),
           "by_squares": sy.count_by_squares(n)}
    _emit(json_bytes(doc), out)


@cli.command("classify")
@click.option("--family", required=True)
@click.option("--n", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["json"]),
              default="json")
@click.option("--enable-e6-cells", is_flag=True, default=False)
@click.option("--out", default=None)
def classify_cmd(family, n, fmt, enable_e6_cells, out):
    """Emit a classification table as JSON."""
    if family in ("3D4", "2E6"):
        n = 4 if family == "3D4" else 6
    if family not in ("2A", "2D", "3D4", "2E6"):
        raise click.UsageError(f"no classification for family {family!r}")
    if n is None:
        raise click.UsageError(f"family {family} needs --n")
    table = classify_mod.classify(family, n)
    _emit(json_bytes(table_to_json(table)), out)


@cli.command("verify")
@click.option("--suite", required=True,
              type=click.Choice(sorted(SUITES)))
@click.option("--family", default=None)
@click.option("--n", type=int, default=None)
@click.option("--enable-e6-cells", is_flag=True, default=False)
@click.option("--out", default=None)
def verify_cmd(suite, family, n, enable_e6_cells, out):
    """Run a verification suite; print one PASS/FAIL line per check."""
    fn = SUITES[suite]
    if suite == "symbols":
        results = fn()
    elif suite == "classify":
        if family is None:
            raise click.UsageError("--family is required")
        results = fn(family, n, enable_e6_cells)
    else:
        if family is None:
            raise click.UsageError("--family is required")
        results = fn(family, n)
    lines = [("PASS " if ok else "FAIL ") + name
             for name, ok in results.items()]
    failed = sorted(name for name, ok in results.items() if not ok)
    report = {"suite": suite, "family": family, "n": n,
              "passed": len(results) - len(failed), "failed": failed}
    text = "\n".join(lines) + "\n" + json_bytes(report).decode()
    _emit(text, out)
    if failed:
        raise SystemExit(1)


def main():
    cli(prog_name="heckecells")


if __name__ == "__main__":
    main()
