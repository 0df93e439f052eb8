"""Acceptance battery: one test per numbered criterion.

Each test prints a single "criterion NN: PASS/FAIL" line (visible with -s,
or in the captured output section on failure) and asserts the named
sub-checks. The classification sweep at rank 5 / budget 60 is computed once
and shared by the criteria that read it.
"""

import os
import time
from fractions import Fraction as Q

import pytest

from qsym import qsl2
from qsym.bialg import (bd_r_matrix, check_cybe, cobracket_from_r,
                        drinfeld_double, enumerate_bd_triples, standard_r,
                        tt_add, tt_op)
from qsym.classify import classification_table, classify_pair, paper_diff
from qsym.liealg import (_mcompose, _mscaled_sum, casimir, chevalley_basis,
                         highest_weight_module)
from qsym.poisson import (jacobi_oracle, leg_embed, pair_operator,
                          r_minus_operator, schouten_square)
from qsym.qsl2 import CoPoissonElem, qpow
from qsym.rootsys import build_root_system


def _verdict(num, checks):
    failed = [name for name, ok in checks if not ok]
    state = "PASS" if not failed else "FAIL (%s)" % "; ".join(failed)
    print("criterion %02d: %s" % (num, state))
    assert not failed


def _e(rank, i, m=1):
    return tuple(m if j == i else 0 for j in range(rank))


def _golden_passing_pairs():
    """The expected passing set at rank <= 5, budget 60, in canonical
    coordinates (rank-2 orthogonal/symplectic rows live under C2)."""
    golden = set()
    for r in range(1, 6):
        golden.add(("A%d" % r, _e(r, 0)))
        golden.add(("A%d" % r, _e(r, 0, 2)))
        golden.add(("A%d" % r, _e(r, r - 1)))
        golden.add(("A%d" % r, _e(r, r - 1, 2)))
        if r >= 2:
            golden.add(("A%d" % r, _e(r, 1)))
            golden.add(("A%d" % r, _e(r, r - 2)))
    for label, r in (("B3", 3), ("B4", 4), ("B5", 5), ("D4", 4), ("D5", 5)):
        golden.add((label, _e(r, 0)))
    golden.add(("C2", (0, 1)))
    golden.add(("D4", (0, 0, 1, 0)))
    golden.add(("D4", (0, 0, 0, 1)))
    golden.add(("D5", (0, 0, 0, 1, 0)))
    golden.add(("D5", (0, 0, 0, 0, 1)))
    return golden


@pytest.fixture(scope="module")
def sweep():
    t0 = time.monotonic()
    rows = classification_table(5, 60)
    elapsed = time.monotonic() - t0
    return rows, elapsed


def test_criterion_01_classification_golden_table(sweep):
    """The rank-5 sweep reproduces the recorded passing list exactly."""
    rows, elapsed = sweep
    passing = {(r.label, r.lam) for r in rows if r.passing}
    diff = paper_diff(rows)
    _verdict(1, [
        ("passing set equals the recorded list",
         passing == _golden_passing_pairs()),
        ("diff has no missing rows", diff["missing"] == []),
        ("diff has no extra rows", diff["extra"] == []),
        ("runtime within ten minutes", elapsed <= 600.0),
    ])


def test_criterion_02_symplectic_anomaly(sweep):
    """The natural symplectic modules bracket but do not decompose."""
    rows, _ = sweep
    by_key = {(r.label, r.lam): r for r in rows}
    checks = []
    for key in (("C2", (1, 0)), ("C3", (1, 0, 0))):
        row = by_key[key]
        checks.append(("%s schouten" % row.label, row.schouten is True))
        checks.append(("%s jacobi" % row.label, row.jacobi is True))
        checks.append(("%s not geometric" % row.label,
                       row.geometrically_decomposable is False))
        checks.append(("%s not semidirect" % row.label,
                       row.semidirect_constructed is False))
    _verdict(2, checks)


def test_criterion_03_filter_and_bracket_separate(sweep):
    """The weight filter and the bracket criterion disagree where recorded."""
    rows, _ = sweep
    by_key = {(r.label, r.lam): r for r in rows}
    checks = []
    for key in (("B3", (0, 0, 1)), ("G2", (1, 0))):
        row = by_key[key]
        checks.append(("%s passes the filter" % row.label,
                       row.weight_filter is True))
        checks.append(("%s fails schouten" % row.label, row.schouten is False))
    cube = by_key[("A1", (3,))]
    checks.append(("A1 cubic weight fails the filter",
                   cube.weight_filter is False))
    _verdict(3, checks)


def test_criterion_04_jacobi_matches_schouten(sweep):
    """The two bracket verdicts agree on every sweep row."""
    rows, _ = sweep
    mismatches = [(r.label, r.lam) for r in rows if r.jacobi != r.schouten]
    _verdict(4, [("no jacobi/schouten mismatches", mismatches == [])])


def _comm(a, b):
    return _mscaled_sum([(Q(1), _mcompose(a, b)), (Q(-1), _mcompose(b, a))])


def test_criterion_05_casimir_commutator_routes():
    """Four routes to the obstruction operator agree on the tensor cube."""
    checks = []
    for label, lams in [("A1", [(1,), (2,), (3,)]), ("A2", [(1, 0), (1, 1)])]:
        alg = chevalley_basis(build_root_system(label))
        r = standard_r(alg)
        c = {k: v / 2 for k, v in tt_add(tt_add({}, r), tt_op(r)).items()}
        for lam in lams:
            mod = highest_weight_module(alg, lam)
            cop = pair_operator(alg, c, mod)
            d = mod.dim
            c12 = leg_embed(cop.matrix, d, (0, 1))
            c13 = leg_embed(cop.matrix, d, (0, 2))
            c23 = leg_embed(cop.matrix, d, (1, 2))
            sq = schouten_square(r_minus_operator(alg, r, mod))
            tag = "%s dim %d" % (label, d)
            checks.append(("[c12,c23] %s" % tag, _comm(c12, c23) == sq))
            checks.append(("[c23,c13] %s" % tag, _comm(c23, c13) == sq))
            checks.append(("[c13,c12] %s" % tag, _comm(c13, c12) == sq))
    _verdict(5, checks)


def test_criterion_06_r_matrix_certification():
    """Standard and triple-built r-matrices certify and symmetrize right."""
    checks = []
    for label in ("A2", "A3"):
        alg = chevalley_basis(build_root_system(label))
        c, _ = casimir(alg)
        rep = check_cybe(alg, standard_r(alg))
        checks.append(("%s standard r" % label,
                       rep["cybe_holds"] and rep["symmetric_part_invariant"]))
        ok = True
        for t in enumerate_bd_triples(alg.rs):
            r, freedom = bd_r_matrix(alg, t)
            for extra in [None] + freedom:
                rr = dict(r)
                if extra is not None:
                    tt_add(rr, extra)
                rep = check_cybe(alg, rr)
                ok = ok and rep["cybe_holds"] and rep["symmetric_part_invariant"]
                ok = ok and tt_add(tt_add({}, rr), tt_op(rr)) == c
        checks.append(("%s all triples and freedom representatives" % label, ok))
    _verdict(6, checks)


def _rank_of(rows):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_criterion_07_double_battery():
    """The double of the rank-1 standard structure passes every check."""
    sl2 = chevalley_basis(build_root_system("A1"))
    D, r_can, rep = drinfeld_double(sl2, cobracket_from_r(sl2, standard_r(sl2)))
    killing = [[sum((v * w
                     for c in range(6)
                     for k, v in D.bracket_idx(b, c).items()
                     for k2, w in D.bracket_idx(a, k).items() if k2 == c), Q(0))
                for b in range(6)] for a in range(6)]
    ad_rows = [[D.bracket_idx(i, j).get(k, Q(0)) for i in range(6)]
               for j in range(6) for k in range(6)]
    _verdict(7, [
        ("dimension 6", D.dim == 6),
        ("jacobi", rep["jacobi_holds"]),
        ("canonical element solves CYBE", rep["canonical_r_cybe"]),
        ("manin triple", rep["manin_triple"]),
        ("canonical element pairs the halves",
         r_can == {(i, 3 + i): Q(1) for i in range(3)}),
        ("killing form nondegenerate", _rank_of(killing) == 6),
        ("trivial center", _rank_of(ad_rows) == 6),
    ])


def test_criterion_08_quantized_sl2_goldens():
    """Central element, sigma values, cobracket values, Poisson table."""
    gens, report = qsl2.locally_finite_generators()
    checks = [
        ("central element selection",
         report["selected"] == "K^-2 + (q - q^-1) X0"),
        ("centrality", report["central"][report["selected"]] is True),
        ("coproduct shape", report["coproduct_shape"] is True),
    ]
    dq = qpow(1) - qpow(-1)
    qq = qpow(1) + qpow(-1)
    one = qpow(0)
    sigma_cases = [
        ("X+", "X-", {("X0", "X0"): dq * qq, ("X-", "X+"): one}),
        ("X+", "X0", {("X+", "X0"): -dq * qpow(-1), ("X0", "X+"): one}),
        ("X-", "X0", {("X-", "X0"): dq * qpow(1), ("X0", "X-"): one}),
    ]
    for left, right, want in sigma_cases:
        got = qsl2.x_basis_tensor(qsl2.sigma(left, right))
        checks.append(("sigma(%s,%s)" % (left, right), got == want))
    checks.append(("cobracket of X+",
                   qsl2.copoisson_limit(gens["X+"]) ==
                   CoPoissonElem({((0, 1, 0), (0, 0, 1)): Q(1)})))
    checks.append(("cobracket of X-",
                   qsl2.copoisson_limit(gens["X-"]) ==
                   CoPoissonElem({((0, 1, 0), (1, 0, 0)): Q(1)})))
    shaped = CoPoissonElem({((0, 1, 0), (0, 1, 0)): Q(1),
                            ((0, 0, 1), (1, 0, 0)): Q(1),
                            ((1, 0, 0), (0, 0, 1)): Q(1)})
    checks.append(("cobracket of X0",
                   qsl2.copoisson_limit(gens["X0"]).kernel_reduced() ==
                   shaped.kernel_reduced()))
    _, table = qsl2.donin_graded_relations()
    recorded = {(0, 1): {(2, 2): Q(2)},
                (0, 2): {(0, 2): Q(-1)},
                (1, 2): {(1, 2): Q(1)}}
    ratios = set()
    shape_ok = set(table.table) == set(recorded)
    for pair, poly in recorded.items():
        got = table.table.get(pair, {})
        shape_ok = shape_ok and set(got) == set(poly)
        for mono, coeff in poly.items():
            ratios.add(got.get(mono, Q(0)) / coeff)
    checks.append(("bracket table shape", shape_ok))
    checks.append(("single nonzero rational normalization",
                   len(ratios) == 1 and Q(0) not in ratios))
    checks.append(("bracket table satisfies jacobi",
                   jacobi_oracle(table) is True))
    _verdict(8, checks)


def test_criterion_09_braided_flatness_threshold():
    """Flat through degree 3 for small weights, defective cube at weight 3."""
    flat1 = qsl2.braided_flatness(1)
    flat2 = qsl2.braided_flatness(2)
    flat3 = qsl2.braided_flatness(3)
    _verdict(9, [
        ("weight 1 flat through 3", flat1["flat_through_degree"] >= 3),
        ("weight 2 flat through 3", flat2["flat_through_degree"] >= 3),
        ("weight 3 stops at 2", flat3["flat_through_degree"] == 2),
        ("weight 3 square dims match classical",
         (flat3["dim_S2"], flat3["dim_L2"]) == (10, 6)
         and flat3["classical_dims"]["S2"] == 10
         and flat3["classical_dims"]["L2"] == 6),
        ("weight 3 cube is defective",
         flat3["dim_S3"] != flat3["classical_dims"]["S3"]),
    ])


def test_criterion_10_module_oracles(sweep):
    """Every sweep module matches its dimension and multiset oracles."""
    rows, _ = sweep
    bad = [(r.label, r.lam) for r in rows if not r.oracle_ok]
    _verdict(10, [("all module oracles consistent", bad == [])])


@pytest.mark.skipif(not os.environ.get("QSYM_EXTENDED"),
                    reason="set QSYM_EXTENDED=1 to run the extended rows")
def test_criterion_11_extended_rows():
    """The 27-dimensional rows pass and decompose through a larger ambient."""
    checks = []
    for lam in ((1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1)):
        row = classify_pair(("E", 6), lam, dim_budget=27, extended=True)
        tag = "E6 %s" % (lam,)
        checks.append(("%s dim 27" % tag, row.dim_V == 27))
        checks.append(("%s schouten" % tag, row.schouten is True))
        checks.append(("%s geometric" % tag,
                       row.geometrically_decomposable is True))
        checks.append(("%s ambient is E7" % tag,
                       any(label == "E7" for label, _ in row.ambients)))
    _verdict(11, checks)
