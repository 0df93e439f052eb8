"""Module construction and Chevalley structure constants."""

from __future__ import annotations

import random
from fractions import Fraction as Q

from qsym.liealg import (
    abelian_radical_module,
    casimir,
    chevalley_basis,
    highest_weight_module,
    module_matrices,
    weyl_dimension_and_weights,
    _mcomm,
    _mcompose,
    _mscaled_sum,
)
from qsym.rootsys import build_root_system, weight_multiplicities, weyl_dim


def test_module_dimension_and_weights_match_oracles():
    cases = [
        ("A1", (3,)),
        ("A2", (1, 0)),
        ("A2", (1, 1)),
        ("A2", (2, 0)),
        ("B2", (1, 0)),
        ("B2", (0, 1)),
        ("C3", (0, 1, 0)),
        ("G2", (1, 0)),
        ("A3", (0, 1, 0)),
        ("D4", (0, 0, 0, 1)),
        ("A1xA1", (1, 1)),
    ]
    for label, lam in cases:
        rs = build_root_system(label)
        rep = module_matrices(rs, lam)
        assert rep.dim == weyl_dim(rs, lam), (label, lam)
        counted = {}
        for w in rep.weights:
            counted[w] = counted.get(w, 0) + 1
        assert counted == weight_multiplicities(rs, lam), (label, lam)


def test_generator_relations_on_modules():
    # [e_i, f_j] = delta_ij h_i, and e_i shifts weights up by alpha_i
    for label, lam in [("A2", (1, 1)), ("B2", (0, 1)), ("G2", (1, 0))]:
        rs = build_root_system(label)
        rep = module_matrices(rs, lam)
        for i in range(rs.rank):
            for j in range(rs.rank):
                comm = _mcomm(rep.e[i], rep.f[j])
                if i != j:
                    assert not comm, (label, i, j)
                    continue
                h = {k: {k: Q(rep.weights[k][i])} for k in range(rep.dim)
                     if rep.weights[k][i]}
                assert not _mscaled_sum([(Q(1), comm), (Q(-1), h)]), (label, i)
        for i in range(rs.rank):
            for src, col in rep.e[i].items():
                for dst in col:
                    shift = tuple(a - b for a, b in
                                  zip(rep.weights[dst], rep.weights[src]))
                    assert shift == tuple(rs.cartan[i]), (label, i, src, dst)


def test_cartan_pairing_of_root_vectors():
    # [E_gamma, F_gamma] = H_gamma with integer coroot coordinates
    for label in ["A2", "B2", "B3", "C3", "G2", "D4"]:
        alg = chevalley_basis(label)
        rs = alg.rs
        for g in alg.pos_roots:
            got = alg.bracket_idx(alg.e_idx[g], alg.f_idx[g])
            gnorm = rs.inner(g, g)
            want = {alg.h_idx[j]: Q(g[j]) * rs.norms[j] / gnorm
                    for j in range(rs.rank) if g[j]}
            assert got == want, (label, g)
            assert all(v.denominator == 1 for v in got.values()), (label, g)


def test_root_vector_brackets_are_chevalley_integers():
    for label in ["A2", "B3", "G2"]:
        alg = chevalley_basis(label)
        n = len(alg.pos_roots)
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                out = alg.bracket_idx(a, b)
                for k, v in out.items():
                    assert v.denominator == 1, (label, a, b, v)
                ga, gb = alg.pos_roots[a], alg.pos_roots[b]
                s = tuple(x + y for x, y in zip(ga, gb))
                if out:
                    assert list(out) == [alg.e_idx[s]], (label, ga, gb)
                else:
                    assert not alg.rs.is_root(s), (label, ga, gb)


def test_jacobi_identity_sampled():
    rng = random.Random(8261)
    for label in ["A2", "B2", "G2", "A1xA1"]:
        alg = chevalley_basis(label)
        idxs = list(range(alg.dim))
        for _ in range(60):
            x, y, z = ({rng.choice(idxs): Q(1)} for _ in range(3))
            total = {}
            for a, b, c in [(x, y, z), (y, z, x), (z, x, y)]:
                for k, v in alg.bracket(a, alg.bracket(b, c)).items():
                    total[k] = total.get(k, Q(0)) + v
            assert not any(total.values()), label


def test_invariant_form_normalization():
    for label in ["A2", "B3", "C3", "G2"]:
        alg = chevalley_basis(label)
        rs = alg.rs
        theta = rs.highest_root
        h_theta = alg.bracket_idx(alg.e_idx[theta], alg.f_idx[theta])
        val = Q(0)
        for i, ci in h_theta.items():
            for j, cj in h_theta.items():
                val += ci * cj * alg.form(i, j)
        assert val == 2, label
        for g in alg.pos_roots:
            assert alg.form(alg.e_idx[g], alg.f_idx[g]) == 2 / rs.inner(g, g)


def test_form_is_invariant_under_brackets():
    # <[x,y],z> + <y,[x,z]> = 0 on sampled triples
    rng = random.Random(515)
    for label in ["B2", "A3"]:
        alg = chevalley_basis(label)
        for _ in range(40):
            a, b, c = (rng.randrange(alg.dim) for _ in range(3))
            lhs = sum((alg.form(k, c) * v
                       for k, v in alg.bracket_idx(a, b).items()), Q(0))
            rhs = sum((alg.form(b, k) * v
                       for k, v in alg.bracket_idx(a, c).items()), Q(0))
            assert lhs + rhs == 0, (label, a, b, c)


def test_trace_form_is_proportional():
    alg = chevalley_basis("A2")
    ad = alg.adjoint_rep()

    def tr(i, j):
        total = Q(0)
        for k in range(alg.dim):
            v = ad[j].get(k)
            if not v:
                continue
            acc = Q(0)
            for mid, c in v.items():
                acc += ad[i].get(mid, {}).get(k, Q(0)) * c
            total += acc
        return total

    ratios = set()
    for g in alg.pos_roots:
        i, j = alg.e_idx[g], alg.f_idx[g]
        ratios.add(tr(i, j) / alg.form(i, j))
    for i in range(alg.rank):
        for j in range(alg.rank):
            if alg.form(alg.h_idx[i], alg.h_idx[j]):
                ratios.add(tr(alg.h_idx[i], alg.h_idx[j])
                           / alg.form(alg.h_idx[i], alg.h_idx[j]))
    assert len(ratios) == 1
    assert ratios.pop() == 6  # twice the dual Coxeter number of sl3


def test_casimir_acts_by_scalar():
    cases = [
        ("A1", (1,)),
        ("A1", (2,)),
        ("A1", (4,)),
        ("A2", (1, 0)),
        ("A2", (1, 1)),
        ("B2", (0, 1)),
        ("G2", (1, 0)),
    ]
    for label, lam in cases:
        alg = chevalley_basis(label)
        rs = alg.rs
        mod = highest_weight_module(alg, lam)
        cas, _ = casimir(alg)
        action = _mscaled_sum([(v, _mcompose(mod.mats[i], mod.mats[j]))
                               for (i, j), v in cas.items()])
        lam_root = rs.fund_to_root(lam)
        rho = rs.fund_to_root([1] * rs.rank)
        shifted = tuple(a + 2 * b for a, b in zip(lam_root, rho))
        expected = rs.inner(lam_root, shifted)
        for col in range(mod.dim):
            assert action.get(col, {}) == {col: expected}, (label, lam)


def test_casimir_eigenvalue_sl3_vector():
    alg = chevalley_basis("A2")
    mod = highest_weight_module(alg, (1, 0))
    cas, c0 = casimir(alg)
    assert all(k in {(alg.h_idx[0], alg.h_idx[0]), (alg.h_idx[0], alg.h_idx[1]),
                     (alg.h_idx[1], alg.h_idx[0]), (alg.h_idx[1], alg.h_idx[1])}
               for k in c0)
    action = {}
    for (i, j), v in cas.items():
        for col, vec in _mcompose(mod.mats[i], mod.mats[j]).items():
            acc = action.setdefault(col, {})
            for row, x in vec.items():
                acc[row] = acc.get(row, Q(0)) + v * x
    assert action[0][0] == Q(8, 3)


def test_central_extension_and_scalars():
    alg = chevalley_basis("A1", central_dims=1)
    assert alg.dim == 4
    z = alg.z_idx[0]
    for i in range(alg.dim):
        assert not alg.bracket_idx(z, i)
        assert not alg.bracket_idx(i, z)
    mod = highest_weight_module(alg, (2,), central_scalars=(Q(5),))
    for col in range(mod.dim):
        assert mod.mats[z][col] == {col: Q(5)}


def test_nonsimple_root_matrices_shift_weights():
    alg = chevalley_basis("B2")
    mod = highest_weight_module(alg, (1, 0))
    for g in alg.pos_roots:
        mat = mod.mats[alg.e_idx[g]]
        gf = [sum(Q(g[k]) * alg.rs.cartan[k][j] for k in range(alg.rs.rank))
              for j in range(alg.rs.rank)]
        for src, col in mat.items():
            for dst in col:
                shift = [a - b for a, b in zip(mod.weights[dst], mod.weights[src])]
                assert shift == gf, (g, src, dst)


def test_adjoint_rep_is_a_homomorphism():
    alg = chevalley_basis("A2")
    ad = alg.adjoint_rep()
    rng = random.Random(99)
    for _ in range(25):
        a, b = rng.randrange(alg.dim), rng.randrange(alg.dim)
        lhs = _mcomm(ad[a], ad[b])
        rhs = {}
        for k, v in alg.bracket_idx(a, b).items():
            for colk, colv in ad[k].items():
                acc = rhs.setdefault(colk, {})
                for rowk, rowv in colv.items():
                    s = acc.get(rowk, Q(0)) + v * rowv
                    if s:
                        acc[rowk] = s
                    elif rowk in acc:
                        del acc[rowk]
        rhs = {k: v for k, v in rhs.items() if v}
        assert lhs == rhs, (a, b)


def test_abelian_radical_levi_data():
    cases = [
        ("A3", 2, [("A", 1), ("A", 1)], (1, 1), True),
        ("C2", 1, [("A", 1)], None, False),
        ("C2", 2, [("A", 1)], (2,), True),
        ("B3", 1, [("B", 2)], None, True),
        ("C3", 3, [("A", 2)], None, True),
        ("D5", 5, [("A", 4)], None, True),
    ]
    for label, node, want_type, want_lam, want_ab in cases:
        rs = build_root_system(label)
        levi_type, lam, abelian = abelian_radical_module(rs, node)
        assert levi_type == want_type, (label, node)
        assert abelian == want_ab, (label, node)
        if want_lam is not None:
            assert lam == want_lam, (label, node, lam)


def test_abelian_radical_matches_cominuscule_nodes():
    from qsym.rootsys import cominuscule_nodes
    for label in ["A3", "B3", "C3", "D4", "G2", "F4"]:
        rs = build_root_system(label)
        marked = set(cominuscule_nodes(rs))
        for node in range(1, rs.rank + 1):
            _, _, abelian = abelian_radical_module(rs, node)
            assert abelian == (node in marked), (label, node)


def test_weyl_dimension_and_weights_wrapper():
    rs = build_root_system("E6")
    dim, mults = weyl_dimension_and_weights(rs, (1, 0, 0, 0, 0, 0))
    assert dim == 27
    assert sum(mults.values()) == 27
