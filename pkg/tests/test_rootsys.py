from fractions import Fraction as Q

import pytest

from qsym.rootsys import (
    InvalidType,
    NotDominant,
    NotSimple,
    build_root_system,
    cominuscule_nodes,
    normalize_type,
    weight_multiplicities,
    weyl_dim,
)


def test_positive_root_counts():
    """Closure by reflections reproduces the classical counts."""
    cases = {
        ("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 4): 10, ("A", 5): 15,
        ("B", 2): 4, ("B", 3): 9, ("B", 4): 16, ("B", 5): 25,
        ("C", 2): 4, ("C", 3): 9, ("C", 4): 16,
        ("D", 3): 6, ("D", 4): 12, ("D", 5): 20,
        ("G", 2): 6, ("F", 4): 24, ("E", 6): 36,
    }
    for (letter, n), count in cases.items():
        rs = build_root_system(letter, n)
        assert len(rs.positive_roots) == count, rs.label


def test_highest_roots():
    cases = {
        ("A", 2): (1, 1),
        ("B", 3): (1, 2, 2),
        ("C", 3): (2, 2, 1),
        ("D", 4): (1, 2, 1, 1),
        ("G", 2): (3, 2),
        ("F", 4): (2, 3, 4, 2),
        ("E", 6): (1, 2, 2, 3, 2, 1),
    }
    for (letter, n), theta in cases.items():
        assert build_root_system(letter, n).highest_root == theta


def test_cominuscule_nodes():
    cases = {
        ("A", 3): [1, 2, 3],
        ("B", 3): [1],
        ("C", 2): [2],
        ("C", 3): [3],
        ("D", 4): [1, 3, 4],
        ("D", 5): [1, 4, 5],
        ("E", 6): [1, 6],
        ("E", 7): [7],
        ("G", 2): [],
        ("F", 4): [],
        ("E", 8): [],
    }
    for (letter, n), nodes in cases.items():
        assert cominuscule_nodes(build_root_system(letter, n)) == nodes


def test_cartan_matches_form():
    """A[i][j] = 2(a_i,a_j)/(a_j,a_j) and long roots have squared length 2."""
    for label in ("A3", "B3", "C3", "D4", "G2", "F4", "E6"):
        rs = build_root_system(label)
        n = rs.rank
        for i in range(n):
            for j in range(n):
                assert rs.cartan[i][j] == 2 * rs.bform[i][j] / rs.bform[j][j]
        assert max(rs.inner(g, g) for g in rs.positive_roots) == 2


def test_short_root_norms():
    assert build_root_system("B", 3).norms == [Q(2), Q(2), Q(1)]
    assert build_root_system("G", 2).norms == [Q(2, 3), Q(2)]
    assert build_root_system("C", 3).norms == [Q(1), Q(1), Q(2)]


def test_fundamental_weight_duality():
    for label in ("A2", "B3", "C2", "D4", "G2", "F4"):
        rs = build_root_system(label)
        for i in range(rs.rank):
            w = rs.fundamental_weights[i]
            for j in range(rs.rank):
                alpha_j = tuple(1 if k == j else 0 for k in range(rs.rank))
                expected = 1 if i == j else 0
                assert 2 * rs.inner(w, alpha_j) / rs.norms[j] == expected
                assert rs.copair(w, j) == expected
    assert build_root_system("A", 2).fundamental_weights[0] == (Q(2, 3), Q(1, 3))


def test_is_root_membership():
    rs = build_root_system("B", 2)
    assert rs.is_root((1, 1))
    assert rs.is_root((-1, -2))
    assert not rs.is_root((2, 1))
    assert not rs.is_root((0, 0))


def test_products_are_block_diagonal():
    rs = build_root_system("A2xA1")
    assert rs.rank == 3
    assert len(rs.positive_roots) == 4
    assert rs.cartan[0][2] == rs.cartan[2][0] == 0
    assert not rs.is_simple
    with pytest.raises(NotSimple):
        cominuscule_nodes(rs)


def test_type_aliases():
    assert normalize_type("so10") == ("D", 5)
    assert normalize_type("so9") == ("B", 4)
    assert normalize_type("sp4") == ("C", 2)
    assert normalize_type("sl4") == ("A", 3)
    assert normalize_type("e6") == ("E", 6)
    assert normalize_type("G2") == ("G", 2)
    for bad in ("so4", "so3", "sp3", "sp2", "h3", "B1", "D2", "E9"):
        with pytest.raises(InvalidType):
            normalize_type(bad)


def test_invalid_builds():
    for letter, n in (("D", 2), ("B", 1), ("E", 5), ("F", 3), ("G", 3)):
        with pytest.raises(InvalidType):
            build_root_system(letter, n)
    # D3 is a legal alias of A3 for construction
    assert len(build_root_system("D", 3).positive_roots) == 6


def test_weyl_dimensions():
    cases = [
        ("A2", (1, 0), 3), ("A2", (1, 1), 8), ("A2", (2, 0), 6),
        ("B2", (0, 1), 4), ("B2", (1, 0), 5),
        ("C3", (0, 1, 0), 14), ("C3", (1, 0, 0), 6),
        ("G2", (1, 0), 7), ("G2", (0, 1), 14),
        ("D5", (0, 0, 0, 0, 1), 16),
        ("E6", (1, 0, 0, 0, 0, 0), 27),
        ("D3", (1, 0, 0), 6),
    ]
    for label, lam, dim in cases:
        assert weyl_dim(build_root_system(label), lam) == dim, (label, lam)


def test_weight_multiplicities_small():
    rs = build_root_system("A", 2)
    adj = weight_multiplicities(rs, (1, 1))
    assert sum(adj.values()) == 8
    assert adj[(0, 0)] == 2
    assert adj[(1, 1)] == 1 and adj[(-1, -1)] == 1

    nat = weight_multiplicities(rs, (1, 0))
    assert sorted(nat.values()) == [1, 1, 1]

    sl2 = build_root_system("A", 1)
    assert weight_multiplicities(sl2, (2,)) == {(2,): 1, (0,): 1, (-2,): 1}

    g2 = weight_multiplicities(build_root_system("G", 2), (1, 0))
    assert sum(g2.values()) == 7
    assert g2[(0, 0)] == 1

    b3_spin = weight_multiplicities(build_root_system("B", 3), (0, 0, 1))
    assert sum(b3_spin.values()) == 8
    assert set(b3_spin.values()) == {1}


def test_multiplicity_sums_match_weyl_dim():
    cases = [("B2", (1, 1)), ("C3", (0, 0, 1)), ("A3", (0, 1, 0)), ("G2", (0, 1))]
    for label, lam in cases:
        rs = build_root_system(label)
        assert sum(weight_multiplicities(rs, lam).values()) == weyl_dim(rs, lam)


def test_not_dominant():
    rs = build_root_system("A", 2)
    with pytest.raises(NotDominant):
        weyl_dim(rs, (-1, 0))
    with pytest.raises(NotDominant):
        weight_multiplicities(rs, (1,))
