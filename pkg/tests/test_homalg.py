import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khdet.homalg import (
    AbelianGroup,
    BigradedTable,
    ChainComplexError,
    GradedComplex,
    IntMatrix,
    cokernel,
    complex_homology,
    field_rank,
    smith_diagonal,
    smith_normal_form,
)
from oracles import invariant_factors_by_minors, rank_fraction

small = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _check_snf(m: IntMatrix):
    s, u, v = smith_normal_form(m)
    assert u @ m @ v == s
    assert abs(u.determinant()) == 1 and abs(v.determinant()) == 1
    dense = s.to_dense()
    diag = [dense[k][k] for k in range(min(m.shape))]
    assert all(dense[r][c] == 0 for r in range(len(dense)) for c in range(len(dense[0])) if r != c)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))
    return nz


def test_snf_hand_example():
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]


def test_snf_two_hundred_random_matrices():
    rng = random.Random(20261016)
    for _ in range(200):
        r, c = rng.randint(1, 40), rng.randint(1, 40)
        m = IntMatrix.from_dense([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        _check_snf(m)


@given(small)
@settings(max_examples=150, deadline=None)
def test_snf_matches_determinantal_divisors(rows):
    m = IntMatrix.from_dense(rows)
    assert _check_snf(m) == invariant_factors_by_minors(rows)


def test_snf_zero_and_empty():
    assert smith_diagonal(IntMatrix.zeros(3, 2)) == []
    assert cokernel(IntMatrix.zeros(2, 3)) == AbelianGroup(2)


def test_field_rank_against_fractions():
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rng.randint(-3, 3) for _ in range(20)] for _ in range(20)]
        rows[5] = [a + b for a, b in zip(rows[1], rows[2])]
        m = IntMatrix.from_dense(rows)
        assert field_rank(m, "Q") == rank_fraction(rows) == len(smith_diagonal(m))


def test_field_rank_f2():
    m = IntMatrix.from_dense([[2, 0], [0, 3]])
    assert field_rank(m, "F2") == 1 and field_rank(m, "Q") == 2


def test_abelian_group_arithmetic():
    g = AbelianGroup.from_orders(0, [2, 3, 1]) + AbelianGroup(1)
    assert g == AbelianGroup(1, (6,))
    assert str(g) == "Z + Z/6"
    assert AbelianGroup(0, (2, 4)).order == 8
    assert AbelianGroup(1).order is None
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))


def test_cokernel_invariant_factors():
    assert cokernel(IntMatrix.from_dense([[2, 0], [0, 3]])) == AbelianGroup(0, (6,))
    assert cokernel(IntMatrix.from_dense([[1, 1], [1, 0]])) == AbelianGroup()


def _circle_complex(ring):
    # C^0 = Z (j=0), C^1 = Z (j=0), d = multiplication by 2
    return GradedComplex(ring, {0: (0,), 1: (0,)}, {0: IntMatrix.from_dense([[2]])})


def test_homology_torsion_depends_on_ring():
    assert complex_homology(_circle_complex("Z"))[(1, 0)] == AbelianGroup(0, (2,))
    assert complex_homology(_circle_complex("Q")).total_rank() == 0
    f2 = complex_homology(_circle_complex("F2"))
    assert f2.rank(0, 0) == 1 and f2.rank(1, 0) == 1


def test_d_squared_violation_reported():
    c = GradedComplex(
        "Z",
        {0: (0,), 1: (0,), 2: (0,)},
        {0: IntMatrix.from_dense([[1]]), 1: IntMatrix.from_dense([[1]])},
    )
    with pytest.raises(ChainComplexError) as info:
        complex_homology(c)
    assert info.value.bidegree == (0, 0)


def test_differential_shape_checked():
    with pytest.raises(ValueError):
        GradedComplex("Z", {0: (0,), 1: (0, 0)}, {0: IntMatrix.from_dense([[1]])})


def test_table_rows_sorted():
    t = BigradedTable("Z", {(1, 2): AbelianGroup(1), (0, 5): AbelianGroup(0, (2,)), (0, 1): AbelianGroup()})
    assert t.to_rows() == [
        {"i": 0, "j": 5, "free_rank": 0, "torsion": [2]},
        {"i": 1, "j": 2, "free_rank": 1, "torsion": []},
    ]
