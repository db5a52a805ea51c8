import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icss.errors import NotAComplex, NotASubgroup
from icss.intlinalg import (
    HomologyGroup,
    IntMatrix,
    Subgroup,
    column_echelon,
    group_from_presentation,
    homology_pair,
    invariant_factors,
    kernel_basis,
    preimage_subgroup,
    rank,
    smith_normal_form,
    solve,
    subgroup_quotient,
)


def det(M):
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = M.rows
    a = [row[:] for row in M.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def is_unimodular(M):
    return M.rows == M.cols and abs(det(M)) == 1


def random_matrix(rng, max_dim=6, bound=9):
    m, n = rng.randint(0, max_dim), rng.randint(0, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)], cols=n
    )


def check_snf(M):
    U, S, V = smith_normal_form(M)
    assert U @ M @ V == S
    assert is_unimodular(U) and is_unimodular(V)
    diag = [S.data[i][i] for i in range(min(S.rows, S.cols))]
    for i in range(S.rows):
        for j in range(S.cols):
            if i != j:
                assert S.data[i][j] == 0
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert diag[len(nonzero):] == [0] * (len(diag) - len(nonzero))


def test_snf_worked_example():
    M = IntMatrix.from_rows([[2, 4], [6, 8]], cols=2)
    assert invariant_factors(M) == [2, 4]
    check_snf(M)


def test_snf_identity_and_zero():
    assert invariant_factors(IntMatrix.identity(3)) == [1, 1, 1]
    assert invariant_factors(IntMatrix(3, 2)) == []
    check_snf(IntMatrix.identity(4))
    check_snf(IntMatrix(2, 5))


def test_snf_random_seeded():
    rng = random.Random(7)
    for _ in range(200):
        check_snf(random_matrix(rng))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-20, 20), min_size=1, max_size=5),
        min_size=1,
        max_size=5,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
def test_snf_hypothesis(rows):
    check_snf(IntMatrix.from_rows(rows, cols=len(rows[0])))


def test_snf_deterministic():
    rng = random.Random(3)
    M = random_matrix(rng)
    U1, S1, V1 = smith_normal_form(M)
    U2, S2, V2 = smith_normal_form(M)
    assert (U1, S1, V1) == (U2, S2, V2)


def test_column_echelon_postconditions():
    rng = random.Random(11)
    for _ in range(100):
        M = random_matrix(rng)
        H, T, pivots = column_echelon(M, reduce=True)
        assert H == M @ T
        assert is_unimodular(T)
        assert rank(H) == rank(M)


def test_kernel_basis():
    M = IntMatrix.from_rows([[1, 1, 0], [0, 1, 1]], cols=3)
    K = kernel_basis(M)
    assert K.cols == 1
    assert (M @ K).is_zero()
    # saturated: the kernel of a nonzero 1x1 matrix is trivial
    assert kernel_basis(IntMatrix.from_rows([[2]], cols=1)).cols == 0
    rng = random.Random(5)
    for _ in range(50):
        M = random_matrix(rng)
        K = kernel_basis(M)
        assert (M @ K).is_zero()
        assert rank(K) == K.cols == M.cols - rank(M)


def test_solve():
    assert solve(IntMatrix.from_rows([[2]], cols=1), [4]) == [2]
    assert solve(IntMatrix.from_rows([[2]], cols=1), [3]) is None
    I = IntMatrix.identity(3)
    assert solve(I, [5, -1, 0]) == [5, -1, 0]
    rng = random.Random(13)
    for _ in range(50):
        M = random_matrix(rng)
        x = [rng.randint(-4, 4) for _ in range(M.cols)]
        y = solve(M, M.mul_vec(x))
        assert y is not None and M.mul_vec(y) == M.mul_vec(x)


def test_homology_group_invariants():
    g = HomologyGroup(2, (2, 6))
    assert str(g) == "Z^2 + Z/2 + Z/6"
    assert not g.is_trivial
    assert HomologyGroup(0).is_trivial
    with pytest.raises(Exception):
        HomologyGroup(0, (3, 2))  # violates the divisibility chain


def test_group_from_presentation():
    assert group_from_presentation(3, [2, 1]) == HomologyGroup(1, (2,))
    assert group_from_presentation(2, []) == HomologyGroup(2)


def test_homology_pair_circle():
    # boundary of the circle on three vertices
    d1 = IntMatrix.from_rows([[-1, -1, 0], [1, 0, -1], [0, 1, 1]], cols=3)
    d0 = IntMatrix(0, 3)
    assert homology_pair(d0, d1) == HomologyGroup(1)
    assert homology_pair(d1, IntMatrix(3, 0)) == HomologyGroup(1)


def test_homology_pair_trivial_differentials():
    assert homology_pair(IntMatrix(0, 4), IntMatrix(4, 0)) == HomologyGroup(4)


def test_homology_pair_rejects_noncomplex():
    d1 = IntMatrix.from_rows([[1, 0], [0, 1]], cols=2)
    with pytest.raises(NotAComplex):
        homology_pair(d1, d1)


def test_subgroup_quotient_examples():
    A = Subgroup.full(2)
    B = Subgroup(2, IntMatrix.from_rows([[2, 0], [0, 3]], cols=2))
    assert subgroup_quotient(A, B) == HomologyGroup(0, (6,))
    assert subgroup_quotient(A, A) == HomologyGroup(0)
    assert subgroup_quotient(Subgroup.full(3), Subgroup.zero(3)) == HomologyGroup(3)


def test_subgroup_quotient_rejects_nonsubgroup():
    A = Subgroup(2, IntMatrix.from_rows([[2], [0]], cols=1))
    with pytest.raises(NotASubgroup):
        subgroup_quotient(A, Subgroup.full(2))


def test_subgroup_generator_independence():
    rng = random.Random(17)
    for _ in range(30):
        M = random_matrix(rng, max_dim=4, bound=5)
        A = Subgroup(M.rows, M)
        # re-generate by an unimodular column mix
        if M.cols:
            _, _, V = smith_normal_form(M)
            assert Subgroup(M.rows, M @ V) == A
        assert A.contains_subgroup(A)
        for j in range(M.cols):
            assert A.contains(M.column(j))


def test_subgroup_sum_and_membership():
    A = Subgroup(2, IntMatrix.from_rows([[2], [0]], cols=1))
    B = Subgroup(2, IntMatrix.from_rows([[0], [3]], cols=1))
    S = A.sum(B)
    assert S.contains([2, 3])
    assert not S.contains([1, 0])
    assert subgroup_quotient(Subgroup.full(2), S) == HomologyGroup(0, (6,))


def test_preimage_subgroup():
    M = IntMatrix.from_rows([[2, 0], [0, 1]], cols=2)
    S = Subgroup(2, IntMatrix.from_rows([[4], [0]], cols=1))
    P = preimage_subgroup(M, S)
    for j in range(P.cols):
        assert S.contains(M.mul_vec(P.column(j)))
