import pytest

from icss.complexes import Chain, build_complex, pushforward_matrix
from icss.errors import InvalidIndex, InvalidMultiplicity
from icss.multiplicity import (
    SkElement,
    Tower,
    bar_sigma,
    build_D,
    build_W,
    fk_map,
    ordered_lifts,
    projection_eps,
    sk_act,
    sk_matrix,
)


def test_ordered_lifts_fold(fold):
    # the Y edge (a, b) lifts to (z, m) and (z, p): z sits over a
    assert ordered_lifts(fold, (0, 1)) == [(1, 0), (1, 2)]
    assert ordered_lifts(fold, (0,)) == [(1,)]
    assert ordered_lifts(fold, (1,)) == [(0,), (2,)]


def test_fold_W2(fold):
    W2 = build_W(fold, 2)
    assert W2.n_simplices(0) == 5
    assert W2.n_simplices(1) == 4
    assert set(W2.vertex_tuples) == {(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)}
    # every edge contains the diagonal vertex over a
    zz = W2.tuple_index[(1, 1)]
    for e in W2.simplices(1):
        assert zz in e


def test_fold_D2(fold):
    D2 = build_D(fold, 2)
    assert set(D2.vertex_tuples) == {(0, 2), (1, 1), (2, 0)}
    assert D2.n_simplices(1) == 2
    zz = D2.tuple_index[(1, 1)]
    assert sorted(
        tuple(sorted((zz, D2.tuple_index[t]))) for t in [(0, 2), (2, 0)]
    ) == sorted(D2.simplices(1))


def test_identity_D2_empty(identity_map):
    D2 = build_D(identity_map, 2)
    assert D2.is_empty()
    assert Tower(identity_map).k_max() == 1


def test_double_cover_spaces(double_cover):
    tower = Tower(double_cover)
    W2, D2 = tower.W(2), tower.D(2)
    assert W2.n_simplices(0) == 4 and W2.dim == 0
    assert D2.n_simplices(0) == 2 and D2.dim == 0
    assert tower.D(3).is_empty()
    assert tower.k_max() == 2


def test_k_max_values(maps):
    expected = {
        "identity": 1,
        "fold": 2,
        "double_cover": 2,
        "figure_eight": 2,
        "disc_to_rp2": 2,
    }
    for name, f in maps.items():
        assert Tower(f).k_max() == expected[name], name


def test_invalid_multiplicity(fold):
    with pytest.raises(InvalidMultiplicity):
        build_W(fold, 0)


def test_projections(fold):
    W2 = build_W(fold, 2)
    e1 = projection_eps(W2, 1)
    e2 = projection_eps(W2, 2)
    for v, t in enumerate(W2.vertex_tuples):
        assert e1.vertex_map[v] == t[1]  # forgetting slot 1 keeps slot 2
        assert e2.vertex_map[v] == t[0]
    with pytest.raises(InvalidIndex):
        projection_eps(W2, 0)
    with pytest.raises(InvalidIndex):
        projection_eps(W2, 3)
    assert projection_eps(Tower(fold).W(1), 1) is fold


def test_fk_map(fold):
    W2 = build_W(fold, 2)
    g = fk_map(W2)
    for v, t in enumerate(W2.vertex_tuples):
        assert g.vertex_map[v] == fold.vertex_map[t[0]]


def test_rho_on_double_cover_vertex(double_cover):
    from icss.alternating import rho_matrix

    W2 = build_W(double_cover, 2)
    R = rho_matrix(W2, 0)
    j = W2.index((W2.tuple_index[(0, 1)],))
    col = R.column(j)
    assert col == [-1, 1]  # (a, b) maps to b - a
    j_diag = W2.index((W2.tuple_index[(0, 0)],))
    assert R.column(j_diag) == [0, 0]


def test_sk_group_laws():
    for k in (2, 3):
        elems = SkElement.all(k)
        ident = SkElement.identity(k)
        for s in elems:
            assert s.compose(s.inverse()) == ident
            assert s.inverse().sign == s.sign
            for t in elems:
                st = s.compose(t)
                assert st.sign == s.sign * t.sign
                x = tuple(range(10, 10 + k))
                assert st.apply_tuple(x) == s.apply_tuple(t.apply_tuple(x))
    with pytest.raises(InvalidIndex):
        SkElement((0, 0))


def test_sk_action_is_signed_involution(fold):
    W2 = build_W(fold, 2)
    swap = SkElement.transposition(2, 0, 1)
    from icss.intlinalg import IntMatrix

    for n in range(W2.dim + 1):
        P = sk_matrix(W2, swap, n)
        assert P @ P == IntMatrix.identity(P.rows)
        assert P.transpose() == P
    c = Chain(W2.complex, 0, {(W2.tuple_index[(0, 2)],): 1})
    image = sk_act(swap, c, W2)
    assert image.terms == {(W2.tuple_index[(2, 0)],): 1}


def test_bar_sigma_equivariance(deep_map):
    """Permuting the surviving slots commutes with forgetting one slot."""
    tower = Tower(deep_map)
    W3, W2 = tower.W(3), tower.W(2)
    for j in (1, 2, 3):
        P = pushforward_matrix(projection_eps(W3, j), 0)
        for i in range(1):
            sigma = SkElement.transposition(2, 0, 1)
            lhs = sk_matrix(W2, sigma, 0) @ P
            rhs = P @ sk_matrix(W3, bar_sigma(sigma, j, 3), 0)
            assert lhs == rhs


def test_bar_sigma_fixes_slot():
    sigma = SkElement.transposition(2, 0, 1)
    for j in (1, 2, 3):
        bar = bar_sigma(sigma, j, 3)
        assert bar.perm[j - 1] == j - 1
