"""Integer cochains on the multiple-point spaces.

Everything is finite rank, so a cochain is just a coordinate vector against
the canonical chain basis and dualizing a complex transposes its matrices.
Two models of the alternating cochains are carried: functionals on the free
alternating basis of D^k, and alternating functionals on raw chains.  The
two are identified by a pair of mutually inverse matrices: precomposition
with the alternation operator one way, evaluation on the basis
representatives the other.
"""

from __future__ import annotations

from .alternating import AltBasis, alt_Z, alternating_kernel, alt_boundary_matrix
from .complexes import Chain, boundary_matrix
from .errors import NotAlternating
from .intlinalg import HomologyGroup, IntMatrix, homology_pair, solve
from .multiplicity import MultiplePointComplex, SkElement, sk_matrix


def dualize(diffs: list) -> list:
    """Transpose a chain complex d_1, d_2, ... into its cochain complex
    delta^0, delta^1, ...; compositions stay zero."""
    return [d.transpose() for d in diffs]


def cochain_homology(d_n: IntMatrix, d_next: IntMatrix) -> HomologyGroup:
    """Degree-n cohomology of the dual of a chain complex given the chain
    differentials into and out of level n."""
    return homology_pair(d_next.transpose(), d_n.transpose())


def alt_star_matrix(basis: AltBasis) -> IntMatrix:
    """Precomposition with the alternation operator: a functional on the
    alternating basis becomes an alternating functional on raw chains.

    Returns the raw_rank x basis_rank matrix applied to coordinate vectors
    of such functionals.
    """
    Z, n = basis.Z, basis.n
    cols = []
    for s in Z.simplices(n):
        c = alt_Z(Chain(Z.complex, n, {s: 1}), Z)
        cols.append(basis.raw_to_alt(c.to_vector()))
    T = IntMatrix.from_columns(cols, rows=basis.n_gens)  # coords of Alt on each raw generator
    return T.transpose()


def theta_matrix(basis: AltBasis) -> IntMatrix:
    """Evaluation of an alternating raw functional on the signed product
    representatives of the basis generators; inverse to alt_star."""
    Z = basis.Z
    rows = []
    m = Z.n_simplices(basis.n)
    for g in basis.gens:
        row = [0] * m
        row[Z.index(g.canonical)] = g.sign
        rows.append(row)
    return IntMatrix(len(rows), m, rows)


def is_alternating_cochain(Z: MultiplePointComplex, n: int, phi) -> bool:
    """Adjacent slot swaps act on functionals by the transposed matrices."""
    for i in range(Z.k - 1):
        sigma = SkElement.transposition(Z.k, i, i + 1)
        P = sk_matrix(Z, sigma, n)
        if P.transpose().mul_vec(list(phi)) != [-x for x in phi]:
            return False
    return True


def theta_apply(basis: AltBasis, phi) -> list:
    """theta on a concrete functional; rejects non-alternating input."""
    if not is_alternating_cochain(basis.Z, basis.n, phi):
        raise NotAlternating("functional is not alternating")
    return theta_matrix(basis).mul_vec(list(phi))


def alternating_cochain_basis(Z: MultiplePointComplex, n: int) -> IntMatrix:
    """Basis of the alternating functionals on raw degree-n chains.

    The slot permutations act by signed involutions, so the transposed
    conditions coincide with the chain-level ones.
    """
    return alternating_kernel(Z, n)


def _corestrict(M: IntMatrix, src_cols: IntMatrix, tgt_cols: IntMatrix) -> IntMatrix:
    image = M @ src_cols
    cols = []
    for j in range(image.cols):
        y = solve(tgt_cols, image.column(j))
        assert y is not None, "map leaves the subgroup"
        cols.append(y)
    return IntMatrix.from_columns(cols, rows=tgt_cols.cols)


def alternating_cochain_homology(Z: MultiplePointComplex, n: int) -> HomologyGroup:
    """Degree-n cohomology of the alternating-cochain subcomplex of the
    raw dual complex."""
    if Z.dim < 0 or n > Z.dim:
        return HomologyGroup(0)
    A_n = alternating_cochain_basis(Z, n)
    if n + 1 <= Z.dim:
        delta_n = _corestrict(
            boundary_matrix(Z.complex, n + 1).transpose(),
            A_n,
            alternating_cochain_basis(Z, n + 1),
        )
    else:
        delta_n = IntMatrix(0, A_n.cols)
    if n >= 1:
        delta_prev = _corestrict(
            boundary_matrix(Z.complex, n).transpose(),
            alternating_cochain_basis(Z, n - 1),
            A_n,
        )
    else:
        delta_prev = IntMatrix(A_n.cols, 0)
    return homology_pair(delta_n, delta_prev)


def dual_alternating_homology(Z: MultiplePointComplex, n: int) -> HomologyGroup:
    """Degree-n cohomology of the dual of the free alternating basis complex."""
    basis_n = AltBasis(Z, n)
    if n == 0:
        d_n = IntMatrix(0, basis_n.n_gens)
    else:
        d_n = alt_boundary_matrix(basis_n, AltBasis(Z, n - 1))
    d_next = alt_boundary_matrix(AltBasis(Z, n + 1), basis_n)
    return cochain_homology(d_n, d_next)
