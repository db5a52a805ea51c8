"""Alternating chains on the multiple-point spaces and the maps between them.

The symmetric group permuting the k slots of W^k and D^k acts on chains;
the alternating part (sigma acts by its sign) has, on D^k, a concrete free
basis: one generator per Y-simplex and per increasing k-subset of its
ordered lifts.  This module builds that basis, converts between raw and
alternating coordinates, and assembles the transfer maps rho (signed sum of
slot projections) and the last-slot projection used on alternating chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Chain, boundary_matrix, pushforward_matrix
from .errors import DegreeOutOfRange, InvalidMultiplicity, NotAlternating
from .intlinalg import HomologyGroup, IntMatrix, homology_pair, kernel_basis, solve
from .multiplicity import (
    MultiplePointComplex,
    SkElement,
    ordered_lifts,
    projection_eps,
    sk_act,
    sk_matrix,
)


def alt_Z(c: Chain, Z: MultiplePointComplex) -> Chain:
    """Alternation: the signed sum of all slot permutations of c."""
    out = Chain.zero(c.complex, c.degree)
    for sigma in SkElement.all(Z.k):
        out = out + sk_act(sigma, c, Z).scaled(sigma.sign)
    return out


def is_alternating(c: Chain, Z: MultiplePointComplex) -> bool:
    """Adjacent slot swaps generate, so checking them suffices."""
    for i in range(Z.k - 1):
        sigma = SkElement.transposition(Z.k, i, i + 1)
        if sk_act(sigma, c, Z) != c.scaled(-1):
            return False
    return True


def alternating_kernel(Z: MultiplePointComplex, n: int) -> IntMatrix:
    """Basis (columns) of the alternating subgroup of the degree-n chains,
    computed as the integer kernel of the stacked swap conditions."""
    m = Z.n_simplices(n)
    if Z.k == 1:
        return IntMatrix.identity(m)
    ident = IntMatrix.identity(m)
    rows: list = []
    for i in range(Z.k - 1):
        sigma = SkElement.transposition(Z.k, i, i + 1)
        rows.extend((sk_matrix(Z, sigma, n) + ident).data)
    return kernel_basis(IntMatrix(len(rows), m, rows))


@dataclass(frozen=True)
class AltGen:
    """Basis generator of the alternating chains of D^k in one degree."""

    delta: tuple  # Y-simplex underneath
    subset: tuple  # increasing k-subset of lift indices over delta
    lifts: tuple  # the corresponding ordered lifts
    sign: int  # parity of the slot-major vertex listing of the product
    canonical: tuple  # the product simplex the generator is read off from


class AltBasis:
    """Free basis of the alternating degree-n chains of D^k.

    The generator for (delta, I) is the alternation of the product simplex of
    the lifts indexed by I, normalized by the listing parity so that raw
    coordinates are recovered by a plain signed lookup at the product simplex.
    """

    def __init__(self, Z: MultiplePointComplex, n: int):
        self.Z = Z
        self.n = n
        self.gens: list = []
        for delta in Z.f.target.simplices(n):
            lifts = ordered_lifts(Z.f, delta)
            for subset in combinations(range(len(lifts)), Z.k):
                combo = tuple(lifts[i] for i in subset)
                rec = Z.products[(delta, combo)]
                self.gens.append(AltGen(delta, subset, combo, rec.sign, rec.canonical))
        self.n_gens = len(self.gens)
        self._by_delta: dict = {}
        for idx, g in enumerate(self.gens):
            self._by_delta.setdefault(g.delta, []).append(idx)
        cols = []
        for g in self.gens:
            chain = alt_Z(Chain(Z.complex, n, {g.canonical: g.sign}), Z)
            cols.append(chain.to_vector())
        self.to_raw_matrix = IntMatrix.from_columns(cols, rows=Z.n_simplices(n))

    def gens_over(self, delta) -> list:
        """Indices of the generators lying over the Y-simplex delta."""
        return self._by_delta.get(tuple(delta), [])

    def alt_to_raw(self, a) -> list:
        return self.to_raw_matrix.mul_vec(a)

    def raw_to_alt(self, vec) -> list:
        """Coordinates of an alternating raw vector; raises otherwise."""
        a = [g.sign * vec[self.Z.index(g.canonical)] for g in self.gens]
        if self.to_raw_matrix.mul_vec(a) != list(vec):
            raise NotAlternating("vector is not an alternating chain")
        return a

    def chain(self, idx: int) -> Chain:
        a = [0] * self.n_gens
        a[idx] = 1
        return Chain.from_vector(self.Z.complex, self.n, self.alt_to_raw(a))


def rho_matrix(Z: MultiplePointComplex, n: int) -> IntMatrix:
    """The alternating-signed sum of the k slot projections, raw bases.

    For k = 1 this is the induced map down to Y itself.
    """
    if Z.k == 1:
        return pushforward_matrix(Z.f, n)
    total = None
    for i in range(1, Z.k + 1):
        P = pushforward_matrix(projection_eps(Z, i), n)
        P = P if i % 2 else P.scaled(-1)
        total = P if total is None else total + P
    return total


def varrho_matrix(Z: MultiplePointComplex, n: int) -> IntMatrix:
    """Degree-sign twist of :func:`rho_matrix`, anticommuting with the boundary."""
    M = rho_matrix(Z, n)
    return M if n % 2 == 0 else M.scaled(-1)


def eps_last_matrix(Z: MultiplePointComplex, n: int) -> IntMatrix:
    """Last-slot projection on raw chains (to Y when k = 1)."""
    if Z.k == 1:
        return pushforward_matrix(Z.f, n)
    return pushforward_matrix(projection_eps(Z, Z.k), n)


def veps_matrix(Z: MultiplePointComplex, n: int) -> IntMatrix:
    """Degree-sign twist of the last-slot projection (vertical differential
    of the alternating double complex)."""
    M = eps_last_matrix(Z, n)
    return M if n % 2 == 0 else M.scaled(-1)


def _restrict(M: IntMatrix, src_cols: IntMatrix, tgt_cols: IntMatrix) -> IntMatrix:
    """Matrix of M between the column-span bases; spans must be preserved."""
    image = M @ src_cols
    out_cols = []
    for j in range(image.cols):
        y = solve(tgt_cols, image.column(j))
        assert y is not None, "map does not preserve the subgroup"
        out_cols.append(y)
    return IntMatrix.from_columns(out_cols, rows=tgt_cols.cols)


def alt_boundary_matrix(basis_n: AltBasis, basis_prev: AltBasis | None) -> IntMatrix:
    """Simplicial boundary in alternating coordinates (degree n to n-1)."""
    Z, n = basis_n.Z, basis_n.n
    if n == 0:
        return IntMatrix(0, basis_n.n_gens)
    if basis_prev is None or basis_prev.n != n - 1 or basis_prev.Z is not Z:
        raise DegreeOutOfRange("basis_prev must be the degree n-1 basis of the same complex")
    if basis_n.n_gens == 0:
        return IntMatrix(basis_prev.n_gens, 0)
    d = boundary_matrix(Z.complex, n)
    cols = [
        basis_prev.raw_to_alt(d.mul_vec(basis_n.to_raw_matrix.column(j)))
        for j in range(basis_n.n_gens)
    ]
    return IntMatrix.from_columns(cols, rows=basis_prev.n_gens)


def alt_veps_matrix(basis_src: AltBasis, basis_tgt: AltBasis) -> IntMatrix:
    """Signed last-slot projection in alternating coordinates: D^k to D^{k-1}.

    For k = 2 the target basis lives on D^1 = X.
    """
    Z = basis_src.Z
    if Z.k < 2:
        raise InvalidMultiplicity("source multiplicity must be at least 2")
    if basis_tgt.n != basis_src.n or basis_tgt.Z.k != Z.k - 1:
        raise DegreeOutOfRange("target basis must have multiplicity k-1, same degree")
    M = veps_matrix(Z, basis_src.n)
    cols = [
        basis_tgt.raw_to_alt(M.mul_vec(basis_src.to_raw_matrix.column(j)))
        for j in range(basis_src.n_gens)
    ]
    return IntMatrix.from_columns(cols, rows=basis_tgt.n_gens)


def alternating_homology(Z: MultiplePointComplex, n: int) -> HomologyGroup:
    """Homology of the alternating chain complex of D^k via its free basis."""
    basis_n = AltBasis(Z, n)
    if n == 0:
        d_n = IntMatrix(0, basis_n.n_gens)
    else:
        d_n = alt_boundary_matrix(basis_n, AltBasis(Z, n - 1))
    d_next = alt_boundary_matrix(AltBasis(Z, n + 1), basis_n)
    return homology_pair(d_n, d_next)


def alternating_homology_kernel(Z: MultiplePointComplex, n: int) -> HomologyGroup:
    """Homology of the alternating subcomplex cut out inside the raw chains.

    Works for W^k as well as D^k; this is the independent route used to
    compare the two models of alternating homology.
    """
    if n < 0:
        raise DegreeOutOfRange(f"degree {n} < 0")
    if n > Z.dim:
        return HomologyGroup(0)
    A_n = alternating_kernel(Z, n)
    if n == 0:
        d_n = IntMatrix(0, A_n.cols)
    else:
        A_prev = alternating_kernel(Z, n - 1)
        d_n = _restrict(boundary_matrix(Z.complex, n), A_n, A_prev)
    if n + 1 <= Z.dim:
        A_next = alternating_kernel(Z, n + 1)
        d_next = _restrict(boundary_matrix(Z.complex, n + 1), A_next, A_n)
    else:
        d_next = IntMatrix(A_n.cols, 0)
    return homology_pair(d_n, d_next)
