"""Triangulated fibre products and multiple-point spaces of a simplicial map.

For a finite surjective simplicial map f: X -> Y, the k-fold fibre product
W^k carries a triangulation whose top simplices are products of k ordered
lifts of a common Y-simplex; D^k is the sub-triangulation coming from
pairwise distinct lifts.  Both come with component-forgetting projections,
the induced map down to Y, and the symmetric-group action permuting slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct, permutations

from .complexes import (
    Chain,
    SimplicialComplex,
    SimplicialMap,
    build_complex,
    face_closure,
    sort_sign,
)
from .errors import ComplexMismatch, InvalidIndex, InvalidMultiplicity


def ordered_lifts(f: SimplicialMap, delta) -> list:
    """All ordered lifts of the canonical Y-simplex delta = (w_0 < ... < w_n).

    A lift is the vertex tuple (v_0, ..., v_n) of an X-simplex ordered so that
    f(v_j) = w_j.  Lifts are returned sorted, and correspond one-to-one with
    the X-simplices lying over delta.
    """
    delta = tuple(delta)
    n = len(delta) - 1
    lifts = []
    for s in f.source.simplices(n):
        images = tuple(f.vertex_map[v] for v in s)
        if tuple(sorted(images)) == delta and len(set(images)) == n + 1:
            pos = {w: j for j, w in enumerate(delta)}
            lift = [None] * (n + 1)
            for v in s:
                lift[pos[f.vertex_map[v]]] = v
            lifts.append(tuple(lift))
    return sorted(lifts)


@dataclass(frozen=True)
class ProductRecord:
    """One product simplex (lift_1 x ... x lift_k)/Y inside W^k or D^k."""

    delta: tuple  # canonical Y-simplex
    lifts: tuple  # k ordered lifts of delta
    listing: tuple  # vertex ids listed in the order of delta's vertices
    canonical: tuple  # the same vertex set, sorted (the chain-basis simplex)
    sign: int  # parity relating listing order to canonical order


class MultiplePointComplex:
    """W^k(f) or D^k(f) with the triangulation induced by f."""

    def __init__(self, kind, k, f, complex_, vertex_tuples, products):
        self.kind = kind
        self.k = k
        self.f = f
        self.complex = complex_
        self.vertex_tuples = tuple(vertex_tuples)
        self.tuple_index = {t: v for v, t in enumerate(self.vertex_tuples)}
        # products keyed by (delta, lifts)
        self.products = products
        self._by_delta: dict = {}
        for rec in products.values():
            self._by_delta.setdefault(rec.delta, []).append(rec)
        for recs in self._by_delta.values():
            recs.sort(key=lambda r: r.lifts)

    # chain-facing delegation
    def simplices(self, dim):
        return self.complex.simplices(dim)

    def n_simplices(self, dim):
        return self.complex.n_simplices(dim)

    def has_simplex(self, s):
        return self.complex.has_simplex(s)

    def index(self, s):
        return self.complex.index(s)

    @property
    def dim(self):
        return self.complex.dim

    def products_over(self, delta) -> list:
        """Product simplices lying over the canonical Y-simplex delta."""
        return self._by_delta.get(tuple(delta), [])

    def is_empty(self) -> bool:
        return self.complex.dim < 0

    def __repr__(self):
        return f"MultiplePointComplex(kind={self.kind}, k={self.k}, {self.complex!r})"


def _build(f: SimplicialMap, k: int, kind: str) -> MultiplePointComplex:
    if k < 1:
        raise InvalidMultiplicity(f"multiplicity {k} < 1")
    if not f.valid:
        raise ComplexMismatch("map must be simplicial, finite-to-one and surjective")

    if k == 1:
        # W^1 = D^1 = X itself; products record the lifts for the splitting
        products = {}
        for delta in f.target.all_simplices():
            for lift in ordered_lifts(f, delta):
                canonical = tuple(sorted(lift))
                products[(delta, (lift,))] = ProductRecord(
                    delta, (lift,), lift, canonical, sort_sign(lift)
                )
        return MultiplePointComplex(
            kind, 1, f, f.source, [(v,) for v in range(f.source.n_vertices)], products
        )

    # enumerate product top simplices as tuples of tuple-vertices
    raw_products = []  # (delta, lifts, listing of vertex tuples)
    for delta in f.target.all_simplices():
        lifts = ordered_lifts(f, delta)
        if kind == "D":
            combos = [c for c in iproduct(lifts, repeat=k) if len(set(c)) == k]
        else:
            combos = list(iproduct(lifts, repeat=k))
        for combo in combos:
            listing = tuple(
                tuple(combo[ell][j] for ell in range(k)) for j in range(len(delta))
            )
            raw_products.append((delta, combo, listing))

    vertex_set = set()
    for _, _, listing in raw_products:
        vertex_set.update(listing)
    vertex_tuples = sorted(vertex_set)
    tuple_index = {t: v for v, t in enumerate(vertex_tuples)}

    tops = []
    for _, _, listing in raw_products:
        tops.append(tuple(tuple_index[t] for t in listing))
    closed = face_closure(tops) if tops else set()
    by_dim: dict = {}
    for s in closed:
        by_dim.setdefault(len(s) - 1, []).append(s)
    complex_ = SimplicialComplex(len(vertex_tuples), by_dim, labels=vertex_tuples)

    products = {}
    for delta, combo, listing in raw_products:
        ids = tuple(tuple_index[t] for t in listing)
        products[(delta, combo)] = ProductRecord(
            delta, combo, ids, tuple(sorted(ids)), sort_sign(ids)
        )
    return MultiplePointComplex(kind, k, f, complex_, vertex_tuples, products)


class Tower:
    """Cache of the W^k / D^k complexes of one simplicial map."""

    def __init__(self, f: SimplicialMap):
        if not f.valid:
            raise ComplexMismatch("map must be simplicial, finite-to-one and surjective")
        self.f = f
        self._cache: dict = {}
        self._k_max = None

    def W(self, k: int) -> MultiplePointComplex:
        return self._get("W", k)

    def D(self, k: int) -> MultiplePointComplex:
        return self._get("D", k)

    def _get(self, kind, k):
        key = (kind, k)
        if key not in self._cache:
            mpc = _build(self.f, k, kind)
            mpc.tower = self
            self._cache[key] = mpc
        return self._cache[key]

    def k_max(self) -> int:
        """Largest k with D^k nonempty: the maximal lift count of a Y-simplex."""
        if self._k_max is None:
            self._k_max = max(
                len(ordered_lifts(self.f, delta))
                for delta in self.f.target.all_simplices()
            )
        return self._k_max


def build_W(f: SimplicialMap, k: int) -> MultiplePointComplex:
    return Tower(f).W(k)


def build_D(f: SimplicialMap, k: int) -> MultiplePointComplex:
    return Tower(f).D(k)


def projection_eps(Z: MultiplePointComplex, i: int) -> SimplicialMap:
    """The simplicial projection forgetting the i-th slot (1-based)."""
    k = Z.k
    if not 1 <= i <= k:
        raise InvalidIndex(f"slot {i} outside 1..{k}")
    if k == 1:
        return Z.f  # the convention epsilon^1 = f
    tower = Z.tower
    if k == 2:
        target_complex = Z.f.source
        target_index = None
    else:
        target = tower.W(k - 1) if Z.kind == "W" else tower.D(k - 1)
        target_complex = target.complex
        target_index = target.tuple_index
    vmap = {}
    for v, t in enumerate(Z.vertex_tuples):
        dropped = t[: i - 1] + t[i:]
        if k == 2:
            vmap[v] = dropped[0]
        else:
            vmap[v] = target_index[dropped]
    return SimplicialMap(Z.complex, target_complex, vmap)


def fk_map(Z: MultiplePointComplex) -> SimplicialMap:
    """The induced map down to Y: apply f to any slot (all slots agree)."""
    f = Z.f
    if Z.k == 1:
        return f
    vmap = {}
    for v, t in enumerate(Z.vertex_tuples):
        images = {f.vertex_map[x] for x in t}
        assert len(images) == 1, "slots disagree under f: not a fibre product vertex"
        vmap[v] = images.pop()
    return SimplicialMap(Z.complex, f.target, vmap)


@dataclass(frozen=True)
class SkElement:
    """Element of the symmetric group on the k slots, with its sign."""

    perm: tuple  # perm[i] = sigma(i), 0-based

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise InvalidIndex(f"not a permutation: {self.perm}")

    @property
    def k(self) -> int:
        return len(self.perm)

    @property
    def sign(self) -> int:
        return sort_sign(self.perm)

    def inverse(self) -> "SkElement":
        inv = [0] * self.k
        for i, j in enumerate(self.perm):
            inv[j] = i
        return SkElement(tuple(inv))

    def compose(self, other: "SkElement") -> "SkElement":
        """self after other."""
        return SkElement(tuple(self.perm[other.perm[i]] for i in range(self.k)))

    def apply_tuple(self, t: tuple) -> tuple:
        """Left action on slot tuples: slot i of the result is slot sigma^-1(i)."""
        inv = self.inverse().perm
        return tuple(t[inv[i]] for i in range(self.k))

    @staticmethod
    def identity(k: int) -> "SkElement":
        return SkElement(tuple(range(k)))

    @staticmethod
    def transposition(k: int, i: int, j: int) -> "SkElement":
        p = list(range(k))
        p[i], p[j] = p[j], p[i]
        return SkElement(tuple(p))

    @staticmethod
    def all(k: int):
        return [SkElement(p) for p in permutations(range(k))]


def bar_sigma(sigma: SkElement, j: int, k: int) -> SkElement:
    """The element of S_k fixing slot j (1-based) that shadows sigma in S_{k-1},
    so that permuting slots commutes with forgetting slot j."""
    j0 = j - 1

    def d(i):
        return i if i < j0 else i + 1

    perm = []
    for i in range(k):
        if i < j0:
            perm.append(d(sigma.perm[i]))
        elif i == j0:
            perm.append(j0)
        else:
            perm.append(d(sigma.perm[i - 1]))
    return SkElement(tuple(perm))


def sk_vertex_map(Z: MultiplePointComplex, sigma: SkElement) -> dict:
    if sigma.k != Z.k:
        raise InvalidIndex(f"permutation degree {sigma.k} != multiplicity {Z.k}")
    vmap = {}
    for v, t in enumerate(Z.vertex_tuples):
        image = sigma.apply_tuple(t)
        assert image in Z.tuple_index, "slot permutation left the complex"
        vmap[v] = Z.tuple_index[image]
    return vmap


def sk_act(sigma: SkElement, c: Chain, Z: MultiplePointComplex) -> Chain:
    """Pushforward of a chain along the slot permutation sigma."""
    vmap = sk_vertex_map(Z, sigma)
    terms: dict = {}
    for s, m in c.terms.items():
        image = tuple(vmap[v] for v in s)
        sign = sort_sign(image)
        assert sign != 0
        key = tuple(sorted(image))
        terms[key] = terms.get(key, 0) + sign * m
    return Chain(c.complex, c.degree, terms)


def sk_matrix(Z: MultiplePointComplex, sigma: SkElement, n: int):
    """Matrix of the sigma-action on degree-n chains in the canonical basis."""
    from .intlinalg import IntMatrix

    vmap = sk_vertex_map(Z, sigma)
    basis = Z.simplices(n)
    M = IntMatrix(len(basis), len(basis))
    for jcol, s in enumerate(basis):
        image = tuple(vmap[v] for v in s)
        sign = sort_sign(image)
        M.data[Z.index(tuple(sorted(image)))][jcol] += sign
    return M
