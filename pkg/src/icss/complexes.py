"""Abstract simplicial complexes, oriented chains, boundary maps and
validated simplicial maps.

Vertices are dense integer indices; the canonical representative of a
geometric simplex is its strictly increasing vertex tuple.  Reorderings are
identified up to permutation sign, so each geometric simplex contributes one
oriented generator to the chain groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ComplexMismatch, DegreeOutOfRange, InvalidSimplex
from .intlinalg import HomologyGroup, IntMatrix, homology_pair

Simplex = tuple  # strictly increasing tuple of vertex ids


def sort_sign(seq) -> int:
    """Parity (+1/-1) of the permutation sorting seq; 0 if entries repeat."""
    n = len(seq)
    if len(set(seq)) != n:
        return 0
    inv = 0
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


class SimplicialComplex:
    """Finite abstract simplicial complex, closed under faces.

    ``labels[v]`` is an arbitrary hashable naming vertex ``v``; plain string
    names for input complexes, k-tuples of vertex ids for fibre products.
    Immutable after construction.
    """

    def __init__(self, n_vertices: int, simplices_by_dim, labels=None):
        self.n_vertices = n_vertices
        self.labels = tuple(labels) if labels is not None else tuple(range(n_vertices))
        if len(self.labels) != n_vertices:
            raise ValueError("label count mismatch")
        self.label_index = {lab: v for v, lab in enumerate(self.labels)}
        if len(self.label_index) != n_vertices:
            raise ValueError("duplicate labels")
        # per-dimension sorted tuple list, lexicographic order fixes the bases
        self._simplices = {
            d: tuple(sorted(set(map(tuple, ss)))) for d, ss in simplices_by_dim.items() if ss
        }
        self._index = {
            d: {s: i for i, s in enumerate(ss)} for d, ss in self._simplices.items()
        }
        self.dim = max(self._simplices) if self._simplices else -1

    def simplices(self, dim: int) -> tuple:
        return self._simplices.get(dim, ())

    def all_simplices(self):
        for d in sorted(self._simplices):
            yield from self._simplices[d]

    def n_simplices(self, dim: int) -> int:
        return len(self._simplices.get(dim, ()))

    def has_simplex(self, s) -> bool:
        return tuple(s) in self._index.get(len(s) - 1, {})

    def index(self, s) -> int:
        return self._index[len(s) - 1][tuple(s)]

    def maximal_simplices(self) -> list:
        out = []
        for d in sorted(self._simplices, reverse=True):
            for s in self._simplices[d]:
                if not any(set(s) < set(t) for t in out):
                    out.append(s)
        return sorted(out, key=lambda s: (len(s), s))

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.labels == other.labels
            and self._simplices == other._simplices
        )

    def __hash__(self):
        return hash((self.labels, tuple(sorted(self._simplices.items()))))

    def __repr__(self):
        counts = [self.n_simplices(d) for d in range(self.dim + 1)]
        return f"SimplicialComplex(dim={self.dim}, counts={counts})"


def face_closure(simplices) -> set:
    closed = set()
    for s in simplices:
        s = tuple(sorted(s))
        for d in range(1, len(s) + 1):
            closed.update(combinations(s, d))
    return closed


def build_complex(maximal_simplices, labels=None) -> SimplicialComplex:
    """Face closure of the given maximal simplices (vertex-id tuples).

    With ``labels`` given, the tuples may use labels instead of indices and
    the vertex order is the label order.
    """
    if labels is not None:
        lab_ix = {lab: i for i, lab in enumerate(labels)}
        maximal_simplices = [
            tuple(lab_ix[v] for v in s) for s in maximal_simplices
        ]
        n_vertices = len(labels)
    else:
        n_vertices = 1 + max((max(s) for s in maximal_simplices if s), default=-1)
    for s in maximal_simplices:
        if not s:
            raise InvalidSimplex("empty simplex")
        if len(set(s)) != len(s):
            raise InvalidSimplex(f"repeated vertex in simplex {s!r}")
    closed = face_closure(maximal_simplices)
    by_dim: dict = {}
    for s in closed:
        by_dim.setdefault(len(s) - 1, []).append(s)
    return SimplicialComplex(n_vertices, by_dim, labels=labels)


class Chain:
    """Sparse integer combination of canonical simplices in a fixed degree."""

    __slots__ = ("complex", "degree", "terms")

    def __init__(self, complex_, degree: int, terms=None):
        self.complex = complex_
        self.degree = degree
        self.terms = {}
        if terms:
            for s, m in terms.items():
                s = tuple(s)
                if m == 0:
                    continue
                if len(s) - 1 != degree:
                    raise InvalidSimplex(f"simplex {s!r} has wrong dimension")
                if not complex_.has_simplex(s):
                    raise ComplexMismatch(f"simplex {s!r} not in complex")
                self.terms[s] = m

    @staticmethod
    def zero(complex_, degree: int) -> "Chain":
        return Chain(complex_, degree)

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree or (
            self.complex is not other.complex and self.complex != other.complex
        ):
            raise ComplexMismatch("chain addition across complexes/degrees")
        terms = dict(self.terms)
        for s, m in other.terms.items():
            terms[s] = terms.get(s, 0) + m
        return Chain(self.complex, self.degree, terms)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + other.scaled(-1)

    def scaled(self, a: int) -> "Chain":
        return Chain(self.complex, self.degree, {s: a * m for s, m in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def norm(self) -> int:
        return sum(abs(m) for m in self.terms.values())

    def to_vector(self) -> list:
        basis = self.complex.simplices(self.degree)
        v = [0] * len(basis)
        for s, m in self.terms.items():
            v[self.complex.index(s)] = m
        return v

    @staticmethod
    def from_vector(complex_, degree: int, vec) -> "Chain":
        basis = complex_.simplices(degree)
        return Chain(complex_, degree, {s: m for s, m in zip(basis, vec) if m})

    def __repr__(self):
        body = " + ".join(f"{m}*{s}" for s, m in sorted(self.terms.items()))
        return f"Chain({body or '0'})"


def boundary_chain(c: Chain) -> Chain:
    terms: dict = {}
    for s, m in c.terms.items():
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            if not face:
                continue
            sign = -1 if i % 2 else 1
            terms[face] = terms.get(face, 0) + sign * m
    return Chain(c.complex, c.degree - 1, terms)


def boundary_matrix(X, n: int) -> IntMatrix:
    """Matrix of the alternating-sum face map C_n -> C_{n-1} in canonical bases.

    n = 0 returns the 0 x (#vertices) matrix.
    """
    if n < 0 or n > X.dim:
        raise DegreeOutOfRange(f"degree {n} outside 0..{X.dim}")
    cols = X.simplices(n)
    rows = X.simplices(n - 1) if n > 0 else ()
    M = IntMatrix(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            if face:
                M.data[X.index(face)][j] += -1 if i % 2 else 1
    return M


@dataclass(frozen=True)
class MapReport:
    simplicial: bool
    finite_to_one: bool
    surjective: bool
    failures: tuple = ()

    @property
    def valid(self) -> bool:
        return self.simplicial and self.finite_to_one and self.surjective


def validate_map(vertex_map, X: SimplicialComplex, Y: SimplicialComplex) -> MapReport:
    """Check that vertex_map induces a finite-to-one surjective simplicial map."""
    failures = []
    simplicial = True
    finite_to_one = True
    for s in X.all_simplices():
        image = tuple(sorted(set(vertex_map[v] for v in s)))
        if len(image) != len(s):
            finite_to_one = False
            failures.append(("collapsed", s))
        if not Y.has_simplex(image):
            simplicial = False
            failures.append(("not-a-simplex", s))
    hit = set()
    for s in X.all_simplices():
        image = tuple(sorted(set(vertex_map[v] for v in s)))
        if Y.has_simplex(image):
            hit.add(image)
    surjective = all(s in hit for s in Y.all_simplices())
    if not surjective:
        failures.extend(("missed", s) for s in Y.all_simplices() if s not in hit)
    return MapReport(simplicial, finite_to_one, surjective, tuple(failures))


class SimplicialMap:
    """Vertex assignment X -> Y inducing a simplicial map.

    Construction only requires simpliciality; finite-to-one and surjectivity
    are reported by :func:`validate_map` (the fibre-product constructions
    insist on a fully valid map, the projections need not be surjective).
    """

    __slots__ = ("source", "target", "vertex_map", "report")

    def __init__(self, source, target, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        missing = [v for v in range(source.n_vertices) if v not in self.vertex_map]
        if missing:
            raise ComplexMismatch(f"vertex map not total: missing {missing}")
        self.report = validate_map(self.vertex_map, source, target)
        if not self.report.simplicial:
            raise InvalidSimplex("vertex map is not simplicial")

    @property
    def valid(self) -> bool:
        return self.report.valid

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def __repr__(self):
        return f"SimplicialMap({self.source!r} -> {self.target!r})"


def pushforward_simplex(vertex_map, s):
    """(sign, image) of a canonical simplex; sign 0 if the image degenerates."""
    image = tuple(vertex_map[v] for v in s)
    sign = sort_sign(image)
    return sign, tuple(sorted(image))


def pushforward(f: SimplicialMap, c: Chain) -> Chain:
    """Chain-level pushforward with permutation-sign bookkeeping."""
    if c.complex is not f.source and c.complex != f.source:
        raise ComplexMismatch("chain does not live on the source complex")
    terms: dict = {}
    for s, m in c.terms.items():
        sign, image = pushforward_simplex(f.vertex_map, s)
        if sign:
            terms[image] = terms.get(image, 0) + sign * m
    return Chain(f.target, c.degree, terms)


def pushforward_matrix(f: SimplicialMap, n: int) -> IntMatrix:
    """Matrix of the degree-n pushforward in the canonical bases."""
    src = f.source.simplices(n)
    tgt = f.target.simplices(n)
    M = IntMatrix(len(tgt), len(src))
    for j, s in enumerate(src):
        sign, image = pushforward_simplex(f.vertex_map, s)
        if sign:
            M.data[f.target.index(image)][j] += sign
    return M


def homology_of_complex(X: SimplicialComplex, n: int) -> HomologyGroup:
    """H_n(X) = ker d_n / im d_{n+1} in invariant-factor form."""
    if n < 0 or n > X.dim:
        raise DegreeOutOfRange(f"degree {n} outside 0..{X.dim}")
    d_n = boundary_matrix(X, n)
    if n + 1 <= X.dim:
        d_next = boundary_matrix(X, n + 1)
    else:
        d_next = IntMatrix(X.n_simplices(n), 0)
    return homology_pair(d_n, d_next)
