"""Exact linear algebra over the integers.

Everything downstream (boundary maps, alternation conditions, spectral
sequence pages) reduces to Smith/Hermite normal forms, integer kernels,
integral solves and subgroup quotients, all computed here with Python's
arbitrary-precision ints.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotAComplex, NotASubgroup


class IntMatrix:
    """Dense integer matrix with explicit shape (so 0xN and Nx0 make sense)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("shape mismatch")
            self.data = [list(r) for r in data]

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        m = IntMatrix(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols)

    @staticmethod
    def from_rows(rows_list, cols: int | None = None) -> "IntMatrix":
        rows_list = [list(r) for r in rows_list]
        if cols is None:
            if not rows_list:
                raise ValueError("cols required for empty matrix")
            cols = len(rows_list[0])
        return IntMatrix(len(rows_list), cols, rows_list)

    @staticmethod
    def from_columns(cols_list, rows: int | None = None) -> "IntMatrix":
        cols_list = [list(c) for c in cols_list]
        if rows is None:
            if not cols_list:
                raise ValueError("rows required for empty matrix")
            rows = len(cols_list[0])
        m = IntMatrix(rows, len(cols_list))
        for j, col in enumerate(cols_list):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i in range(rows):
                m.data[i][j] = col[i]
        return m

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, self.data)

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        t = IntMatrix(self.cols, self.rows)
        for i in range(self.rows):
            row = self.data[i]
            for j in range(self.cols):
                t.data[j][i] = row[j]
        return t

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        out = IntMatrix(self.rows, other.cols)
        bt = other.transpose().data
        for i in range(self.rows):
            arow = self.data[i]
            orow = out.data[i]
            for j in range(other.cols):
                brow = bt[j]
                orow[j] = sum(arow[k] * brow[k] for k in range(self.cols))
        return out

    def mul_vec(self, v) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(row[k] * v[k] for k in range(self.cols)) for row in self.data]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            [self.data[i] + other.data[i] for i in range(self.rows)],
        )

    def scaled(self, a: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[a * x for x in r] for r in self.data])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows,
            self.cols,
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scaled(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


def _find_pivot(S, t: int, m: int, n: int):
    """Smallest-|entry| nonzero pivot in the trailing block, row-major tiebreak."""
    best = None
    for i in range(t, m):
        row = S[i]
        for j in range(t, n):
            v = row[j]
            if v:
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        return best
    return best


def smith_normal_form(M: IntMatrix):
    """Return (U, S, V) with U @ M @ V == S, U and V unimodular, S diagonal
    with nonnegative entries in a divisibility chain d1 | d2 | ...
    """
    m, n = M.rows, M.cols
    S = [list(r) for r in M.data]
    U = IntMatrix.identity(m).data
    V = IntMatrix.identity(n).data

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_sub(i, j, q):
        # row_i -= q * row_j
        Si, Sj = S[i], S[j]
        Ui, Uj = U[i], U[j]
        for c in range(n):
            Si[c] -= q * Sj[c]
        for c in range(m):
            Ui[c] -= q * Uj[c]

    def col_sub(i, j, q):
        # col_i -= q * col_j
        for r in S:
            r[i] -= q * r[j]
        for r in V:
            r[i] -= q * r[j]

    def neg_row(i):
        S[i] = [-x for x in S[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while True:
        piv = _find_pivot(S, t, m, n)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if S[t][t] < 0:
            neg_row(t)
        while True:
            # clear column t
            restart = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    row_sub(i, t, q)
                    if S[i][t]:
                        swap_rows(t, i)
                        if S[t][t] < 0:
                            neg_row(t)
                        restart = True
                        break
            if restart:
                continue
            # clear row t
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    col_sub(j, t, q)
                    if S[t][j]:
                        # gcd step: the remainder becomes the new, smaller pivot
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # divisibility: pivot must divide the whole trailing block
            p = S[t][t]
            bad = None
            for i in range(t + 1, m):
                row = S[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_sub(t, bad, -1)  # row_t += row_bad
        t += 1

    return (
        IntMatrix(m, m, U),
        IntMatrix(m, n, S),
        IntMatrix(n, n, V),
    )


def invariant_factors(M: IntMatrix) -> list:
    """Nonzero diagonal entries of the Smith form of M."""
    _, S, _ = smith_normal_form(M)
    out = []
    for t in range(min(M.rows, M.cols)):
        if S.data[t][t]:
            out.append(S.data[t][t])
    return out


def column_echelon(M: IntMatrix, reduce: bool = False):
    """Integer column echelon form.

    Returns (H, T, pivots) with H == M @ T, T unimodular, and pivots a list of
    (row, col) pairs with strictly increasing rows and cols 0,1,2,...  In each
    pivot row the entries right of the pivot are zero and the pivot is positive.
    With reduce=True the entries left of each pivot are reduced into [0, pivot)
    (column-style Hermite normal form, canonical for a given column span).
    """
    m, n = M.rows, M.cols
    H = [list(r) for r in M.data]
    T = IntMatrix.identity(n).data

    def swap_cols(i, j):
        for r in H:
            r[i], r[j] = r[j], r[i]
        for r in T:
            r[i], r[j] = r[j], r[i]

    def col_sub(i, j, q):
        for r in H:
            r[i] -= q * r[j]
        for r in T:
            r[i] -= q * r[j]

    def neg_col(i):
        for r in H:
            r[i] = -r[i]
        for r in T:
            r[i] = -r[i]

    pivots = []
    c = 0
    for r in range(m):
        if c >= n:
            break
        # gcd the active columns into column c using row r
        while True:
            best = None
            for j in range(c, n):
                v = H[r][j]
                if v:
                    a = abs(v)
                    if best is None or a < best[0]:
                        best = (a, j)
            if best is None:
                break
            if best[1] != c:
                swap_cols(c, best[1])
            if H[r][c] < 0:
                neg_col(c)
            done = True
            for j in range(c + 1, n):
                if H[r][j]:
                    q = H[r][j] // H[r][c]
                    col_sub(j, c, q)
                    if H[r][j]:
                        done = False
            if done:
                break
        if c < n and H[r][c]:
            pivots.append((r, c))
            c += 1

    if reduce:
        for r, c in pivots:
            p = H[r][c]
            for j in range(c):
                q = H[r][j] // p
                if q:
                    col_sub(j, c, q)

    return IntMatrix(m, n, H), IntMatrix(n, n, T), pivots


def rank(M: IntMatrix) -> int:
    return len(column_echelon(M)[2])


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns generate the integer kernel of M (a saturated lattice basis)."""
    H, T, pivots = column_echelon(M)
    pivot_cols = {c for _, c in pivots}
    free = [j for j in range(M.cols) if j not in pivot_cols]
    return IntMatrix.from_columns([T.column(j) for j in free], rows=M.cols)


def solve(M: IntMatrix, target) -> list | None:
    """An integral x with M @ x == target, or None if no integral solution."""
    if len(target) != M.rows:
        raise ValueError("target length mismatch")
    H, T, pivots = column_echelon(M)
    resid = list(target)
    y = [0] * M.cols
    for r, c in pivots:
        if resid[r] % H.data[r][c]:
            return None
        q = resid[r] // H.data[r][c]
        y[c] = q
        if q:
            for i in range(M.rows):
                resid[i] -= q * H.data[i][c]
    if any(resid):
        return None
    return T.mul_vec(y)


def preimage_solve(M: IntMatrix, target):
    """Alias for :func:`solve`; None encodes the no-solution outcome."""
    return solve(M, target)


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group in invariant-factor form."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def group_from_presentation(ambient_rank: int, relation_factors) -> HomologyGroup:
    """Z^ambient_rank modulo a subgroup with the given invariant factors."""
    tor = tuple(d for d in relation_factors if d >= 2)
    return HomologyGroup(ambient_rank - len(relation_factors), tor)


class Subgroup:
    """Subgroup of Z^ambient_rank spanned by integer generator columns.

    Canonicalized by reduced column Hermite form, so two subgroups are equal
    iff their canonical bases coincide syntactically.
    """

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, generators: IntMatrix | list):
        if isinstance(generators, IntMatrix):
            gens = generators
        else:
            gens = IntMatrix.from_columns(generators, rows=ambient_rank)
        if gens.rows != ambient_rank:
            raise ValueError("generator length mismatch")
        H, _, pivots = column_echelon(gens, reduce=True)
        self.ambient_rank = ambient_rank
        self.basis = IntMatrix.from_columns(
            [H.column(c) for _, c in pivots], rows=ambient_rank
        )

    @staticmethod
    def zero(ambient_rank: int) -> "Subgroup":
        return Subgroup(ambient_rank, IntMatrix(ambient_rank, 0))

    @staticmethod
    def full(ambient_rank: int) -> "Subgroup":
        return Subgroup(ambient_rank, IntMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def contains(self, vec) -> bool:
        return solve(self.basis, vec) is not None

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return all(self.contains(other.basis.column(j)) for j in range(other.basis.cols))

    def sum(self, other: "Subgroup") -> "Subgroup":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient mismatch")
        return Subgroup(self.ambient_rank, self.basis.hstack(other.basis))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.ambient_rank == other.ambient_rank
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"Subgroup(rank {self.rank} of Z^{self.ambient_rank})"


def subgroup_quotient(A: Subgroup, B: Subgroup) -> HomologyGroup:
    """Invariant factors of A / B; raises NotASubgroup unless B is inside A."""
    if A.ambient_rank != B.ambient_rank:
        raise ValueError("ambient mismatch")
    cols = []
    for j in range(B.basis.cols):
        y = solve(A.basis, B.basis.column(j))
        if y is None:
            raise NotASubgroup("B is not contained in A")
        cols.append(y)
    rel = IntMatrix.from_columns(cols, rows=A.basis.cols)
    return group_from_presentation(A.basis.cols, invariant_factors(rel))


def homology_pair(d_n: IntMatrix, d_next: IntMatrix) -> HomologyGroup:
    """Invariant factors of ker(d_n) / im(d_next), given d_n @ d_next == 0."""
    if d_n.cols != d_next.rows:
        raise ValueError("shape mismatch: d_n.cols must equal d_next.rows")
    if not (d_n @ d_next).is_zero():
        raise NotAComplex("d_n @ d_next != 0")
    K = kernel_basis(d_n)
    cols = []
    for j in range(d_next.cols):
        y = solve(K, d_next.column(j))
        if y is None:  # cannot happen for a genuine complex with saturated kernel
            raise NotAComplex("boundary not inside the kernel lattice")
        cols.append(y)
    rel = IntMatrix.from_columns(cols, rows=K.cols)
    return group_from_presentation(K.cols, invariant_factors(rel))


def preimage_subgroup(M: IntMatrix, S: Subgroup) -> IntMatrix:
    """Columns generating {x : M @ x lies in S}."""
    if M.rows != S.ambient_rank:
        raise ValueError("ambient mismatch")
    stacked = M.hstack(S.basis.scaled(-1))
    K = kernel_basis(stacked)
    return IntMatrix.from_rows(K.data[: M.cols], K.cols) if M.cols else IntMatrix(0, K.cols)
