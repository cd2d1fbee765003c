"""Exact integer and modular linear algebra.

Everything here works on Python ints, so intermediate pivots never
overflow. Matrices are small (desk scale) and dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Dense integer matrix stored row-major.

    The explicit shape matters for degenerate matrices: a 0x3 matrix and a
    0x0 matrix both have no entries.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: tuple):
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)
        self._hash = None

    @classmethod
    def _new(cls, rows: int, cols: int, entries: tuple) -> "IntMatrix":
        m = object.__new__(cls)
        m.rows, m.cols, m.entries, m._hash = rows, cols, entries, None
        return m

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(int(v) for v in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if r == c else 0 for r in range(n) for c in range(n)))

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[r * c:(r + 1) * c]) for r in range(self.rows)]

    def column(self, c: int) -> list:
        return [self.entries[r * self.cols + c] for r in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return IntMatrix._new(self.rows, other.cols, _matmul_flat(self.entries, other.entries,
                                                                   self.rows, self.cols, other.cols))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.entries[r * self.cols + c]
                               for c in range(self.cols) for r in range(self.rows)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, {self.to_rows()})"


def _matmul_flat(a, b, n, k, m):
    out = [0] * (n * m)
    for i in range(n):
        base = i * k
        orow = i * m
        for t in range(k):
            x = a[base + t]
            if x:
                bt = t * m
                for j in range(m):
                    y = b[bt + j]
                    if y:
                        out[orow + j] += x * y
    return tuple(out)


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _as_rows(A) -> tuple:
    """Return (rows, nrows, ncols) for an IntMatrix or a list of rows."""
    if isinstance(A, IntMatrix):
        return A.to_rows(), A.rows, A.cols
    rows = [list(map(int, r)) for r in A]
    return rows, len(rows), (len(rows[0]) if rows else 0)


@dataclass(frozen=True)
class SmithDecomposition:
    """U·A·V = D with D diagonal and diag[k] | diag[k+1] (zeros last)."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diag: tuple
    U_inv: Optional[IntMatrix] = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def smith(A, *, with_inverse: bool = False) -> SmithDecomposition:
    """Smith normal form over the integers.

    Pivots on the smallest nonzero absolute value, scanning row-major, so U
    and V are reproducible. With ``with_inverse`` the inverse of U is also
    tracked (needed to read off lattice bases).
    """
    D, m, n = _as_rows(A)
    U = _identity(m)
    V = _identity(n)
    Ui = _identity(m) if with_inverse else None

    def swap_rows(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if not q:
            return
        rd, rs = D[dst], D[src]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        ud, us = U[dst], U[src]
        for c in range(m):
            if us[c]:
                ud[c] += q * us[c]
        if Ui is not None:
            # inverse update: col_src -= q * col_dst
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        if not q:
            return
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            # any leftover in the pivot row/column is smaller than |p|
            nxt = None
            for i in range(t + 1, m):
                v = D[i][t]
                if v and (nxt is None or abs(v) < nxt[0]):
                    nxt = (abs(v), i, t)
            for j in range(t + 1, n):
                v = D[t][j]
                if v and (nxt is None or abs(v) < nxt[0]):
                    nxt = (abs(v), t, j)
            if nxt is not None:
                swap_rows(t, nxt[1])
                swap_cols(t, nxt[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
            if Ui is not None:
                for row in Ui:
                    row[t] = -row[t]
        t += 1

    diag = tuple(D[k][k] for k in range(min(m, n)))
    return SmithDecomposition(
        U=IntMatrix.from_rows(U, m),
        D=IntMatrix.from_rows(D, n),
        V=IntMatrix.from_rows(V, n),
        diag=diag,
        U_inv=IntMatrix.from_rows(Ui, m) if Ui is not None else None,
    )


def _check_modulus(N: int) -> None:
    if N < 2:
        raise ValueError(f"modulus must be >= 2, got {N}")


def solve_mixed(A, b: Sequence[int], row_moduli: Sequence[int],
                col_moduli: Optional[Sequence[int]] = None) -> Optional[list]:
    """Solve A·x ≡ b where row j is read modulo ``row_moduli[j]``.

    Returns an integer vector (reduced modulo ``col_moduli`` when given) or
    None when the system has no solution.
    """
    rows, m, n = _as_rows(A)
    if len(b) != m or len(row_moduli) != m:
        raise ValueError("dimension mismatch")
    # [A | diag(r)] (x; y) = b over the integers
    M = [rows[j] + [row_moduli[j] if k == j else 0 for k in range(m)] for j in range(m)]
    if m == 0:
        return [0] * n
    S = smith(IntMatrix.from_rows(M, n + m))
    Ub = [sum(S.U[r, c] * b[c] for c in range(m)) for r in range(m)]
    w = [0] * (n + m)
    for k in range(m):
        d = S.diag[k] if k < len(S.diag) else 0
        if d == 0:
            if Ub[k] != 0:
                return None
        else:
            if Ub[k] % d:
                return None
            w[k] = Ub[k] // d
    x = [sum(S.V[r, c] * w[c] for c in range(n + m)) for r in range(n)]
    if col_moduli is not None:
        x = [v % q for v, q in zip(x, col_moduli)]
    return x


def solve_mod(A, b: Sequence[int], N: int) -> Optional[list]:
    """Solve A·x ≡ b (mod N); None means no solution exists."""
    _check_modulus(N)
    rows, m, n = _as_rows(A)
    x = solve_mixed(A, b, [N] * m)
    return None if x is None else [v % N for v in x]


def integer_kernel(A) -> list:
    """A ℤ-basis (list of column vectors) of {x ∈ ℤ^n : A·x = 0}."""
    rows, m, n = _as_rows(A)
    if n == 0:
        return []
    S = smith(IntMatrix.from_rows(rows, n))
    r = S.rank
    return [S.V.column(k) for k in range(r, n)]


class Subquotient:
    """The finite group L/S for integer lattices S ⊆ L ⊆ ℤ^n.

    L is spanned by ``gens`` and S by ``relations`` (both lists of vectors);
    S must have full rank n so the quotient is finite. The result is in
    invariant-factor form: ``orders`` is a divisibility chain with unit
    factors dropped, ``generators[k]`` (a vector in ℤ^n) generates the k-th
    cyclic summand.
    """

    def __init__(self, n: int, relations: Iterable[Sequence[int]],
                 gens: Optional[Iterable[Sequence[int]]] = None):
        self.n = n
        relations = [list(r) for r in relations]
        if gens is None:
            self._U = None
            self._d = None
            basis = None
            rel = relations
        else:
            gens = [list(g) for g in gens]
            G = [[g[r] for g in gens] for r in range(n)]
            S = smith(IntMatrix.from_rows(G, len(gens)), with_inverse=True)
            d = list(S.diag[:n])
            if len(d) < n or any(v == 0 for v in d):
                raise ValueError("generating set does not span a full-rank lattice")
            self._U = S.U
            self._d = d
            Ui = S.U_inv
            basis = [[Ui[r, k] * d[k] for k in range(n)] for r in range(n)]  # rows
            rel = [self._to_basis(v) for v in relations]
        R = [[v[r] for v in rel] for r in range(n)]
        S2 = smith(IntMatrix.from_rows(R, len(rel)), with_inverse=True)
        diag = list(S2.diag) + [0] * (n - len(S2.diag))
        if any(v == 0 for v in diag[:n]):
            raise ValueError("relations do not have full rank; quotient is infinite")
        keep = [k for k in range(n) if diag[k] != 1]
        self._U2 = S2.U
        self._keep = keep
        self.orders = tuple(diag[k] for k in keep)
        U2i = S2.U_inv
        gens_out = []
        for k in keep:
            col = [U2i[r, k] for r in range(n)]
            if basis is not None:
                col = [sum(basis[r][c] * col[c] for c in range(n)) for r in range(n)]
            gens_out.append([v for v in col])
        self.generators = gens_out

    def _to_basis(self, x):
        U = self._U
        n = self.n
        y = [sum(U[r, c] * x[c] for c in range(n)) for r in range(n)]
        out = []
        for v, d in zip(y, self._d):
            if v % d:
                raise ValueError("vector does not lie in the lattice L")
            out.append(v // d)
        return out

    def coords(self, x: Sequence[int]) -> tuple:
        """Coordinates of the class of x (which must lie in L)."""
        if self._U is not None:
            x = self._to_basis(x)
        U2 = self._U2
        n = self.n
        return tuple(sum(U2[k, c] * x[c] for c in range(n)) % o
                     for k, o in zip(self._keep, self.orders))

    def coordinate_rows(self) -> list:
        """Rows of the integral coordinate matrix; only valid when L = ℤ^n."""
        if self._U is not None:
            raise ValueError("coordinate matrix is integral only for L = ℤ^n")
        return [[self._U2[k, c] for c in range(self.n)] for k in self._keep]


def kernel_lattice_gens(A, moduli_rows: Sequence[int], moduli_cols: Sequence[int]) -> list:
    """Generators of {x ∈ ℤ^n : A·x ∈ ⊕ moduli_rows·ℤ} plus the column relations."""
    rows, m, n = _as_rows(A)
    if len(moduli_rows) != m or len(moduli_cols) != n:
        raise ValueError("dimension mismatch")
    M = [rows[j] + [-moduli_rows[j] if k == j else 0 for k in range(m)] for j in range(m)]
    gens = [v[:n] for v in integer_kernel(IntMatrix.from_rows(M, n + m))]
    gens += [[moduli_cols[k] if r == k else 0 for r in range(n)] for k in range(n)]
    return gens


def kernel_presentation(A, moduli_rows: Sequence[int], moduli_cols: Sequence[int]) -> Subquotient:
    """Kernel of A: ⊕ℤ/moduli_cols → ⊕ℤ/moduli_rows in invariant-factor form."""
    n = len(moduli_cols)
    gens = kernel_lattice_gens(A, moduli_rows, moduli_cols)
    rel = [[moduli_cols[k] if r == k else 0 for r in range(n)] for k in range(n)]
    return Subquotient(n, rel, gens)


def kernel_mod(A, moduli_rows: Sequence[int], moduli_cols: Sequence[int]) -> IntMatrix:
    """Generators (as columns) of the solutions of A·x ≡ 0.

    Here x ranges over ⊕ ℤ/moduli_cols[i] and the j-th equation is read in
    ℤ/moduli_rows[j]. Columns are returned in invariant-factor order, each
    reduced modulo the column moduli; the zero kernel gives a matrix with no
    columns.
    """
    sq = kernel_presentation(A, moduli_rows, moduli_cols)
    n = len(moduli_cols)
    cols = [[g[r] % moduli_cols[r] for r in range(n)] for g in sq.generators]
    return IntMatrix.from_rows([[c[r] for c in cols] for r in range(n)], len(cols))
