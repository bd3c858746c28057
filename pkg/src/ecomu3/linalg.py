"""Exact linear algebra over Z and over prime fields.

Everything here is arbitrary precision: matrix entries are Python ints, so
Smith normal form pivoting can blow coefficients up without ever overflowing.
The sizes that show up in this project (boundary maps of free resolutions,
cochain complexes over a seven-object poset) stay well under a few hundred
rows, so no sparse or probabilistic tricks are used.

Conventions
-----------
A matrix with ``rows`` rows and ``cols`` columns represents a homomorphism
Z^cols -> Z^rows acting on column vectors.  The Smith decomposition follows
``A == U * D * V`` with U, V unimodular, so the integer kernel of A is spanned
by the columns of V^-1 beyond the rank.

>>> A = IntMatrix.from_rows([[2, 0], [0, 3]])
>>> smith_normal_form(A).invariant_factors
[1, 6]
>>> smith_normal_form(IntMatrix.identity(3)).invariant_factors
[1, 1, 1]
>>> smith_normal_form(IntMatrix.from_rows([[1, 1, 1]])).invariant_factors
[1]
"""

from __future__ import annotations

from dataclasses import dataclass


class ShapeMismatch(ValueError):
    """Raised when matrix dimensions do not compose."""


class CompositionNonzero(ValueError):
    """Raised when two maps that should form a complex do not compose to zero."""


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if rows < 0 or cols < 0:
            raise ShapeMismatch("negative dimensions")
        entries = tuple(int(e) for e in entries)
        if len(entries) != rows * cols:
            raise ShapeMismatch(
                f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, data):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ShapeMismatch("ragged rows")
        return cls(rows, cols, [e for r in data for e in r])

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def from_columns(cls, columns, rows=None):
        """Build a matrix whose columns are the given vectors."""
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ShapeMismatch("cannot infer row count of empty column list")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ShapeMismatch("ragged columns")
        return cls(rows, len(columns),
                   [columns[j][i] for i in range(rows) for j in range(len(columns))])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_lists(self):
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ShapeMismatch(f"{self.cols} != {other.rows}")
            n, m, k = self.rows, other.cols, self.cols
            a, b = self.entries, other.entries
            out = [0] * (n * m)
            for i in range(n):
                arow = a[i * k:(i + 1) * k]
                for t in range(k):
                    c = arow[t]
                    if c:
                        brow = b[t * m:(t + 1) * m]
                        base = i * m
                        for j in range(m):
                            out[base + j] += c * brow[j]
            return IntMatrix(n, m, out)
        raise TypeError(other)

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ShapeMismatch(f"{len(vec)} != {self.cols}")
        return [sum(self.entries[i * self.cols + j] * vec[j]
                    for j in range(self.cols)) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         [self.entries[i * self.cols + j]
                          for j in range(self.cols) for i in range(self.rows)])

    def hstack(self, other):
        if self.rows != other.rows:
            raise ShapeMismatch("row counts differ")
        data = []
        for i in range(self.rows):
            data.extend(self.row(i))
            data.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, data)

    def is_zero(self):
        return all(e == 0 for e in self.entries)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "data": self.to_lists()}

    @classmethod
    def from_json(cls, obj):
        m = cls.from_rows(obj["data"]) if obj["data"] else cls.zero(obj["rows"], obj["cols"])
        if (m.rows, m.cols) != (obj["rows"], obj["cols"]):
            raise ShapeMismatch("json shape disagrees with data")
        return m


@dataclass
class SNFDecomposition:
    """A == U * D * V with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix
    invariant_factors: list

    @property
    def rank(self):
        return len(self.invariant_factors)

    def kernel_basis(self):
        """Columns of V^-1 beyond the rank span ker(A) (a saturated sublattice)."""
        r = self.rank
        return [self.Vinv.column(j) for j in range(r, self.Vinv.cols)]


class _Worker:
    """Mutable elimination state: D plus the four unimodular accumulators."""

    def __init__(self, A):
        self.m = A.rows
        self.n = A.cols
        self.D = [A.row(i) for i in range(A.rows)]
        self.U = [[1 if i == j else 0 for j in range(self.m)] for i in range(self.m)]
        self.Uinv = [[1 if i == j else 0 for j in range(self.m)] for i in range(self.m)]
        self.V = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        self.Vinv = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    # Row operations transform D := E * D, so U picks up E^-1 on the right
    # (column ops) and Uinv picks up E on the left (row ops).

    def row_add(self, i, j, c):
        D, U, Uinv = self.D, self.U, self.Uinv
        Dj = D[j]
        Di = D[i]
        for t in range(self.n):
            Di[t] += c * Dj[t]
        for r in range(self.m):
            U[r][j] -= c * U[r][i]
        Uii = Uinv[i]
        Uij = Uinv[j]
        for t in range(self.m):
            Uii[t] += c * Uij[t]

    def row_swap(self, i, j):
        if i == j:
            return
        self.D[i], self.D[j] = self.D[j], self.D[i]
        for r in range(self.m):
            self.U[r][i], self.U[r][j] = self.U[r][j], self.U[r][i]
        self.Uinv[i], self.Uinv[j] = self.Uinv[j], self.Uinv[i]

    def row_negate(self, i):
        Di = self.D[i]
        for t in range(self.n):
            Di[t] = -Di[t]
        for r in range(self.m):
            self.U[r][i] = -self.U[r][i]
        Ui = self.Uinv[i]
        for t in range(self.m):
            Ui[t] = -Ui[t]

    # Column operations transform D := D * F, so V picks up F^-1 on the left
    # (row ops) and Vinv picks up F on the right (column ops).

    def col_add(self, j, i, c):
        """col_j += c * col_i."""
        for r in range(self.m):
            self.D[r][j] += c * self.D[r][i]
        Vi = self.V[i]
        Vj = self.V[j]
        for t in range(self.n):
            Vi[t] -= c * Vj[t]
        for r in range(self.n):
            self.Vinv[r][j] += c * self.Vinv[r][i]

    def col_swap(self, i, j):
        if i == j:
            return
        for r in range(self.m):
            self.D[r][i], self.D[r][j] = self.D[r][j], self.D[r][i]
        self.V[i], self.V[j] = self.V[j], self.V[i]
        for r in range(self.n):
            self.Vinv[r][i], self.Vinv[r][j] = self.Vinv[r][j], self.Vinv[r][i]

    def col_negate(self, j):
        for r in range(self.m):
            self.D[r][j] = -self.D[r][j]
        Vj = self.V[j]
        for t in range(self.n):
            Vj[t] = -Vj[t]
        for r in range(self.n):
            self.Vinv[r][j] = -self.Vinv[r][j]


def smith_normal_form(A):
    """Smith normal form with full transform tracking.

    Each stage re-selects the smallest nonzero absolute value in the trailing
    submatrix (ties broken by (row, col), so the decomposition is
    deterministic), reduces its row and column by remainders, and only
    advances once the pivot divides the whole trailing submatrix.  The last
    condition is what keeps coefficient growth in check -- clearing without
    it squares entry sizes on unlucky dense inputs -- and it makes the
    divisibility chain hold with no separate pass.
    """
    w = _Worker(A)
    m, n, D = w.m, w.n, w.D

    k = 0
    while k < min(m, n):
        best = None
        for i in range(k, m):
            Di = D[i]
            for j in range(k, n):
                e = Di[j]
                if e:
                    key = (abs(e), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        w.row_swap(k, pi)
        w.col_swap(k, pj)
        a = D[k][k]
        dirty = False
        for i in range(k + 1, m):
            if D[i][k]:
                w.row_add(i, k, -(D[i][k] // a))
                if D[i][k]:
                    dirty = True
        for j in range(k + 1, n):
            if D[k][j]:
                w.col_add(j, k, -(D[k][j] // a))
                if D[k][j]:
                    dirty = True
        if dirty:
            continue    # a strictly smaller entry exists now; re-select
        # pivot must divide the trailing submatrix or the invariant factors
        # (and the entry sizes of later stages) go wrong
        pull = None
        for i in range(k + 1, m):
            Di = D[i]
            for j in range(k + 1, n):
                if Di[j] % a:
                    pull = i
                    break
            if pull is not None:
                break
        if pull is not None:
            w.row_add(k, pull, 1)
            continue
        if a < 0:
            w.row_negate(k)
        k += 1

    r = k
    factors = [D[i][i] for i in range(r)]
    return SNFDecomposition(
        U=IntMatrix.from_rows(w.U) if m else IntMatrix.zero(0, 0),
        D=IntMatrix.from_rows([[D[i][j] for j in range(n)] for i in range(m)])
        if m * n else IntMatrix.zero(m, n),
        V=IntMatrix.from_rows(w.V) if n else IntMatrix.zero(0, 0),
        Uinv=IntMatrix.from_rows(w.Uinv) if m else IntMatrix.zero(0, 0),
        Vinv=IntMatrix.from_rows(w.Vinv) if n else IntMatrix.zero(0, 0),
        invariant_factors=factors,
    )


def kernel_basis(A):
    """Basis of the integer kernel of A (empty matrix conventions apply)."""
    if A.cols == 0:
        return []
    if A.rows == 0:
        return [c for c in IntMatrix.identity(A.cols).to_lists()]
    return smith_normal_form(A).kernel_basis()


def kernel_basis_reduced(A):
    """Kernel basis in column-Hermite form: triangular, size-reduced, canonical.

    The raw Smith-form kernel vectors can carry enormous entries; reducing
    the kernel lattice to Hermite form keeps downstream boundary matrices
    small, which is what stops pivot growth from compounding across the
    degrees of a resolution.
    """
    raw = kernel_basis(A)
    pivots = {}
    for vec in raw:
        v = list(vec)
        for row in range(len(v)):
            if v[row] == 0:
                continue
            if row in pivots:
                b = pivots[row]
                if v[row] % b[row] == 0:
                    q = v[row] // b[row]
                    v = [a - q * c for a, c in zip(v, b)]
                else:
                    g, x, y = _xgcd(b[row], v[row])
                    nb = [x * a + y * c for a, c in zip(b, v)]
                    nv = [(b[row] // g) * c - (v[row] // g) * a for a, c in zip(b, v)]
                    pivots[row] = nb
                    v = nv
            else:
                if v[row] < 0:
                    v = [-a for a in v]
                pivots[row] = v
                break
    # reduce entries above each pivot
    order = sorted(pivots)
    for i, r in enumerate(order):
        b = pivots[r]
        for r2 in order[i + 1:]:
            c = pivots[r2]
            if b[r2]:
                q = b[r2] // c[r2]
                if q:
                    pivots[r] = b = [a - q * d for a, d in zip(b, c)]
    return [pivots[r] for r in order]


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def rank(A):
    if A.rows == 0 or A.cols == 0:
        return 0
    return smith_normal_form(A).rank


def solve(A, b, snf=None):
    """One integer solution x of A x = b, or None if there is none."""
    if A.rows == 0:
        return [0] * A.cols
    if snf is None:
        snf = smith_normal_form(A)
    c = snf.Uinv.apply(b)
    y = [0] * A.cols
    for i, d in enumerate(snf.invariant_factors):
        if c[i] % d != 0:
            return None
        y[i] = c[i] // d
    for i in range(len(snf.invariant_factors), A.rows):
        if c[i] != 0:
            return None
    return snf.Vinv.apply(y) if A.cols else []


def in_column_span(A, b, snf=None):
    return solve(A, b, snf=snf) is not None


# ---------------------------------------------------------------------------
# mod-p linear algebra (small dense Gaussian elimination)


def modp_rref(rows, n, p):
    """Row reduce a list of length-n rows over F_p; returns (rref, pivots)."""
    mat = [[e % p for e in r] for r in rows]
    pivots = []
    rr = 0
    for col in range(n):
        piv = None
        for i in range(rr, len(mat)):
            if mat[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        mat[rr], mat[piv] = mat[piv], mat[rr]
        inv = pow(mat[rr][col], -1, p)
        mat[rr] = [(e * inv) % p for e in mat[rr]]
        for i in range(len(mat)):
            if i != rr and mat[i][col]:
                c = mat[i][col]
                mat[i] = [(a - c * b) % p for a, b in zip(mat[i], mat[rr])]
        pivots.append(col)
        rr += 1
    return mat[:rr], pivots


def modp_rank(A, p):
    if A.rows == 0 or A.cols == 0:
        return 0
    _, pivots = modp_rref(A.to_lists(), A.cols, p)
    return len(pivots)


def modp_solve(A, b, p):
    """One solution x of A x = b over F_p, or None."""
    if A.cols == 0:
        return [] if all(e % p == 0 for e in b) else None
    aug = [A.row(i) + [b[i]] for i in range(A.rows)]
    rref, pivots = modp_rref(aug, A.cols + 1, p)
    if A.cols in pivots:
        return None
    x = [0] * A.cols
    for row, piv in zip(rref, pivots):
        x[piv] = row[A.cols] % p
    return x


def modp_kernel_basis(A, p):
    """Basis of ker(A mod p) as vectors over F_p."""
    if A.cols == 0:
        return []
    if A.rows == 0:
        return [[1 if i == j else 0 for i in range(A.cols)] for j in range(A.cols)]
    rref, pivots = modp_rref(A.to_lists(), A.cols, p)
    free = [j for j in range(A.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * A.cols
        v[f] = 1
        for i, col in enumerate(pivots):
            v[col] = (-rref[i][f]) % p
        basis.append(v)
    return basis
