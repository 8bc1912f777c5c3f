"""Exact sparse linear algebra over Q.

Vectors are sparse dicts index -> Fraction (zero entries never stored).
Matrices store only nonzero entries. Everything is immutable by convention:
no routine mutates its arguments, so values can be shared freely across
degreewise computations running in parallel.

Elimination is plain rational Gaussian elimination with deterministic
pivoting: smallest column index first, then smallest row index. All echelon
output is fully reduced (RREF) so report files are stable byte-for-byte.
"""

from fractions import Fraction

from .errors import NotContained

Vec = dict  # index -> Fraction


def vec_scale(v, c):
    if c == 0:
        return {}
    return {i: c * a for i, a in v.items()}


def vec_axpy(target, c, v):
    """target += c*v, returning a new dict."""
    if c == 0:
        return dict(target)
    out = dict(target)
    for i, a in v.items():
        b = out.get(i, 0) + c * a
        if b == 0:
            out.pop(i, None)
        else:
            out[i] = b
    return out


def vec_sub(u, v):
    return vec_axpy(u, Fraction(-1), v)


def vec_eq(u, v):
    return u == v


class SparseMatrix:
    """rows x cols matrix over Q with sparse entry storage."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), a in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i},{j}) out of range for {rows}x{cols}")
                if a != 0:
                    self.entries[(i, j)] = Fraction(a)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_columns(cls, cols, nrows):
        entries = {}
        for j, col in enumerate(cols):
            for i, a in col.items():
                if a != 0:
                    entries[(i, j)] = a
        return cls(nrows, len(cols), entries)

    @classmethod
    def from_rows(cls, rows, ncols):
        entries = {}
        for i, row in enumerate(rows):
            for j, a in row.items():
                if a != 0:
                    entries[(i, j)] = a
        return cls(len(rows), ncols, entries)

    def entry(self, i, j):
        return self.entries.get((i, j), Fraction(0))

    def column(self, j):
        return {i: a for (i, jj), a in self.entries.items() if jj == j}

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), a in self.entries.items():
            cols[j][i] = a
        return cols

    def row_vecs(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), a in self.entries.items():
            rows[i][j] = a
        return rows

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, {(j, i): a for (i, j), a in self.entries.items()}
        )

    def apply(self, v):
        """Matrix times sparse column vector."""
        out = {}
        cols = None
        if len(v) < self.cols // 2 + 1:
            # iterate the vector's support only
            cols = self.columns()
        if cols is not None:
            for j, a in v.items():
                for i, b in cols[j].items():
                    c = out.get(i, 0) + a * b
                    if c == 0:
                        out.pop(i, None)
                    else:
                        out[i] = c
            return out
        for (i, j), b in self.entries.items():
            a = v.get(j)
            if a:
                c = out.get(i, 0) + a * b
                if c == 0:
                    out.pop(i, None)
                else:
                    out[i] = c
        return out

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = {}
        by_row = {}
        for (i, k), a in self.entries.items():
            by_row.setdefault(i, []).append((k, a))
        other_rows = [dict() for _ in range(other.rows)]
        for (k, j), b in other.entries.items():
            other_rows[k][j] = b
        for i, items in by_row.items():
            acc = {}
            for k, a in items:
                for j, b in other_rows[k].items():
                    c = acc.get(j, 0) + a * b
                    if c == 0:
                        acc.pop(j, None)
                    else:
                        acc[j] = c
            for j, c in acc.items():
                out[(i, j)] = c
        return SparseMatrix(self.rows, other.cols, out)

    def add(self, other, scale=1):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        entries = dict(self.entries)
        for key, a in other.entries.items():
            c = entries.get(key, 0) + scale * a
            if c == 0:
                entries.pop(key, None)
            else:
                entries[key] = c
        return SparseMatrix(self.rows, self.cols, entries)

    def scale(self, c):
        if c == 0:
            return SparseMatrix(self.rows, self.cols)
        return SparseMatrix(
            self.rows, self.cols, {k: c * a for k, a in self.entries.items()}
        )

    def is_zero(self):
        return not self.entries

    def is_identity(self):
        if self.rows != self.cols or len(self.entries) != self.rows:
            return False
        return all(self.entries.get((i, i)) == 1 for i in range(self.rows))

    def rank(self):
        return len(rref(self.row_vecs())[0])

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("SparseMatrix is not hashable")

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"


def rref(rows):
    """Fully reduced row echelon form of a list of sparse row vectors.

    Returns (pivots, reduced_rows); reduced_rows[k] has leading 1 in column
    pivots[k], pivots strictly increasing, pivot columns cleared elsewhere.
    """
    work = [dict(r) for r in rows if r]
    pivots = []
    out = []
    while work:
        # deterministic pivot: smallest column index, then smallest row index
        best = None
        for idx, r in enumerate(work):
            lead = min(r)
            if best is None or lead < best[0]:
                best = (lead, idx)
        col, idx = best
        row = work.pop(idx)
        row = vec_scale(row, Fraction(1) / row[col])
        out.append(row)
        pivots.append(col)
        nxt = []
        for r in work:
            a = r.get(col)
            r2 = vec_axpy(r, -a, row) if a else r
            if r2:
                nxt.append(r2)
        work = nxt
    # back-substitute to clear pivot columns above the pivots
    for k in range(len(out) - 1, -1, -1):
        row, col = out[k], pivots[k]
        for j in range(k):
            a = out[j].get(col)
            if a:
                out[j] = vec_axpy(out[j], -a, row)
    order = sorted(range(len(out)), key=lambda k: pivots[k])
    return [pivots[k] for k in order], [out[k] for k in order]


class Subspace:
    """Subspace of Q^ambient_dim held as an RREF basis."""

    __slots__ = ("ambient_dim", "pivots", "basis")

    def __init__(self, ambient_dim, pivots=(), basis=()):
        self.ambient_dim = ambient_dim
        self.pivots = list(pivots)
        self.basis = [dict(b) for b in basis]

    @classmethod
    def from_spanning(cls, vectors, ambient_dim):
        pivots, rows = rref(vectors)
        return cls(ambient_dim, pivots, rows)

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Residual of v after eliminating all pivot coordinates."""
        out = dict(v)
        for row, col in zip(self.basis, self.pivots):
            a = out.get(col)
            if a:
                out = vec_axpy(out, -a, row)
        return out

    def contains_vec(self, v):
        return not self.reduce(v)

    def contains(self, other):
        return all(self.contains_vec(b) for b in other.basis)

    def coords(self, v):
        """Coefficients of v in the RREF basis, or None if v is outside."""
        out = dict(v)
        coeffs = [Fraction(0)] * self.dim
        for k, (row, col) in enumerate(zip(self.basis, self.pivots)):
            a = out.get(col)
            if a:
                coeffs[k] = a
                out = vec_axpy(out, -a, row)
        if out:
            return None
        return coeffs

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def rank_kernel_image(m):
    """Exact rank, kernel (in Q^cols) and column space (in Q^rows) of m."""
    pivots, rows = rref(m.row_vecs())
    rank = len(pivots)
    pivset = set(pivots)
    kernel_vecs = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = {free: Fraction(1)}
        for row, pcol in zip(rows, pivots):
            a = row.get(free)
            if a:
                v[pcol] = -a
        kernel_vecs.append(v)
    kernel = Subspace.from_spanning(kernel_vecs, m.cols)
    image = Subspace.from_spanning(m.columns(), m.rows)
    assert rank + kernel.dim == m.cols
    assert image.dim == rank
    return rank, kernel, image


def subspace_quotient_dim(a, b):
    """dim(a/b); raises NotContained unless b is inside a."""
    if a.ambient_dim != b.ambient_dim:
        raise NotContained("ambient dimensions differ")
    if not a.contains(b):
        raise NotContained("second subspace is not contained in the first")
    return a.dim - b.dim


def solve(m, rhs):
    """Particular solution of m*x = rhs with free variables set to 0.

    rhs is a sparse vector over row indices; returns a sparse vector over
    column indices, or None when the system is inconsistent. The solution is
    the reduced-echelon one, hence deterministic.
    """
    aug_col = m.cols
    rows = m.row_vecs()
    for i, a in rhs.items():
        if a:
            rows[i] = dict(rows[i])
            rows[i][aug_col] = a
    pivots, red = rref(rows)
    x = {}
    for row, col in zip(red, pivots):
        if col == aug_col:
            return None
        a = row.get(aug_col)
        if a:
            x[col] = a
    return x


class QuotientSpace:
    """Coordinates on V/W for sub ⊆ whole ⊆ Q^n (whole=None means all of Q^n).

    The class basis consists of whole's basis vectors reduced mod sub, put in
    RREF; coords() expresses any vector of whole in that basis after killing
    the sub component.
    """

    __slots__ = ("ambient_dim", "sub", "whole", "reps")

    def __init__(self, ambient_dim, sub=None, whole=None):
        self.ambient_dim = ambient_dim
        self.sub = sub if sub is not None else Subspace(ambient_dim)
        self.whole = whole
        if whole is None:
            gens = [{i: Fraction(1)} for i in range(ambient_dim)]
        else:
            gens = whole.basis
        reduced = [self.sub.reduce(g) for g in gens]
        self.reps = Subspace.from_spanning([r for r in reduced if r], ambient_dim)

    @property
    def dim(self):
        return self.reps.dim

    def coords(self, v):
        r = self.sub.reduce(v)
        c = self.reps.coords(r)
        if c is None:
            raise NotContained("vector outside the quotient's numerator")
        return {k: a for k, a in enumerate(c) if a}

    def lift(self, k):
        """Ambient representative of the k-th basis class."""
        return dict(self.reps.basis[k])

    def map_matrix(self, fn, target):
        """Matrix of the induced map given fn on ambient representatives."""
        cols = [target.coords(fn(self.lift(k))) for k in range(self.dim)]
        return SparseMatrix.from_columns(cols, target.dim)
