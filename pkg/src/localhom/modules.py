"""Finitely presented graded modules and their degreewise evaluation.

A module is the cokernel of a homogeneous matrix between free graded modules;
free modules are presentations with no relation columns. Because every
differential and presentation entry preserves internal degree once generator
shifts are accounted for, each degree piece is an independent exact linear
algebra problem over Q, evaluated through ModulePiece.

Degree bookkeeping convention: a presentation column of degree r consists of
entries rels[i][c] homogeneous of degree r - gen_degrees[i]; the relation it
imposes is an element of internal degree r.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import modgb
from .errors import NotHomogeneous, RingMismatch
from .linalg import QuotientSpace, SparseMatrix, Subspace
from .rings import Poly


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("window lower bound exceeds upper bound")

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, d):
        return self.lo <= d <= self.hi

    @property
    def height(self):
        return self.hi - self.lo


class PolyMatrix:
    """Sparse matrix of polynomials; rows index the target, columns the source."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), p in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError("polynomial matrix entry out of range")
                if isinstance(p, (int, Fraction)):
                    p = ring.const(p)
                if not p.is_zero():
                    self.entries[(i, j)] = p

    def entry(self, i, j):
        return self.entries.get((i, j), self.ring.zero())

    def is_zero(self):
        return not self.entries

    def column_polys(self, j):
        return {i: p for (i, jj), p in self.entries.items() if jj == j}

    def column_mvec(self, j, lift=False):
        out = {}
        for (i, jj), p in self.entries.items():
            if jj != j:
                continue
            q = p.lift() if lift else p
            for e, c in q.terms.items():
                out[(i, e)] = c
        return out

    @classmethod
    def from_mvec_columns(cls, ring, columns, rows):
        entries = {}
        for j, col in enumerate(columns):
            per_row = {}
            for (i, e), c in col.items():
                per_row.setdefault(i, {})[e] = c
            for i, terms in per_row.items():
                entries[(i, j)] = Poly(ring, terms)
        return cls(ring, rows, len(columns), entries)

    def compose(self, other):
        """self @ other (apply other first)."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        acc = {}
        by_k = {}
        for (k, j), p in other.entries.items():
            by_k.setdefault(k, []).append((j, p))
        for (i, k), p in self.entries.items():
            for j, q in by_k.get(k, ()):
                prod = p * q
                if prod.is_zero():
                    continue
                key = (i, j)
                acc[key] = acc[key] + prod if key in acc else prod
        return PolyMatrix(self.ring, self.rows, other.cols, acc)

    def add(self, other, scale=1):
        entries = dict(self.entries)
        for key, p in other.entries.items():
            q = p.scale(scale)
            entries[key] = entries[key] + q if key in entries else q
        return PolyMatrix(self.ring, self.rows, self.cols, entries)

    def scale(self, c):
        return PolyMatrix(
            self.ring, self.rows, self.cols, {k: p.scale(c) for k, p in self.entries.items()}
        )

    def transpose(self):
        return PolyMatrix(
            self.ring, self.cols, self.rows, {(j, i): p for (i, j), p in self.entries.items()}
        )

    def tensor(self, other, sign=1):
        """Kronecker product with row index i1*other.rows + i2 (source alike)."""
        entries = {}
        for (i1, j1), p in self.entries.items():
            for (i2, j2), q in other.entries.items():
                prod = (p * q).scale(sign)
                if not prod.is_zero():
                    entries[(i1 * other.rows + i2, j1 * other.cols + j2)] = prod
        return PolyMatrix(self.ring, self.rows * other.rows, self.cols * other.cols, entries)

    @classmethod
    def blocks(cls, ring, layout, row_sizes, col_sizes):
        """Assemble from a dict (bi, bj) -> PolyMatrix of given block sizes."""
        row_off = [0]
        for r in row_sizes:
            row_off.append(row_off[-1] + r)
        col_off = [0]
        for c in col_sizes:
            col_off.append(col_off[-1] + c)
        entries = {}
        for (bi, bj), mat in layout.items():
            if mat is None:
                continue
            if mat.rows != row_sizes[bi] or mat.cols != col_sizes[bj]:
                raise ValueError("block shape mismatch")
            for (i, j), p in mat.entries.items():
                entries[(row_off[bi] + i, col_off[bj] + j)] = p
        return cls(ring, row_off[-1], col_off[-1], entries)

    @classmethod
    def identity(cls, ring, n):
        one = ring.one()
        return cls(ring, n, n, {(i, i): one for i in range(n)})

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and {k: p.terms_key() for k, p in self.entries.items()}
            == {k: p.terms_key() for k, p in other.entries.items()}
        )

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols} over {self.ring})"


class FreeGraded:
    """Free graded module, one generator per listed internal degree."""

    __slots__ = ("ring", "gen_degrees")

    def __init__(self, ring, gen_degrees):
        self.ring = ring
        self.gen_degrees = tuple(int(d) for d in gen_degrees)

    @property
    def rank(self):
        return len(self.gen_degrees)

    def module(self):
        return FPGradedModule(self, PolyMatrix(self.ring, self.rank, 0), ())

    def __repr__(self):
        return f"FreeGraded{self.gen_degrees} over {self.ring}"


class ModulePiece:
    """Degree-d piece of an f.p. module as a quotient of a monomial basis."""

    __slots__ = ("labels", "index", "space")

    def __init__(self, labels, rel_vectors):
        self.labels = labels
        self.index = {lab: k for k, lab in enumerate(labels)}
        sub = Subspace.from_spanning(rel_vectors, len(labels))
        self.space = QuotientSpace(len(labels), sub)

    @property
    def dim(self):
        return self.space.dim

    @property
    def ambient_dim(self):
        return len(self.labels)

    def coords(self, ambient_vec):
        return self.space.coords(ambient_vec)

    def lift(self, k):
        return self.space.lift(k)


class FPGradedModule:
    """Cokernel of a homogeneous presentation matrix of free graded modules."""

    def __init__(self, target, rels, rel_degrees, validate=True):
        self.ring = target.ring
        self.target = target
        self.gen_degrees = target.gen_degrees
        self.rels = rels
        self.rel_degrees = tuple(int(d) for d in rel_degrees)
        if rels.rows != len(self.gen_degrees) or rels.cols != len(self.rel_degrees):
            raise ValueError("presentation shape does not match generator data")
        if validate:
            for (i, j), p in rels.entries.items():
                want = self.rel_degrees[j] - self.gen_degrees[i]
                if not p.is_homogeneous() or p.homogeneous_degree() != want:
                    raise NotHomogeneous(
                        f"presentation entry ({i},{j}) must be homogeneous of degree {want}"
                    )
        self._pieces = {}
        self._mult_cache = {}
        self._rel_gb = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def free(cls, ring, gen_degrees):
        return FreeGraded(ring, gen_degrees).module()

    @classmethod
    def quotient_by(cls, ring, polys):
        """R/(polys) as a module with a single degree-0 generator."""
        degs = []
        entries = {}
        for j, p in enumerate(polys):
            degs.append(p.homogeneous_degree())
            entries[(0, j)] = p
        return cls(
            FreeGraded(ring, (0,)), PolyMatrix(ring, 1, len(polys), entries), tuple(degs)
        )

    @classmethod
    def residue_field(cls, ring):
        return cls.quotient_by(ring, ring.gens())

    @property
    def is_free(self):
        return self.rels.is_zero() or not self.rel_degrees

    @property
    def rank(self):
        return len(self.gen_degrees)

    def lowest_degree(self):
        """Pieces vanish strictly below this degree."""
        return min(self.gen_degrees) if self.gen_degrees else 0

    # -- degreewise evaluation ----------------------------------------------

    def piece(self, d):
        got = self._pieces.get(d)
        if got is not None:
            return got
        labels = []
        for i, g in enumerate(self.gen_degrees):
            for e in self.ring.standard_monomials(d - g):
                labels.append((i, e))
        index = {lab: k for k, lab in enumerate(labels)}
        rel_vectors = []
        for c, r in enumerate(self.rel_degrees):
            for mono in self.ring.standard_monomials(d - r):
                vec = {}
                mono_poly = self.ring.monomial(mono)
                for i in range(self.rank):
                    p = self.rels.entry(i, c)
                    if p.is_zero():
                        continue
                    prod = mono_poly * p
                    for e, coef in prod.terms.items():
                        k = index[(i, e)]
                        v = vec.get(k, 0) + coef
                        if v == 0:
                            vec.pop(k, None)
                        else:
                            vec[k] = v
                if vec:
                    rel_vectors.append(vec)
        piece = ModulePiece(labels, rel_vectors)
        self._pieces[d] = piece
        return piece

    def piece_dim(self, d):
        return self.piece(d).dim

    def element_vector(self, polys, d):
        """Ambient vector of sum_i polys[i]*e_i inside the degree-d piece."""
        piece = self.piece(d)
        out = {}
        for i, p in enumerate(polys):
            if p is None or p.is_zero():
                continue
            for e, c in p.terms.items():
                k = piece.index[(i, e)]
                v = out.get(k, 0) + c
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
        return out

    def ambient_to_polys(self, vec, d):
        piece = self.piece(d)
        per_gen = {}
        for k, c in vec.items():
            i, e = piece.labels[k]
            per_gen.setdefault(i, {})[e] = c
        return {i: Poly(self.ring, terms) for i, terms in per_gen.items()}

    def mult_matrix(self, p, d):
        """Matrix of multiplication by homogeneous p from piece d to d+|p|."""
        if p.is_zero():
            return SparseMatrix(0, self.piece(d).dim)
        key = (p.terms_key(), d)
        got = self._mult_cache.get(key)
        if got is not None:
            return got
        e = p.homogeneous_degree()
        src, tgt = self.piece(d), self.piece(d + e)
        cols = []
        for k in range(src.dim):
            polys = self.ambient_to_polys(src.lift(k), d)
            moved = {i: q * p for i, q in polys.items()}
            amb = {}
            for i, q in moved.items():
                for me, c in q.terms.items():
                    kk = tgt.index[(i, me)]
                    v = amb.get(kk, 0) + c
                    if v == 0:
                        amb.pop(kk, None)
                    else:
                        amb[kk] = v
            cols.append(tgt.coords(amb))
        got = SparseMatrix.from_columns(cols, tgt.dim)
        self._mult_cache[key] = got
        return got

    def map_matrix(self, mat, d, target):
        """Degree-d matrix of the module map given by polynomial matrix mat."""
        src_piece = self.piece(d)
        tgt_piece = target.piece(d)
        cols = []
        for k in range(src_piece.dim):
            polys = self.ambient_to_polys(src_piece.lift(k), d)
            amb = {}
            for j, q in polys.items():
                for i in range(target.rank):
                    p = mat.entry(i, j)
                    if p.is_zero():
                        continue
                    prod = q * p
                    for me, c in prod.terms.items():
                        kk = tgt_piece.index[(i, me)]
                        v = amb.get(kk, 0) + c
                        if v == 0:
                            amb.pop(kk, None)
                        else:
                            amb[kk] = v
            cols.append(tgt_piece.coords(amb))
        return SparseMatrix.from_columns(cols, tgt_piece.dim)

    # -- submodule membership -------------------------------------------------

    def relation_gb(self):
        """Module GB (ambient ring) of the relation submodule, for zero tests."""
        if self._rel_gb is None:
            amb = self.ring.ambient()
            vectors = [self.rels.column_mvec(j, lift=True) for j in range(self.rels.cols)]
            if self.ring.rel_gb:
                zero = amb.zero_expo()
                for g in self.ring.rel_gb:
                    for i in range(self.rank):
                        vectors.append({(i, e): c for e, c in g.terms.items()})
            self._rel_gb = modgb.module_groebner(amb, [v for v in vectors if v])
        return self._rel_gb

    def contains_column(self, mvec_lifted):
        return modgb.submodule_contains(self.ring.ambient(), self.relation_gb(), mvec_lifted)

    # -- constructions ---------------------------------------------------------

    def shift(self, k):
        """Internal degree shift: piece d of the result is piece d-k of self."""
        shifted = FreeGraded(self.ring, tuple(g + k for g in self.gen_degrees))
        return FPGradedModule(
            shifted, self.rels, tuple(r + k for r in self.rel_degrees), validate=False
        )

    def direct_sum(self, other):
        self._check_ring(other)
        ring = self.ring
        gens = self.gen_degrees + other.gen_degrees
        rels = PolyMatrix.blocks(
            ring,
            {(0, 0): self.rels, (1, 1): other.rels},
            [self.rank, other.rank],
            [self.rels.cols, other.rels.cols],
        )
        return FPGradedModule(
            FreeGraded(ring, gens), rels, self.rel_degrees + other.rel_degrees
        )

    def tensor(self, other):
        """M (x)_R N by the block presentation over paired generators."""
        self._check_ring(other)
        ring = self.ring
        gens = tuple(
            g + h for g in self.gen_degrees for h in other.gen_degrees
        )  # index (i,j) -> i*other.rank + j
        cols = []
        degs = []
        for c, r in enumerate(self.rel_degrees):  # relM (x) e_j
            for j, h in enumerate(other.gen_degrees):
                col = {}
                for i in range(self.rank):
                    p = self.rels.entry(i, c)
                    if not p.is_zero():
                        col[i * other.rank + j] = p
                cols.append(col)
                degs.append(r + h)
        for c, r in enumerate(other.rel_degrees):  # e_i (x) relN
            for i, g in enumerate(self.gen_degrees):
                col = {}
                for j in range(other.rank):
                    p = other.rels.entry(j, c)
                    if not p.is_zero():
                        col[i * other.rank + j] = p
                cols.append(col)
                degs.append(r + g)
        entries = {}
        for jcol, col in enumerate(cols):
            for i, p in col.items():
                entries[(i, jcol)] = p
        rels = PolyMatrix(ring, len(gens), len(cols), entries)
        return FPGradedModule(FreeGraded(ring, gens), rels, tuple(degs))

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch("modules over different rings")

    def __repr__(self):
        return (
            f"FPGradedModule(gens {list(self.gen_degrees)}, "
            f"{len(self.rel_degrees)} relations over {self.ring})"
        )


def evaluate_degree(module, d):
    """Presentation data of the degree-d piece: dim, labels, relation matrix."""
    piece = module.piece(d)
    rel_rows = piece.space.sub.basis
    mat = SparseMatrix.from_rows(rel_rows, piece.ambient_dim)
    return {
        "dim": piece.dim,
        "ambient_labels": [(i, e) for (i, e) in piece.labels],
        "relations": mat,
    }


def hom_degreewise(source, target, window):
    """Degreewise Hom(M, N): dims and representing block vectors per degree.

    A degree-d map is a tuple of elements v_i in N_{g_i + d} annihilating the
    relations of M; the kernel is cut out by the relation-multiplication
    blocks. Representatives are reported in block coordinates over the target
    pieces N_{g_i + d}.
    """
    source._check_ring(target)
    out = {}
    for d in window:
        src_dims = [target.piece_dim(g + d) for g in source.gen_degrees]
        col_sizes = src_dims
        row_blocks = []
        blocks = {}
        for c, r in enumerate(source.rel_degrees):
            row_blocks.append(target.piece_dim(r + d))
            for i in range(source.rank):
                p = source.rels.entry(i, c)
                if p.is_zero():
                    continue
                blocks[(c, i)] = target.mult_matrix(p, source.gen_degrees[i] + d)
        total_rows = sum(row_blocks)
        row_off = [0]
        for r in row_blocks:
            row_off.append(row_off[-1] + r)
        col_off = [0]
        for cdim in col_sizes:
            col_off.append(col_off[-1] + cdim)
        entries = {}
        for (c, i), m in blocks.items():
            for (a, b), v in m.entries.items():
                entries[(row_off[c] + a, col_off[i] + b)] = v
        mat = SparseMatrix(total_rows, sum(col_sizes), entries)
        from .linalg import rank_kernel_image

        _, kernel, _ = rank_kernel_image(mat)
        out[d] = {"dim": kernel.dim, "basis": [dict(b) for b in kernel.basis]}
    return out


def graded_dual(module, window):
    """Degreewise dual: piece d of the dual is the dual of piece -d.

    Returns dims and the evaluation pairing matrix (identity in the paired
    bases) per degree of the window.
    """
    out = {}
    for d in window:
        n = module.piece_dim(-d)
        out[d] = {"dim": n, "pairing": SparseMatrix.identity(n)}
    return out
