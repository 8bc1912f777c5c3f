"""Free resolutions by iterated syzygies, and Ext tables from them.

Each stage's differential columns are a generating set of the kernel of the
previous stage, obtained from the graph Groebner construction; after every
syzygy step, columns carrying a unit entry are cancelled against the
previous differential, which keeps the resolutions close to minimal. All
consumers accept non-minimal output. Over quotient rings kernels never need
to vanish, so the length bound truncates and the result says so.
"""

from fractions import Fraction

from . import modgb
from .complexes import ChainComplex
from .linalg import QuotientSpace, SparseMatrix, Subspace, rank_kernel_image
from .modules import FPGradedModule, FreeGraded, PolyMatrix
from .rings import Poly


class Resolution:
    def __init__(self, module, complex_, truncated):
        self.module = module
        self.complex = complex_
        self.truncated = truncated

    @property
    def length(self):
        return self.complex.hi

    def stage_degrees(self, k):
        return self.complex.object(k).gen_degrees

    def diff(self, k):
        return self.complex.diff(k)

    def __repr__(self):
        ranks = [self.complex.object(k).rank for k in range(self.length + 1)]
        tail = ", truncated" if self.truncated else ""
        return f"Resolution(ranks {ranks}{tail})"


def _columns_of(matrix, degrees):
    cols = []
    for j in range(matrix.cols):
        col = {i: p for (i, jj), p in matrix.entries.items() if jj == j}
        cols.append(col)
    return cols, list(degrees)


def _col_to_mvec(col):
    out = {}
    for i, p in col.items():
        for e, c in p.lift().terms.items():
            out[(i, e)] = c
    return out


def _syzygy_columns(ring, cols, col_degs, rank_prev):
    """Generators of the kernel of the map with the given columns."""
    amb = ring.ambient()
    vectors = [_col_to_mvec(c) for c in cols]
    nown = len(vectors)
    if ring.rel_gb:
        for g in ring.rel_gb:
            for i in range(rank_prev):
                vectors.append({(i, e): c for e, c in g.terms.items()})
    syz = modgb.syzygies(amb, vectors, rank_prev)
    out_cols, out_degs = [], []
    for s in syz:
        per = {}
        for (l, e), c in s.items():
            if l < nown:
                per.setdefault(l, {})[e] = c
        polys = {l: Poly(ring, terms) for l, terms in per.items()}
        polys = {l: p for l, p in polys.items() if not p.is_zero()}
        if not polys:
            continue
        l0 = min(polys)
        deg = polys[l0].homogeneous_degree() + col_degs[l0]
        out_cols.append(polys)
        out_degs.append(deg)
    return out_cols, out_degs


def _cancel_units(prev_cols, prev_degs, syz_cols, syz_degs, ring):
    """Cancel unit entries of the syzygy columns against the previous stage.

    A constant entry at row r of a syzygy column says the r-th previous
    column is redundant; drop it, adjust the remaining syzygies by column
    operations, and delete the row. Images and kernels are unchanged.
    """
    while True:
        hit = None
        for ci, col in enumerate(syz_cols):
            for r in sorted(col):
                p = col[r]
                if not p.is_zero() and p.wdegree() == 0:
                    hit = (ci, r)
                    break
            if hit:
                break
        if hit is None:
            return prev_cols, prev_degs, syz_cols, syz_degs
        ci, r = hit
        pivot_col = syz_cols[ci]
        u = pivot_col[r].terms[ring.zero_expo()]
        new_syz = []
        new_degs = []
        for cj, col in enumerate(syz_cols):
            if cj == ci:
                continue
            q = col.get(r)
            if q is not None and not q.is_zero():
                factor = q.scale(Fraction(1) / u)
                adjusted = dict(col)
                for r2, p2 in pivot_col.items():
                    delta = factor * p2
                    cur = adjusted.get(r2)
                    val = cur - delta if cur is not None else -delta
                    if val.is_zero():
                        adjusted.pop(r2, None)
                    else:
                        adjusted[r2] = val
                col = adjusted
            col = {(k if k < r else k - 1): p for k, p in col.items() if k != r}
            new_syz.append(col)
            new_degs.append(syz_degs[cj])
        prev_cols = [c for k, c in enumerate(prev_cols) if k != r]
        prev_degs = [dg for k, dg in enumerate(prev_degs) if k != r]
        syz_cols, syz_degs = new_syz, new_degs


def free_resolution(module, length_bound):
    """Complex of free modules with H_0 the module and H_n = 0 in between.

    Over a quotient ring the kernel chain may never terminate; in that case
    the output is truncated at length_bound and flagged.
    """
    ring = module.ring
    cols, col_degs = _columns_of(module.rels, module.rel_degrees)
    keep = [k for k, c in enumerate(cols) if c]
    cols = [cols[k] for k in keep]
    col_degs = [col_degs[k] for k in keep]
    stage_degs = [tuple(module.gen_degrees)]
    diff_data = []
    truncated = False
    k = 1
    while cols:
        if k > length_bound:
            truncated = True
            cols = []
            break
        syz_cols, syz_degs = _syzygy_columns(ring, cols, col_degs, len(stage_degs[-1]))
        cols, col_degs, syz_cols, syz_degs = _cancel_units(
            cols, col_degs, syz_cols, syz_degs, ring
        )
        diff_data.append((cols, col_degs))
        stage_degs.append(tuple(col_degs))
        cols, col_degs = syz_cols, syz_degs
        k += 1
    objects = {
        n: FPGradedModule.free(ring, degs) for n, degs in enumerate(stage_degs)
    }
    diffs = {}
    for n, (dcols, ddegs) in enumerate(diff_data, start=1):
        entries = {}
        for j, col in enumerate(dcols):
            for i, p in col.items():
                entries[(i, j)] = p
        diffs[n] = PolyMatrix(ring, len(stage_degs[n - 1]), len(dcols), entries)
    cx = ChainComplex(ring, objects, diffs)
    return Resolution(module, cx, truncated)


class ExtComputation:
    """Ext(M, N) from a free resolution of M, with piece-level access.

    hom_piece(s, d) is the block space (+)_j N_{g_j + d} over the stage-s
    generators; delta(s, d) is the cochain differential between consecutive
    hom pieces, and ext_piece carries quotient coordinates on its homology.
    """

    def __init__(self, module, target, s_max, window):
        module._check_ring(target)
        self.module = module
        self.target = target
        self.s_max = s_max
        self.window = window
        self.resolution = free_resolution(module, s_max + 1)
        self._deltas = {}
        self._pieces = {}

    def block_dims(self, s, d):
        degs = self.resolution.stage_degrees(s) if s <= self.resolution.length else ()
        return [self.target.piece_dim(g + d) for g in degs]

    def hom_dim(self, s, d):
        return sum(self.block_dims(s, d))

    def delta(self, s, d):
        """Matrix Hom(F_s, N)_d -> Hom(F_{s+1}, N)_d."""
        key = (s, d)
        got = self._deltas.get(key)
        if got is not None:
            return got
        src_degs = self.resolution.stage_degrees(s) if s <= self.resolution.length else ()
        tgt_degs = (
            self.resolution.stage_degrees(s + 1) if s + 1 <= self.resolution.length else ()
        )
        src_sizes = [self.target.piece_dim(g + d) for g in src_degs]
        tgt_sizes = [self.target.piece_dim(g + d) for g in tgt_degs]
        src_off = [0]
        for v in src_sizes:
            src_off.append(src_off[-1] + v)
        tgt_off = [0]
        for v in tgt_sizes:
            tgt_off.append(tgt_off[-1] + v)
        entries = {}
        dmat = self.resolution.diff(s + 1)
        for (j, i), p in dmat.entries.items():
            # column i of F_{s+1} hits row j of F_s; precomposition transposes
            block = self.target.mult_matrix(p, src_degs[j] + d)
            for (a, b), v in block.entries.items():
                entries[(tgt_off[i] + a, src_off[j] + b)] = v
        got = SparseMatrix(tgt_off[-1], src_off[-1], entries)
        self._deltas[key] = got
        return got

    def ext_piece(self, s, d):
        key = (s, d)
        got = self._pieces.get(key)
        if got is not None:
            return got
        out_mat = self.delta(s, d)
        _, kernel, _ = rank_kernel_image(out_mat)
        if s == 0:
            boundaries = Subspace(self.hom_dim(0, d))
        else:
            in_mat = self.delta(s - 1, d)
            boundaries = Subspace.from_spanning(in_mat.columns(), in_mat.rows)
        got = QuotientSpace(self.hom_dim(s, d), boundaries, whole=kernel)
        self._pieces[key] = got
        return got

    def dim(self, s, d):
        return self.ext_piece(s, d).dim

    def table(self):
        return {
            (s, d): self.dim(s, d) for s in range(self.s_max + 1) for d in self.window
        }


def ext_table(module, target, s_max, window):
    """Ext^{s,d}(M, N) dims for 0 <= s <= s_max, d in the window."""
    return ExtComputation(module, target, s_max, window).table()
