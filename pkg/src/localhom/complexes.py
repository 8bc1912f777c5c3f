"""Bounded chain complexes of graded modules with degree-0 differentials.

Homological indexing follows the chain convention (the differential lowers
homological degree by one); internal degree is an independent axis and every
differential preserves it, so homology at (n, d) is a finite exact linear
algebra problem with no window edge effects.

d o d = 0 is verified symbolically at construction: composite columns must
reduce to zero modulo the target object's relation submodule.
"""

from fractions import Fraction

from .errors import NotChainMap
from .linalg import QuotientSpace, SparseMatrix, Subspace, rank_kernel_image
from .modules import FPGradedModule, FreeGraded, PolyMatrix


class ChainComplex:
    def __init__(self, ring, objects, diffs, validate=True):
        """objects: {n: FPGradedModule}; diffs: {n: PolyMatrix for C_n -> C_{n-1}}."""
        self.ring = ring
        self.objects = {n: ob for n, ob in objects.items() if ob.rank > 0}
        self.diffs = {}
        self._zero = FPGradedModule.free(ring, ())
        keys = sorted(self.objects)
        self.lo = keys[0] if keys else 0
        self.hi = keys[-1] if keys else 0
        for n, mat in diffs.items():
            if mat is None or mat.is_zero():
                continue
            src, tgt = self.object(n), self.object(n - 1)
            if mat.rows != tgt.rank or mat.cols != src.rank:
                raise ValueError(f"differential at {n} has wrong shape")
            self.diffs[n] = mat
        self._pieces = {}
        self._mats = {}
        self._homology = {}
        if validate:
            self._validate()

    def _validate(self):
        for n, mat in self.diffs.items():
            src, tgt = self.object(n), self.object(n - 1)
            for (i, j), p in mat.entries.items():
                want = src.gen_degrees[j] - tgt.gen_degrees[i]
                if not p.is_homogeneous() or p.homogeneous_degree() != want:
                    raise ValueError(
                        f"differential entry ({i},{j}) at degree {n} is not "
                        f"homogeneous of degree {want}"
                    )
            # the map must send relations into relations
            for j in range(src.rels.cols):
                col = src.rels.column_mvec(j, lift=True)
                moved = _apply_polymatrix_mvec(self.ring, mat, col)
                if not tgt.contains_column(moved):
                    raise ValueError(f"differential at {n} is not well defined")
        for n in list(self.diffs):
            if n - 1 in self.diffs:
                comp = self.diffs[n - 1].compose(self.diffs[n])
                tgt = self.object(n - 2)
                for j in range(comp.cols):
                    col = comp.column_mvec(j, lift=True)
                    if col and not tgt.contains_column(col):
                        raise ValueError(f"d o d != 0 between degrees {n} and {n - 2}")

    def object(self, n):
        return self.objects.get(n, self._zero)

    def diff(self, n):
        mat = self.diffs.get(n)
        if mat is None:
            return PolyMatrix(self.ring, self.object(n - 1).rank, self.object(n).rank)
        return mat

    def degrees(self):
        return range(self.lo, self.hi + 1)

    # -- evaluation ---------------------------------------------------------

    def piece(self, n, d):
        return self.object(n).piece(d)

    def piece_dim(self, n, d):
        return self.object(n).piece_dim(d)

    def diff_matrix(self, n, d):
        """Degree-d matrix of C_n -> C_{n-1} in piece coordinates."""
        key = (n, d)
        got = self._mats.get(key)
        if got is None:
            got = self.object(n).map_matrix(self.diff(n), d, self.object(n - 1))
            self._mats[key] = got
        return got

    def homology_piece(self, n, d):
        key = (n, d)
        got = self._homology.get(key)
        if got is None:
            out_mat = self.diff_matrix(n, d)
            in_mat = self.diff_matrix(n + 1, d)
            _, kernel, _ = rank_kernel_image(out_mat)
            boundaries = Subspace.from_spanning(in_mat.columns(), in_mat.rows)
            got = QuotientSpace(self.piece_dim(n, d), boundaries, whole=kernel)
            self._homology[key] = got
        return got

    def homology_dim(self, n, d):
        return self.homology_piece(n, d).dim

    # -- constructions --------------------------------------------------------

    def shift_internal(self, k):
        objects = {n: ob.shift(k) for n, ob in self.objects.items()}
        return ChainComplex(self.ring, objects, dict(self.diffs), validate=False)

    def shift_homological(self, k):
        """(Sigma^k C)_n = C_{n-k}; differentials pick up the usual sign."""
        sign = -1 if k % 2 else 1
        objects = {n + k: ob for n, ob in self.objects.items()}
        diffs = {n + k: m.scale(sign) for n, m in self.diffs.items()}
        return ChainComplex(self.ring, objects, diffs, validate=False)

    def tensor(self, other):
        """Tensor product complex with the standard (-1)^p sign rule."""
        ring = self.ring
        summands = {}  # n -> list of (p, q); p ascending
        for p in self.degrees():
            if self.object(p).rank == 0:
                continue
            for q in other.degrees():
                if other.object(q).rank == 0:
                    continue
                summands.setdefault(p + q, []).append((p, q))
        for n in summands:
            summands[n].sort()
        objects = {}
        offsets = {}  # (p, q) -> generator offset within level p+q
        for n, pairs in summands.items():
            off = 0
            obs = None
            for (p, q) in pairs:
                t = self.object(p).tensor(other.object(q))
                offsets[(p, q)] = off
                off += t.rank
                obs = t if obs is None else obs.direct_sum(t)
            objects[n] = obs
        diffs = {}
        for n, pairs in summands.items():
            if n - 1 not in summands and not any(
                (p - 1, q) in offsets or (p, q - 1) in offsets for p, q in pairs
            ):
                continue
            entries = {}
            tgt_rank = objects[n - 1].rank if n - 1 in objects else 0
            if tgt_rank == 0:
                continue
            for (p, q) in pairs:
                src_off = offsets[(p, q)]
                rank_cq = other.object(q).rank
                if (p - 1, q) in offsets:
                    block = self.diff(p).tensor(PolyMatrix.identity(ring, rank_cq))
                    dst_off = offsets[(p - 1, q)]
                    for (i, j), poly in block.entries.items():
                        entries[(dst_off + i, src_off + j)] = poly
                if (p, q - 1) in offsets:
                    sign = -1 if p % 2 else 1
                    block = PolyMatrix.identity(ring, self.object(p).rank).tensor(
                        other.diff(q), sign=sign
                    )
                    dst_off = offsets[(p, q - 1)]
                    for (i, j), poly in block.entries.items():
                        key = (dst_off + i, src_off + j)
                        entries[key] = entries[key] + poly if key in entries else poly
            diffs[n] = PolyMatrix(ring, tgt_rank, objects[n].rank, entries)
        return ChainComplex(ring, objects, diffs)

    def tensor_module(self, module):
        return self.tensor(module_as_complex(module))

    def dual_into_ring(self):
        """Hom into the free rank-1 module; defined for complexes of frees."""
        if any(not ob.is_free for ob in self.objects.values()):
            raise ValueError("internal hom into the ring needs a complex of frees")
        objects = {}
        diffs = {}
        for n, ob in self.objects.items():
            objects[-n] = FPGradedModule.free(self.ring, tuple(-g for g in ob.gen_degrees))
        for n, mat in self.diffs.items():
            # D_{-n+1} -> D_{-n} is precomposition with C_n -> C_{n-1}
            diffs[-n + 1] = mat.transpose()
        return ChainComplex(self.ring, objects, diffs)

    def euler_characteristic(self, d):
        """Alternating sum of object dims at internal degree d."""
        return sum((-1) ** n * self.piece_dim(n, d) for n in self.degrees())

    def homology_euler_characteristic(self, d):
        return sum((-1) ** n * self.homology_dim(n, d) for n in self.degrees())

    def __repr__(self):
        ranks = {n: self.object(n).rank for n in self.degrees() if self.object(n).rank}
        return f"ChainComplex(ranks {ranks})"


def module_as_complex(module, at=0):
    return ChainComplex(module.ring, {at: module}, {}, validate=False)


def _apply_polymatrix_mvec(ring, mat, col_mvec):
    """Apply a polynomial matrix to an ambient-lifted module vector."""
    amb = ring.ambient()
    out = {}
    per_row = {}
    for (j, e), c in col_mvec.items():
        per_row.setdefault(j, {})[e] = c
    for (i, j), p in mat.entries.items():
        src = per_row.get(j)
        if not src:
            continue
        for e, c in src.items():
            for pe, pc in p.lift().terms.items():
                k = (i, amb.mono_mul(e, pe))
                v = out.get(k, 0) + c * pc
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
    return out


class ChainMap:
    """Degree-0 chain map; mats[n] maps C_n of the source into C_n of the target."""

    def __init__(self, source, target, mats, validate=True):
        if source.ring != target.ring:
            raise NotChainMap("source and target over different rings")
        self.ring = source.ring
        self.source = source
        self.target = target
        self.mats = {}
        for n, mat in mats.items():
            if mat is None or mat.is_zero():
                continue
            if mat.rows != target.object(n).rank or mat.cols != source.object(n).rank:
                raise NotChainMap(f"component at {n} has wrong shape")
            self.mats[n] = mat
        if validate:
            self._validate()

    def mat(self, n):
        mat = self.mats.get(n)
        if mat is None:
            return PolyMatrix(
                self.ring, self.target.object(n).rank, self.source.object(n).rank
            )
        return mat

    def _validate(self):
        for n in set(self.mats) | set(self.source.diffs):
            lhs = self.target.diff(n).compose(self.mat(n))
            rhs = self.mat(n - 1).compose(self.source.diff(n))
            delta = lhs.add(rhs, scale=-1)
            if delta.is_zero():
                continue
            tgt = self.target.object(n - 1)
            for j in range(delta.cols):
                col = delta.column_mvec(j, lift=True)
                if col and not tgt.contains_column(col):
                    raise NotChainMap(f"squares do not commute at degree {n}")

    def matrix(self, n, d):
        return self.source.object(n).map_matrix(self.mat(n), d, self.target.object(n))

    def compose(self, inner):
        """self o inner."""
        mats = {}
        for n in set(self.mats) | set(inner.mats):
            mats[n] = self.mat(n).compose(inner.mat(n))
        return ChainMap(inner.source, self.target, mats, validate=False)

    def rebased(self, source, target):
        """Same component matrices attached to structurally equal complexes."""
        return ChainMap(source, target, dict(self.mats), validate=False)

    def homology_matrix(self, n, d):
        """Induced matrix on homology pieces."""
        src_h = self.source.homology_piece(n, d)
        tgt_h = self.target.homology_piece(n, d)
        m = self.matrix(n, d)
        cols = [tgt_h.coords(m.apply(src_h.lift(k))) for k in range(src_h.dim)]
        return SparseMatrix.from_columns(cols, tgt_h.dim)

    @classmethod
    def identity(cls, c):
        mats = {n: PolyMatrix.identity(c.ring, c.object(n).rank) for n in c.degrees()}
        return cls(c, c, mats, validate=False)

    def tensor(self, other):
        """Tensor of degree-0 chain maps (no signs arise in degree 0)."""
        src = self.source.tensor(other.source)
        tgt = self.target.tensor(other.target)
        mats = {}
        src_layout = _summand_layout(self.source, other.source)
        tgt_layout = _summand_layout(self.target, other.target)
        for n, pairs in src_layout["levels"].items():
            entries = {}
            tgt_rank = tgt.object(n).rank
            if tgt_rank == 0:
                continue
            for (p, q) in pairs:
                if (p, q) not in tgt_layout["offsets"]:
                    continue
                block = self.mat(p).tensor(other.mat(q))
                soff = src_layout["offsets"][(p, q)]
                toff = tgt_layout["offsets"][(p, q)]
                for (i, j), poly in block.entries.items():
                    entries[(toff + i, soff + j)] = poly
            if entries:
                mats[n] = PolyMatrix(self.ring, tgt_rank, src.object(n).rank, entries)
        return ChainMap(src, tgt, mats, validate=False)


def _summand_layout(c, d):
    levels = {}
    offsets = {}
    for p in c.degrees():
        if c.object(p).rank == 0:
            continue
        for q in d.degrees():
            if d.object(q).rank == 0:
                continue
            levels.setdefault(p + q, []).append((p, q))
    for n in levels:
        levels[n].sort()
        off = 0
        for (p, q) in levels[n]:
            offsets[(p, q)] = off
            off += c.object(p).rank * d.object(q).rank
    return {"levels": levels, "offsets": offsets}


def cone(f):
    """Mapping cone of a chain map: target (+) shifted source, standard differential."""
    ring = f.ring
    S, T = f.source, f.target
    lo = min(T.lo, S.lo + 1)
    hi = max(T.hi, S.hi + 1)
    objects = {}
    diffs = {}
    for n in range(lo, hi + 1):
        t, s = T.object(n), S.object(n - 1)
        if t.rank == 0 and s.rank == 0:
            continue
        objects[n] = t.direct_sum(s)
    for n in range(lo, hi + 1):
        t, s = T.object(n), S.object(n - 1)
        t1, s1 = T.object(n - 1), S.object(n - 2)
        layout = {
            (0, 0): f.target.diff(n),
            (0, 1): f.mat(n - 1),
            (1, 1): S.diff(n - 1).scale(-1),
        }
        mat = PolyMatrix.blocks(
            ring, layout, [t1.rank, s1.rank], [t.rank, s.rank]
        )
        if not mat.is_zero():
            diffs[n] = mat
    return ChainComplex(ring, objects, diffs)


def cone_inclusion(f):
    """The chain map target -> cone(f)."""
    c = cone(f)
    T, S = f.target, f.source
    mats = {}
    for n in T.degrees():
        t = T.object(n)
        if t.rank == 0:
            continue
        total = c.object(n).rank
        entries = {(i, i): f.ring.one() for i in range(t.rank)}
        mats[n] = PolyMatrix(f.ring, total, t.rank, entries)
    return ChainMap(T, c, mats, validate=False)


def cone_projection(f):
    """The chain map cone(f) -> (homological shift of the source)."""
    c = cone(f)
    shifted = f.source.shift_homological(1)
    mats = {}
    for n in c.degrees():
        s = f.source.object(n - 1)
        if s.rank == 0:
            continue
        t_rank = f.target.object(n).rank
        entries = {(i, t_rank + i): f.ring.one() for i in range(s.rank)}
        mats[n] = PolyMatrix(f.ring, s.rank, c.object(n).rank, entries)
    return ChainMap(c, shifted, mats, validate=False)


def multiplication_map(c, poly):
    """Multiplication by a homogeneous element as a chain map from a shifted copy.

    Returns the degree-0 chain map Sigma^{|p|} C -> C whose components are
    p times the identity.
    """
    e = poly.homogeneous_degree()
    src = c.shift_internal(e)
    mats = {}
    for n in c.degrees():
        r = c.object(n).rank
        if r == 0:
            continue
        mats[n] = PolyMatrix(c.ring, r, r, {(i, i): poly for i in range(r)})
    return ChainMap(src, c, mats, validate=False)


class HomologyModule:
    """H_n of a complex, exposed with the module evaluation interface."""

    def __init__(self, c, n):
        self.complex = c
        self.n = n
        self.ring = c.ring

    def piece_dim(self, d):
        return self.complex.homology_dim(self.n, d)

    def lowest_degree(self):
        ob = self.complex.object(self.n)
        return min(ob.gen_degrees) if ob.gen_degrees else 0

    def mult_matrix(self, p, d):
        if p.is_zero():
            return SparseMatrix(0, self.piece_dim(d))
        e = p.homogeneous_degree()
        src = self.complex.homology_piece(self.n, d)
        tgt = self.complex.homology_piece(self.n, d + e)
        mult = self.complex.object(self.n).mult_matrix(p, d)
        cols = [tgt.coords(mult.apply(src.lift(k))) for k in range(src.dim)]
        return SparseMatrix.from_columns(cols, tgt.dim)
