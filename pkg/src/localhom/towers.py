"""Inverse systems of complexes: degreewise lim/lim1 and certificates.

A Tower holds finitely many stages of an infinite inverse system, stage 1
innermost. All limits are taken degreewise; each degree of each stage is a
finite-dimensional rational space, so descending image chains stabilize and
lim1 vanishes degreewise. The interesting lim1 phenomena live in infinite
direct sums, which are certified through SumFamilyTower without ever forming
an infinite-dimensional space.

Certificates embed the transition matrices behind every rank claim so that
reports.verify_certificate can recheck them with no engine state.
"""

from dataclasses import dataclass, field

from .errors import CertificateNotFound, EngineBug
from .linalg import QuotientSpace, SparseMatrix, Subspace
from .reports import matrix_to_json


class Tower:
    """stages[i] is stage i+1; transitions[i] maps stage i+2 -> stage i+1."""

    def __init__(self, stages, transitions, description=""):
        if len(transitions) != max(len(stages) - 1, 0):
            raise ValueError("need exactly one transition between consecutive stages")
        self.stages = list(stages)
        self.transitions = list(transitions)
        self.description = description
        self._hmat_cache = {}

    @property
    def depth(self):
        return len(self.stages)

    def stage(self, s):
        return self.stages[s - 1]

    def homology_dims(self, k, d):
        return [st.homology_dim(k, d) for st in self.stages]

    def transition_matrix(self, s, k, d):
        """Matrix on H_k degree d of the transition stage s+1 -> stage s."""
        key = (s, k, d)
        got = self._hmat_cache.get(key)
        if got is None:
            got = self.transitions[s - 1].homology_matrix(k, d)
            self._hmat_cache[key] = got
        return got

    def composite_matrix(self, s, span, k, d):
        """Matrix on H_k degree d of the composite stage s+span -> stage s."""
        if span == 0:
            return SparseMatrix.identity(self.stage(s).homology_dim(k, d))
        m = self.transition_matrix(s, k, d)
        for step in range(s + 1, s + span):
            m = m.matmul(self.transition_matrix(step, k, d))
        return m


@dataclass
class LimReport:
    lim_dim: object  # int, or None when unresolved
    lim1_dim: int
    stabilized: bool
    certainty: str  # absolute | structural | observed | unresolved
    stage_dims: list
    note: str = ""


def limit_of_chain(dims, trans, structural_from=None):
    """lim/lim1 verdict for one degreewise chain of finite-dimensional spaces.

    dims[s-1] is the dimension of stage s; trans[s-1] maps stage s+1 to
    stage s. structural_from, when the caller can certify the tower is
    stationary from that stage on (bounded-below module against a positively
    generated ideal), upgrades the verdict. lim1 is 0 throughout: descending
    image chains inside a finite-dimensional space always stabilize, so the
    degreewise system is Mittag-Leffler even when our finite depth cannot
    exhibit the stable value.
    """
    D = len(dims)
    if D < 2:
        raise ValueError("lim needs depth >= 2")
    # composites into each base from the top two stages
    top = {D: SparseMatrix.identity(dims[D - 1])}
    for s in range(D - 1, 0, -1):
        top[s] = trans[s - 1].matmul(top[s + 1])
    second = {D - 1: SparseMatrix.identity(dims[D - 2])}
    for s in range(D - 2, 0, -1):
        second[s] = trans[s - 1].matmul(second[s + 1])
    img_top = {
        s: Subspace.from_spanning(top[s].columns(), top[s].rows) for s in range(1, D)
    }
    img_second = {
        s: Subspace.from_spanning(second[s].columns(), second[s].rows)
        for s in range(1, D - 1)
    }
    settled = all(img_top[s] == img_second[s] for s in img_second)
    if all(img_top[s].dim == 0 for s in img_top):
        return LimReport(0, 0, True, "absolute", list(dims),
                         "eventual images vanish at every computed stage")
    if structural_from is not None and structural_from <= D:
        return LimReport(dims[D - 1], 0, True, "structural", list(dims),
                         f"tower stationary from stage {structural_from} on")
    if settled and D >= 4 and img_top[D - 2].dim == img_top[D - 3].dim:
        return LimReport(img_top[D - 2].dim, 0, True, "observed", list(dims),
                         "eventual images settled inside the computed depth")
    return LimReport(None, 0, False, "unresolved", list(dims),
                     "raise the depth to settle the image chain")


def lim_and_lim1(tower, window, k, structural_depth=None):
    """Degreewise lim and lim1 of H_k along a tower of complexes."""
    out = {}
    for d in window:
        dims = tower.homology_dims(k, d)
        trans = [tower.transition_matrix(s, k, d) for s in range(1, tower.depth)]
        bound = structural_depth(d) if structural_depth is not None else None
        out[d] = limit_of_chain(dims, trans, bound)
    return out


@dataclass
class ProZeroCert:
    homological_degree: int
    window: tuple
    witnesses: dict  # s -> m
    blocks: list = field(default_factory=list)  # embedded matrices, rank 0 claims
    grid: list = field(default_factory=list)  # (s, m, total rank) over the search

    def to_json(self):
        return {
            "kind": "pro_zero",
            "homological_degree": self.homological_degree,
            "window": [self.window[0], self.window[1]],
            "witnesses": [{"s": s, "m": m} for s, m in sorted(self.witnesses.items())],
            "claims": self.blocks,
            "grid": self.grid,
        }


@dataclass
class ProZeroFailure:
    homological_degree: int
    first_obstruction: tuple  # (s, last m tried, total rank)
    grid: list

    def to_json(self):
        s, m, rank = self.first_obstruction
        return {
            "kind": "pro_zero_failure",
            "homological_degree": self.homological_degree,
            "first_obstruction": {"s": s, "m": m, "rank": rank},
            "grid": self.grid,
        }


def pro_zero_check(tower, k, search_bound, window):
    """Witness search for pro-vanishing of H_k along the tower.

    For each base stage s with the full search range available, look for
    m in (s, s+search_bound] whose composite transition is zero on H_k in
    every window degree. Returns a ProZeroCert embedding those matrices, or a
    ProZeroFailure at the first base stage that exhausts its range.
    """
    grid = []
    witnesses = {}
    blocks = []
    top_base = tower.depth - search_bound
    if top_base < 1:
        raise ValueError("tower too shallow for the requested search bound")
    for s in range(1, top_base + 1):
        found = None
        last_rank = None
        for m in range(s + 1, s + search_bound + 1):
            mats = {d: tower.composite_matrix(s, m - s, k, d) for d in window}
            total = sum(mat.rank() for mat in mats.values())
            grid.append({"s": s, "m": m, "rank": total})
            last_rank = total
            if total == 0:
                found = (m, mats)
                break
        if found is None:
            return ProZeroFailure(k, (s, s + search_bound, last_rank), grid)
        m, mats = found
        witnesses[s] = m
        for d in window:
            mat = mats[d]
            if mat.rows == 0 and mat.cols == 0:
                continue
            blocks.append(
                {"s": s, "m": m, "d": d, "rank": 0, "matrix": matrix_to_json(mat)}
            )
    return ProZeroCert(k, (window.lo, window.hi), witnesses, blocks, grid)


def weak_proregularity_report(tower, ngens, search_bound, window):
    """Run the pro-zero search in every positive homological degree."""
    certs = {}
    failures = {}
    for k in range(1, ngens + 1):
        res = pro_zero_check(tower, k, search_bound, window)
        if isinstance(res, ProZeroCert):
            certs[k] = res
        else:
            failures[k] = res
    return {"weakly_proregular": not failures, "certs": certs, "failures": failures}


class SumFamilyTower:
    """Rule i -> summand module, standing for the direct sum over all i >= 1."""

    def __init__(self, rule, truncation_N, description=""):
        self.rule = rule
        self.truncation_N = truncation_N
        self.description = description

    def summand(self, i):
        return self.rule(i)


@dataclass
class MLFailureCert:
    homological_degree: int
    truncation_N: int
    s_grid: list
    t_grid: list
    window: tuple
    per_summand: list  # {"i", "t", claims with rank 0}
    spread: list  # {"s", "t", "i", rank >= 1 claim}
    rank_grid: list  # {"s", "t", "i", "rank"}
    dims: list  # {"s", "i", "dim"} total homology dims, for oracle cross-checks

    def to_json(self):
        return {
            "kind": "ml_failure",
            "hypothesis": (
                "stages are countable direct sums of finite-dimensional rational "
                "pieces; failure of Mittag-Leffler is equivalent to lim1 != 0"
            ),
            "homological_degree": self.homological_degree,
            "truncation_N": self.truncation_N,
            "s_grid": self.s_grid,
            "t_grid": self.t_grid,
            "window": [self.window[0], self.window[1]],
            "per_summand": self.per_summand,
            "spread": self.spread,
            "rank_grid": self.rank_grid,
            "dims": self.dims,
        }


def ml_failure_certificate(family, tower_builder, k, s_grid, t_grid, window,
                           witness_span_bound=None):
    """Two-part Mittag-Leffler failure certificate for an infinite sum family.

    (a) per-summand pro-vanishing: each summand's H_k tower dies under a
        finite span, so the limit gets no contribution from any single
        summand; (b) spread: for every requested span t there is a summand
        whose span-t transition is still nonzero, so the images of the full
        sum strictly decrease without stabilizing. Together these certify
        that the untruncated sum tower fails Mittag-Leffler.

    tower_builder(module, depth) must return the Tower of the summand.
    """
    N = family.truncation_N
    s_grid = sorted(s_grid)
    t_grid = sorted(t_grid)
    span_bound = witness_span_bound or max(max(t_grid), N)
    depth = max(s_grid) + span_bound
    towers = {}

    def tower_for(i):
        if i not in towers:
            towers[i] = tower_builder(family.summand(i), depth)
        return towers[i]

    def total_rank(i, s, t):
        tw = tower_for(i)
        return sum(tw.composite_matrix(s, t, k, d).rank() for d in window)

    per_summand = []
    for i in range(1, N + 1):
        tw = tower_for(i)
        witness = None
        for t in range(1, span_bound + 1):
            if all(total_rank(i, s, t) == 0 for s in s_grid):
                witness = t
                break
        if witness is None:
            raise CertificateNotFound(
                f"no pro-vanishing span found for summand {i} within {span_bound}",
                cell=("summand", i),
            )
        claims = []
        for s in s_grid:
            for d in window:
                mat = tw.composite_matrix(s, witness, k, d)
                if mat.rows == 0 and mat.cols == 0:
                    continue
                claims.append(
                    {"s": s, "d": d, "rank": 0, "matrix": matrix_to_json(mat)}
                )
        per_summand.append({"i": i, "t": witness, "claims": claims})

    spread = []
    for s in s_grid:
        for t in t_grid:
            hit = None
            for i in range(1, N + 1):
                tw = tower_for(i)
                best = None
                for d in window:
                    mat = tw.composite_matrix(s, t, k, d)
                    r = mat.rank()
                    if r > 0:
                        best = (d, mat, r)
                        break
                if best is not None:
                    hit = (i, best)
                    break
            if hit is None:
                raise CertificateNotFound(
                    f"no summand with a nonzero span-{t} transition at base {s}",
                    cell=(s, t),
                )
            i, (d, mat, r) = hit
            spread.append(
                {
                    "s": s,
                    "t": t,
                    "i": i,
                    "d": d,
                    "rank": r,
                    "claim": "nonzero",
                    "matrix": matrix_to_json(mat),
                }
            )

    rank_grid = []
    dims = []
    for i in range(1, N + 1):
        tw = tower_for(i)
        for s in s_grid:
            dims.append(
                {"s": s, "i": i, "dim": sum(tw.homology_dims(k, d)[s - 1] for d in window)}
            )
            for t in t_grid:
                rank_grid.append({"s": s, "t": t, "i": i, "rank": total_rank(i, s, t)})

    cert = MLFailureCert(k, N, s_grid, t_grid, (window.lo, window.hi),
                         per_summand, spread, rank_grid, dims)
    _recheck_ml_cert(cert)
    return cert


def _recheck_ml_cert(cert):
    """Independent re-check of both certificate halves from the raw grid."""
    by_cell = {(g["s"], g["t"], g["i"]): g["rank"] for g in cert.rank_grid}
    for entry in cert.spread:
        if by_cell.get((entry["s"], entry["t"], entry["i"]), 0) < 1:
            raise EngineBug("spread witness contradicts the rank grid")
    for ps in cert.per_summand:
        i, t = ps["i"], ps["t"]
        for s in cert.s_grid:
            got = by_cell.get((s, t, i))
            if got is not None and got != 0:
                raise EngineBug("pro-zero witness contradicts the rank grid")


def quotient_tower_dims(obj, ideal, depth, d):
    """Stage data of (obj / I^s obj)_d for s = 1..depth, with transitions.

    Works for any object exposing piece_dim and mult_matrix; returns
    (spaces, transitions) where spaces[s-1] is a QuotientSpace on the fixed
    degree-d coordinates of obj and transitions are the canonical projections.
    """
    amb = obj.piece_dim(d)
    spaces = []
    for s in range(1, depth + 1):
        cols = []
        for p in ideal.power_generators(s):
            e = p.homogeneous_degree()
            m = obj.mult_matrix(p, d - e)
            cols.extend(m.columns())
        sub = Subspace.from_spanning(cols, amb)
        spaces.append(QuotientSpace(amb, sub))
    transitions = []
    for s in range(1, depth):
        finer, coarser = spaces[s], spaces[s - 1]
        cols = [coarser.coords(finer.lift(k)) for k in range(finer.dim)]
        transitions.append(SparseMatrix.from_columns(cols, coarser.dim))
    return spaces, transitions
