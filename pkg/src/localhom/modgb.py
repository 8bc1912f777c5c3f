"""Groebner bases and syzygies in free modules over the ambient ring.

Module elements are sparse dicts (component, exponent tuple) -> Fraction.
The order is term-over-position weighted degrevlex, with an optional block
split: components below the split dominate all components above it. The
split is what turns syzygy computation into a Groebner computation on the
graph {(v_l, e_l)} — basis elements supported entirely on the tag block
generate the syzygy module of the input vectors.

Everything here runs over a relation-free ring; quotient-ring callers lift
their data and append relation multiples themselves.
"""

from fractions import Fraction


def mvec_scale(v, c):
    if c == 0:
        return {}
    return {k: c * a for k, a in v.items()}


def mvec_add(u, v, scale=1):
    out = dict(u)
    for k, a in v.items():
        b = out.get(k, 0) + scale * a
        if b == 0:
            out.pop(k, None)
        else:
            out[k] = b
    return out


def mvec_mono_mul(ring, v, mono, coef=Fraction(1)):
    if coef == 0:
        return {}
    return {(c, ring.mono_mul(mono, e)): coef * a for (c, e), a in v.items()}


def mvec_poly_mul(ring, v, poly):
    out = {}
    for me, mc in poly.terms.items():
        for (c, e), a in v.items():
            k = (c, ring.mono_mul(me, e))
            b = out.get(k, 0) + mc * a
            if b == 0:
                out.pop(k, None)
            else:
                out[k] = b
    return out


def _key(ring, split):
    if split is None:
        return lambda k: (ring.mono_key(k[1]), -k[0])
    return lambda k: (0 if k[0] < split else -1, ring.mono_key(k[1]), -k[0])


def mod_lead(ring, v, split=None):
    k = max(v, key=_key(ring, split))
    return k, v[k]


def module_normal_form(ring, v, basis, split=None):
    """Remainder of v under division by basis (list of nonzero mvecs)."""
    if not v or not basis:
        return dict(v)
    key = _key(ring, split)
    divisors = []
    for g in basis:
        (c, e), lc = mod_lead(ring, g, split)
        divisors.append((c, e, lc, g))
    work = dict(v)
    remainder = {}
    while work:
        lk = max(work, key=key)
        comp, expo = lk
        coef = work[lk]
        hit = None
        for c, e, lc, g in divisors:
            if c == comp and ring.mono_divides(e, expo):
                hit = (e, lc, g)
                break
        if hit is None:
            remainder[lk] = coef
            del work[lk]
            continue
        e, lc, g = hit
        q = ring.mono_div(expo, e)
        work = mvec_add(work, mvec_mono_mul(ring, g, q), scale=-(coef / lc))
    return remainder


def _spair(ring, f, g, split):
    (cf, ef), lf = mod_lead(ring, f, split)
    (cg, eg), lg = mod_lead(ring, g, split)
    if cf != cg:
        return None
    lcm = ring.mono_lcm(ef, eg)
    a = mvec_mono_mul(ring, f, ring.mono_div(lcm, ef), Fraction(1) / lf)
    b = mvec_mono_mul(ring, g, ring.mono_div(lcm, eg), Fraction(1) / lg)
    return mvec_add(a, b, scale=-1)


def module_groebner(ring, vectors, split=None):
    """Reduced Groebner basis of the submodule spanned by vectors."""
    basis = []
    for v in vectors:
        if v:
            _, lc = mod_lead(ring, v, split)
            basis.append(mvec_scale(v, Fraction(1) / lc))
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        s = _spair(ring, basis[i], basis[j], split)
        if s is None:
            continue
        r = module_normal_form(ring, s, basis, split)
        if r:
            _, lc = mod_lead(ring, r, split)
            basis.append(mvec_scale(r, Fraction(1) / lc))
            k = len(basis) - 1
            pairs.extend((i2, k) for i2 in range(k))
    key = _key(ring, split)
    basis.sort(key=lambda v: key(mod_lead(ring, v, split)[0]))
    kept = []
    kept_leads = []
    for v in basis:
        (c, e), _ = mod_lead(ring, v, split)
        if any(c == kc and ring.mono_divides(ke, e) for kc, ke in kept_leads):
            continue
        kept.append(v)
        kept_leads.append((c, e))
    reduced = []
    for i, v in enumerate(kept):
        others = kept[:i] + kept[i + 1 :]
        r = module_normal_form(ring, v, others, split) if others else v
        if r:
            _, lc = mod_lead(ring, r, split)
            reduced.append(mvec_scale(r, Fraction(1) / lc))
    reduced.sort(key=lambda v: key(mod_lead(ring, v, split)[0]))
    return reduced


def syzygies(ring, vectors, ncomps):
    """Generators of the syzygy module of vectors inside Q^ncomps x ring.

    Returns mvecs over components 0..len(vectors)-1, one coordinate per input
    vector. Input vectors may be any generating list, not only a Groebner
    basis; homogeneous input yields homogeneous syzygies.
    """
    graph = []
    for l, v in enumerate(vectors):
        g = dict(v)
        tag = (ncomps + l, ring.zero_expo())
        g[tag] = g.get(tag, 0) + Fraction(1)
        graph.append(g)
    gb = module_groebner(ring, graph, split=ncomps)
    out = []
    for v in gb:
        if all(c >= ncomps for c, _ in v):
            out.append({(c - ncomps, e): a for (c, e), a in v.items()})
    return out


def submodule_contains(ring, gb, v, split=None):
    return not module_normal_form(ring, v, gb, split)
