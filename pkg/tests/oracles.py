"""Independent brute-force oracles used to freeze expected values.

Everything here goes through degreewise linear algebra only, never through
the engine's Groebner or homology routines, so agreement is a genuine
cross-check.
"""

from fractions import Fraction

from localhom.linalg import Subspace
from localhom.rings import Poly


def ideal_piece(ring, gens, d):
    """Subspace of the degree-d piece of the ambient ring spanned by the ideal.

    Coordinates are indexed by ring.monomials_of_wdeg(d) (ambient basis,
    relations of a quotient ring must be included among gens by the caller).
    """
    amb = ring.ambient()
    basis = amb.monomials_of_wdeg(d)
    index = {m: i for i, m in enumerate(basis)}
    vectors = []
    for g in gens:
        g = g.lift() if hasattr(g, "lift") else g
        gd = g.homogeneous_degree()
        if gd is None or gd > d:
            continue
        for m in amb.monomials_of_wdeg(d - gd):
            prod = amb.monomial(m) * g
            vec = {index[e]: c for e, c in prod.terms.items()}
            vectors.append(vec)
    return Subspace.from_spanning(vectors, len(basis)), basis, index


def ideal_contains(ring, gens, f):
    """Membership of homogeneous f in (gens) by pure linear algebra."""
    if f.is_zero():
        return True
    d = f.homogeneous_degree()
    space, basis, index = ideal_piece(ring, gens, d)
    vec = {index[e]: c for e, c in f.lift().terms.items()}
    return space.contains_vec(vec)


def groebner_by_linear_algebra(ring, gens, max_degree):
    """Reduced Groebner basis elements of degree <= max_degree, degreewise.

    Saturates the staircase by scanning ideal pieces degree by degree: a new
    basis element appears whenever the piece contains a vector whose lead
    monomial is not a multiple of an existing lead. Independent S-pair-free
    route; only valid up to the stated degree.
    """
    amb = ring.ambient()
    leads = []
    elements = []
    for d in range(1, max_degree + 1):
        space, basis, _ = ideal_piece(ring, gens, d)
        # convert RREF rows (sorted coordinates) back to polynomials
        for row in space.basis:
            p = Poly(amb, {basis[i]: c for i, c in row.items()})
            le = p.lead_expo()
            if any(amb.mono_divides(l, le) for l in leads):
                continue
            leads.append(le)
            elements.append(p)
    # inter-reduce against each other for the reduced basis
    from localhom.rings import normal_form

    reduced = []
    for i, p in enumerate(elements):
        others = elements[:i] + elements[i + 1 :]
        r = normal_form(p, others) if others else p
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda p: amb.mono_key(p.lead_expo()))
    return reduced


def quotient_module_piece_dim(ring, rel_gens, d):
    """dim of (R/(rel_gens))_d by linear algebra over the standard basis."""
    gens = list(rel_gens) + [Poly(ring.ambient(), g.terms) for g in ring.rel_gb]
    space, basis, _ = ideal_piece(ring, gens, d)
    return len(basis) - space.dim


def box_annihilator_dim(i, s):
    """dim of ann(x^s, y^s) inside Q[x,y]/(x^i, y^i) by monomial counting."""
    lo = max(0, i - s)
    return (i - lo) ** 2
