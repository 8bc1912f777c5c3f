"""Graded polynomial rings over Q, optionally modulo a homogeneous ideal.

Variables carry strictly positive integer degrees and the monomial order is
degree-reverse-lexicographic refined by the weighted grading. Quotient rings
carry a frozen reduced Groebner basis of their relation ideal; every Poly is
stored in normal form with respect to it, so equality of elements of R/J is
dict equality of term maps.

Commutativity is strict: no sign rule is attached to odd degrees. The rings
this engine targets are evenly generated, and anticommutativity is out of
scope by design.
"""

import itertools
import re
from fractions import Fraction

from .errors import NotHomogeneous, ParseError, RingMismatch


class GradedPolyRing:
    def __init__(self, names, degrees, relations=()):
        if len(names) != len(set(names)):
            raise ValueError("duplicate variable names")
        if any(d < 1 for d in degrees):
            raise ValueError("variable degrees must be >= 1")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.nvars = len(names)
        self._ambient = None
        self.rel_gb = ()
        if relations:
            ambient = GradedPolyRing(self.names, self.degrees)
            self._ambient = ambient
            rels = []
            for f in relations:
                g = ambient.poly(f.terms if isinstance(f, Poly) else f)
                if not g.is_homogeneous():
                    raise NotHomogeneous("ring relations must be homogeneous")
                rels.append(g)
            self.rel_gb = tuple(buchberger_list(rels, ambient))
        self._std_mono_cache = {}

    # -- basic structure -------------------------------------------------

    @property
    def is_quotient(self):
        return bool(self.rel_gb)

    def ambient(self):
        """The same variables with no relations."""
        return self._ambient if self._ambient is not None else self

    def zero_expo(self):
        return (0,) * self.nvars

    def wdeg(self, expo):
        return sum(e * d for e, d in zip(expo, self.degrees))

    def mono_key(self, expo):
        """Sort key realizing weighted degrevlex (bigger key = bigger monomial)."""
        return (self.wdeg(expo),) + tuple(-expo[i] for i in range(self.nvars - 1, -1, -1))

    def mono_mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mono_divides(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def mono_div(self, b, a):
        return tuple(y - x for x, y in zip(a, b))

    def mono_lcm(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    # -- element constructors --------------------------------------------

    def poly(self, terms):
        return Poly(self, terms)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self.zero_expo(): Fraction(1)})

    def const(self, c):
        c = Fraction(c)
        return Poly(self, {self.zero_expo(): c} if c else {})

    def var(self, name):
        i = self.names.index(name)
        expo = [0] * self.nvars
        expo[i] = 1
        return Poly(self, {tuple(expo): Fraction(1)})

    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, expo, coef=1):
        return Poly(self, {tuple(expo): Fraction(coef)})

    # -- monomial bases ---------------------------------------------------

    def monomials_of_wdeg(self, d):
        """All exponent vectors of weighted degree d (not reduced)."""
        if d < 0:
            return []
        out = []

        def rec(i, rem, acc):
            if i == self.nvars:
                if rem == 0:
                    out.append(tuple(acc))
                return
            step = self.degrees[i]
            for e in range(rem // step + 1):
                rec(i + 1, rem - e * step, acc + [e])

        rec(0, d, [])
        out.sort(key=self.mono_key, reverse=True)
        return out

    def standard_monomials(self, d):
        """Monomial basis of the degree-d piece of the ring (mod relations)."""
        got = self._std_mono_cache.get(d)
        if got is not None:
            return got
        monos = self.monomials_of_wdeg(d)
        if self.rel_gb:
            leads = [g.lead_expo() for g in self.rel_gb]
            monos = [m for m in monos if not any(self.mono_divides(l, m) for l in leads)]
        self._std_mono_cache[d] = monos
        return monos

    def degree_piece_dim(self, d):
        return len(self.standard_monomials(d))

    def reduce_terms(self, terms):
        """Normal form of a raw term dict modulo the frozen relation basis."""
        if not self.rel_gb:
            return {e: c for e, c in terms.items() if c}
        amb = self.ambient()
        f = Poly(amb, terms)
        return normal_form(f, list(self.rel_gb)).terms

    def __eq__(self, other):
        return (
            isinstance(other, GradedPolyRing)
            and self.names == other.names
            and self.degrees == other.degrees
            and tuple(g.terms_key() for g in self.rel_gb)
            == tuple(g.terms_key() for g in other.rel_gb)
        )

    def __hash__(self):
        return hash((self.names, self.degrees, len(self.rel_gb)))

    def __repr__(self):
        vars_ = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        if self.rel_gb:
            return f"Q[{vars_}]/({', '.join(str(g) for g in self.rel_gb)})"
        return f"Q[{vars_}]"


class Poly:
    """Element of a GradedPolyRing; term map expo tuple -> nonzero Fraction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        cleaned = {}
        for e, c in terms.items():
            c = Fraction(c)
            if c:
                cleaned[tuple(e)] = c
        if ring.rel_gb:
            cleaned = ring.reduce_terms(cleaned)
        self.terms = cleaned

    def is_zero(self):
        return not self.terms

    def lead_expo(self):
        return max(self.terms, key=self.ring.mono_key)

    def lead(self):
        e = self.lead_expo()
        return e, self.terms[e]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.lead()
        return self.scale(Fraction(1) / c)

    def wdegree(self):
        """Weighted degree; None for 0, max over terms if inhomogeneous."""
        if not self.terms:
            return None
        return max(self.ring.wdeg(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.wdeg(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        if not self.is_homogeneous():
            raise NotHomogeneous(f"{self} is not homogeneous")
        return self.wdegree()

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Poly(self.ring, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = self.ring.mono_mul(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch("polynomials over different rings")

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Poly is not hashable; use terms_key()")

    def terms_key(self):
        return tuple(sorted(self.terms.items()))

    def lift(self):
        """Reinterpret in the ambient (relation-free) ring without reducing."""
        return Poly(self.ring.ambient(), self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=self.ring.mono_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        s = bits[0]
        for b in bits[1:]:
            s += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return s

    __repr__ = __str__


class HomIdeal:
    """Finitely generated homogeneous ideal with a cached membership basis."""

    def __init__(self, ring, generators):
        self.ring = ring
        gens = []
        for f in generators:
            if f.ring != ring:
                raise RingMismatch("ideal generator over a different ring")
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise NotHomogeneous(f"ideal generator {f} is not homogeneous")
            if f.homogeneous_degree() <= 0:
                raise ValueError("ideal generators must have positive degree")
            gens.append(f)
        self.generators = tuple(gens)
        self._gb = None

    def groebner(self):
        """Reduced membership basis in the ambient ring (relations included)."""
        if self._gb is None:
            amb = self.ring.ambient()
            lifted = [g.lift() for g in self.generators] + [
                Poly(amb, g.terms) for g in self.ring.rel_gb
            ]
            self._gb = tuple(buchberger_list(lifted, amb))
        return self._gb

    def contains(self, f):
        return normal_form(f.lift(), list(self.groebner())).is_zero()

    def power_generators(self, s):
        """Products of s generators, one list entry per multiset."""
        out = []
        n = len(self.generators)
        for combo in itertools.combinations_with_replacement(range(n), s):
            p = self.ring.one()
            for i in combo:
                p = p * self.generators[i]
            if not p.is_zero():
                out.append(p)
        return out

    def min_generator_degree(self):
        return min(g.homogeneous_degree() for g in self.generators)

    def __repr__(self):
        return f"({', '.join(str(g) for g in self.generators)})"


# -- division and Buchberger ---------------------------------------------


def normal_form(f, basis):
    """Multivariate division remainder of f by the list basis.

    No term of the result is divisible by any leading monomial of the basis;
    f minus the result lies in the ideal generated by the basis. Reduction
    picks the largest reducible term and the first matching divisor, so the
    outcome is deterministic.
    """
    if not basis:
        return f
    ring = f.ring
    divisors = [(g.lead_expo(), g.lead()[1], g) for g in basis if not g.is_zero()]
    if not divisors:
        return f
    work = dict(f.terms)
    remainder = {}
    while work:
        e = max(work, key=ring.mono_key)
        c = work[e]
        hit = None
        for le, lc, g in divisors:
            if ring.mono_divides(le, e):
                hit = (le, lc, g)
                break
        if hit is None:
            remainder[e] = c
            del work[e]
            continue
        le, lc, g = hit
        factor = c / lc
        q = ring.mono_div(e, le)
        for ge, gc in g.terms.items():
            key = ring.mono_mul(q, ge)
            v = work.get(key, 0) - factor * gc
            if v == 0:
                work.pop(key, None)
            else:
                work[key] = v
    return Poly(ring, remainder)


def _spoly(f, g):
    ring = f.ring
    fe, fc = f.lead()
    ge, gc = g.lead()
    lcm = ring.mono_lcm(fe, ge)
    mf = ring.monomial(ring.mono_div(lcm, fe), Fraction(1) / fc)
    mg = ring.monomial(ring.mono_div(lcm, ge), Fraction(1) / gc)
    return mf * f - mg * g


def buchberger_list(gens, ring=None):
    """Reduced Groebner basis of the span of gens (classical Buchberger).

    The output is inter-reduced, monic, and sorted by leading monomial, hence
    independent of the order in which the input generators arrive.
    """
    basis = [g.monic() for g in gens if not g.is_zero()]
    if not basis:
        return []
    ring = basis[0].ring
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        f, g = basis[i], basis[j]
        fe, ge = f.lead_expo(), g.lead_expo()
        if ring.mono_lcm(fe, ge) == ring.mono_mul(fe, ge):
            continue  # coprime leads: S-poly reduces to zero
        r = normal_form(_spoly(f, g), basis)
        if not r.is_zero():
            basis.append(r.monic())
            k = len(basis) - 1
            pairs.extend((i2, k) for i2 in range(k))
    # minimalize: drop elements whose lead is divisible by an earlier kept lead
    # (proper divisors sort strictly earlier since all variable degrees are > 0)
    basis.sort(key=lambda p: ring.mono_key(p.lead_expo()))
    kept = []
    for f in basis:
        fe = f.lead_expo()
        if any(ring.mono_divides(g.lead_expo(), fe) for g in kept):
            continue
        kept.append(f)
    # inter-reduce fully
    reduced = []
    for idx, f in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        r = normal_form(f, others) if others else f
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda p: ring.mono_key(p.lead_expo()))
    return reduced


def buchberger(ideal):
    """Reduced Groebner basis realizing ideal membership (ambient ring)."""
    return list(ideal.groebner())


# -- text syntax -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|\(|\))")


def parse_poly(text, ring, env=None):
    """Parse `3/2*x^2*y - y^3` into a Poly; env maps parameter names to ints."""
    env = env or {}
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character in polynomial: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial")

    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take():
        nonlocal idx
        t = tokens[idx]
        idx += 1
        return t

    def parse_int_like(tok):
        if tok in env:
            return env[tok]
        if re.fullmatch(r"\d+", tok or ""):
            return int(tok)
        raise ParseError(f"expected integer exponent, got {tok!r}")

    def parse_factor():
        tok = take()
        sign = Fraction(1)
        while tok in ("+", "-"):
            if tok == "-":
                sign = -sign
            tok = take()
        if tok == "(":
            p = parse_sum()
            if take() != ")":
                raise ParseError("expected ')'")
            return p.scale(sign)
        if re.fullmatch(r"\d+/\d+", tok):
            num, den = tok.split("/")
            return ring.const(sign * Fraction(int(num), int(den)))
        if re.fullmatch(r"\d+", tok):
            return ring.const(sign * int(tok))
        if tok in ring.names:
            p = ring.var(tok)
            if peek() == "^":
                take()
                p = p ** parse_int_like(take())
            return p.scale(sign)
        if tok in env:
            return ring.const(sign * env[tok])
        raise ParseError(f"unknown name {tok!r} in polynomial")

    def parse_term():
        p = parse_factor()
        while peek() == "*":
            take()
            p = p * parse_factor()
        return p

    def parse_sum():
        p = parse_term()
        while peek() in ("+", "-"):
            op = take()
            q = parse_term()
            p = p + q if op == "+" else p - q
        return p

    result = parse_sum()
    if idx != len(tokens):
        raise ParseError(f"trailing tokens in polynomial: {tokens[idx:]}")
    return result
