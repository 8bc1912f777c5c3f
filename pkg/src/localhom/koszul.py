"""Koszul complexes on power sequences, their towers, and related checks.

K_s on a single generator x is the two-term complex R(s|x|) --x^s--> R in
homological degrees 1, 0; on several generators it is the tensor product of
the factors, so stage k has rank C(n, k) with generator degrees the sums of
s|x_i| over k-subsets. Transition maps between powers multiply the shifted
generator by the power gap and fix the degree-0 part; tensoring these
degree-0 chain maps across factors needs no signs.
"""

from dataclasses import dataclass

from .complexes import ChainComplex, ChainMap, module_as_complex, multiplication_map
from .errors import NotHomogeneous, NotRegular
from .modules import FPGradedModule, FreeGraded, PolyMatrix, Window
from .towers import Tower, lim_and_lim1


@dataclass(frozen=True)
class KoszulSpec:
    ring: object
    generators: tuple
    power: int = 1

    def __post_init__(self):
        for g in self.generators:
            if not g.is_homogeneous() or g.is_zero():
                raise NotHomogeneous("Koszul generators must be nonzero homogeneous")
            if g.homogeneous_degree() <= 0:
                raise ValueError("Koszul generators must have positive degree")
        if self.power < 1:
            raise ValueError("power must be >= 1")

    def with_power(self, s):
        return KoszulSpec(self.ring, self.generators, s)

    @classmethod
    def of_ideal(cls, ideal, power=1):
        return cls(ideal.ring, tuple(ideal.generators), power)


def koszul_factor(ring, x, s):
    """The two-term complex R(s|x|) --x^s--> R."""
    e = x.homogeneous_degree()
    objects = {
        0: FPGradedModule.free(ring, (0,)),
        1: FPGradedModule.free(ring, (s * e,)),
    }
    diffs = {1: PolyMatrix(ring, 1, 1, {(0, 0): x ** s})}
    return ChainComplex(ring, objects, diffs)


def koszul(spec):
    """Tensor product of the power-s factors over the spec's generators."""
    ring = spec.ring
    out = module_as_complex(FPGradedModule.free(ring, (0,)))
    for x in spec.generators:
        out = out.tensor(koszul_factor(ring, x, spec.power))
    return out


def koszul_transition_map(spec, from_power, to_power):
    """Chain map from the power from_power complex to the power to_power one.

    Per factor: multiplication by x^(from-to) on the shifted generator and
    the identity on the degree-0 part; the tensor over factors carries no
    extra signs because each factor map has homological degree 0.
    """
    if from_power < to_power:
        raise ValueError("transitions go from higher powers to lower ones")
    ring = spec.ring
    gap = from_power - to_power
    src0 = module_as_complex(FPGradedModule.free(ring, (0,)))
    f = ChainMap.identity(src0)
    for x in spec.generators:
        hi = koszul_factor(ring, x, from_power)
        lo = koszul_factor(ring, x, to_power)
        mats = {
            0: PolyMatrix.identity(ring, 1),
            1: PolyMatrix(ring, 1, 1, {(0, 0): x ** gap}),
        }
        f = f.tensor(ChainMap(hi, lo, mats))
    return f


def koszul_tower(spec, s_max, module=None):
    """Stages K_s (tensored with module when given), s = 1..s_max."""
    stages = []
    raw_stages = []
    for s in range(1, s_max + 1):
        c = koszul(spec.with_power(s))
        raw_stages.append(c)
        stages.append(c.tensor_module(module) if module is not None else c)
    transitions = []
    for s in range(1, s_max):
        f = koszul_transition_map(spec, s + 1, s)
        if module is not None:
            mc = module_as_complex(module)
            f = f.tensor(ChainMap.identity(mc))
        transitions.append(f.rebased(stages[s], stages[s - 1]))
    label = f"K_s tower on {len(spec.generators)} generators"
    if module is not None:
        label += " tensored with a module"
    return Tower(stages, transitions, label)


def koszul_resolution(ring, sequence, window):
    """The power-1 complex as a resolution of R/(sequence).

    Verified regular in the window: all higher homology must vanish there,
    otherwise NotRegular is raised. Returns the complex together with the
    quotient module it resolves.
    """
    spec = KoszulSpec(ring, tuple(sequence), 1)
    c = koszul(spec)
    for n in range(1, len(sequence) + 1):
        for d in window:
            if c.homology_dim(n, d):
                raise NotRegular(
                    f"H_{n} nonzero at internal degree {d}: sequence is not regular"
                )
    quotient = FPGradedModule.quotient_by(ring, list(sequence))
    return c, quotient


def self_duality_table(spec, window):
    """Dim tables of H(Hom(K, R)) against the shifted K itself.

    The comparison is H_k(Hom(K,R))_d = H_{k+n}(K)_{d+c} with n the number of
    generators and c the sum of their power-weighted degrees.
    """
    c = koszul(spec)
    dual = c.dual_into_ring()
    n = len(spec.generators)
    shift_c = spec.power * sum(g.homogeneous_degree() for g in spec.generators)
    left = {}
    right = {}
    for k in range(-n, 1):
        for d in window:
            left[(k, d)] = dual.homology_dim(k, d)
            right[(k, d)] = c.homology_dim(k + n, d + shift_c)
    return {
        "dual_side": left,
        "shifted_side": right,
        "match": left == right,
        "suspension": {"homological": n, "internal": -shift_c},
    }


def multiplication_tower(target, x, depth):
    """Tower with all stages the same object and transitions times x.

    target may be a module or a complex; stage s is the internal shift by
    (s-1)|x| so every transition is a degree-0 chain map. Feeding the tower
    to lim_and_lim1 computes the degreewise maps-from-inverted-element data.
    """
    if isinstance(target, FPGradedModule):
        target = module_as_complex(target)
    e = x.homogeneous_degree()
    stages = [target.shift_internal((s - 1) * e) for s in range(1, depth + 1)]
    transitions = []
    for s in range(1, depth):
        base = multiplication_map(target, x)
        transitions.append(base.rebased(stages[s], stages[s - 1]))
    return Tower(stages, transitions, f"multiplication tower by {x}")
