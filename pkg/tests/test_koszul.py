from math import comb

import pytest

from localhom.errors import NotRegular
from localhom.koszul import (
    KoszulSpec,
    koszul,
    koszul_resolution,
    koszul_tower,
    koszul_transition_map,
    multiplication_tower,
    self_duality_table,
)
from localhom.modules import FPGradedModule, Window
from localhom.rings import GradedPolyRing
from localhom.towers import lim_and_lim1

from oracles import quotient_module_piece_dim


@pytest.fixture
def Rx2():
    return GradedPolyRing(("x",), (2,))


@pytest.fixture
def Rxy():
    return GradedPolyRing(("x", "y"), (1, 1))


def spec_of(ring, power=1):
    return KoszulSpec(ring, tuple(ring.gens()), power)


def test_single_generator(Rx2):
    c = koszul(spec_of(Rx2))
    assert c.object(1).gen_degrees == (2,)
    assert c.homology_dim(0, 0) == 1
    assert all(c.homology_dim(1, d) == 0 for d in range(-4, 10))


def test_two_generator_ranks_and_vanishing(Rxy):
    c = koszul(spec_of(Rxy))
    assert [c.object(k).rank for k in (0, 1, 2)] == [1, 2, 1]
    for d in range(-5, 12):
        assert c.homology_dim(1, d) == 0
        assert c.homology_dim(2, d) == 0
    assert c.homology_dim(0, 0) == 1
    assert sum(c.homology_dim(0, d) for d in range(-5, 12)) == 1


def test_rank_pattern_independent_of_power(Rxy):
    for s in (1, 2, 3):
        c = koszul(spec_of(Rxy, s))
        for k in (0, 1, 2):
            assert c.object(k).rank == comb(2, k)
        # generator degrees at stage k are sums of s*|x_i| over k-subsets
        assert c.object(2).gen_degrees == (2 * s,)


def test_power_three_h0_total(Rxy):
    c = koszul(spec_of(Rxy, 3))
    total = sum(c.homology_dim(0, d) for d in range(0, 12))
    assert total == 9
    x, y = Rxy.gens()
    for d in range(0, 12):
        assert c.homology_dim(0, d) == quotient_module_piece_dim(Rxy, [x ** 3, y ** 3], d)


def test_transition_identity(Rxy):
    f = koszul_transition_map(spec_of(Rxy), 2, 2)
    for n in (0, 1, 2):
        assert f.mat(n) == f.mat(n)  # shape sanity
        m = f.mat(n)
        assert all(p == Rxy.one() for (i, j), p in m.entries.items() if i == j)


def test_transition_functoriality(Rxy):
    spec = spec_of(Rxy)
    f32 = koszul_transition_map(spec, 3, 2)
    f21 = koszul_transition_map(spec, 2, 1)
    f31 = koszul_transition_map(spec, 3, 1)
    comp = f21.compose(f32)
    for n in (0, 1, 2):
        assert comp.mat(n) == f31.mat(n)


def test_tower_h0_transition_is_canonical_quotient(Rxy):
    tower = koszul_tower(spec_of(Rxy), 3)
    # degree 0: every stage has H_0 = Q and the transition is the identity
    for s in (1, 2):
        m = tower.transition_matrix(s, 0, 0)
        assert m.rank() == 1
    # degree 1: stage 1 has H_0 = 0, stage 2 has H_0 = (R/(x^2,y^2))_1
    assert tower.stage(2).homology_dim(0, 1) == 2
    assert tower.stage(1).homology_dim(0, 1) == 0


def test_regular_tower_pro_zero(Rxy):
    tower = koszul_tower(spec_of(Rxy), 4)
    for s in range(1, 5):
        for k in (1, 2):
            for d in range(-5, 10):
                assert tower.stage(s).homology_dim(k, d) == 0


def test_koszul_resolution_binomial_ranks():
    for names in (("x",), ("x", "y"), ("x", "y", "z")):
        ring = GradedPolyRing(names, (1,) * len(names))
        c, quotient = koszul_resolution(ring, ring.gens(), Window(-3, 8))
        n = len(names)
        for k in range(n + 1):
            assert c.object(k).rank == comb(n, k)
        assert c.homology_dim(0, 0) == 1


def test_koszul_resolution_rejects_nonregular():
    base = GradedPolyRing(("x", "y"), (1, 1))
    x0, y0 = base.gens()
    S = GradedPolyRing(("x", "y"), (1, 1), relations=[x0 * y0])
    with pytest.raises(NotRegular):
        koszul_resolution(S, S.gens(), Window(-2, 8))


def test_self_duality_one_to_three_generators():
    for names, degs in ((("x",), (2,)), (("x", "y"), (1, 1)), (("x", "y", "z"), (1, 2, 2))):
        ring = GradedPolyRing(names, degs)
        report = self_duality_table(spec_of(ring), Window(-8, 8))
        assert report["match"], report


def test_self_duality_empty_generators(Rxy):
    spec = KoszulSpec(Rxy, ())
    report = self_duality_table(spec, Window(-4, 4))
    assert report["match"]
    assert report["suspension"] == {"homological": 0, "internal": 0}


def test_multiplication_tower_on_residue_field(Rxy):
    x, _ = Rxy.gens()
    k = FPGradedModule.residue_field(Rxy)
    tower = multiplication_tower(k, x, 4)
    reports = lim_and_lim1(tower, Window(-4, 4), 0)
    for rep in reports.values():
        assert rep.lim_dim == 0 and rep.lim1_dim == 0 and rep.stabilized


def test_multiplication_tower_on_free_module():
    ring = GradedPolyRing(("x",), (1,))
    (x,) = ring.gens()
    R = FPGradedModule.free(ring, (0,))
    tower = multiplication_tower(R, x, 6)
    reports = lim_and_lim1(tower, Window(0, 3), 0)
    # images x^t R exit every fixed degree, so the limit vanishes degreewise
    for rep in reports.values():
        assert rep.lim_dim == 0 and rep.stabilized


def test_multiplication_tower_on_koszul_tensor(Rxy):
    x, y = Rxy.gens()
    m = FPGradedModule.quotient_by(Rxy, [x ** 2])
    c = koszul(spec_of(Rxy)).tensor_module(m)
    tower = multiplication_tower(c, x, 4)
    for k in (0, 1, 2):
        reports = lim_and_lim1(tower, Window(-4, 8), k)
        for rep in reports.values():
            assert rep.lim_dim == 0 and rep.lim1_dim == 0 and rep.stabilized
