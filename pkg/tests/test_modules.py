import pytest

from localhom.errors import RingMismatch
from localhom.modules import FPGradedModule, Window, graded_dual, hom_degreewise
from localhom.rings import GradedPolyRing, parse_poly

from oracles import quotient_module_piece_dim


@pytest.fixture
def Rx2():
    return GradedPolyRing(("x",), (2,))


@pytest.fixture
def Rxy():
    return GradedPolyRing(("x", "y"), (1, 1))


def QQ(ring):
    return FPGradedModule.residue_field(ring)


def test_ring_as_module_pieces(Rx2):
    R = FPGradedModule.free(Rx2, (0,))
    assert R.piece_dim(2) == 1
    assert R.piece_dim(1) == 0
    assert R.piece_dim(0) == 1
    assert R.piece_dim(-2) == 0


def test_residue_field_pieces(Rx2):
    k = QQ(Rx2)
    assert k.piece_dim(0) == 1
    assert k.piece_dim(2) == 0


def test_torsion_module_dims(Rxy):
    x, y = Rxy.gens()
    m = FPGradedModule.quotient_by(Rxy, [x ** 3, y ** 3])
    assert m.piece_dim(2) == 3
    # against the linear-algebra oracle in a window
    for d in range(0, 7):
        assert m.piece_dim(d) == quotient_module_piece_dim(Rxy, [x ** 3, y ** 3], d)


def test_shift_pieces(Rxy):
    m = QQ(Rxy)
    s = m.shift(2)
    for d in range(-3, 4):
        assert s.piece_dim(d) == m.piece_dim(d - 2)
    back = s.shift(-2)
    for d in range(-3, 4):
        assert back.piece_dim(d) == m.piece_dim(d)


def test_tensor_unit_law(Rxy):
    x, y = Rxy.gens()
    R = FPGradedModule.free(Rxy, (0,))
    for m in (QQ(Rxy), FPGradedModule.quotient_by(Rxy, [x ** 2, y ** 3])):
        t = m.tensor(R)
        for d in range(-2, 8):
            assert t.piece_dim(d) == m.piece_dim(d)


def test_tensor_residue_fields(Rx2):
    k = QQ(Rx2)
    t = k.tensor(k)
    assert t.piece_dim(0) == 1
    assert all(t.piece_dim(d) == 0 for d in range(1, 6))


def test_tensor_of_cyclic_quotients(Rxy):
    x, y = Rxy.gens()
    a = FPGradedModule.quotient_by(Rxy, [x])
    b = FPGradedModule.quotient_by(Rxy, [y])
    t = a.tensor(b)
    c = FPGradedModule.quotient_by(Rxy, [x, y])
    for d in range(0, 8):
        assert t.piece_dim(d) == c.piece_dim(d)


def test_tensor_dims_against_swap(Rxy):
    x, y = Rxy.gens()
    m = FPGradedModule.quotient_by(Rxy, [x ** 2, x * y])
    n = FPGradedModule.quotient_by(Rxy, [y ** 2]).shift(1)
    mn, nm = m.tensor(n), n.tensor(m)
    for d in range(-2, 10):
        assert mn.piece_dim(d) == nm.piece_dim(d)


def test_tensor_ring_mismatch(Rxy, Rx2):
    with pytest.raises(RingMismatch):
        QQ(Rxy).tensor(QQ(Rx2))


def test_hom_free_source(Rx2):
    R = FPGradedModule.free(Rx2, (0,))
    k = QQ(Rx2)
    h = hom_degreewise(R, k, Window(-4, 4))
    for d in range(-4, 5):
        assert h[d]["dim"] == k.piece_dim(d)


def test_hom_residue_into_itself(Rx2):
    k = QQ(Rx2)
    h = hom_degreewise(k, k, Window(0, 0))
    assert h[0]["dim"] == 1


def test_hom_torsion_into_ring_vanishes(Rx2):
    k = QQ(Rx2)
    R = FPGradedModule.free(Rx2, (0,))
    h = hom_degreewise(k, R, Window(-6, 6))
    assert all(v["dim"] == 0 for v in h.values())


def test_graded_dual_dims(Rx2):
    k = QQ(Rx2)
    d0 = graded_dual(k, Window(-4, 4))
    assert d0[0]["dim"] == 1 and all(d0[d]["dim"] == 0 for d in range(-4, 5) if d != 0)
    s = k.shift(2)
    ds = graded_dual(s, Window(-4, 4))
    assert ds[-2]["dim"] == 1
    R = FPGradedModule.free(Rx2, (0,))
    dr = graded_dual(R, Window(-6, 0))
    assert [dr[d]["dim"] for d in (-6, -4, -2, 0)] == [1, 1, 1, 1]
    assert all(dr[d]["dim"] == 0 for d in (-5, -3, -1))


def test_dual_involution_on_dims(Rxy):
    x, y = Rxy.gens()
    m = FPGradedModule.quotient_by(Rxy, [x ** 2, y ** 3]).shift(-1)
    w = Window(-8, 8)
    dual = graded_dual(m, w)
    for d in w:
        assert dual[d]["dim"] == m.piece_dim(-d)
        # double dual flips back
        assert dual[-d]["dim"] == m.piece_dim(d)


def test_mult_matrix_shapes(Rxy):
    x, y = Rxy.gens()
    m = FPGradedModule.quotient_by(Rxy, [x ** 2])
    mm = m.mult_matrix(x, 0)
    assert (mm.rows, mm.cols) == (m.piece_dim(1), m.piece_dim(0))
    # x^2 = 0 in m: multiplying twice is the zero map
    twice = m.mult_matrix(x, 1).matmul(m.mult_matrix(x, 0))
    assert twice.is_zero()


def test_quotient_ring_module(Rxy):
    x0, y0 = Rxy.gens()
    S = GradedPolyRing(("x", "y"), (1, 1), relations=[x0 * y0])
    R = FPGradedModule.free(S, (0,))
    # standard monomials of S: 1; x, y; x^2, y^2; ...
    assert [R.piece_dim(d) for d in range(0, 5)] == [1, 2, 2, 2, 2]
