import random
from fractions import Fraction

import pytest

from localhom.errors import NotContained
from localhom.linalg import (
    QuotientSpace,
    SparseMatrix,
    Subspace,
    rank_kernel_image,
    solve,
    subspace_quotient_dim,
)


def M(rows):
    entries = {}
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            if a:
                entries[(i, j)] = Fraction(a)
    ncols = len(rows[0]) if rows else 0
    return SparseMatrix(len(rows), ncols, entries)


def test_empty_matrix():
    rank, ker, im = rank_kernel_image(SparseMatrix(0, 0))
    assert rank == 0 and ker.dim == 0 and im.dim == 0


def test_identity_rank():
    rank, ker, im = rank_kernel_image(SparseMatrix.identity(3))
    assert rank == 3 and ker.dim == 0 and im.dim == 3


def test_rank_one_kernel():
    m = M([[1, 2], [2, 4]])
    rank, ker, im = rank_kernel_image(m)
    assert rank == 1
    assert ker.dim == 1
    # kernel spanned by (-2, 1); RREF normalizes the leading entry to 1
    assert ker.contains_vec({0: Fraction(-2), 1: Fraction(1)})


def test_kernel_vectors_annihilated():
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randrange(0, 5)
        cols = rng.randrange(0, 5)
        entries = {}
        for i in range(rows):
            for j in range(cols):
                if rng.random() < 0.5:
                    entries[(i, j)] = Fraction(rng.randrange(-3, 4))
        m = SparseMatrix(rows, cols, entries)
        rank, ker, im = rank_kernel_image(m)
        assert rank + ker.dim == cols
        assert rank == rank_kernel_image(m.transpose())[0]
        for v in ker.basis:
            assert m.apply(v) == {}
        for col in m.columns():
            assert im.contains_vec(col)


def test_quotient_dim():
    a = Subspace.from_spanning([{0: Fraction(1)}, {1: Fraction(1)}], 3)
    b = Subspace.from_spanning([{0: Fraction(1), 1: Fraction(1)}], 3)
    assert subspace_quotient_dim(a, b) == 1
    assert subspace_quotient_dim(a, a) == 0
    full = Subspace.from_spanning([{0: Fraction(1)}, {1: Fraction(1)}], 2)
    zero = Subspace(2)
    assert subspace_quotient_dim(full, zero) == 2
    with pytest.raises(NotContained):
        subspace_quotient_dim(b, a)


def test_solve_identity():
    m = SparseMatrix.identity(3)
    v = {0: Fraction(2), 2: Fraction(-5)}
    assert solve(m, v) == v


def test_solve_free_variable_convention():
    m = M([[1, 1]])
    assert solve(m, {0: Fraction(3)}) == {0: Fraction(3)}


def test_solve_inconsistent():
    m = SparseMatrix(1, 1)
    assert solve(m, {0: Fraction(1)}) is None


def test_solve_random_consistency():
    rng = random.Random(11)
    for _ in range(25):
        rows, cols = rng.randrange(1, 5), rng.randrange(1, 5)
        entries = {
            (i, j): Fraction(rng.randrange(-2, 3))
            for i in range(rows)
            for j in range(cols)
            if rng.random() < 0.6
        }
        m = SparseMatrix(rows, cols, entries)
        x = {j: Fraction(rng.randrange(-2, 3)) for j in range(cols)}
        rhs = m.apply(x)
        got = solve(m, rhs)
        assert got is not None
        assert m.apply(got) == rhs


def test_quotient_space_coords_roundtrip():
    sub = Subspace.from_spanning([{0: Fraction(1), 1: Fraction(1)}], 3)
    q = QuotientSpace(3, sub)
    assert q.dim == 2
    for k in range(q.dim):
        v = q.lift(k)
        assert q.coords(v) == {k: Fraction(1)}
    # the killed direction maps to zero coordinates
    assert q.coords({0: Fraction(2), 1: Fraction(2)}) == {}


def test_matmul_apply_agree():
    a = M([[1, 0, 2], [0, 3, 0]])
    b = M([[1, 1], [0, 1], [2, 0]])
    ab = a.matmul(b)
    for j in range(2):
        assert ab.column(j) == a.apply(b.column(j))
