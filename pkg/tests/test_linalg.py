"""Exact linear algebra over rationals."""

import random
from fractions import Fraction

import pytest

from rsclifford.linalg import (
    EchelonBasis,
    inverse,
    is_positive_definite,
    mat_vec,
    nullspace,
    rank,
    rref,
    solve,
    to_exact,
    to_fraction,
)


def random_matrix(rng, n, m):
    return [
        [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(m)]
        for _ in range(n)
    ]


def test_solve_roundtrip():
    rng = random.Random(7)
    for _ in range(10):
        n = rng.randint(1, 6)
        a = random_matrix(rng, n, n)
        if rank(a) < n:
            continue
        cols = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(2)]
        sols = solve(a, cols)
        for x, b in zip(sols, cols):
            assert mat_vec(a, x) == b


def test_solve_accepts_plain_ints_and_fractions():
    # regression: mixed int/Fraction inputs must normalize before
    # elimination touches them
    a = [[2, 1], [1, Fraction(1, 2)]]
    with pytest.raises(ValueError):
        solve(a, [[1, 1]])
    a = [[2, 1], [0, Fraction(1, 2)]]
    (x,) = solve(a, [[1, 1]])
    assert mat_vec(a, x) == [Fraction(1), Fraction(1)]


def test_solve_does_not_mutate_input():
    a = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    before = [row[:] for row in a]
    solve(a, [[Fraction(1), Fraction(0)]])
    assert a == before


def test_inverse():
    a = [[Fraction(2), Fraction(1)], [Fraction(5), Fraction(3)]]
    inv = inverse(a)
    ident = [
        [sum(a[i][k] * inv[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    assert ident == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_rank_and_nullspace():
    a = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(a) == 2
    null = nullspace(a, 3)
    assert len(null) == 1
    assert mat_vec(a, null[0]) == [0, 0, 0]


def test_rref_idempotent():
    rng = random.Random(11)
    a = random_matrix(rng, 4, 6)
    r1, pivots = rref(a)
    r2, pivots2 = rref([row[:] for row in r1])
    assert r1 == r2
    assert pivots == pivots2


def test_positive_definite():
    assert is_positive_definite([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]])
    assert not is_positive_definite([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])
    assert not is_positive_definite([[Fraction(0)]])


def test_to_exact_and_to_fraction():
    assert to_fraction(to_exact(Fraction(3, 7))) == Fraction(3, 7)
    assert to_fraction(to_exact(5)) == 5
    assert isinstance(to_fraction(to_exact(Fraction(1, 3))), Fraction)


def test_echelon_basis_coords():
    basis = EchelonBasis(3)
    assert basis.add([Fraction(1), Fraction(0), Fraction(1)])
    assert basis.add([Fraction(0), Fraction(1), Fraction(1)])
    # dependent vector is rejected
    assert not basis.add([Fraction(1), Fraction(1), Fraction(2)])
    assert basis.dim == 2
    coords = basis.coords([Fraction(2), Fraction(3), Fraction(5)])
    assert coords is not None
    assert basis.coords([Fraction(0), Fraction(0), Fraction(1)]) is None
