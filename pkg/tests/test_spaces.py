"""Harmonic and monogenic polynomial spaces, Fischer projection, zonal kernels."""

import math
from fractions import Fraction

import pytest

from rsclifford.algebra import Multivector
from rsclifford.polynomials import CliffordPoly
from rsclifford.spaces import (
    MonogenicBasis,
    ZonalKernel,
    constant_value,
    dump_basis,
    fischer_complement,
    fischer_project,
    harmonic_dimension,
    load_basis,
    monogenic_dimension,
    scalar_harmonic_basis,
    swap_slots,
    x_degree_part,
)


@pytest.mark.parametrize(
    "m, k, expected",
    [(3, 0, 1), (3, 1, 3), (3, 2, 5), (3, 3, 7), (4, 2, 9), (5, 2, 14)],
)
def test_harmonic_dimension(m, k, expected):
    assert harmonic_dimension(m, k) == expected


@pytest.mark.parametrize(
    "m, k, expected",
    [(3, 0, 8), (3, 1, 16), (3, 2, 24), (4, 1, 48), (4, 2, 96)],
)
def test_monogenic_dimension(m, k, expected):
    # 2^m binomial(m + k - 2, k)
    assert monogenic_dimension(m, k) == expected
    assert expected == (1 << m) * math.comb(m + k - 2, k)


@pytest.mark.parametrize("m, k", [(3, 2), (4, 2)])
def test_scalar_harmonics_are_harmonic(m, k):
    basis = scalar_harmonic_basis(m, k)
    assert len(basis) == harmonic_dimension(m, k)
    for h in basis:
        assert h.laplacian_u().is_zero()
        assert h.is_homogeneous_u(k)


@pytest.mark.parametrize("m, k", [(3, 1), (3, 2), (4, 1)])
def test_fischer_split(m, k):
    u = CliffordPoly.u_vector(m)
    lower = MonogenicBasis.build(m, k - 1)
    for mask in range(1 << m):
        for h in scalar_harmonic_basis(m, k):
            hb = h.rmul(Multivector(m, {mask: 1}))
            p = fischer_project(hb)
            q = fischer_complement(hb)
            assert p + q == hb
            assert p.dirac_u().is_zero()
            assert fischer_project(p) == p
    for g in lower.elements:
        assert fischer_project(u * g).is_zero()
        assert fischer_complement(u * g) == u * g


def test_fischer_project_x_slot():
    # the split is a statement about harmonics, so feed it one
    m = 3
    x1 = CliffordPoly.x_var(m, 1)
    x2 = CliffordPoly.x_var(m, 2)
    p = x1 * x1 - x2 * x2
    assert p.laplacian_x().is_zero()
    out = fischer_project(p, slot="x")
    assert out.dirac_x().is_zero()
    assert fischer_project(out, slot="x") == out


def test_basis_build_and_coords(basis31):
    basis = basis31
    assert basis.dim == monogenic_dimension(3, 1)
    assert len(basis) == basis.dim
    combo = basis.combine([Fraction(i + 1, 3) for i in range(basis.dim)])
    coords = basis.coords(combo)
    assert coords == [Fraction(i + 1, 3) for i in range(basis.dim)]
    # homogeneous of the right degree but not monogenic: outside the span
    assert basis.coords(CliffordPoly.u_var(3, 1)) is None
    with pytest.raises(ValueError):
        basis.coords(basis[0] + CliffordPoly.scalar(3, Fraction(1)))
    with pytest.raises(ValueError):
        basis.coords(CliffordPoly.u_vector(3) * basis[0])


def test_basis_elements_are_monogenic(basis31):
    for el in basis31:
        assert el.dirac_u().is_zero()
        assert el.is_homogeneous_u(1)


def test_gram_is_symmetric_rational(basis31):
    g = basis31.gram()
    n = basis31.dim
    for i in range(n):
        assert g[i][i] > 0
        for j in range(n):
            assert g[i][j] == g[j][i]
            assert isinstance(g[i][j], Fraction)


@pytest.mark.parametrize("m, k", [(3, 0), (3, 1), (3, 2)])
def test_zonal_reproduces_and_annihilates(m, k):
    zk = ZonalKernel.build(m, k)
    basis = MonogenicBasis.build(m, k)
    for f in basis.elements:
        assert zk.apply(f) == f
    if k > 0:
        u = CliffordPoly.u_vector(m)
        for g in MonogenicBasis.build(m, k - 1).elements:
            assert zk.apply(u * g).is_zero()


def test_zonal_degree_zero_is_identity():
    zk = ZonalKernel.build(3, 0)
    one = Multivector.scalar(3, Fraction(1))
    assert zk.evaluate([Fraction(1), 0, 0], [0, Fraction(1), 0]) == one


def test_zonal_second_slot_consistency():
    # the remaining argument of Z_k(., v) lives in the x slot
    zk = ZonalKernel.build(3, 1)
    v = [Fraction(1, 2), Fraction(1, 3), Fraction(-1)]
    u = [Fraction(0), Fraction(2), Fraction(1, 5)]
    slice_poly = zk.second_slot_at(v)
    assert constant_value(slice_poly.evaluate(x=u)) == zk.evaluate(u, v)


def test_dump_and_load_roundtrip(tmp_path, basis31):
    path = tmp_path / "basis.json"
    dump_basis(basis31, path)
    loaded = load_basis(path)
    assert loaded.m == basis31.m
    assert loaded.k == basis31.k
    assert loaded.dim == basis31.dim
    for a, b in zip(loaded.elements, basis31.elements):
        assert a == b
    combo = basis31.combine([Fraction(1)] * basis31.dim)
    assert loaded.coords(combo) == basis31.coords(combo)


def test_slot_helpers():
    m = 3
    p = CliffordPoly.x_var(m, 1) * CliffordPoly.u_var(m, 2)
    assert swap_slots(p) == CliffordPoly.u_var(m, 1) * CliffordPoly.x_var(m, 2)
    assert x_degree_part(p, 1) == p
    assert x_degree_part(p, 0).is_zero()
    with pytest.raises(ValueError):
        constant_value(p)
