"""L2 structure on a ball: pairings, orthogonal decomposition, Bergman projection."""

from fractions import Fraction

import pytest

from rsclifford.algebra import Multivector
from rsclifford.higherspin import rarita_schwinger, solve_polynomial_kernel
from rsclifford.hodge import (
    CoefficientField,
    TruncatedL2Space,
    boundary_vanishes,
    discrete_bergman_projection,
    hodge_orthogonality_check,
    inner_product,
    l2_norm,
    pointwise_l2_diagnostic,
    polynomial_field,
    scalar_inner_product,
    zero_trace_field,
)
from rsclifford.polynomials import CliffordPoly
from rsclifford.spaces import MonogenicBasis, constant_value
from rsclifford.transforms import FermionicPoly, SphereDomain, bump_field

M, K = 3, 1


@pytest.fixture(scope="module")
def dom():
    return SphereDomain([0] * M, 1)


@pytest.fixture(scope="module")
def basis():
    return MonogenicBasis.build(M, K)


def test_pairing_frozen_value(dom, basis):
    f0 = polynomial_field(basis.elements[0], dom)
    assert inner_product(f0, f0) == Multivector.scalar(M, Fraction(2, 27))
    assert scalar_inner_product(f0, f0) == Fraction(2, 27)
    assert l2_norm(f0) == pytest.approx(float(Fraction(2, 27)) ** 0.5)


def test_pairing_hermitian_and_positive(dom, basis):
    f = polynomial_field(basis.elements[1], dom)
    g = polynomial_field(basis.elements[4], dom)
    fg = inner_product(f, g)
    gf = inner_product(g, f)
    assert fg.conjugate() == gf
    assert scalar_inner_product(f, f) > 0


def test_pairing_numeric_matches_exact(dom, basis):
    f = polynomial_field(basis.elements[2], dom)
    # strip the polynomial backing to force the quadrature path
    g_no_poly = polynomial_field(basis.elements[2], dom)
    g_no_poly.poly = None
    exact = scalar_inner_product(f, f)
    approx = scalar_inner_product(f, g_no_poly)
    assert approx == pytest.approx(float(exact), abs=1e-12)


def test_pairing_rejects_mismatched_domains(basis):
    f = polynomial_field(basis.elements[0], SphereDomain([0] * M, 1))
    g = polynomial_field(basis.elements[0], SphereDomain([0] * M, 2))
    with pytest.raises(ValueError):
        inner_product(f, g)


def test_boundary_vanishes(dom, basis):
    q = zero_trace_field(basis.elements[3], dom)
    assert q.zero_trace
    assert boundary_vanishes(q.poly, dom)
    assert not boundary_vanishes(basis.elements[3], dom)


def test_zero_trace_field_needs_rational_domain(basis):
    with pytest.raises(ValueError):
        zero_trace_field(basis.elements[0], SphereDomain([0.0] * M, 1.0))


def test_orthogonality_exact_zero(dom, basis):
    x1 = CliffordPoly.x_var(M, 1)
    phis = [FermionicPoly(p) for p in solve_polynomial_kernel(M, K, 0)[:3]]
    qs = [basis.elements[4], x1 * basis.elements[7]]
    for phi in phis:
        for q in qs:
            res = hodge_orthogonality_check(phi, zero_trace_field(q, dom))
            assert res == Fraction(0)


def test_orthogonality_enforces_certification(dom, basis):
    phi = FermionicPoly(solve_polynomial_kernel(M, K, 0)[0])
    g = polynomial_field(basis.elements[4], dom)
    with pytest.raises(ValueError):
        hodge_orthogonality_check(phi, g)


def test_orthogonality_negative_control(dom, basis):
    # frozen control pair: a degree-0 null solution against x1 times a
    # basis element, without the zero-trace factor; the pairing does not
    # vanish and the normalized residual is order one
    phi = FermionicPoly(solve_polynomial_kernel(M, K, 0)[5])
    g = polynomial_field(CliffordPoly.x_var(M, 1) * basis.elements[4], dom)
    res = hodge_orthogonality_check(phi, g, require_zero_trace=False)
    assert float(res) == pytest.approx(1.0, abs=1e-9)


def test_truncated_space_shapes(dom, basis):
    space = TruncatedL2Space(M, K, 1, basis=basis)
    assert space.dim == 4 * basis.dim
    assert space.gram_positive_definite()
    kerns = space.kernel_elements()
    assert len(kerns) == 48
    for f in kerns[:4]:
        assert rarita_schwinger(f).is_zero()
    el = space.elements[17]
    coords = space.coords(el)
    assert coords is not None
    assert coords[17] == 1
    assert space.contains(el)
    assert space.coords(CliffordPoly.u_var(M, 1)) is None


def test_bergman_projection_contracts(dom, basis):
    space = TruncatedL2Space(M, K, 1, basis=basis)
    f = space.elements[5].scale(Fraction(3, 2)) + space.elements[40]
    pf, qf = discrete_bergman_projection(space, f)
    assert pf + qf == f
    assert rarita_schwinger(pf).is_zero()
    pf2, qf2 = discrete_bergman_projection(space, pf)
    assert pf2 == pf
    assert qf2.is_zero()
    # range element is fixed
    fermionic = space.kernel_elements()[3]
    pfix, qfix = discrete_bergman_projection(space, fermionic)
    assert pfix == fermionic
    assert qfix.is_zero()


def test_bergman_projection_warns_outside_span(dom, basis):
    space = TruncatedL2Space(M, K, 1, basis=basis)
    x1 = CliffordPoly.x_var(M, 1)
    outside = x1 * x1 * basis.elements[0]  # degree 2 > cap
    with pytest.warns(UserWarning):
        pf, qf = discrete_bergman_projection(space, outside)
    assert rarita_schwinger(pf).is_zero()


def test_coefficient_field_exact_roundtrip(dom, basis):
    poly = basis.elements[2].scale(Fraction(1, 2)) + CliffordPoly.x_var(M, 3) * basis.elements[9]
    cf = CoefficientField.decompose(polynomial_field(poly, dom), basis)
    assert cf.reconstruction() == poly
    x = [Fraction(1, 4), Fraction(-1, 2), Fraction(1, 3)]
    coeffs = cf.coefficients(x)
    assert coeffs[2] == Fraction(1, 2)
    assert coeffs[9] == Fraction(1, 3)
    assert sum(1 for c in coeffs if c) == 2


def test_coefficient_field_sampled_roundtrip(dom, basis):
    bump = bump_field(M, K, basis.elements[2], dom, 0.8)
    cf = CoefficientField.decompose(bump, basis)
    x = [0.2, -0.1, 0.3]
    v = [0.5, 1.0, -0.2]
    want = constant_value(bump.slice_at(x).evaluate(u=v))
    got = cf.value(x, v)
    assert (got - want).norm() <= 1e-12


def test_pointwise_diagnostic_monotone_and_guards(dom, basis):
    f = polynomial_field(basis.elements[0], dom, k=K)
    small = pointwise_l2_diagnostic(f, fraction=0.4)
    large = pointwise_l2_diagnostic(f, fraction=0.9)
    assert 0 < small <= large
    with pytest.raises(ValueError):
        pointwise_l2_diagnostic(f, fraction=1.5)
    zero = polynomial_field(CliffordPoly.zero(M), dom, k=K)
    with pytest.raises(ValueError):
        pointwise_l2_diagnostic(zero)
