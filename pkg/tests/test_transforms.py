"""Integral transforms: mean value, Cauchy, Plemelj, Teodorescu."""

from fractions import Fraction

import pytest

from rsclifford.higherspin import solve_polynomial_kernel
from rsclifford.polynomials import CliffordPoly
from rsclifford.spaces import MonogenicBasis, constant_value, fischer_project
from rsclifford.algebra import Multivector
from rsclifford.transforms import (
    FermionicPoly,
    SphereDomain,
    boundary_trace,
    bump_field,
    cauchy_transform,
    mean_value_ball,
    mean_value_pair,
    mean_value_sphere,
    richardson_limit,
    singular_cauchy,
    teodorescu,
    teodorescu_derivative,
    volume_restriction,
)

M, K = 3, 1


@pytest.fixture(scope="module")
def fixture_poly():
    return FermionicPoly(solve_polynomial_kernel(M, K, 1)[7])


@pytest.fixture(scope="module")
def unit_ball():
    return SphereDomain([0.0, 0.0, 0.0], 1.0)


def test_sphere_domain_geometry():
    dom = SphereDomain([1, 0, 0], Fraction(2))
    assert dom.m == 3
    assert dom.boundary_gap([1.0, 0.0, 0.0]) == pytest.approx(2.0)
    assert dom.boundary_gap([4.0, 0.0, 0.0]) == pytest.approx(-1.0)
    assert dom.contains([2.0, 0.5, 0.0])
    assert dom.outward_normal([3.0, 0.0, 0.0]) == [1.0, 0.0, 0.0]


def test_fermionic_certification_rejects_bad_input():
    u1 = CliffordPoly.u_var(M, 1)
    with pytest.raises(ValueError):
        FermionicPoly(u1)  # not monogenic in u
    x1 = CliffordPoly.x_var(M, 1)
    basis = MonogenicBasis.build(M, K)
    with pytest.raises(ValueError):
        FermionicPoly(x1 * basis[0])  # monogenic slices but not a null solution
    with pytest.raises(ValueError):
        FermionicPoly(basis[0].to_float())  # float regime cannot be certified
    assert FermionicPoly(basis[0].to_float(), check=False).k == K


def test_fermionic_slice_regimes(fixture_poly):
    exact = fixture_poly.slice_at([Fraction(1, 2), Fraction(0), Fraction(1, 3)])
    assert all(c.regime == "exact" for c in exact.terms.values())
    floaty = fixture_poly.slice_at([0.5, 0.0, 1 / 3])
    assert all(c.regime == "float" for c in floaty.terms.values())


@pytest.mark.parametrize("d", [0, 1, 2])
def test_mean_value_reproduction_exact(d):
    y = [Fraction(1, 3), Fraction(-1, 5), Fraction(1, 2)]
    r = Fraction(2, 5)
    for sol in solve_polynomial_kernel(M, K, d):
        f = FermionicPoly(sol, check=False)
        sphere, ball = mean_value_pair(f, y, r)
        direct = f.slice_at(y)
        assert sphere == direct
        assert ball == direct
        assert mean_value_sphere(f, y, r) == direct
        assert mean_value_ball(f, y, r) == direct


def test_mean_value_float_regime(fixture_poly):
    y = [0.1, 0.2, -0.3]
    sphere, ball = mean_value_pair(fixture_poly, y, 0.4)
    direct = fixture_poly.slice_at(y)
    for got in (sphere, ball):
        diff = got - direct
        worst = max(
            (abs(c) for coef in diff.terms.values() for c in coef.comps.values()),
            default=0.0,
        )
        assert worst <= 1e-12


def test_cauchy_interior_reproduction(fixture_poly, unit_ball):
    bf = boundary_trace(fixture_poly, unit_ball)
    y = [0.2, 0.1, -0.3]
    u = [0.3, -1.2, 0.7]
    got = cauchy_transform(bf, y, u, order=16)
    want = fixture_poly.value(y, u)
    assert (got - want).norm() <= 1e-6


def test_cauchy_collapsed_and_spin_integral_agree(fixture_poly, unit_ball):
    bf = boundary_trace(fixture_poly, unit_ball)
    y = [0.2, 0.1, -0.3]
    u = [0.3, -1.2, 0.7]
    a = cauchy_transform(bf, y, u, order=10)
    b = cauchy_transform(bf, y, u, order=10, collapsed=False, spin_order=10)
    assert (a - b).norm() <= 1e-10


def test_cauchy_exterior_decay(fixture_poly, unit_ball):
    bf = boundary_trace(fixture_poly, unit_ball)
    u = [0.3, -1.2, 0.7]
    errs = [cauchy_transform(bf, [1.5, 0.2, 0.3], u, order=o).norm() for o in (10, 16, 22)]
    assert errs[2] < errs[0]
    assert errs[2] <= 1e-4


def test_cauchy_symbolic_spin_slot(fixture_poly, unit_ball):
    bf = boundary_trace(fixture_poly, unit_ball)
    y = [0.2, 0.1, -0.3]
    u = [0.3, -1.2, 0.7]
    poly = cauchy_transform(bf, y, order=12)
    direct = cauchy_transform(bf, y, u, order=12)
    assert (constant_value(poly.evaluate(u=u)) - direct).norm() <= 1e-12


def test_richardson_limit_recovers_polynomial_limit():
    # values v(h) = 3 - 2 h + 5 h^2 at h = .4, .2, .1 extrapolate to 3
    vals = [Multivector.scalar(2, 3.0 - 2.0 * h + 5.0 * h * h) for h in (0.4, 0.2, 0.1)]
    out = richardson_limit(vals, [0.4, 0.2, 0.1])
    assert out.scalar_part() == pytest.approx(3.0, abs=1e-12)


def test_singular_cauchy_is_half_trace(fixture_poly, unit_ball):
    bf = boundary_trace(fixture_poly, unit_ball)
    p = [0.0, 0.0, 1.0]
    u = [0.3, -1.2, 0.7]
    got = singular_cauchy(bf, p, u, eps=0.2, levels=2, azimuth_order=12)
    want = fixture_poly.value(p, u) * 0.5
    assert (got - want).norm() <= 2e-3


def test_teodorescu_right_inverse_on_bump(unit_ball):
    basis = MonogenicBasis.build(M, K)
    field = bump_field(M, K, basis.elements[2], unit_ball, 0.8)
    assert field.zero_trace
    u = [0.3, -1.2, 0.7]
    for y in ([0.1, -0.2, 0.2], [-0.3, 0.1, 0.4]):
        acc = CliffordPoly.zero(M)
        for i in range(1, M + 1):
            der = teodorescu_derivative(field, y, i, sphere_order=10, n_inner=8, n_shell=10)
            acc = acc + der.lmul(Multivector.basis_vector(M, i, 1.0))
        got = constant_value(fischer_project(acc, slot="u").evaluate(u=u))
        want = constant_value(field.slice_at(y).evaluate(u=u))
        assert (got - want).norm() <= 1e-10


def test_teodorescu_derivative_matches_fd_on_polynomial(fixture_poly, unit_ball):
    field = volume_restriction(fixture_poly, unit_ball)
    y = [0.15, -0.1, 0.2]
    u = [0.3, -1.2, 0.7]
    h = 1e-3
    i = 2
    der = teodorescu_derivative(field, y, i, u=u, sphere_order=10, n_inner=8, n_shell=10)

    def at(s):
        q = list(y)
        q[i - 1] += s
        return teodorescu(field, q, u=u, sphere_order=10, n_inner=8, n_shell=10)

    fd = (at(2 * h) * (-1.0) + at(h) * 8.0 + at(-h) * (-8.0) + at(-2 * h)) * (
        1.0 / (12 * h)
    )
    assert (der - fd).norm() <= 1e-8


def test_teodorescu_outside_evaluation(fixture_poly, unit_ball):
    # outside the domain the transform is smooth and decays with distance
    field = volume_restriction(fixture_poly, unit_ball)
    u = [0.3, -1.2, 0.7]
    far = teodorescu(field, [3.0, 0.0, 0.0], u=u, sphere_order=10, outer_radial=12)
    near = teodorescu(field, [1.5, 0.0, 0.0], u=u, sphere_order=10, outer_radial=12)
    assert far.norm() < near.norm()


def test_teodorescu_requires_point_off_boundary(fixture_poly, unit_ball):
    field = volume_restriction(fixture_poly, unit_ball)
    with pytest.raises(ValueError):
        teodorescu(field, [1.0, 0.0, 0.0], u=[1.0, 0.0, 0.0])
