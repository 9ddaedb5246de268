"""L2 structure for spin fields on a ball: inner products, coefficient
expansions, orthogonality of the kernel against the image of R_k, and a
discrete Bergman projection on truncated polynomial spaces.

The pairing <f, g> = int_Omega int_S conj(f(x, v)) g(x, v) dS(v) dx is
computed with both measures divided by omega_{m-1}, so every value here
is the raw pairing over omega^2.  Ratios, orthogonality statements, and
Gram solves are unchanged by that normalization, and it is what keeps
polynomial pairings inside exact rational arithmetic.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from fractions import Fraction

import numpy as np

from .algebra import EXACT, Multivector
from .higherspin import exact_point, kernel_dimension, rarita_schwinger, solve_polynomial_kernel
from .linalg import is_positive_definite, solve, to_fraction
from .polynomials import CliffordPoly, Monomial, ball_moment, integrate_ball, integrate_sphere, omega
from .quadrature import BallRule, SphereRule, weighted_sum
from .spaces import (
    MonogenicBasis,
    constant_value,
    monomial_exponents,
    scalar_sphere_pairing,
    x_degree_part,
)
from .transforms import SphereDomain, VolumeField

__all__ = [
    "polynomial_field",
    "zero_trace_field",
    "boundary_vanishes",
    "inner_product",
    "scalar_inner_product",
    "l2_norm",
    "hodge_orthogonality_check",
    "pointwise_l2_diagnostic",
    "CoefficientField",
    "TruncatedL2Space",
    "discrete_bergman_projection",
]


def _conj(poly: CliffordPoly) -> CliffordPoly:
    return poly.map_coefficients(lambda c: c.conjugate())


def _exact_domain(domain: SphereDomain) -> bool:
    return exact_point(domain.center) and not isinstance(domain.radius, float)


def polynomial_field(poly: CliffordPoly, domain: SphereDomain, k: int | None = None) -> VolumeField:
    """Wrap an exact polynomial as a field over the ball.

    The zero-trace flag is certified on the spot when the domain data is
    rational; otherwise it stays unknown.
    """
    if k is None:
        k = poly.degree_u()
    flt = poly.to_float()

    def slice_fn(x):
        if exact_point(x):
            return poly.evaluate(x=list(x))
        return flt.evaluate(x=[float(c) for c in x])

    trace = boundary_vanishes(poly, domain) if _exact_domain(domain) else None
    return VolumeField(poly.m, k, domain, slice_fn, poly=poly, zero_trace=trace)


def zero_trace_field(q: CliffordPoly, domain: SphereDomain) -> VolumeField:
    """The field (R^2 - |x - c|^2) q(x, u), which vanishes on the boundary."""
    m = q.m
    if not _exact_domain(domain):
        raise ValueError("zero-trace fixtures need a rational center and radius")
    r2 = CliffordPoly.scalar(m, Fraction(domain.radius) ** 2)
    for i in range(1, m + 1):
        xi = CliffordPoly.x_var(m, i) - CliffordPoly.scalar(m, Fraction(domain.center[i - 1]))
        r2 = r2 - xi * xi
    return polynomial_field(r2 * q, domain)


def boundary_vanishes(poly: CliffordPoly, domain: SphereDomain) -> bool:
    """Exact certificate that a polynomial vanishes on the boundary sphere.

    Integrates the squared coefficient sum over boundary times spin
    sphere; the integrand is nonnegative, so a zero integral forces
    identical vanishing there.
    """
    m = poly.m
    sq = _conj(poly) * poly
    scal = sq.map_coefficients(lambda c: Multivector.scalar(m, c.scalar_part()))
    shifted = scal.shift_x(list(domain.center))
    radius = Fraction(domain.radius)
    total = Fraction(0)
    for d in range(shifted.degree_x() + 1):
        part = x_degree_part(shifted, d)
        if part.is_zero():
            continue
        both = integrate_sphere(integrate_sphere(part, slot="x"), slot="u")
        total += Fraction(constant_value(both).scalar_part()) * radius ** d
    return total == 0


def _pairing_poly(f: CliffordPoly, g: CliffordPoly, domain: SphereDomain) -> Multivector:
    prod = _conj(f) * g
    over_u = integrate_sphere(prod, slot="u")
    shifted = over_u.shift_x(list(domain.center))
    radius = domain.radius
    if isinstance(radius, float):
        radius = Fraction(radius)
    return constant_value(integrate_ball(shifted, radius))


def _pairing_numeric(f: VolumeField, g: VolumeField, sphere_order: int, radial_order: int) -> Multivector:
    m = f.m
    domain = f.domain
    rule = BallRule(m, sphere_order, radial_order, radius=domain.radius_float(), center=domain.center_floats())
    pairs = []
    for x, w in rule.points():
        prod = _conj(f.slice_at(x)) * g.slice_at(x)
        pairs.append((w, constant_value(integrate_sphere(prod, slot="u"))))
    return weighted_sum(m, pairs) * (1.0 / omega(m))


def inner_product(f: VolumeField, g: VolumeField, sphere_order: int = 12, radial_order: int = 10) -> Multivector:
    """<f, g> over the shared ball, in units of omega_{m-1} squared.

    Exact (rational multivector) when both fields carry polynomial
    backing; quadrature otherwise.
    """
    if f.m != g.m or f.domain is not g.domain and (
        f.domain.center_floats() != g.domain.center_floats()
        or f.domain.radius_float() != g.domain.radius_float()
    ):
        raise ValueError("fields live on different domains")
    if f.poly is not None and g.poly is not None:
        return _pairing_poly(f.poly, g.poly, f.domain)
    return _pairing_numeric(f, g, sphere_order, radial_order)


def scalar_inner_product(f: VolumeField, g: VolumeField, **kw):
    """Scalar part of the pairing: the real inner product."""
    return inner_product(f, g, **kw).scalar_part()


def l2_norm(f: VolumeField, **kw) -> float:
    return math.sqrt(float(scalar_inner_product(f, f, **kw)))


def hodge_orthogonality_check(
    phi,
    g: VolumeField,
    require_zero_trace: bool = True,
    sphere_order: int = 12,
    radial_order: int = 10,
):
    """Normalized residual |Sc<phi, R_k g>| / (|phi| |R_k g|).

    phi is a null solution (a FermionicPoly or a field backed by one) and
    g a field vanishing on the boundary; the Stokes argument behind the
    orthogonal decomposition makes the pairing vanish, exactly so in the
    rational regime.  Pass require_zero_trace=False to run the negative
    control on a field with boundary values.
    """
    domain = g.domain
    phi_poly = getattr(phi, "poly", None)
    if phi_poly is None:
        raise ValueError("phi needs polynomial backing")
    if require_zero_trace:
        flag = g.zero_trace
        if flag is None and g.poly is not None and _exact_domain(domain):
            flag = boundary_vanishes(g.poly, domain)
        if not flag:
            raise ValueError("g is not certified to vanish on the boundary")
    phi_field = phi if isinstance(phi, VolumeField) else polynomial_field(phi_poly, domain)
    if g.poly is not None:
        rg = polynomial_field(rarita_schwinger(g.poly), domain)
        num = _pairing_poly(phi_field.poly, rg.poly, domain).scalar_part()
    else:
        raise ValueError("the orthogonality check needs polynomial backing for g")
    denom = l2_norm(phi_field) * l2_norm(rg)
    if denom == 0.0:
        return Fraction(0)
    if num == 0:
        return Fraction(0)
    return abs(float(num)) / denom


def pointwise_l2_diagnostic(
    f: VolumeField,
    fraction: float = 0.5,
    grid_order: int = 8,
    grid_radial: int = 5,
    spin_order: int = 8,
) -> float:
    """sup |f| over a compact concentric sub-ball divided by the L2 norm.

    The supremum runs over a deterministic sample grid in D x S^{m-1}
    with D = B(center, fraction * R).  The ratio is an empirical sample
    of the interior bound constant; norms carry the omega-normalized
    units used throughout this module.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must sit strictly inside (0, 1)")
    norm = l2_norm(f)
    if norm == 0.0:
        raise ValueError("the diagnostic needs a nonzero field")
    m = f.m
    domain = f.domain
    grid = BallRule(m, grid_order, grid_radial, radius=fraction * domain.radius_float(), center=domain.center_floats())
    spin = SphereRule(m, spin_order)
    points = [x for x, _ in grid.points()]
    points.append(domain.center_floats())
    sup = 0.0
    for x in points:
        slice_ = f.slice_at(x)
        for v, _ in spin.points():
            val = constant_value(slice_.evaluate(u=v))
            sup = max(sup, val.norm())
    return sup / norm


# ----------------------------------------------------------------------
# coefficient expansions

class CoefficientField:
    """A field expanded over a real monogenic basis: f(x,u) = sum phi_j(u) a_j(x).

    Polynomial-backed fields get exact scalar coefficient polynomials via
    echelon coordinates; sampled fields solve the spherical Gram system
    at each requested x.
    """

    def __init__(self, basis: MonogenicBasis, domain: SphereDomain, coefficient_polys=None, sampler=None):
        self.basis = basis
        self.domain = domain
        self.coefficient_polys = coefficient_polys
        self._sampler = sampler
        self._float_elements = None

    @classmethod
    def decompose(cls, field: VolumeField, basis: MonogenicBasis | None = None) -> "CoefficientField":
        if basis is None:
            basis = MonogenicBasis.build(field.m, field.k)
        m = field.m
        poly = field.poly
        if poly is not None and all(c.regime == EXACT for c in poly.terms.values()):
            by_x: dict[tuple, dict] = defaultdict(dict)
            zero = tuple([0] * m)
            for mono, coef in poly.terms.items():
                by_x[mono.x][Monomial(zero, mono.u)] = coef
            coeff_terms = [dict() for _ in range(basis.dim)]
            for exps, terms in by_x.items():
                coords = basis.coords(CliffordPoly(m, terms))
                if coords is None:
                    raise ValueError("spin slices leave the basis span")
                key = Monomial(exps, zero)
                for j, c in enumerate(coords):
                    if c:
                        coeff_terms[j][key] = Multivector.scalar(m, c)
            polys = [CliffordPoly(m, t) for t in coeff_terms]
            return cls(basis, field.domain, coefficient_polys=polys)

        gram = np.array([[float(v) for v in row] for row in basis.gram()])
        ginv = np.linalg.inv(gram)
        flo = [el.to_float() for el in basis.elements]

        def sampler(x):
            slice_ = field.slice_at(x)
            b = np.array([scalar_sphere_pairing(el, slice_) for el in flo])
            return [float(c) for c in ginv @ b]

        return cls(basis, field.domain, sampler=sampler)

    def coefficients(self, x) -> list:
        """Expansion coefficients a_j(x); exact for exact backing and x."""
        if self.coefficient_polys is not None:
            if exact_point(x):
                return [
                    constant_value(p.evaluate(x=list(x))).scalar_part() if p else Fraction(0)
                    for p in self.coefficient_polys
                ]
            xf = [float(c) for c in x]
            return [
                constant_value(p.to_float().evaluate(x=xf)).scalar_part() if p else 0.0
                for p in self.coefficient_polys
            ]
        return self._sampler([float(c) for c in x])

    def slice_at(self, x) -> CliffordPoly:
        """The reconstructed spin slice sum phi_j a_j(x)."""
        coeffs = self.coefficients(x)
        exact = exact_point(coeffs)
        if not exact and self._float_elements is None:
            self._float_elements = [el.to_float() for el in self.basis.elements]
        els = self.basis.elements if exact else self._float_elements
        out = CliffordPoly.zero(self.basis.m)
        for c, el in zip(coeffs, els):
            if c:
                out = out + el.scale(c)
        return out

    def value(self, x, u) -> Multivector:
        slice_ = self.slice_at(x)
        exact = exact_point(list(x) + list(u)) and self.coefficient_polys is not None
        uu = list(u) if exact else [float(c) for c in u]
        return constant_value(slice_.evaluate(u=uu))

    def reconstruction(self) -> CliffordPoly:
        """The full polynomial sum phi_j(u) a_j(x); exact backing only."""
        if self.coefficient_polys is None:
            raise ValueError("sampled fields have no closed-form reconstruction")
        out = CliffordPoly.zero(self.basis.m)
        for el, a in zip(self.basis.elements, self.coefficient_polys):
            if a:
                out = out + el * a
        return out


# ----------------------------------------------------------------------
# truncated space and the discrete projection

class TruncatedL2Space:
    """Span of {x-monomials of degree <= D} x {monogenic basis} on a ball.

    Carries the exact Gram matrix of the real inner product and the
    sub-basis of R_k null solutions up to the degree cap, which is what
    the discrete Bergman projector projects onto.
    """

    def __init__(self, m: int, k: int, degree_cap: int, radius=1, basis: MonogenicBasis | None = None):
        self.m = m
        self.k = k
        self.degree_cap = degree_cap
        self.radius = Fraction(radius)
        self.basis = basis if basis is not None else MonogenicBasis.build(m, k)
        self.domain = SphereDomain([0] * m, self.radius)
        self.x_monomials = [
            e for d in range(degree_cap + 1) for e in monomial_exponents(m, d)
        ]
        self._x_index = {e: i for i, e in enumerate(self.x_monomials)}
        zero = tuple([0] * m)
        self.elements = []
        for exps in self.x_monomials:
            xm = CliffordPoly(m, {Monomial(exps, zero): Multivector.scalar(m, 1)})
            for el in self.basis.elements:
                self.elements.append(xm * el)
        self._gram = None
        self._kernel = None
        self._kernel_gram = None

    @property
    def dim(self) -> int:
        return len(self.elements)

    def gram(self) -> list[list[Fraction]]:
        """Exact Gram of the span basis; separable into x and u factors."""
        if self._gram is None:
            sg = self.basis.gram()
            s = self.basis.dim
            n = self.dim
            g = [[Fraction(0)] * n for _ in range(n)]
            for a, ea in enumerate(self.x_monomials):
                for b, eb in enumerate(self.x_monomials):
                    w = ball_moment(self.m, [p + q for p, q in zip(ea, eb)], self.radius)
                    if not w:
                        continue
                    for i in range(s):
                        row = g[a * s + i]
                        srow = sg[i]
                        for j in range(s):
                            if srow[j]:
                                row[b * s + j] += w * srow[j]
            self._gram = g
        return self._gram

    def gram_positive_definite(self) -> bool:
        return is_positive_definite(self.gram())

    def kernel_elements(self) -> list[CliffordPoly]:
        """Null solutions of R_k with x-degree up to the cap."""
        if self._kernel is None:
            out = []
            for d in range(self.degree_cap + 1):
                out.extend(solve_polynomial_kernel(self.m, self.k, d, basis=self.basis))
            expected = sum(
                kernel_dimension(self.m, self.k, d) for d in range(self.degree_cap + 1)
            )
            if len(out) != expected:
                raise RuntimeError("kernel sub-basis has unexpected dimension")
            self._kernel = out
        return self._kernel

    def kernel_gram(self) -> list[list[Fraction]]:
        if self._kernel_gram is None:
            kerns = self.kernel_elements()
            n = len(kerns)
            g = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    val = Fraction(_pairing_poly(kerns[i], kerns[j], self.domain).scalar_part())
                    g[i][j] = val
                    g[j][i] = val
            self._kernel_gram = g
        return self._kernel_gram

    def coords(self, poly: CliffordPoly):
        """Exact coordinates over the span basis, or None if outside."""
        if poly.m != self.m:
            raise ValueError("dimension mismatch")
        m = self.m
        zero = tuple([0] * m)
        by_x: dict[tuple, dict] = defaultdict(dict)
        for mono, coef in poly.terms.items():
            by_x[mono.x][Monomial(zero, mono.u)] = coef
        s = self.basis.dim
        vec = [Fraction(0)] * self.dim
        for exps, terms in by_x.items():
            pos = self._x_index.get(exps)
            if pos is None:
                return None
            try:
                coords = self.basis.coords(CliffordPoly(m, terms))
            except ValueError:
                return None
            if coords is None:
                return None
            for j, c in enumerate(coords):
                vec[pos * s + j] = c
        return vec

    def contains(self, poly: CliffordPoly) -> bool:
        return self.coords(poly) is not None


def discrete_bergman_projection(space: TruncatedL2Space, f: CliffordPoly):
    """Orthogonal split f = Pf + Qf against the null-solution sub-basis.

    Pf solves the exact Gram system over the kernel elements, so P is
    idempotent, R_k Pf = 0 identically, and Sc<Pf, Qf> = 0 as rational
    numbers.  A warning flags inputs outside the truncated span; their
    span component is what gets projected.
    """
    poly = f.poly if isinstance(f, VolumeField) else f
    if space.coords(poly) is None:
        warnings.warn("input leaves the truncated span; projecting its span component", stacklevel=2)
    kerns = space.kernel_elements()
    rhs = [Fraction(_pairing_poly(kern, poly, space.domain).scalar_part()) for kern in kerns]
    coeffs = solve(space.kernel_gram(), [rhs])[0]
    pf = CliffordPoly.zero(space.m)
    for c, kern in zip(coeffs, kerns):
        if c:
            pf = pf + kern.scale(to_fraction(c))
    return pf, poly - pf
