"""Integral transforms attached to the Rarita-Schwinger operator.

Mean value reproduction over spheres and balls, the boundary integral of
Cauchy type with its interior reproduction, principal value and Plemelj
limits, and the volume (Teodorescu) transform with its derivative.

Conventions, fixed across the package: geometric integrals (over the
boundary or the volume) use the raw measure; integrals over the spin
sphere use the normalized measure dS*.  The double spin integral always
collapses through the zonal kernel, so evaluation costs one boundary (or
volume) quadrature:

    int_S E_k(w, u, v) h(v) dS*(v) = (1/c) (conj(w)/|w|^m) P_k[h](w u w/|w|^2)

with c = omega_{m-1} (m-2)/(m+2k-2), and the projection P_k can be
dropped when h is already monogenic.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .algebra import EXACT, Multivector
from .higherspin import (
    FundamentalSolution,
    exact_point,
    inverse_length_power,
    rarita_schwinger,
    reflection_map,
    reflection_partial_y,
)
from .polynomials import CliffordPoly, Monomial, integrate_sphere, omega
from .quadrature import (
    BallRule,
    SurfaceRule,
    boundary_sphere_rule,
    graded_boundary_rule,
    singular_split_rule,
    weighted_poly_sum,
    weighted_sum,
)
from .spaces import constant_value, fischer_project, x_degree_part

__all__ = [
    "SphereDomain",
    "FermionicPoly",
    "BoundaryField",
    "VolumeField",
    "boundary_trace",
    "volume_restriction",
    "bump_field",
    "mean_value_sphere",
    "mean_value_ball",
    "mean_value_pair",
    "cauchy_transform",
    "singular_cauchy",
    "plemelj_boundary_values",
    "teodorescu",
    "teodorescu_derivative",
    "richardson_limit",
]


class SphereDomain:
    """A ball domain, kept as center and radius."""

    def __init__(self, center, radius):
        self.center = list(center)
        self.radius = radius

    @property
    def m(self) -> int:
        return len(self.center)

    def center_floats(self) -> list[float]:
        return [float(c) for c in self.center]

    def radius_float(self) -> float:
        return float(self.radius)

    def boundary_gap(self, y) -> float:
        """Signed distance from y to the boundary; positive inside."""
        c = self.center_floats()
        d = math.sqrt(math.fsum((float(a) - b) ** 2 for a, b in zip(y, c)))
        return self.radius_float() - d

    def contains(self, y) -> bool:
        return self.boundary_gap(y) > 0.0

    def outward_normal(self, x) -> list[float]:
        c = self.center_floats()
        w = [float(a) - b for a, b in zip(x, c)]
        n = math.sqrt(math.fsum(v * v for v in w))
        return [v / n for v in w]


class FermionicPoly:
    """A polynomial null solution of R_k with monogenic spin slices.

    Wraps an exact :class:`CliffordPoly` and certifies on construction
    that it is homogeneous in u, killed by the spin Dirac operator, and
    annihilated by R_k, all exactly.  Float-regime polynomials can only
    be wrapped with ``check=False``.
    """

    def __init__(self, poly: CliffordPoly, check: bool = True):
        self.poly = poly
        self.m = poly.m
        self.k = poly.degree_u()
        if check:
            exact = all(c.regime == EXACT for c in poly.terms.values())
            if not exact:
                raise ValueError("certification needs an exact polynomial")
            if not poly.is_homogeneous_u(self.k):
                raise ValueError("spin degree is not homogeneous")
            if not poly.dirac_u().is_zero():
                raise ValueError("spin slices are not monogenic")
            if not rarita_schwinger(poly).is_zero():
                raise ValueError("polynomial is not a null solution")
        self._float = poly.to_float()

    def slice_at(self, x) -> CliffordPoly:
        """The u-slot polynomial f(x, .); exact for exact x."""
        if exact_point(x):
            return self.poly.evaluate(x=list(x))
        return self._float.evaluate(x=[float(c) for c in x])

    def value(self, x, u) -> Multivector:
        if exact_point(list(x) + list(u)):
            return self.poly.evaluate(x=list(x), u=list(u))
        return self._float.evaluate(x=[float(c) for c in x], u=[float(c) for c in u])


class _FieldBase:
    """A field over a domain, sampled one spin slice at a time.

    ``poly`` carries an exact polynomial backing when there is one, which
    the L2 machinery uses for exact integration; ``zero_trace`` records
    whether the field vanishes on the domain boundary (None = unknown).
    """

    def __init__(self, m: int, k: int, domain: SphereDomain, slice_fn, poly=None, zero_trace=None):
        self.m = m
        self.k = k
        self.domain = domain
        self._slice_fn = slice_fn
        self.poly = poly
        self.zero_trace = zero_trace

    def slice_at(self, x) -> CliffordPoly:
        return self._slice_fn(x)


class BoundaryField(_FieldBase):
    pass


class VolumeField(_FieldBase):
    pass


def boundary_trace(f: FermionicPoly, domain: SphereDomain) -> BoundaryField:
    """The restriction of a null solution to the boundary sphere."""
    return BoundaryField(f.m, f.k, domain, f.slice_at, poly=f.poly)


def volume_restriction(f: FermionicPoly, domain: SphereDomain) -> VolumeField:
    return VolumeField(f.m, f.k, domain, f.slice_at, poly=f.poly)


def bump_field(m: int, k: int, spin_poly: CliffordPoly, domain: SphereDomain, rho: float) -> VolumeField:
    """A smooth compactly supported field: bump(|x - center|) spin_poly(u).

    The profile exp(1 - 1/(1 - s^2)) with s = |x - center|/rho vanishes
    with all derivatives at |x - center| = rho, so the field has zero
    boundary trace whenever rho stays below the domain radius.
    """
    spin_float = spin_poly.to_float()
    zero = CliffordPoly.zero(m)
    center = domain.center_floats()

    def slice_fn(x):
        s2 = math.fsum((float(a) - c) ** 2 for a, c in zip(x, center)) / rho ** 2
        if s2 >= 1.0:
            return zero
        return spin_float.scale(math.exp(1.0 - 1.0 / (1.0 - s2)))

    vanishes = rho <= domain.radius_float()
    return VolumeField(m, k, domain, slice_fn, zero_trace=vanishes)


# ----------------------------------------------------------------------
# mean value reproduction

def _degree_factor(m: int, k: int) -> Fraction:
    return Fraction(m - 2, m + 2 * k - 2)


_reflection_cache: dict = {}


def _symbolic_reflection(m: int, exact: bool) -> dict:
    """eta_s(t, u) with t symbolic in the x slot: u_s - 2 <t, u> t_s."""
    key = (m, exact)
    cached = _reflection_cache.get(key)
    if cached is not None:
        return cached
    dot = CliffordPoly.zero(m)
    for j in range(1, m + 1):
        dot = dot + CliffordPoly.x_var(m, j) * CliffordPoly.u_var(m, j)
    out = {}
    for s in range(1, m + 1):
        rep = CliffordPoly.u_var(m, s) - dot * CliffordPoly.x_var(m, s).scale(2)
        out[s] = rep if exact else rep.to_float()
    _reflection_cache[key] = out
    return out


_component_cache: dict = {}


def _monomial_component(m: int, xe: tuple, ue: tuple, mask: int) -> CliffordPoly:
    """The reflected, projected, t-integrated image of one basis monomial.

    The whole reproduction pipeline is real-linear, so values for the
    monomials x^xe u^ue e_mask determine it; they recur across kernel
    elements and base points, which makes this cache the difference
    between seconds and minutes on the large exact sweeps.
    """
    key = (m, xe, ue, mask)
    got = _component_cache.get(key)
    if got is None:
        mono = CliffordPoly(m, {Monomial(xe, ue): Multivector(m, {mask: 1})})
        sub = mono.substitute(u_map=_symbolic_reflection(m, exact=True))
        projected = fischer_project(sub, slot="u")
        got = integrate_sphere(projected, slot="x")
        _component_cache[key] = got
    return got


def _radial_components(f: FermionicPoly, y, exact: bool) -> list[tuple[int, CliffordPoly]]:
    """Degree-graded sphere integrals S_d(u) of P_k f(y + r t, t u t).

    The shifted polynomial splits by x-degree; substituting the sphere
    reflection for u, projecting, and integrating the t-moments leaves
    one u-slot polynomial per radial power.
    """
    if exact:
        shifted = f.poly.shift_x(list(y))
        buckets: dict[int, CliffordPoly] = {}
        for mono, coef in shifted.terms.items():
            d = mono.degree_x()
            for mask, c in coef.comps.items():
                comp = _monomial_component(f.m, mono.x, mono.u, mask)
                if comp.is_zero():
                    continue
                cur = buckets.get(d)
                add = comp.scale(c)
                buckets[d] = add if cur is None else cur + add
        return sorted(buckets.items())
    shifted = f._float.shift_x([float(c) for c in y])
    refl = _symbolic_reflection(f.m, exact)
    out = []
    for d in range(shifted.degree_x() + 1):
        part = x_degree_part(shifted, d)
        if part.is_zero():
            continue
        sub = part.substitute(u_map=refl)
        projected = fischer_project(sub, slot="u")
        out.append((d, integrate_sphere(projected, slot="x")))
    return out


def _is_exact_scalar(r) -> bool:
    return not isinstance(r, float)


def mean_value_sphere(f: FermionicPoly, y, r, u=None):
    """Average of P_k f(y + r t, t u t) over the sphere, times 1/c_k.

    For null solutions this reproduces f(y, u) for every radius; the
    computation is exact for exact y, r (and u when given).
    """
    exact = exact_point(y) and _is_exact_scalar(r)
    if u is not None:
        exact = exact and exact_point(u)
    ck = _degree_factor(f.m, f.k)
    scale = (Fraction(1) / ck) if exact else (1.0 / float(ck))
    rr = r if exact else float(r)
    total = CliffordPoly.zero(f.m)
    for d, comp in _radial_components(f, y, exact):
        total = total + comp.scale(scale * rr ** d)
    if u is None:
        return total
    return constant_value(total.evaluate(u=list(u) if exact else [float(c) for c in u]))


def mean_value_pair(f: FermionicPoly, y, r):
    """Both reproduction forms at once, sharing the graded components.

    Returns (sphere, ball) as u-slot polynomials; the sweep suites
    compare each against the direct slice, and computing the two radial
    assemblies from one component pass halves the exact work.
    """
    exact = exact_point(y) and _is_exact_scalar(r)
    m = f.m
    ck = _degree_factor(m, f.k)
    rr = r if exact else float(r)
    sphere = CliffordPoly.zero(m)
    ball = CliffordPoly.zero(m)
    for d, comp in _radial_components(f, y, exact):
        if exact:
            base = rr ** d / ck
            ball_factor = base * Fraction(m, m + d)
        else:
            base = rr ** d / float(ck)
            ball_factor = base * m / (m + d)
        sphere = sphere + comp.scale(base)
        ball = ball + comp.scale(ball_factor)
    return sphere, ball


def mean_value_ball(f: FermionicPoly, y, r, u=None):
    """Volume-average form of the reproduction over the ball B(y, r).

    Exact integration in the radius: the degree-d radial component picks
    up the factor m r^d / (m + d) relative to the sphere form.
    """
    exact = exact_point(y) and _is_exact_scalar(r)
    if u is not None:
        exact = exact and exact_point(u)
    m = f.m
    ck = _degree_factor(m, f.k)
    rr = r if exact else float(r)
    total = CliffordPoly.zero(m)
    for d, comp in _radial_components(f, y, exact):
        if exact:
            factor = Fraction(m, m + d) / ck * rr ** d
        else:
            factor = m / (m + d) / float(ck) * rr ** d
        total = total + comp.scale(factor)
    if u is None:
        return total
    return constant_value(total.evaluate(u=list(u) if exact else [float(c) for c in u]))


# ----------------------------------------------------------------------
# boundary transform

def _collapsed_boundary_integrand(field, x, normal, y, u=None, project=True):
    """(conj(w)/|w|^m) P_k[n f(x, .)](w u w / |w|^2) for w = x - y."""
    m = field.m
    w = [a - b for a, b in zip(x, y)]
    slice_ = field.slice_at(x)
    g = slice_.lmul(Multivector.vector(m, normal))
    if project:
        g = fischer_project(g, slot="u")
    inv2 = inverse_length_power(w, 2, exact=False)
    inv_m = inverse_length_power(w, m, exact=False)
    sub = g.substitute(u_map=reflection_map(m, w, inv2, exact=False))
    out = sub.lmul(Multivector.vector(m, [-c * inv_m for c in w]))
    if u is None:
        return out
    return constant_value(out.evaluate(u=u))


def _cauchy_over_rule(field, rule: SurfaceRule, y, u=None):
    m, k = field.m, field.k
    c = omega(m) * float(_degree_factor(m, k))
    yf = [float(a) for a in y]
    uf = None if u is None else [float(a) for a in u]
    if u is None:
        acc = weighted_poly_sum(
            m,
            (
                (w, _collapsed_boundary_integrand(field, x, n, yf))
                for x, w, n in rule.points_with_normals()
            ),
        )
        return acc.scale(1.0 / c)
    acc = weighted_sum(
        m,
        (
            (w, _collapsed_boundary_integrand(field, x, n, yf, uf))
            for x, w, n in rule.points_with_normals()
        ),
    )
    return acc * (1.0 / c)


def cauchy_transform(
    field: BoundaryField,
    y,
    u=None,
    order: int = 20,
    collapsed: bool = True,
    fundamental: FundamentalSolution | None = None,
    spin_order: int | None = None,
):
    """Boundary integral of E_k(x - y, u, v) n(x) f(x, v) over both spheres.

    Reproduces f(y, u) for y inside the domain when f is the trace of a
    null solution, and vanishes for y outside.  The default path
    collapses the spin integral through the zonal kernel; the uncollapsed
    path (``collapsed=False``) quadratures the spin sphere too and needs
    an explicit u.
    """
    domain = field.domain
    rule = boundary_sphere_rule(field.m, domain.center_floats(), domain.radius_float(), order)
    if collapsed:
        return _cauchy_over_rule(field, rule, y, u)
    if u is None:
        raise ValueError("the uncollapsed path evaluates at a specific u")
    m, k = field.m, field.k
    ef = fundamental if fundamental is not None else FundamentalSolution(m, k)
    spin_rule = boundary_sphere_rule(m, [0.0] * m, 1.0, spin_order or order)
    yf = [float(a) for a in y]
    uf = [float(a) for a in u]
    c_norm = omega(m)

    def node_value(x, normal):
        w = [a - b for a, b in zip(x, yf)]
        slice_ = field.slice_at(x)
        nmv = Multivector.vector(m, normal)
        pairs = []
        for v, wv in spin_rule.points():
            fv = constant_value(slice_.evaluate(u=v))
            pairs.append((wv / c_norm, ef.value(w, uf, v) * (nmv * fv)))
        return weighted_sum(m, pairs)

    return weighted_sum(
        m, ((w, node_value(x, n)) for x, w, n in rule.points_with_normals())
    )


def richardson_limit(values, steps):
    """Polynomial extrapolation of values(step) to step -> 0.

    Fits one polynomial of degree len(steps)-1 through the samples and
    returns its constant term; works for multivectors and polynomials.
    """
    n = len(steps)
    v = np.array([[float(s) ** p for p in range(n)] for s in steps])
    alpha = np.linalg.inv(v)[0]
    out = None
    for a, val in zip(alpha, values):
        term = val.scale(float(a)) if isinstance(val, CliffordPoly) else val * float(a)
        out = term if out is None else out + term
    return out


def singular_cauchy(
    field: BoundaryField,
    point,
    u=None,
    eps: float = 0.1,
    levels: int = 3,
    panel_order: int = 12,
    azimuth_order: int = 16,
):
    """Principal value of the boundary transform at a point on the sphere.

    Excises a geodesic cap of radius eps around the point, evaluates the
    integral for eps, eps/2, ..., and extrapolates the cap radius to
    zero.  On traces of null solutions this equals half the trace plus
    the smooth double-layer part.
    """
    domain = field.domain
    c = domain.center_floats()
    radius = domain.radius_float()
    pf = [float(a) for a in point]
    direction = [(a - b) / radius for a, b in zip(pf, c)]
    values = []
    steps = [eps / 2 ** j for j in range(levels)]
    for e in steps:
        rule = graded_boundary_rule(
            field.m,
            c,
            radius,
            direction,
            theta_min=e / radius,
            panel_order=panel_order,
            azimuth_order=azimuth_order,
        )
        values.append(_cauchy_over_rule(field, rule, pf, u))
    return richardson_limit(values, steps)


def plemelj_boundary_values(
    field: BoundaryField,
    point,
    u=None,
    h: float = 0.05,
    levels: int = 3,
    panel_order: int = 12,
    azimuth_order: int = 16,
):
    """Interior and exterior limits of the transform at a boundary point.

    Approaches along the normal through the point from either side at
    distances h, h/2, ..., resolving the near-boundary peak with panels
    graded to the approach distance, then extrapolates h -> 0.  Returns
    (interior, exterior).
    """
    domain = field.domain
    c = domain.center_floats()
    radius = domain.radius_float()
    pf = [float(a) for a in point]
    direction = [(a - b) / radius for a, b in zip(pf, c)]
    steps = [h / 2 ** j for j in range(levels)]
    limits = []
    for sign in (-1.0, 1.0):
        values = []
        for hh in steps:
            y = [a + sign * hh * d for a, d in zip(pf, direction)]
            rule = graded_boundary_rule(
                field.m,
                c,
                radius,
                direction,
                theta_min=0.0,
                theta_first=0.5 * hh / radius,
                panel_order=panel_order,
                azimuth_order=azimuth_order,
            )
            values.append(_cauchy_over_rule(field, rule, y, u))
        limits.append(richardson_limit(values, steps))
    return limits[0], limits[1]


# ----------------------------------------------------------------------
# volume transform

def _volume_integrand(field, x, y, u=None, base_shift: CliffordPoly | None = None):
    """(conj(w)/|w|^m) f(x, w u w/|w|^2), optionally with f shifted by a
    fixed u-slot polynomial (the difference trick near the pole)."""
    m = field.m
    w = [a - b for a, b in zip(x, y)]
    slice_ = field.slice_at(x)
    if base_shift is not None:
        slice_ = slice_ - base_shift
    inv2 = inverse_length_power(w, 2, exact=False)
    inv_m = inverse_length_power(w, m, exact=False)
    sub = slice_.substitute(u_map=reflection_map(m, w, inv2, exact=False))
    out = sub.lmul(Multivector.vector(m, [-c * inv_m for c in w]))
    if u is None:
        return out
    return constant_value(out.evaluate(u=u))


def _teodorescu_rules(field, yf, delta, sphere_order, n_inner, n_shell, outer_radial):
    domain = field.domain
    gap = domain.boundary_gap(yf)
    if gap > 1e-12:
        if delta is None:
            delta = 0.5 * gap
        inner, shell = singular_split_rule(
            field.m,
            yf,
            delta,
            domain.center_floats(),
            domain.radius_float(),
            sphere_order=sphere_order,
            n_inner=n_inner,
            n_shell=n_shell,
        )
        return [inner, shell]
    if gap < -1e-12:
        rule = BallRule(
            field.m,
            sphere_order,
            outer_radial,
            radius=domain.radius_float(),
            center=domain.center_floats(),
        )
        return [rule]
    raise ValueError("evaluation point sits on the boundary")


def teodorescu(
    field: VolumeField,
    y,
    u=None,
    delta: float | None = None,
    sphere_order: int = 14,
    n_inner: int = 10,
    n_shell: int = 16,
    outer_radial: int = 16,
):
    """The volume transform T_k f(y, u) = -int E_k(x-y, u, v) f(x, v).

    A right inverse of R_k.  Inside the domain the integral splits into a
    polar ball around y, where the volume element cancels the kernel
    singularity, and the remaining shell; outside it is a plain ball
    rule.  With u omitted the spin argument stays symbolic, which is what
    the derivative checks differentiate through.
    """
    m, k = field.m, field.k
    c = omega(m) * float(_degree_factor(m, k))
    yf = [float(a) for a in y]
    uf = None if u is None else [float(a) for a in u]
    rules = _teodorescu_rules(field, yf, delta, sphere_order, n_inner, n_shell, outer_radial)
    pairs = (
        (w, _volume_integrand(field, x, yf, uf))
        for rule in rules
        for x, w in rule.points()
    )
    if u is None:
        return weighted_poly_sum(m, pairs).scale(-1.0 / c)
    return weighted_sum(m, pairs) * (-1.0 / c)


def _sphere_flux_term(field, yf, i):
    """int_S t_i t f(y, t u t) dS*(t) with t symbolic in the x slot."""
    m = field.m
    g = field.slice_at(yf)
    sub = g.substitute(u_map=_symbolic_reflection(m, exact=False))
    xvec = CliffordPoly.x_vector(m).to_float()
    integrand = CliffordPoly.x_var(m, i).to_float() * (xvec * sub)
    return integrate_sphere(integrand, slot="x")


def teodorescu_derivative(
    field: VolumeField,
    y,
    i: int,
    u=None,
    delta: float | None = None,
    sphere_order: int = 14,
    n_inner: int = 10,
    n_shell: int = 16,
    return_parts: bool = False,
):
    """d/dy_i of the volume transform at an interior point.

    Differentiating under the integral gives a principal value plus a
    sphere flux term from the moving singularity:

        d_i T f = -(1/c) [ p.v. int_Omega (A_i(w) f(x, beta)
                  + (conj(w)/|w|^m) sum_s (d eta_s/d y_i) (d_{u_s} f)(x, beta)) dx
                  + int_{|t|=1} t_i t f(y, t u t) dS(t) ]

    with A_i(w) = e_i |w|^{-m} + m w_i conj(w) |w|^{-m-2} and
    beta = w u w / |w|^2.  The principal value converges because the
    frozen-coefficient integrand is the y_i-derivative of a homogeneous
    degree-(1-m) kernel, so its sphere means vanish; numerically the
    polar ball around y integrates the difference f(x, .) - f(y, .)
    instead, which removes the non-integrable part exactly.
    """
    m, k = field.m, field.k
    c = omega(m) * float(_degree_factor(m, k))
    ck = float(_degree_factor(m, k))
    yf = [float(a) for a in y]
    uf = None if u is None else [float(a) for a in u]
    if field.domain.boundary_gap(yf) <= 0.0:
        raise ValueError("derivative evaluation needs an interior point")
    inner, shell = _teodorescu_rules(field, yf, delta, sphere_order, n_inner, n_shell, 0)
    slice_y = field.slice_at(yf)

    def phi(x, with_difference):
        w = [a - b for a, b in zip(x, yf)]
        slice_ = field.slice_at(x)
        if with_difference:
            slice_ = slice_ - slice_y
        inv2 = inverse_length_power(w, 2, exact=False)
        inv_m = inverse_length_power(w, m, exact=False)
        inv_m2 = inv2 * inv_m
        refl = reflection_map(m, w, inv2, exact=False)
        comps = [-m * w[i - 1] * wj * inv_m2 for wj in w]
        comps[i - 1] += inv_m
        total = slice_.substitute(u_map=refl).lmul(Multivector.vector(m, comps))
        deta = reflection_partial_y(m, i, w, inv2, exact=False)
        pref = Multivector.vector(m, [-cc * inv_m for cc in w])
        for s in range(m):
            if deta[s].is_zero():
                continue
            dslice = slice_.partial_u(s + 1)
            if dslice.is_zero():
                continue
            total = total + (dslice.substitute(u_map=refl) * deta[s]).lmul(pref)
        if uf is None:
            return total
        return constant_value(total.evaluate(u=uf))

    pairs = [(w, phi(x, True)) for x, w in inner.points()]
    pairs += [(w, phi(x, False)) for x, w in shell.points()]
    flux = _sphere_flux_term(field, yf, i)
    if uf is None:
        volume_part = weighted_poly_sum(m, pairs).scale(-1.0 / c)
        sphere_part = flux.scale(-1.0 / ck)
    else:
        volume_part = weighted_sum(m, pairs) * (-1.0 / c)
        sphere_part = constant_value(flux.evaluate(u=uf)) * (-1.0 / ck)
    total = volume_part + sphere_part
    if return_parts:
        return total, volume_part, sphere_part
    return total
