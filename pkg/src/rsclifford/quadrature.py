"""Deterministic quadrature on spheres, balls, and punctured regions.

Sphere rules come from the classical polar recursion: a Gauss-Gegenbauer
factor in cos(theta) against the weight (1-t^2)^{(m-3)/2} at each level
and a trapezoid rule on the base circle.  A rule of a given order
integrates polynomials of that total degree exactly, which the tests pin
against the closed-form moments.  Weights are raw (they sum to the full
surface measure or volume); normalization by omega is left to callers.

For integrands with a single point singularity of order |x-y|^{1-m} the
region splits into a polar ball around the pole, where the volume
element cancels the blow-up, and the remaining shell handled ray by ray.
Boundary integrals with a pole on the surface use geometrically graded
panels in the polar angle.

All accumulation goes through math.fsum per blade component.
"""

from __future__ import annotations

import math
from collections import defaultdict

import numpy as np
from scipy.special import roots_gegenbauer, roots_jacobi

from .algebra import Multivector
from .polynomials import CliffordPoly, Monomial

__all__ = [
    "SphereRule",
    "BallRule",
    "SurfaceRule",
    "VolumeRule",
    "singular_split_rule",
    "boundary_sphere_rule",
    "graded_boundary_rule",
    "orthonormal_complement",
    "weighted_sum",
    "weighted_poly_sum",
]


def _gauss_legendre(n: int, a: float, b: float):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (nodes + 1.0), half * weights


def _sphere_recursive(m: int, order: int):
    if m == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if m == 2:
        n = order + 1
        if n % 2:
            n += 1
        phi = 2.0 * math.pi * np.arange(n) / n
        nodes = np.stack([np.cos(phi), np.sin(phi)], axis=1)
        weights = np.full(n, 2.0 * math.pi / n)
        return nodes, weights
    npolar = order // 2 + 1
    t, wt = roots_gegenbauer(npolar, (m - 2) / 2.0)
    sub_nodes, sub_weights = _sphere_recursive(m - 1, order)
    sin_t = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    nodes = np.empty((npolar * len(sub_nodes), m))
    weights = np.empty(npolar * len(sub_nodes))
    row = 0
    for ti, si, wi in zip(t, sin_t, wt):
        block = slice(row, row + len(sub_nodes))
        nodes[block, 0] = ti
        nodes[block, 1:] = si * sub_nodes
        weights[block] = wi * sub_weights
        row += len(sub_nodes)
    return nodes, weights


class _RuleBase:
    """Flat list of nodes and raw weights with compensated integration."""

    def __init__(self, m: int, nodes, weights):
        self.m = m
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.asarray(weights, dtype=float)

    def __len__(self):
        return len(self.weights)

    @property
    def total(self) -> float:
        return float(math.fsum(self.weights))

    def points(self):
        for x, w in zip(self.nodes, self.weights):
            yield [float(c) for c in x], float(w)

    def integrate(self, fn) -> Multivector:
        """Sum w * fn(x) over the rule; fn returns a Multivector."""
        return weighted_sum(self.m, ((w, fn(x)) for x, w in self.points()))

    def integrate_poly(self, fn) -> CliffordPoly:
        """Same with CliffordPoly values (some variables left symbolic)."""
        return weighted_poly_sum(self.m, ((w, fn(x)) for x, w in self.points()))


class SphereRule(_RuleBase):
    """Nodes and raw weights on the unit sphere S^{m-1}.

    Exact for polynomials of total degree <= order; weights sum to
    omega_{m-1}.
    """

    def __init__(self, m: int, order: int):
        nodes, weights = _sphere_recursive(m, order)
        super().__init__(m, nodes, weights)
        self.order = order


class BallRule(_RuleBase):
    """Raw-weight rule over a ball, radial Gauss-Jacobi times a sphere rule."""

    def __init__(self, m: int, order: int, n_radial: int, radius: float = 1.0, center=None):
        xi, wr = roots_jacobi(n_radial, 0.0, m - 1.0)
        r = radius * (xi + 1.0) / 2.0
        wr = wr * (radius / 2.0) ** m
        sph = SphereRule(m, order)
        c = np.zeros(m) if center is None else np.asarray(center, dtype=float)
        nodes = (r[:, None, None] * sph.nodes[None, :, :] + c).reshape(-1, m)
        weights = (wr[:, None] * sph.weights[None, :]).reshape(-1)
        super().__init__(m, nodes, weights)


class VolumeRule(_RuleBase):
    pass


class SurfaceRule(_RuleBase):
    """Boundary rule carrying outward unit normals alongside the nodes."""

    def __init__(self, m: int, nodes, weights, normals):
        super().__init__(m, nodes, weights)
        self.normals = np.asarray(normals, dtype=float)

    def points_with_normals(self):
        for x, w, n in zip(self.nodes, self.weights, self.normals):
            yield [float(c) for c in x], float(w), [float(c) for c in n]


def singular_split_rule(
    m: int,
    pole,
    delta: float,
    center,
    radius: float,
    sphere_order: int = 14,
    n_inner: int = 12,
    n_shell: int = 16,
):
    """Quadrature over the ball B(center, radius) for a pole inside it.

    Returns (inner, shell): the polar rule over B(pole, delta), stored in
    polar form so callers can apply the difference trick near the pole,
    and a flat rule over the rest of the ball.  Both carry the full
    volume element in their weights.  delta must stay below the distance
    from the pole to the boundary.
    """
    y = np.asarray(pole, dtype=float)
    c = np.asarray(center, dtype=float)
    off = y - c
    gap = radius - float(np.sqrt(off @ off))
    if not 0.0 < delta < gap:
        raise ValueError("delta must lie strictly between 0 and the boundary gap")
    sph = SphereRule(m, sphere_order)
    r_in, w_in = _gauss_legendre(n_inner, 0.0, delta)
    inner_nodes = (r_in[:, None, None] * sph.nodes[None, :, :] + y).reshape(-1, m)
    inner_weights = (
        (w_in * r_in ** (m - 1))[:, None] * sph.weights[None, :]
    ).reshape(-1)
    inner = PolarRule(m, inner_nodes, inner_weights, y, sph, r_in, w_in)

    shell_nodes = []
    shell_weights = []
    for t, wt in zip(sph.nodes, sph.weights):
        b = float(off @ t)
        rho = -b + math.sqrt(radius * radius - float(off @ off) + b * b)
        r_sh, w_sh = _gauss_legendre(n_shell, delta, rho)
        shell_nodes.append(y + r_sh[:, None] * t)
        shell_weights.append(w_sh * r_sh ** (m - 1) * wt)
    shell = VolumeRule(m, np.concatenate(shell_nodes), np.concatenate(shell_weights))
    return inner, shell


class PolarRule(_RuleBase):
    """Polar-product rule around a pole, keeping its (r, t) structure."""

    def __init__(self, m, nodes, weights, pole, sphere_rule, radii, radial_weights):
        super().__init__(m, nodes, weights)
        self.pole = np.asarray(pole, dtype=float)
        self.sphere = sphere_rule
        self.radii = radii
        self.radial_weights = radial_weights

    def shells(self):
        """Yield (r, radial_weight * r^{m-1}) per radial node."""
        for r, w in zip(self.radii, self.radial_weights):
            yield float(r), float(w * r ** (self.m - 1))


def boundary_sphere_rule(m: int, center, radius: float, order: int) -> SurfaceRule:
    """Raw surface rule on the sphere of the given center and radius."""
    sph = SphereRule(m, order)
    c = np.asarray(center, dtype=float)
    nodes = c + radius * sph.nodes
    weights = radius ** (m - 1) * sph.weights
    return SurfaceRule(m, nodes, weights, sph.nodes.copy())


def orthonormal_complement(direction) -> np.ndarray:
    """m x (m-1) matrix of orthonormal columns perpendicular to a unit vector.

    Householder reflection exchanging the direction with the first axis;
    deterministic in the input.
    """
    d = np.asarray(direction, dtype=float)
    m = len(d)
    e1 = np.zeros(m)
    e1[0] = 1.0
    v = d - e1
    nv = np.sqrt(v @ v)
    if nv < 1e-12:
        h = np.eye(m)
    else:
        v = v / nv
        h = np.eye(m) - 2.0 * np.outer(v, v)
    return h[:, 1:]


def _panel_breaks(theta_min: float, theta_first: float, n_uniform: int) -> list[float]:
    breaks = [theta_min]
    t = theta_min if theta_min > 0.0 else theta_first
    if theta_min == 0.0:
        breaks.append(t)
    while t < 1.0:
        t = min(2.0 * t, 1.0)
        breaks.append(t)
    for j in range(1, n_uniform + 1):
        breaks.append(1.0 + (math.pi - 1.0) * j / n_uniform)
    return breaks


def graded_boundary_rule(
    m: int,
    center,
    radius: float,
    pole_direction,
    theta_min: float = 0.0,
    theta_first: float = 1e-3,
    panel_order: int = 12,
    azimuth_order: int = 14,
    n_uniform: int = 8,
) -> SurfaceRule:
    """Sphere surface rule graded toward (or excluding) a pole on it.

    The polar angle runs from the pole direction; panels double
    geometrically from theta_min (or from theta_first when the pole cap
    is included) so that an integrand concentrated at scale h is resolved
    once theta_first is of that order.  With theta_min > 0 the geodesic
    cap of that opening angle is excluded, which is the excision used for
    principal-value boundary integrals.
    """
    c = np.asarray(center, dtype=float)
    d = np.asarray(pole_direction, dtype=float)
    d = d / np.sqrt(d @ d)
    frame = orthonormal_complement(d)
    if m == 2:
        az_nodes = np.array([[1.0], [-1.0]])
        az_weights = np.array([1.0, 1.0])
    else:
        az = SphereRule(m - 1, azimuth_order)
        az_nodes, az_weights = az.nodes, az.weights
    breaks = _panel_breaks(theta_min, theta_first, n_uniform)
    nodes = []
    weights = []
    normals = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a <= 0.0:
            continue
        th, wth = _gauss_legendre(panel_order, a, b)
        for theta, wt in zip(th, wth):
            ring_dir = math.cos(theta) * d + math.sin(theta) * (frame @ az_nodes.T).T
            nodes.append(c + radius * ring_dir)
            weights.append(
                radius ** (m - 1) * math.sin(theta) ** (m - 2) * wt * az_weights
            )
            normals.append(ring_dir)
    return SurfaceRule(
        m, np.concatenate(nodes), np.concatenate(weights), np.concatenate(normals)
    )


# ----------------------------------------------------------------------
# compensated accumulation

def weighted_sum(m: int, pairs) -> Multivector:
    """Compensated sum of weight * multivector over (weight, value) pairs."""
    buckets: dict[int, list] = defaultdict(list)
    for w, mv in pairs:
        for mask, c in mv.comps.items():
            buckets[mask].append(w * c)
    return Multivector(m, {mask: math.fsum(vals) for mask, vals in buckets.items()})


def weighted_poly_sum(m: int, pairs) -> CliffordPoly:
    """Compensated sum of weight * polynomial, component by component."""
    buckets: dict[tuple[Monomial, int], list] = defaultdict(list)
    for w, poly in pairs:
        for mono, coef in poly.terms.items():
            for mask, c in coef.comps.items():
                buckets[(mono, mask)].append(w * c)
    terms: dict[Monomial, dict] = defaultdict(dict)
    for (mono, mask), vals in buckets.items():
        terms[mono][mask] = math.fsum(vals)
    return CliffordPoly(m, {mono: Multivector(m, comps) for mono, comps in terms.items()})
