"""The Rarita-Schwinger operator, its polynomial kernel, and its fundamental
solution.

The operator acts on functions f(x, u) taking values in degree-k
monogenics in u:

    R_k f = P_k D_x f,

the x-Dirac operator followed by the Almansi projection back onto
monogenics in the spin variable.  Polynomial null solutions are built by
a Cauchy-Kovalevskaya style recursion on powers of the last coordinate;
the fundamental solution is assembled from the zonal monogenic kernel
composed with the sphere reflection u -> w u w / |w|^2.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebra import Multivector
from .linalg import inverse, mat_vec, to_exact, to_fraction
from .polynomials import CliffordPoly, Monomial, omega
from .spaces import (
    MonogenicBasis,
    ZonalKernel,
    constant_value,
    fischer_project,
    monomial_exponents,
)

__all__ = [
    "rarita_schwinger",
    "solve_polynomial_kernel",
    "kernel_dimension",
    "FundamentalSolution",
    "exact_point",
    "inverse_length_power",
    "reflection_map",
    "reflection_partial_y",
]


def rarita_schwinger(f: CliffordPoly) -> CliffordPoly:
    """Apply R_k = P_k D_x; the spin degree k is read off the input."""
    df = f.dirac_x()
    if df.is_zero():
        return df
    return fischer_project(df, slot="u")


def kernel_dimension(m: int, k: int, d: int) -> int:
    """Dimension of homogeneous degree-d polynomial null solutions."""
    from .spaces import monogenic_dimension

    return math.comb(m - 2 + d, d) * monogenic_dimension(m, k)


def _x_monomial(m: int, exps: tuple) -> CliffordPoly:
    return CliffordPoly(m, {Monomial(exps, (0,) * m): Multivector.scalar(m, 1)})


def _split_by_x(poly: CliffordPoly) -> dict:
    """Group terms by x-exponent; values are u-slot polynomials."""
    out: dict[tuple, CliffordPoly] = {}
    m = poly.m
    zero = (0,) * m
    for mono, coef in poly.terms.items():
        part = out.setdefault(mono.x, CliffordPoly.zero(m))
        out[mono.x] = part + CliffordPoly(m, {Monomial(zero, mono.u): coef})
    return out


class _SpinMultiplier:
    """Exact inverse of P_k (e_m .) on the degree-k monogenics."""

    def __init__(self, basis: MonogenicBasis):
        self.basis = basis
        m = basis.m
        em = Multivector.basis_vector(m, m)
        cols = []
        for el in basis.elements:
            projected = fischer_project(el.lmul(em))
            coords = basis.coords(projected)
            if coords is None:
                raise RuntimeError("projection left the monogenic space")
            cols.append([to_exact(c) for c in coords])
        n = basis.dim
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        try:
            self.inv_rows = inverse(rows)
        except ValueError:
            raise RuntimeError(
                f"P_k(e_m .) is singular on monogenics for m={m}, k={basis.k}"
            ) from None

    def apply_inverse(self, poly: CliffordPoly) -> CliffordPoly:
        """Solve P_k(e_m g) = slice for each x-monomial slice of ``poly``."""
        basis = self.basis
        m = basis.m
        out = CliffordPoly.zero(m)
        for x_exps, slice_poly in _split_by_x(poly).items():
            coords = basis.coords(slice_poly)
            if coords is None:
                raise RuntimeError("slice is not a monogenic of the expected degree")
            solved = mat_vec(self.inv_rows, [to_exact(c) for c in coords])
            rebuilt = basis.combine([to_fraction(c) for c in solved])
            out = out + _x_monomial(m, x_exps) * rebuilt
        return out


def solve_polynomial_kernel(
    m: int,
    k: int,
    d: int,
    basis: MonogenicBasis | None = None,
    verify: bool = True,
) -> list[CliffordPoly]:
    """Exact basis of homogeneous degree-d null solutions of R_k.

    Writing f = sum_j x_m^j f_j(x', u), the equation R_k f = 0 fixes
    every f_{j+1} from f_j through the invertible map P_k (e_m .), so
    solutions are parametrized by the free top slice f_0: a polynomial of
    degree d in the first m-1 coordinates with monogenic values.  With
    ``verify`` each completed element is checked to be annihilated
    exactly.
    """
    if basis is None:
        basis = MonogenicBasis.build(m, k)
    if d == 0:
        return list(basis.elements)
    mult = _SpinMultiplier(basis)
    out = []
    for prime in monomial_exponents(m - 1, d):
        lead = _x_monomial(m, prime + (0,))
        for phi in basis.elements:
            slices = [lead * phi]
            for j in range(d):
                step = rarita_schwinger(slices[j])
                if step.is_zero():
                    nxt = CliffordPoly.zero(m)
                else:
                    nxt = mult.apply_inverse(step).scale(Fraction(-1, j + 1))
                slices.append(nxt)
            total = CliffordPoly.zero(m)
            tail = (0,) * (m - 1)
            for j, part in enumerate(slices):
                total = total + _x_monomial(m, tail + (j,)) * part
            if verify and not rarita_schwinger(total).is_zero():
                raise RuntimeError("recursion produced a non-null element")
            out.append(total)
    return out


def _rational_sqrt(value: Fraction):
    """Exact square root of a non-negative rational, or None."""
    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def exact_point(values) -> bool:
    """Whether a coordinate list is float-free."""
    return not any(isinstance(c, float) for c in values)


def inverse_length_power(w, power: int, exact: bool):
    """|w|^(-power) in the requested regime.

    The exact regime needs |w|^2 to be a perfect rational square when the
    power is odd.
    """
    if exact:
        q2 = sum(Fraction(c) * c for c in w)
        if q2 == 0:
            raise ZeroDivisionError("inverse length of the zero vector")
        if power % 2 == 0:
            return Fraction(1) / q2 ** (power // 2)
        root = _rational_sqrt(q2)
        if root is None:
            raise ValueError("odd power of a length that is not rational")
        return Fraction(1) / (q2 ** (power // 2) * root)
    q2 = math.fsum(float(c) * float(c) for c in w)
    if q2 == 0.0:
        raise ZeroDivisionError("inverse length of the zero vector")
    return q2 ** (-power / 2)


def _uvar(m: int, s: int, exact: bool) -> CliffordPoly:
    var = CliffordPoly.u_var(m, s)
    return var if exact else var.to_float()


def _udot(m: int, w, exact: bool) -> CliffordPoly:
    """The scalar polynomial <u, w>."""
    out = CliffordPoly.zero(m)
    for s, ws in enumerate(w):
        if ws:
            out = out + _uvar(m, s + 1, exact).scale(ws)
    return out


def reflection_map(m: int, w, inv2, exact: bool) -> dict:
    """The sphere reflection u_s - 2 <u, w> w_s / |w|^2, keyed 1-based.

    This is the spin argument of every kernel here: substituting it for u
    evaluates a polynomial at w u w / |w|^2.
    """
    dot = _udot(m, w, exact)
    out = {}
    for s in range(1, m + 1):
        eta = _uvar(m, s, exact)
        ws = w[s - 1]
        if ws:
            eta = eta - dot.scale(2 * inv2 * ws)
        out[s] = eta
    return out


def reflection_partial_y(m: int, i: int, w, inv2, exact: bool) -> list[CliffordPoly]:
    """d eta_s / d y_i of the reflection map for w = x - y, s = 1..m."""
    wi = w[i - 1]
    dot = _udot(m, w, exact)
    ui = _uvar(m, i, exact)
    out = []
    for s in range(1, m + 1):
        ws = w[s - 1]
        term = CliffordPoly.zero(m)
        if ws:
            term = term + ui.scale(2 * inv2 * ws)
        if s == i:
            term = term + dot.scale(2 * inv2)
        if ws and wi:
            term = term - dot.scale(4 * inv2 * inv2 * ws * wi)
        out.append(term)
    return out


class FundamentalSolution:
    """E_k, the fundamental solution of the Rarita-Schwinger operator.

    For a displacement w = x - y,

        E_k(w, u, v) = (1/c) (conj(w)/|w|^m) Z_k(w u w/|w|^2, v),

    where Z_k is the zonal monogenic kernel and the normalization
    c = omega_{m-1} (m-2)/(m+2k-2) makes the boundary reproduction come
    out with constant one.  Methods ending in ``_u_slice`` leave the
    middle argument symbolic and return u-slot polynomials; the
    ``unnormalized_`` variants omit the transcendental 1/c factor and
    stay exact at rational points whose squared length is a perfect
    square (for even m, at every rational point).
    """

    def __init__(self, m: int, k: int, zonal: ZonalKernel | None = None):
        self.m = m
        self.k = k
        self.zonal = zonal if zonal is not None else ZonalKernel.build(m, k)
        self._zp_float = self.zonal.poly.to_float()
        self._zonal_dx = [self.zonal.poly.partial_x(s) for s in range(1, m + 1)]
        self._zonal_dx_float = [p.to_float() for p in self._zonal_dx]

    @property
    def degree_factor(self) -> Fraction:
        """The rational part (m-2)/(m+2k-2) of the normalization."""
        return Fraction(self.m - 2, self.m + 2 * self.k - 2)

    @property
    def constant(self) -> float:
        """The full normalization c = omega_{m-1} (m-2)/(m+2k-2)."""
        return omega(self.m) * float(self.degree_factor)

    # ------------------------------------------------------------------
    # evaluation helpers

    def _exact_mode(self, w, v) -> bool:
        """Whether all inputs are rational and |w| is exactly available."""
        if not exact_point(list(w) + list(v)):
            return False
        if self.m % 2 == 0:
            return True
        q2 = sum(Fraction(c) * c for c in w)
        return _rational_sqrt(q2) is not None

    def _conj_dir(self, w, inv_m) -> Multivector:
        """conj(w) |w|^{-m} as a multivector."""
        return Multivector.vector(self.m, [-c * inv_m for c in w])

    @staticmethod
    def _floats(values):
        return [float(c) for c in values]

    # ------------------------------------------------------------------
    # values and u-slices

    def unnormalized_u_slice(self, w, v) -> CliffordPoly:
        """c E_k(w, ., v) as a u-slot polynomial; exact when inputs allow."""
        exact = self._exact_mode(w, v)
        if not exact:
            w = self._floats(w)
            v = self._floats(v)
        inv2 = inverse_length_power(w, 2, exact)
        inv_m = inverse_length_power(w, self.m, exact)
        zv = (self.zonal.poly if exact else self._zp_float).evaluate(u=v)
        sub = zv.substitute(x_map=reflection_map(self.m, w, inv2, exact))
        return sub.lmul(self._conj_dir(w, inv_m))

    def u_slice(self, w, v) -> CliffordPoly:
        """E_k(w, ., v) as a float u-slot polynomial."""
        out = self.unnormalized_u_slice(w, v)
        return out.to_float().scale(1.0 / self.constant)

    def value(self, w, u, v) -> Multivector:
        """E_k(w, u, v) numerically."""
        w = self._floats(w)
        u = self._floats(u)
        inv2 = inverse_length_power(w, 2, exact=False)
        dot = sum(a * b for a, b in zip(u, w))
        beta = [us - 2.0 * dot * ws * inv2 for us, ws in zip(u, w)]
        zv = self._zp_float.evaluate(x=beta, u=self._floats(v))
        pref = self._conj_dir(w, inverse_length_power(w, self.m, exact=False))
        return (pref * zv) * (1.0 / self.constant)

    # ------------------------------------------------------------------
    # derivatives in the pole position

    def unnormalized_partial_y_u_slice(self, i: int, w, v) -> CliffordPoly:
        """d/dy_i of c E_k(x - y, ., v) at w = x - y; exact when inputs allow.

        By the chain rule the prefactor differentiates to
        e_i |w|^{-m} + m w_i conj(w) |w|^{-m-2} and the reflection
        contributes the first-slot partials of Z_k times d eta_s / d y_i.
        """
        m = self.m
        exact = self._exact_mode(w, v)
        if not exact:
            w = self._floats(w)
            v = self._floats(v)
        inv2 = inverse_length_power(w, 2, exact)
        inv_m = inverse_length_power(w, m, exact)
        inv_m2 = inv2 * inv_m
        eta = reflection_map(m, w, inv2, exact)
        comps = [-m * w[i - 1] * wj * inv_m2 for wj in w]
        comps[i - 1] += inv_m
        pref_i = Multivector.vector(m, comps)
        zv = (self.zonal.poly if exact else self._zp_float).evaluate(u=v)
        term = zv.substitute(x_map=eta).lmul(pref_i)
        deta = reflection_partial_y(m, i, w, inv2, exact)
        pref = self._conj_dir(w, inv_m)
        dzs = self._zonal_dx if exact else self._zonal_dx_float
        for s in range(m):
            if deta[s].is_zero():
                continue
            dz = dzs[s].evaluate(u=v)
            contrib = dz.substitute(x_map=eta) * deta[s]
            term = term + contrib.lmul(pref)
        return term

    def partial_y_u_slice(self, i: int, w, v) -> CliffordPoly:
        out = self.unnormalized_partial_y_u_slice(i, w, v)
        return out.to_float().scale(1.0 / self.constant)

    def partial_y_value(self, i: int, w, u, v) -> Multivector:
        slice_ = self.partial_y_u_slice(i, w, v)
        return constant_value(slice_.evaluate(u=self._floats(u)))
