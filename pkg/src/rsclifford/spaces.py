"""Spaces of harmonic and monogenic polynomials in the spin variable.

Everything here is exact.  Scalar spherical harmonics are found as the
nullspace of the Laplacian on homogeneous monomials, monogenic
polynomials arise from them through the Almansi (Fischer) projection

    P_k h = h + u (D_u h) / (m + 2k - 2),

and the zonal reproducing kernel for degree-k monogenics is the Fischer
projection of the scalar harmonic reproducing kernel.  Bases carry an
echelon form of their raw coordinates so membership and coordinates of
arbitrary elements come out exactly.

Two-argument kernels store their first argument in the x slot of a
:class:`~rsclifford.polynomials.CliffordPoly` and their second argument
in the u slot.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebra import EXACT, Multivector
from .linalg import EchelonBasis, inverse, nullspace, to_exact, to_fraction
from .polynomials import CliffordPoly, Monomial, integrate_sphere

__all__ = [
    "monomial_exponents",
    "harmonic_dimension",
    "monogenic_dimension",
    "scalar_harmonic_basis",
    "fischer_project",
    "fischer_complement",
    "swap_slots",
    "x_degree_part",
    "constant_value",
    "scalar_sphere_pairing",
    "MonogenicBasis",
    "ZonalKernel",
    "dump_basis",
    "load_basis",
]


def monomial_exponents(m: int, d: int) -> list[tuple]:
    """All length-m exponent tuples of total degree d, in a fixed order."""
    if m == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomial_exponents(m - 1, d - first):
            out.append((first,) + rest)
    return out


def harmonic_dimension(m: int, k: int) -> int:
    """Dimension of scalar spherical harmonics of degree k in m variables."""
    if k < 0:
        return 0
    val = math.comb(m + k - 1, k)
    if k >= 2:
        val -= math.comb(m + k - 3, k - 2)
    return val


def monogenic_dimension(m: int, k: int) -> int:
    """Real dimension of Clifford-valued degree-k monogenics in m variables."""
    if k < 0:
        return 0
    return (1 << m) * math.comb(m + k - 2, k)


def _u_monomial(m: int, exps: tuple, coeff) -> CliffordPoly:
    return CliffordPoly(
        m, {Monomial((0,) * m, exps): Multivector.scalar(m, coeff)}
    )


def scalar_harmonic_basis(m: int, k: int) -> list[CliffordPoly]:
    """Exact basis of scalar harmonics of degree k, as u-slot polynomials."""
    monos = monomial_exponents(m, k)
    if k < 2:
        return [_u_monomial(m, e, 1) for e in monos]
    low = monomial_exponents(m, k - 2)
    low_idx = {e: r for r, e in enumerate(low)}
    rows = [[to_exact(0)] * len(monos) for _ in low]
    for c, exps in enumerate(monos):
        for i, e in enumerate(exps):
            if e >= 2:
                tgt = list(exps)
                tgt[i] = e - 2
                rows[low_idx[tuple(tgt)]][c] += e * (e - 1)
    basis = []
    for vec in nullspace(rows, len(monos)):
        terms = {}
        for exps, val in zip(monos, vec):
            if val:
                terms[Monomial((0,) * m, exps)] = Multivector.scalar(
                    m, to_fraction(val)
                )
        basis.append(CliffordPoly(m, terms))
    if len(basis) != harmonic_dimension(m, k):
        raise RuntimeError("harmonic basis has unexpected dimension")
    return basis


def _poly_regime(poly: CliffordPoly) -> str:
    for coef in poly.terms.values():
        return coef.regime
    return EXACT


def fischer_project(poly: CliffordPoly, slot: str = "u") -> CliffordPoly:
    """Almansi projection of a harmonic polynomial onto its monogenic part.

    Acts in the requested variable slot and requires the input to be
    homogeneous there.  On the harmonic subspace of degree k this is the
    projection onto monogenics along u-times-monogenics of degree k-1.
    """
    m = poly.m
    if slot == "u":
        k = poly.degree_u()
        if not poly.is_homogeneous_u(k):
            raise ValueError("Fischer projection needs a homogeneous input")
        deriv = poly.dirac_u()
        vec = CliffordPoly.u_vector(m)
    else:
        k = poly.degree_x()
        if not poly.is_homogeneous_x(k):
            raise ValueError("Fischer projection needs a homogeneous input")
        deriv = poly.dirac_x()
        vec = CliffordPoly.x_vector(m)
    n = m + 2 * k - 2
    if n <= 0:
        raise ValueError(f"projection undefined for m={m}, k={k}")
    if _poly_regime(poly) != EXACT:
        vec = vec.to_float()
        return poly + (vec * deriv).scale(1.0 / n)
    return poly + (vec * deriv).scale(Fraction(1, n))


def fischer_complement(poly: CliffordPoly, slot: str = "u") -> CliffordPoly:
    """The complementary part: identity minus the Almansi projection."""
    return poly - fischer_project(poly, slot)


def swap_slots(poly: CliffordPoly) -> CliffordPoly:
    """Exchange the x and u variables."""
    return CliffordPoly(
        poly.m, {Monomial(mono.u, mono.x): c for mono, c in poly.terms.items()}
    )


def x_degree_part(poly: CliffordPoly, d: int) -> CliffordPoly:
    """The part of total x-degree d."""
    return CliffordPoly(
        poly.m,
        {mono: c for mono, c in poly.terms.items() if mono.degree_x() == d},
    )


def constant_value(poly: CliffordPoly) -> Multivector:
    """The value of a constant polynomial (all variables integrated out)."""
    zero = Monomial((0,) * poly.m, (0,) * poly.m)
    for mono in poly.terms:
        if mono != zero:
            raise ValueError("polynomial still depends on a variable")
    return poly.terms.get(zero, Multivector.zero(poly.m))


def scalar_sphere_pairing(f: CliffordPoly, g: CliffordPoly, slot: str = "u"):
    """Exact normalized pairing int Sc[conj(f) g] dS* over the given slot."""
    prod = f.map_coefficients(lambda c: c.conjugate()) * g
    return constant_value(integrate_sphere(prod, slot)).scalar_part()


def _blade_mv(m: int, mask: int) -> Multivector:
    indices = [i + 1 for i in range(m) if (mask >> i) & 1]
    return Multivector.blade(m, *indices)


class MonogenicBasis:
    """Exact real basis of Clifford-valued monogenic polynomials of degree k.

    Built by Fischer-projecting scalar harmonics times basis blades and
    keeping a maximal independent subset.  The retained echelon form
    recovers exact coordinates of any element of the span.
    """

    def __init__(self, m: int, k: int, elements, echelon, mono_order):
        self.m = m
        self.k = k
        self.elements = elements
        self._echelon = echelon
        self._mono_index = {e: i for i, e in enumerate(mono_order)}
        self._gram = None

    @classmethod
    def build(cls, m: int, k: int) -> "MonogenicBasis":
        monos = monomial_exponents(m, k)
        mono_idx = {e: i for i, e in enumerate(monos)}
        width = 1 << m
        ech = EchelonBasis(len(monos) * width)
        elements = []
        projected = [fischer_project(h) for h in scalar_harmonic_basis(m, k)]
        for proj in projected:
            for mask in range(width):
                cand = proj.rmul(_blade_mv(m, mask))
                vec = _raw_vector(cand, mono_idx, width)
                if ech.add(vec):
                    elements.append(cand)
        return cls(m, k, elements, ech, monos)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def _vector(self, poly: CliffordPoly):
        if poly.m != self.m:
            raise ValueError("dimension mismatch")
        if poly and not poly.is_homogeneous_u(self.k):
            raise ValueError(f"expected a homogeneous degree-{self.k} polynomial")
        return _raw_vector(poly, self._mono_index, 1 << self.m)

    def coords(self, poly: CliffordPoly):
        """Exact coordinates over the basis, or None if outside the span."""
        got = self._echelon.coords(self._vector(poly))
        if got is None:
            return None
        return [to_fraction(c) for c in got]

    def contains(self, poly: CliffordPoly) -> bool:
        return self.coords(poly) is not None

    def combine(self, coeffs) -> CliffordPoly:
        out = CliffordPoly.zero(self.m)
        for c, el in zip(coeffs, self.elements):
            if c:
                out = out + el.scale(c)
        return out

    def gram(self) -> list[list[Fraction]]:
        """Gram matrix of the basis under the normalized sphere pairing."""
        if self._gram is None:
            n = self.dim
            g = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    val = Fraction(scalar_sphere_pairing(self.elements[i], self.elements[j]))
                    g[i][j] = val
                    g[j][i] = val
            self._gram = g
        return self._gram


def _raw_vector(poly: CliffordPoly, mono_idx: dict, width: int):
    vec = [to_exact(0)] * (len(mono_idx) * width)
    for mono, coef in poly.terms.items():
        if any(mono.x):
            raise ValueError("expected a polynomial in u only")
        base = mono_idx[mono.u] * width
        for mask, val in coef.comps.items():
            vec[base + mask] = to_exact(val)
    return vec


class ZonalKernel:
    """Reproducing kernel for degree-k monogenics on the sphere.

    ``poly`` holds Z_k with the first argument in the x slot and the
    second in the u slot.  Against the normalized surface measure it
    reproduces every degree-k monogenic acting from the left,

        int_S Z_k(u, v) f(v) dS*(v) = f(u),

    and annihilates v times any degree-(k-1) monogenic.  Constructed as
    the first-slot Fischer projection of the scalar harmonic reproducing
    kernel, which has both properties because the projection passes
    through the integral and fixes monogenics.
    """

    def __init__(self, m: int, k: int, poly: CliffordPoly):
        self.m = m
        self.k = k
        self.poly = poly

    @classmethod
    def build(cls, m: int, k: int) -> "ZonalKernel":
        harms = scalar_harmonic_basis(m, k)
        n = len(harms)
        gram = [
            [to_exact(scalar_sphere_pairing(harms[a], harms[b])) for b in range(n)]
            for a in range(n)
        ]
        ginv = inverse(gram)
        kernel = CliffordPoly.zero(m)
        swapped = [swap_slots(h) for h in harms]
        for a in range(n):
            for b in range(n):
                if ginv[a][b]:
                    kernel = kernel + (swapped[a] * harms[b]).scale(to_fraction(ginv[a][b]))
        return cls(m, k, fischer_project(kernel, slot="x"))

    def evaluate(self, u, v) -> Multivector:
        return self.poly.evaluate(x=u, u=v)

    def second_slot_at(self, v) -> CliffordPoly:
        """Z_k(., v) as a polynomial with its argument in the x slot."""
        return self.poly.evaluate(u=v)

    def apply(self, f: CliffordPoly) -> CliffordPoly:
        """Integrate Z_k(u, v) f(v) over v; the result sits in the u slot.

        ``f`` is a u-slot polynomial standing for the v-dependence.
        """
        out = integrate_sphere(self.poly * f, slot="u")
        return swap_slots(out)


# ----------------------------------------------------------------------
# textual cache

_CACHE_HEADER = "rsbasis v1"


def dump_basis(basis: MonogenicBasis, path) -> None:
    """Write a basis to a small versioned text format."""
    lines = [_CACHE_HEADER, f"m {basis.m} k {basis.k} dim {basis.dim}"]
    for idx, el in enumerate(basis.elements):
        lines.append(f"elem {idx}")
        for mono in sorted(el.terms):
            coef = el.terms[mono]
            for mask in sorted(coef.comps):
                val = to_fraction(to_exact(coef.comps[mask]))
                lines.append(
                    "term {} {} {} {}/{}".format(
                        ",".join(map(str, mono.x)),
                        ",".join(map(str, mono.u)),
                        mask,
                        val.numerator,
                        val.denominator,
                    )
                )
    lines.append("end")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_basis(path) -> MonogenicBasis:
    """Read a basis written by :func:`dump_basis` and rebuild its echelon form."""
    with open(path, encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != _CACHE_HEADER:
        raise ValueError("unrecognized basis file")
    head = lines[1].split()
    if head[0::2] != ["m", "k", "dim"]:
        raise ValueError("malformed basis header")
    m, k, dim = (int(v) for v in head[1::2])
    elements = []
    terms: dict | None = None
    for ln in lines[2:]:
        if ln == "end":
            break
        parts = ln.split()
        if parts[0] == "elem":
            if terms is not None:
                elements.append(CliffordPoly(m, terms))
            terms = {}
        elif parts[0] == "term":
            if terms is None:
                raise ValueError("term outside element block")
            xe = tuple(int(v) for v in parts[1].split(","))
            ue = tuple(int(v) for v in parts[2].split(","))
            mask = int(parts[3])
            num, den = parts[4].split("/")
            mono = Monomial(xe, ue)
            cur = terms.get(mono, Multivector.zero(m))
            terms[mono] = cur + Multivector(m, {mask: Fraction(int(num), int(den))})
        else:
            raise ValueError(f"unrecognized line: {ln!r}")
    if terms is not None:
        elements.append(CliffordPoly(m, terms))
    if len(elements) != dim:
        raise ValueError("element count does not match header")
    monos = monomial_exponents(m, k)
    mono_idx = {e: i for i, e in enumerate(monos)}
    ech = EchelonBasis(len(monos) * (1 << m))
    for el in elements:
        if not ech.add(_raw_vector(el, mono_idx, 1 << m)):
            raise ValueError("cached basis is not independent")
    return MonogenicBasis(m, k, elements, ech, monos)
