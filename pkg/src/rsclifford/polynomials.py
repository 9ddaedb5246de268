"""Clifford-valued polynomials in two vector variables and their calculus.

A :class:`CliffordPoly` is a finite sum of terms ``x^a u^b C`` where x and
u are m-dimensional variable vectors, the exponents a, b are multi-indices
and C is a :class:`~rsclifford.algebra.Multivector` coefficient.  Scalar
monomials commute with everything, so the coefficient may be written on
either side; products of polynomials multiply coefficients in the Clifford
algebra in term order.

The module also carries the exact integration formulas used throughout:
moments of monomials over the unit sphere (against the normalized surface
measure, total mass 1) and over centered balls (against Lebesgue measure
in units of the total solid angle omega_{m-1}).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .algebra import EXACT, FLOAT, Multivector


class Monomial(NamedTuple):
    """Exponent pair: ``x`` and ``u`` are length-m tuples of non-negative ints."""

    x: tuple
    u: tuple

    def degree_x(self) -> int:
        return sum(self.x)

    def degree_u(self) -> int:
        return sum(self.u)


def _zero_exps(m: int) -> tuple:
    return (0,) * m


class CliffordPoly:
    """Polynomial in (x, u) with multivector coefficients.

    Parameters
    ----------
    m : int
        Dimension; all coefficients must live in Cl_m and exponent tuples
        must have length m.
    terms : dict, optional
        Mapping :class:`Monomial` -> :class:`Multivector`.  Zero
        coefficients are dropped.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict | None = None):
        self.m = m
        clean: dict[Monomial, Multivector] = {}
        for mono, coef in (terms or {}).items():
            if not isinstance(mono, Monomial):
                mono = Monomial(tuple(mono[0]), tuple(mono[1]))
            if len(mono.x) != m or len(mono.u) != m:
                raise ValueError(f"exponent tuples must have length m={m}")
            if coef.m != m:
                raise ValueError(f"coefficient dimension {coef.m} != m={m}")
            if not coef.is_zero():
                clean[mono] = coef
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, m: int) -> "CliffordPoly":
        return cls(m, {})

    @classmethod
    def constant(cls, mv: Multivector) -> "CliffordPoly":
        m = mv.m
        return cls(m, {Monomial(_zero_exps(m), _zero_exps(m)): mv})

    @classmethod
    def scalar(cls, m: int, value) -> "CliffordPoly":
        return cls.constant(Multivector.scalar(m, value))

    @classmethod
    def x_var(cls, m: int, i: int) -> "CliffordPoly":
        """The scalar monomial x_i (1-based)."""
        exps = [0] * m
        exps[i - 1] = 1
        return cls(m, {Monomial(tuple(exps), _zero_exps(m)): Multivector.scalar(m, 1)})

    @classmethod
    def u_var(cls, m: int, i: int) -> "CliffordPoly":
        exps = [0] * m
        exps[i - 1] = 1
        return cls(m, {Monomial(_zero_exps(m), tuple(exps)): Multivector.scalar(m, 1)})

    @classmethod
    def x_vector(cls, m: int) -> "CliffordPoly":
        """The grade-1 polynomial sum_i x_i e_i."""
        terms = {}
        for i in range(m):
            exps = [0] * m
            exps[i] = 1
            terms[Monomial(tuple(exps), _zero_exps(m))] = Multivector.basis_vector(m, i + 1)
        return cls(m, terms)

    @classmethod
    def u_vector(cls, m: int) -> "CliffordPoly":
        """The grade-1 polynomial sum_i u_i e_i."""
        terms = {}
        for i in range(m):
            exps = [0] * m
            exps[i] = 1
            terms[Monomial(_zero_exps(m), tuple(exps))] = Multivector.basis_vector(m, i + 1)
        return cls(m, terms)

    # ------------------------------------------------------------------
    # linear structure

    def __add__(self, other):
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        terms = dict(self.terms)
        for mono, coef in other.terms.items():
            cur = terms.get(mono)
            terms[mono] = coef if cur is None else cur + coef
        return CliffordPoly(self.m, terms)

    def __sub__(self, other):
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return CliffordPoly(self.m, {mono: -c for mono, c in self.terms.items()})

    def scale(self, s) -> "CliffordPoly":
        return CliffordPoly(self.m, {mono: c * s for mono, c in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return self.lmul(other)
        return self.scale(other)

    def lmul(self, mv: Multivector) -> "CliffordPoly":
        """Multiply every coefficient by ``mv`` on the left."""
        return CliffordPoly(self.m, {mono: mv * c for mono, c in self.terms.items()})

    def rmul(self, mv: Multivector) -> "CliffordPoly":
        """Multiply every coefficient by ``mv`` on the right."""
        return CliffordPoly(self.m, {mono: c * mv for mono, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return self.rmul(other)
        if not isinstance(other, CliffordPoly):
            return self.scale(other)
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        terms: dict[Monomial, Multivector] = {}
        for mono1, c1 in self.terms.items():
            for mono2, c2 in other.terms.items():
                mono = Monomial(
                    tuple(a + b for a, b in zip(mono1.x, mono2.x)),
                    tuple(a + b for a, b in zip(mono1.u, mono2.u)),
                )
                c = c1 * c2
                cur = terms.get(mono)
                terms[mono] = c if cur is None else cur + c
        return CliffordPoly(self.m, terms)

    def __eq__(self, other):
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------
    # calculus

    def partial_x(self, i: int) -> "CliffordPoly":
        """Formal partial derivative with respect to x_i (1-based)."""
        return self._partial(i, slot=0)

    def partial_u(self, i: int) -> "CliffordPoly":
        return self._partial(i, slot=1)

    def _partial(self, i: int, slot: int) -> "CliffordPoly":
        idx = i - 1
        terms = {}
        for mono, coef in self.terms.items():
            exps = mono[slot]
            e = exps[idx]
            if e == 0:
                continue
            new = list(exps)
            new[idx] = e - 1
            key = (
                Monomial(tuple(new), mono.u) if slot == 0 else Monomial(mono.x, tuple(new))
            )
            add = coef * (float(e) if coef.regime == FLOAT else e)
            cur = terms.get(key)
            terms[key] = add if cur is None else cur + add
        return CliffordPoly(self.m, terms)

    def _unit(self):
        if any(c.regime == FLOAT for c in self.terms.values()):
            return 1.0
        return 1

    def dirac_x(self) -> "CliffordPoly":
        """Dirac operator in x: sum_i e_i d/dx_i, with e_i acting on the left."""
        one = self._unit()
        out = CliffordPoly.zero(self.m)
        for i in range(1, self.m + 1):
            out = out + self.partial_x(i).lmul(Multivector.basis_vector(self.m, i, one))
        return out

    def dirac_u(self) -> "CliffordPoly":
        one = self._unit()
        out = CliffordPoly.zero(self.m)
        for i in range(1, self.m + 1):
            out = out + self.partial_u(i).lmul(Multivector.basis_vector(self.m, i, one))
        return out

    def laplacian_x(self) -> "CliffordPoly":
        out = CliffordPoly.zero(self.m)
        for i in range(1, self.m + 1):
            out = out + self.partial_x(i).partial_x(i)
        return out

    def laplacian_u(self) -> "CliffordPoly":
        out = CliffordPoly.zero(self.m)
        for i in range(1, self.m + 1):
            out = out + self.partial_u(i).partial_u(i)
        return out

    def _grade_by(self, degree_of) -> "CliffordPoly":
        terms = {}
        for mono, coef in self.terms.items():
            d = degree_of(mono)
            terms[mono] = coef * (float(d) if coef.regime == FLOAT else d)
        return CliffordPoly(self.m, terms)

    def euler_x(self) -> "CliffordPoly":
        """Degree operator sum_i x_i d/dx_i; multiplies each term by its x-degree."""
        return self._grade_by(lambda mono: mono.degree_x())

    def euler_u(self) -> "CliffordPoly":
        return self._grade_by(lambda mono: mono.degree_u())

    # ------------------------------------------------------------------
    # degree bookkeeping

    def degree_x(self) -> int:
        return max((mono.degree_x() for mono in self.terms), default=0)

    def degree_u(self) -> int:
        return max((mono.degree_u() for mono in self.terms), default=0)

    def is_homogeneous_x(self, d: int) -> bool:
        return all(mono.degree_x() == d for mono in self.terms)

    def is_homogeneous_u(self, k: int) -> bool:
        return all(mono.degree_u() == k for mono in self.terms)

    # ------------------------------------------------------------------
    # evaluation and substitution

    def evaluate(self, x=None, u=None):
        """Evaluate at numeric points.

        Either slot may be left symbolic by passing None.  Full evaluation
        returns a :class:`Multivector`; partial evaluation returns a
        :class:`CliffordPoly` in the remaining variables.
        """
        xv = None if x is None else list(x)
        uv = None if u is None else list(u)
        if xv is not None and len(xv) != self.m:
            raise ValueError(f"expected {self.m} x-components")
        if uv is not None and len(uv) != self.m:
            raise ValueError(f"expected {self.m} u-components")
        if xv is not None and uv is not None:
            total = Multivector.zero(self.m)
            for mono, coef in self.terms.items():
                s = _monomial_value(xv, mono.x) * _monomial_value(uv, mono.u)
                if coef.regime == FLOAT and not isinstance(s, float):
                    s = float(s)
                total = total + coef * s
            return total
        terms: dict[Monomial, Multivector] = {}
        zero = _zero_exps(self.m)
        for mono, coef in self.terms.items():
            if xv is not None:
                key = Monomial(zero, mono.u)
                s = _monomial_value(xv, mono.x)
            else:
                key = Monomial(mono.x, zero)
                s = _monomial_value(uv, mono.u)
            if coef.regime == FLOAT and not isinstance(s, float):
                s = float(s)
            add = coef * s
            cur = terms.get(key)
            terms[key] = add if cur is None else cur + add
        return CliffordPoly(self.m, terms)

    def substitute(self, x_map: dict | None = None, u_map: dict | None = None) -> "CliffordPoly":
        """Replace variables by scalar-valued polynomials.

        ``x_map`` and ``u_map`` send 1-based variable indices to
        :class:`CliffordPoly` replacements, which must be scalar-valued
        (grade-0 coefficients only).  Unmapped variables stay themselves.
        The result is float-regime as soon as the polynomial or any
        replacement is; in that case exact pieces are converted.
        """
        x_map = dict(x_map or {})
        u_map = dict(u_map or {})
        exact = True
        for coef in self.terms.values():
            if coef.regime != EXACT:
                exact = False
        for rep in list(x_map.values()) + list(u_map.values()):
            for coef in rep.terms.values():
                if coef.max_grade() != 0:
                    raise ValueError("substitution replacements must be scalar-valued")
                if coef.regime != EXACT:
                    exact = False
        if not exact:
            x_map = {i: rep.to_float() for i, rep in x_map.items()}
            u_map = {i: rep.to_float() for i, rep in u_map.items()}
        powers: dict = {}

        def power(slot: int, i: int, e: int) -> "CliffordPoly":
            key = (slot, i, e)
            got = powers.get(key)
            if got is not None:
                return got
            rep = (x_map if slot == 0 else u_map).get(i)
            if rep is None:
                rep = CliffordPoly.x_var(self.m, i) if slot == 0 else CliffordPoly.u_var(self.m, i)
                if not exact:
                    rep = rep.to_float()
            out = rep
            for _ in range(e - 1):
                out = out * rep
            powers[key] = out
            return out

        result = CliffordPoly.zero(self.m)
        for mono, coef in self.terms.items():
            if not exact and coef.regime == EXACT:
                coef = coef.to_float()
            prod = CliffordPoly.scalar(self.m, 1 if exact else 1.0)
            for i, e in enumerate(mono.x):
                if e:
                    prod = prod * power(0, i + 1, e)
            for i, e in enumerate(mono.u):
                if e:
                    prod = prod * power(1, i + 1, e)
            result = result + prod.rmul(coef)
        return result

    def shift_x(self, y) -> "CliffordPoly":
        """Substitute x -> x + y for a numeric vector y."""
        yv = list(y)
        exact = all(not isinstance(c, float) for c in yv)
        m = self.m
        x_map = {}
        for i in range(1, m + 1):
            c = yv[i - 1]
            var = CliffordPoly.x_var(m, i)
            if exact:
                rep = var + CliffordPoly.scalar(m, c) if c else var
            else:
                rep = var.to_float() + CliffordPoly.scalar(m, float(c))
            x_map[i] = rep
        return self.substitute(x_map=x_map)

    def to_float(self) -> "CliffordPoly":
        return CliffordPoly(self.m, {mono: c.to_float() for mono, c in self.terms.items()})

    def map_coefficients(self, fn: Callable[[Multivector], Multivector]) -> "CliffordPoly":
        return CliffordPoly(self.m, {mono: fn(c) for mono, c in self.terms.items()})

    # ------------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda mn: (mn.degree_x(), mn.degree_u(), mn)):
            coef = self.terms[mono]
            names = []
            for i, e in enumerate(mono.x):
                if e:
                    names.append(f"x{i + 1}" + (f"^{e}" if e > 1 else ""))
            for i, e in enumerate(mono.u):
                if e:
                    names.append(f"u{i + 1}" + (f"^{e}" if e > 1 else ""))
            head = " ".join(names)
            parts.append(f"({coef})" + (f" {head}" if head else ""))
        return " + ".join(parts)


def _monomial_value(values: list, exps: tuple):
    out = None
    for v, e in zip(values, exps):
        if e:
            p = v ** e
            out = p if out is None else out * p
    if out is None:
        return 1
    return out


# ----------------------------------------------------------------------
# exact moments

def omega(m: int) -> float:
    """Surface measure of the unit sphere S^{m-1}."""
    return 2.0 * math.pi ** (m / 2) / math.gamma(m / 2)


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def sphere_moment(m: int, exps: Iterable[int]) -> Fraction:
    """Moment of a monomial over S^{m-1} against the normalized measure.

    Returns the exact value of ``int u^exps dS*(u)`` where dS* has total
    mass 1.  Vanishes when any exponent is odd; otherwise equals
    ``prod (b_i - 1)!! / prod_{j<|b|/2} (m + 2j)``.
    """
    exps = tuple(exps)
    if any(e % 2 for e in exps):
        return Fraction(0)
    num = 1
    for e in exps:
        num *= _double_factorial(e - 1)
    half = sum(exps) // 2
    den = 1
    for j in range(half):
        den *= m + 2 * j
    return Fraction(num, den)


def ball_moment(m: int, exps: Iterable[int], radius=1) -> Fraction:
    """Moment of x^exps over the centered ball, in units of omega_{m-1}.

    The Lebesgue integral over B(0, radius) equals omega_{m-1} times the
    returned value: radial part radius^{m+|e|}/(m+|e|) times the
    normalized sphere moment.
    """
    exps = tuple(exps)
    total = sum(exps)
    sm = sphere_moment(m, exps)
    if not sm:
        return Fraction(0)
    if isinstance(radius, float):
        raise TypeError("exact ball moments need a rational radius")
    r = Fraction(radius)
    return sm * r ** (m + total) / (m + total)


def integrate_sphere(poly: CliffordPoly, slot: str = "u") -> CliffordPoly:
    """Integrate the u-variables (or x-variables) over the unit sphere.

    Uses the normalized measure; the result is a polynomial in the
    remaining slot with the integrated variables removed.
    """
    m = poly.m
    zero = _zero_exps(m)
    terms: dict[Monomial, Multivector] = {}
    for mono, coef in poly.terms.items():
        exps = mono.u if slot == "u" else mono.x
        w = sphere_moment(m, exps)
        if not w:
            continue
        key = Monomial(mono.x, zero) if slot == "u" else Monomial(zero, mono.u)
        if coef.regime != EXACT:
            w = float(w)
        add = coef * w
        cur = terms.get(key)
        terms[key] = add if cur is None else cur + add
    return CliffordPoly(m, terms)


def integrate_ball(poly: CliffordPoly, radius=1, slot: str = "x") -> CliffordPoly:
    """Integrate the x-variables over B(0, radius), in units of omega_{m-1}.

    The true Lebesgue integral is omega_{m-1} times the result.  The u
    slot (or x slot when integrating u) is left symbolic.
    """
    m = poly.m
    zero = _zero_exps(m)
    terms: dict[Monomial, Multivector] = {}
    for mono, coef in poly.terms.items():
        exps = mono.x if slot == "x" else mono.u
        w = ball_moment(m, exps, radius)
        if not w:
            continue
        key = Monomial(zero, mono.u) if slot == "x" else Monomial(mono.x, zero)
        if coef.regime != EXACT:
            w = float(w)
        add = coef * w
        cur = terms.get(key)
        terms[key] = add if cur is None else cur + add
    return CliffordPoly(m, terms)
