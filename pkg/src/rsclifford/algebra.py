"""Real Clifford algebra Cl_m with negative-definite signature.

The generators satisfy e_i e_j + e_j e_i = -2 delta_ij, so every basis
vector squares to -1.  Basis blades are encoded as integer bitmasks: bit
(i - 1) set means the unit vector e_i participates, and the blade's
factors are always kept in increasing index order.  The empty mask is the
scalar blade.

Coefficients live in one of two regimes: exact rational (``int`` /
``fractions.Fraction``, plus gmpy2 rationals where available) or binary
float.  Arithmetic never silently crosses regimes; convert explicitly
with :meth:`Multivector.to_float`.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    _EXACT_TYPES = (int, Fraction, type(_mpq(1)))
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency
    _EXACT_TYPES = (int, Fraction)

EXACT = "exact"
FLOAT = "float"


def blade_grade(mask: int) -> int:
    """Number of unit vectors in the blade."""
    return mask.bit_count()


def blade_product(a: int, b: int) -> tuple[int, int]:
    """Product of two basis blades.

    Returns ``(sign, mask)`` with sign in {+1, -1}.  The sign counts the
    transpositions needed to interleave the two sorted index sequences,
    times a factor -1 for every index the blades share (e_i^2 = -1).
    """
    swaps = 0
    t = a >> 1
    while t:
        swaps += (t & b).bit_count()
        t >>= 1
    sign = -1 if swaps & 1 else 1
    if (a & b).bit_count() & 1:
        sign = -sign
    return sign, a ^ b


def reversion_sign(grade: int) -> int:
    """Sign of reversion on a blade of the given grade: (-1)^(g(g-1)/2)."""
    return -1 if (grade * (grade - 1) // 2) & 1 else 1


def conjugation_sign(grade: int) -> int:
    """Sign of Clifford conjugation on a grade-g blade: (-1)^(g(g+1)/2)."""
    return -1 if (grade * (grade + 1) // 2) & 1 else 1


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


def _is_exact(value) -> bool:
    return isinstance(value, _EXACT_TYPES)


class RegimeError(TypeError):
    """Raised when exact and float coefficients meet without explicit conversion."""


class Multivector:
    """Element of Cl_m stored as a sparse blade-to-coefficient map.

    Parameters
    ----------
    m : int
        Number of generators; must be >= 1 (the library proper uses m >= 3).
    comps : dict, optional
        Mapping from blade mask to coefficient.  Zero coefficients are
        dropped on construction.
    """

    __slots__ = ("m", "comps", "regime")

    def __init__(self, m: int, comps: dict | None = None):
        if m < 1:
            raise ValueError(f"need at least one generator, got m={m}")
        self.m = m
        clean: dict = {}
        regime = None
        limit = 1 << m
        for mask, c in (comps or {}).items():
            if not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask} out of range for m={m}")
            exact = _is_exact(c)
            if regime is None:
                regime = EXACT if exact else FLOAT
            elif exact != (regime == EXACT):
                raise RegimeError("mixed exact and float coefficients in one multivector")
            if c:
                clean[mask] = c
        self.comps = clean
        # an empty multivector is zero in either regime; call it exact
        self.regime = regime if regime is not None else EXACT
        if self.regime == FLOAT:
            for mask, c in clean.items():
                clean[mask] = float(c)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, m: int) -> "Multivector":
        return cls(m, {})

    @classmethod
    def scalar(cls, m: int, value) -> "Multivector":
        return cls(m, {0: value})

    @classmethod
    def basis_vector(cls, m: int, i: int, coeff=1) -> "Multivector":
        """The unit vector e_i (1-based index)."""
        if not 1 <= i <= m:
            raise ValueError(f"basis index {i} out of range for m={m}")
        return cls(m, {1 << (i - 1): coeff})

    @classmethod
    def vector(cls, m: int, components) -> "Multivector":
        """Grade-1 element with the given m components."""
        comps = list(components)
        if len(comps) != m:
            raise ValueError(f"expected {m} components, got {len(comps)}")
        return cls(m, {1 << i: c for i, c in enumerate(comps) if c})

    @classmethod
    def blade(cls, m: int, *indices, coeff=1) -> "Multivector":
        """Product e_{i1} e_{i2} ... of distinct 1-based indices."""
        out = cls.scalar(m, coeff)
        for i in indices:
            out = out * cls.basis_vector(m, i)
        return out

    # ------------------------------------------------------------------
    # regime handling

    def _check(self, other: "Multivector") -> None:
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: m={self.m} vs m={other.m}")
        if self.comps and other.comps and self.regime != other.regime:
            raise RegimeError(
                "cannot combine exact and float multivectors; call to_float() first"
            )

    def to_float(self) -> "Multivector":
        return Multivector(self.m, {mask: float(c) for mask, c in self.comps.items()})

    def to_fraction(self) -> "Multivector":
        return Multivector(self.m, {mask: Fraction(c) for mask, c in self.comps.items()})

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        comps = dict(self.comps)
        for mask, c in other.comps.items():
            comps[mask] = comps.get(mask, 0) + c
        return Multivector(self.m, comps)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        comps = dict(self.comps)
        for mask, c in other.comps.items():
            comps[mask] = comps.get(mask, 0) - c
        return Multivector(self.m, comps)

    def __neg__(self):
        return Multivector(self.m, {mask: -c for mask, c in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            comps: dict = {}
            for a, ca in self.comps.items():
                for b, cb in other.comps.items():
                    sign, mask = blade_product(a, b)
                    c = ca * cb
                    comps[mask] = comps.get(mask, 0) + (c if sign > 0 else -c)
            return Multivector(self.m, comps)
        return self._scale(other)

    def __rmul__(self, other):
        # scalars commute with everything; true Clifford products only
        # arise between Multivector instances
        return self._scale(other)

    def _scale(self, s):
        if not isinstance(s, (*_EXACT_TYPES, float)):
            return NotImplemented
        if self.comps and _is_exact(s) != (self.regime == EXACT):
            raise RegimeError("scalar regime does not match multivector regime")
        return Multivector(self.m, {mask: c * s for mask, c in self.comps.items()})

    def __truediv__(self, s):
        if isinstance(s, _EXACT_TYPES) and self.regime == EXACT:
            return self._scale(Fraction(1, 1) / s if isinstance(s, int) else 1 / s)
        return self._scale(1.0 / s)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.m == other.m and self.comps == other.comps

    def __hash__(self):
        return hash((self.m, tuple(sorted(self.comps.items()))))

    # ------------------------------------------------------------------
    # involutions and parts

    def reverse(self) -> "Multivector":
        return Multivector(
            self.m,
            {mask: c * reversion_sign(blade_grade(mask)) for mask, c in self.comps.items()},
        )

    def conjugate(self) -> "Multivector":
        return Multivector(
            self.m,
            {mask: c * conjugation_sign(blade_grade(mask)) for mask, c in self.comps.items()},
        )

    def scalar_part(self):
        return self.comps.get(0, 0)

    def grade(self, g: int) -> "Multivector":
        return Multivector(
            self.m, {mask: c for mask, c in self.comps.items() if blade_grade(mask) == g}
        )

    def max_grade(self) -> int:
        return max((blade_grade(mask) for mask in self.comps), default=0)

    def coeff(self, mask: int):
        return self.comps.get(mask, 0)

    def vector_components(self) -> list:
        """Components of the grade-1 part as a length-m list."""
        return [self.comps.get(1 << i, 0) for i in range(self.m)]

    # ------------------------------------------------------------------
    # norms

    def norm_sq(self):
        """Scalar part of conj(a) * a; equals the sum of squared coefficients."""
        return (self.conjugate() * self).scalar_part()

    def abs2(self):
        """Sum of squared coefficients, computed directly."""
        return sum(c * c for c in self.comps.values())

    def norm(self) -> float:
        return float(self.abs2()) ** 0.5

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    # ------------------------------------------------------------------

    def __repr__(self):
        if not self.comps:
            return "0"
        parts = []
        for mask in sorted(self.comps, key=lambda b: (blade_grade(b), b)):
            c = self.comps[mask]
            name = blade_name(mask)
            if mask == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")
