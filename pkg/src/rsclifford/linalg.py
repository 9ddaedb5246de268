"""Exact rational linear algebra for small dense systems.

Matrices are lists of row lists.  Internally everything runs on gmpy2
rationals for speed, with plain :class:`fractions.Fraction` accepted on
input and produced on request.  The sizes involved here (a few hundred at
most) keep classic Gaussian elimination comfortably fast in exact
arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    mpq = Fraction

ZERO = mpq(0)
ONE = mpq(1)


def to_exact(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x.numerator, x.denominator)


def exact_rows(rows) -> list[list]:
    return [[to_exact(x) for x in row] for row in rows]


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form in place; returns (rows, pivot_columns).

    Entries are normalized to one exact scalar type up front so callers
    may pass ints and Fractions freely.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r, row in enumerate(rows):
        rows[r] = [to_exact(x) for x in row]
    nrows = len(rows)
    pivots = []
    pr = 0
    for c in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if rows[r][c]:
                piv = r
                break
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        inv = ONE / rows[pr][c]
        rows[pr] = [x * inv for x in rows[pr]]
        lead = rows[pr]
        for r in range(nrows):
            if r != pr and rows[r][c]:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], lead)]
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    work = [row[:] for row in rows]
    _, pivots = rref(work)
    return len(pivots)


def nullspace(rows, ncols: int) -> list[list]:
    """Exact basis of the right nullspace; vectors have unit free entries."""
    if not rows:
        return [[ONE if j == i else ZERO for j in range(ncols)] for i in range(ncols)]
    work = [row[:] for row in rows]
    work, pivots = rref(work, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis


def solve(a_rows, rhs_cols):
    """Solve A X = B for square invertible A; B given as list of columns."""
    n = len(a_rows)
    k = len(rhs_cols)
    aug = [a_rows[r][:] + [col[r] for col in rhs_cols] for r in range(n)]
    aug, pivots = rref(aug, n)
    if len(pivots) != n:
        raise ValueError("singular matrix")
    return [[aug[r][n + j] for r in range(n)] for j in range(k)]


def inverse(a_rows):
    n = len(a_rows)
    eye = [[ONE if r == j else ZERO for r in range(n)] for j in range(n)]
    cols = solve(a_rows, eye)
    return [[cols[j][r] for j in range(n)] for r in range(n)]


def mat_vec(rows, vec):
    return [sum((a * b for a, b in zip(row, vec)), ZERO) for row in rows]


def is_positive_definite(rows) -> bool:
    """Exact test via Cholesky-style pivoting on a symmetric matrix."""
    n = len(rows)
    work = [row[:] for row in rows]
    for i in range(n):
        d = work[i][i]
        if d <= 0:
            return False
        for r in range(i + 1, n):
            if work[r][i]:
                f = work[r][i] / d
                work[r] = [a - f * b for a, b in zip(work[r], work[i])]
    return True


class EchelonBasis:
    """Incremental echelon form tracking coordinates over accepted vectors.

    Feed candidate vectors with :meth:`add`; those that enlarge the span
    are accepted.  Afterwards :meth:`coords` expresses any vector of the
    span in terms of the accepted ones (in acceptance order).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list] = []
        self.combos: list[list] = []
        self.pivots: list[int] = []
        self.n_accepted = 0

    def _reduce(self, vec):
        vec = [to_exact(x) for x in vec]
        combo = [ZERO] * self.n_accepted
        for row, crow, p in zip(self.rows, self.combos, self.pivots):
            f = vec[p]
            if f:
                vec = [a - f * b for a, b in zip(vec, row)]
                for j, c in enumerate(crow):
                    if c:
                        combo[j] = combo[j] - f * c
        return vec, combo

    def add(self, vec) -> bool:
        vec, combo = self._reduce(vec)
        pivot = next((c for c, x in enumerate(vec) if x), None)
        if pivot is None:
            return False
        inv = ONE / vec[pivot]
        vec = [x * inv for x in vec]
        combo = [c * inv for c in combo] + [inv]
        for row, crow in zip(self.rows, self.combos):
            crow.extend([ZERO])
        self.n_accepted += 1
        # re-reduce existing rows against the new one for full rref
        for idx, (row, crow) in enumerate(zip(self.rows, self.combos)):
            f = row[pivot]
            if f:
                self.rows[idx] = [a - f * b for a, b in zip(row, vec)]
                self.combos[idx] = [a - f * b for a, b in zip(crow, combo)]
        self.rows.append(vec)
        self.combos.append(combo)
        self.pivots.append(pivot)
        return True

    def coords(self, vec):
        """Coordinates over the accepted vectors, or None if outside the span."""
        red, combo = self._reduce(vec)
        if any(red):
            return None
        return [-c for c in combo]

    @property
    def dim(self) -> int:
        return len(self.rows)
