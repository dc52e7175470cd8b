"""Exact linear algebra over the rationals.

Rows are sparse ``dict`` objects mapping a column index to a ``Fraction``.
Gauss-Jordan elimination is done incrementally so that large overdetermined
systems can be streamed in one equation at a time.
"""

from fractions import Fraction
from math import lcm


class InconsistentSystem(ValueError):
    pass


def axpy(target, coeff, source):
    """target += coeff * source, dropping zeros."""
    if not coeff:
        return target
    for key, val in source.items():
        new = target.get(key, 0) + coeff * val
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def scaled(vec, coeff):
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Columns ``0 .. nvars-1`` are unknowns. Any larger integer key is treated as
    a right-hand side column and is never chosen as a pivot.
    """

    def __init__(self, nvars):
        self.nvars = nvars
        self.pivots = {}
        self.residuals = []

    def reduce(self, row):
        out = {k: Fraction(v) for k, v in row.items() if v}
        for col in [k for k in out if k in self.pivots]:
            c = out.get(col)
            if c:
                axpy(out, -c, self.pivots[col])
        return out

    def add(self, row):
        """Insert a row. Returns True if it raised the rank."""
        red = self.reduce(row)
        cols = [k for k in red if k < self.nvars]
        if not cols:
            if red:
                self.residuals.append(red)
            return False
        col = min(cols)
        inv = 1 / red[col]
        red = {k: v * inv for k, v in red.items()}
        for other in self.pivots.values():
            c = other.get(col)
            if c:
                axpy(other, -c, red)
        self.pivots[col] = red
        return True

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def consistent(self):
        return not self.residuals

    def nullspace(self):
        free = [c for c in range(self.nvars) if c not in self.pivots]
        basis = []
        for f in free:
            vec = {f: Fraction(1)}
            for p, row in self.pivots.items():
                c = row.get(f)
                if c:
                    vec[p] = -c
            basis.append(vec)
        return basis

    def solution(self, rhs_key):
        """Particular solution with free variables set to zero."""
        if self.residuals:
            raise InconsistentSystem("system has no solution")
        return {p: row[rhs_key] for p, row in self.pivots.items() if row.get(rhs_key)}


def nullspace(rows, nvars):
    ech = Echelon(nvars)
    for row in rows:
        ech.add(row)
    return ech.nullspace()


def solve(rows, rhs, nvars):
    """Solve ``rows . x = rhs`` exactly; free unknowns are set to zero."""
    ech = Echelon(nvars)
    for row, b in zip(rows, rhs):
        aug = dict(row)
        if b:
            aug[nvars] = Fraction(b)
        ech.add(aug)
    return ech.solution(nvars)


def rank(rows, nvars):
    ech = Echelon(nvars)
    for row in rows:
        ech.add(row)
    return ech.rank


def dense_to_rows(matrix):
    return [{j: Fraction(v) for j, v in enumerate(r) if v} for r in matrix]


def fraction_free_rank(matrix):
    """Rank via Bareiss elimination on an integer-scaled copy of ``matrix``."""
    rows = []
    for r in matrix:
        den = 1
        for v in r:
            den = lcm(den, Fraction(v).denominator)
        rows.append([int(Fraction(v) * den) for v in r])
    if not rows:
        return 0
    ncols = len(rows[0])
    prev = 1
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        top = rows[rk]
        for i in range(rk + 1, len(rows)):
            r = rows[i]
            for j in range(col + 1, ncols):
                r[j] = (top[col] * r[j] - r[col] * top[j]) // prev
            r[col] = 0
        prev = top[col]
        rk += 1
        if rk == len(rows):
            break
    return rk


def inverse(matrix):
    """Inverse of a square dense matrix (list of lists)."""
    n = len(matrix)
    ech = Echelon(n)
    for i, r in enumerate(matrix):
        row = {j: Fraction(v) for j, v in enumerate(r) if v}
        row[n + i] = Fraction(1)
        ech.add(row)
    if ech.rank != n:
        raise InconsistentSystem("matrix is singular")
    return [[ech.pivots[i].get(n + j, Fraction(0)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner) if a[i][k]), Fraction(0))
             for j in range(cols)] for i in range(len(a))]
