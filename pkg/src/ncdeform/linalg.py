"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions; vectors are lists of Fractions.
Everything here is dense Gaussian elimination, which is plenty for the
desk-scale dimensions this package works at.
"""

from __future__ import annotations

from fractions import Fraction

Vec = list
Mat = list


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(m: int, n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Mat:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat(rows) -> Mat:
    return [[frac(x) for x in row] for row in rows]


def mat_mul(a: Mat, b: Mat) -> Mat:
    if not a:
        return []
    n = len(b)
    assert all(len(row) == n for row in a), "shape mismatch"
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        out.append([sum(x * y for x, y in zip(row, col)) for col in bt])
    return out


def vec_mat(v: Vec, a: Mat) -> Vec:
    assert len(v) == len(a)
    if not a:
        return []
    out = [Fraction(0)] * len(a[0])
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Mat) -> Mat:
    c = frac(c)
    return [[c * x for x in row] for row in a]


def mat_eq_zero(a: Mat) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    r = [row[:] for row in a]
    if not r:
        return r, []
    rows, cols = len(r), len(r[0])
    pivots = []
    pr = 0
    for c in range(cols):
        piv = next((i for i in range(pr, rows) if r[i][c] != 0), None)
        if piv is None:
            continue
        r[pr], r[piv] = r[piv], r[pr]
        inv = 1 / r[pr][c]
        r[pr] = [x * inv for x in r[pr]]
        for i in range(rows):
            if i != pr and r[i][c] != 0:
                f = r[i][c]
                r[i] = [x - f * y for x, y in zip(r[i], r[pr])]
        pivots.append(c)
        pr += 1
        if pr == rows:
            break
    return [row for row in r[:pr]], pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def nullspace(a: Mat) -> list[Vec]:
    """Basis of {x : a @ x = 0} with x a column vector, returned as rows."""
    if not a or not a[0]:
        n = len(a[0]) if a else 0
        return [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
                for i in range(n)]
    r, pivots = rref(a)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a: Mat, b: Vec):
    """One solution x of a @ x = b (columns), or None if inconsistent."""
    if not a:
        return [] if all(x == 0 for x in b) else None
    aug = [row[:] + [bx] for row, bx in zip(a, b)]
    r, pivots = rref(aug)
    n = len(a[0])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = r[i][n]
    return x


class Subspace:
    """A subspace of k^n kept as an rref basis; supports membership,
    coordinates in the ambient space, and incremental extension."""

    def __init__(self, ambient: int, vectors=()):
        self.ambient = ambient
        self.rows: Mat = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        v = [frac(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v: Vec) -> bool:
        """Add v to the span; returns True if the dimension grew."""
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv for x in v]
        k = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(k, v)
        self.pivots.insert(k, p)
        # keep reduced: clear column p in the other rows
        for i in range(len(self.rows)):
            if i != k and self.rows[i][p] != 0:
                f = self.rows[i][p]
                self.rows[i] = [x - f * y for x, y in zip(self.rows[i], v)]
        return True

    def contains(self, v: Vec) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def complement_indices(self) -> list[int]:
        """Coordinate positions spanning a complement (non-pivot columns)."""
        return [c for c in range(self.ambient) if c not in self.pivots]


def quotient_basis(sub: Subspace) -> list[int]:
    return sub.complement_indices()


def quotient_coords(sub: Subspace, v: Vec) -> Vec:
    """Coordinates of v + sub in the complement-coordinate basis."""
    red = sub.reduce(v)
    return [red[c] for c in sub.complement_indices()]


def coords_in(basis: Mat, v: Vec):
    """Coordinates of v in the given (row) basis, or None."""
    if not basis:
        return [] if all(x == 0 for x in v) else None
    cols = list(zip(*basis))
    return solve([list(c) for c in cols], v)
