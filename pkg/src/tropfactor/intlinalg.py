"""Exact linear algebra over Q and Z.

Matrices are plain nested lists (rows). Entries are ``int`` or
``fractions.Fraction``; nothing here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list]


class NoSolutionError(ArithmeticError):
    """Raised when a linear system has no solution of the requested kind.

    ``reason`` is ``"no solution"`` when the right-hand side is outside the
    rational span, and ``"no integral w"`` when only a non-integral
    translation part exists.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    if g in (0, 1):
        return tuple(int(x) for x in vec)
    return tuple(int(x) // g for x in vec)


def clear_denominators(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(Fraction(x) * den) for x in vec])


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Integer vectors spanning the rational kernel of ``m``.

    Each vector is primitive and the basis is the one read off the RREF, so
    the output is deterministic.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(clear_denominators(v))
    return basis


def solve_rational(m: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A particular solution of ``m x = b`` (free variables zero) or None."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [list(m[i]) + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return x


def hnf_columns(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[tuple[int, int]]]:
    """Column-style Hermite normal form.

    Returns ``(L, U, pivots)`` with ``m @ U == L``, ``U`` unimodular and
    ``L`` in column echelon form; ``pivots`` lists ``(row, col)`` of the
    leading positive entries.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def colop(k: int, j: int, p: int, q: int, r: int, s: int) -> None:
        # (col_k, col_j) <- (p col_k + q col_j, r col_k + s col_j)
        for mat in (a, u):
            for row in mat:
                x, y = row[k], row[j]
                row[k] = p * x + q * y
                row[j] = r * x + s * y

    pivots: list[tuple[int, int]] = []
    k = 0
    for i in range(rows):
        if k == cols:
            break
        for j in range(k + 1, cols):
            if a[i][j] == 0:
                continue
            x, y = a[i][k], a[i][j]
            g, s, t = xgcd(x, y)
            colop(k, j, s, t, -y // g, x // g)
        if a[i][k] == 0:
            continue
        if a[i][k] < 0:
            for mat in (a, u):
                for row in mat:
                    row[k] = -row[k]
        piv = a[i][k]
        for j in range(k):
            q = a[i][j] // piv
            if q:
                for mat in (a, u):
                    for row in mat:
                        row[j] -= q * row[k]
        pivots.append((i, k))
        k += 1
    return a, u, pivots


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``m w = b`` or None when none exists."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return [] if all(x == 0 for x in b) else None
    low, u, pivots = hnf_columns(m)
    z = [0] * cols
    piv_of_row = dict(pivots)
    for i in range(rows):
        acc = int(b[i]) - sum(low[i][j] * z[j] for j in range(cols))
        if i in piv_of_row:
            k = piv_of_row[i]
            q, r = divmod(acc, low[i][k])
            if r:
                return None
            z[k] = q
        elif acc:
            return None
    return [sum(u[r][c] * z[c] for c in range(cols)) for r in range(cols)]


class RationalSystem:
    """``m x = b`` over Q with the elimination done once.

    ``solve`` returns the same particular solution as :func:`solve_rational`.
    """

    def __init__(self, m: Sequence[Sequence]):
        rows = len(m)
        self.cols = len(m[0]) if rows else 0
        aug = [list(m[i]) + [int(i == j) for j in range(rows)] for i in range(rows)]
        red, pivots = rref(aug) if rows else ([], [])
        self.pivots = [p for p in pivots if p < self.cols]
        k = len(self.pivots)
        self._solve_rows = [row[self.cols:] for row in red[:k]]
        # rows of the transform that must annihilate b for consistency
        self._check_rows = [row[self.cols:] for row in red[k:]]

    def solve(self, b: Sequence) -> list[Fraction] | None:
        for row in self._check_rows:
            if sum(x * y for x, y in zip(row, b) if x):
                return None
        x = [Fraction(0)] * self.cols
        for p, row in zip(self.pivots, self._solve_rows):
            x[p] = sum((c * y for c, y in zip(row, b) if c), Fraction(0))
        return x


class IntegerSystem:
    """``m w = b`` over Z with the Hermite form computed once."""

    def __init__(self, m: Sequence[Sequence[int]]):
        self.rows = len(m)
        self.cols = len(m[0]) if self.rows else 0
        if self.cols:
            self._low, self._u, pivots = hnf_columns(m)
            self._piv = dict(pivots)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        if self.cols == 0:
            return [] if all(x == 0 for x in b) else None
        z = [0] * self.cols
        low = self._low
        for i in range(self.rows):
            acc = int(b[i]) - sum(low[i][j] * z[j] for j in range(self.cols) if z[j])
            if i in self._piv:
                k = self._piv[i]
                q, r = divmod(acc, low[i][k])
                if r:
                    return None
                z[k] = q
            elif acc:
                return None
        return [sum(self._u[r][c] * z[c] for c in range(self.cols)) for r in range(self.cols)]


@dataclass
class AffineSolver:
    """Solver for ``A y + H w = b`` with rational ``y`` and integral ``w``.

    ``A`` is given column-wise (``a_cols[i]`` is column ``i``), matching the
    way b-vectors of basis members are stored. The eliminations are done
    once, so repeated solves against the same ``(A, H)`` only cost a few
    matrix-vector products.
    """

    a_cols: list[tuple[int, ...]]
    h_rows: list[tuple[int, ...]]

    def __post_init__(self) -> None:
        self.r = len(self.h_rows)
        self.m = len(self.a_cols)
        self.n = len(self.h_rows[0]) if self.h_rows else 0
        a_rows = transpose(self.a_cols) if self.a_cols else [[] for _ in range(self.r)]
        self._a_rows = a_rows
        joint = [list(a_rows[i]) + list(self.h_rows[i]) for i in range(self.r)]
        self.joint_rank = rank(joint) if self.m + self.n else 0
        self.a_rank = rank(a_rows) if self.m else 0
        self.h_rank = rank(self.h_rows) if self.n else 0
        # left annihilator of A: rows u with u^T A = 0
        self._ann = nullspace(self.a_cols, self.r) if self.m else [
            tuple(int(i == j) for j in range(self.r)) for i in range(self.r)]
        self._ann_h = [[sum(u[i] * self.h_rows[i][c] for i in range(self.r))
                        for c in range(self.n)] for u in self._ann]
        self._joint = RationalSystem(joint) if self.m + self.n else None
        self._a = RationalSystem(a_rows) if self.m else None
        self._w = IntegerSystem(self._ann_h) if self._ann else None

    @property
    def independent(self) -> bool:
        """Columns of A independent modulo the span of H."""
        return self.joint_rank == self.m + self.h_rank

    def solve(self, b: Sequence[int]) -> tuple[list[Fraction], list[int]]:
        b = [int(x) for x in b]
        if len(b) != self.r:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.r}")
        if self._joint is not None and self._joint.solve(b) is None:
            raise NoSolutionError("no solution")
        rhs = [sum(u[i] * b[i] for i in range(self.r)) for u in self._ann]
        w = self._w.solve(rhs) if self._w is not None else [0] * self.n
        if w is None:
            raise NoSolutionError("no integral w")
        resid = [b[i] - sum(self.h_rows[i][c] * w[c] for c in range(self.n))
                 for i in range(self.r)]
        if self._a is not None:
            y = self._a.solve(resid)
        else:
            y = [] if all(x == 0 for x in resid) else None
        if y is None:  # pragma: no cover - excluded by the annihilator step
            raise NoSolutionError("no solution")
        return y, w


def solve_integer_affine(a_cols, h_rows, b) -> tuple[list[Fraction], list[int]]:
    """Solve ``A y + H w = b`` for rational ``y`` and integer ``w``.

    Raises :class:`NoSolutionError` with reason ``"no solution"`` or
    ``"no integral w"``.
    """
    return AffineSolver([tuple(c) for c in a_cols], [tuple(r) for r in h_rows]).solve(b)
