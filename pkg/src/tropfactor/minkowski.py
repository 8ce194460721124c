"""Minkowski sums, signed differences, H-matrices and b-vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import NamedTuple, Sequence

from .dd import extreme_rays
from .geometry import Polytope, canonical_direction, convex_hull, dot
from .intlinalg import RationalSystem

# --------------------------------------------------------------------------
# sums and differences
# --------------------------------------------------------------------------


def minkowski_sum(polys: Sequence[Polytope]) -> Polytope:
    """Minkowski sum of a nonempty list of polytopes."""
    polys = list(polys)
    if not polys:
        raise ValueError("minkowski_sum of an empty list")
    n = polys[0].ambient_dim
    if any(p.ambient_dim != n for p in polys):
        raise ValueError("ambient dimension mismatch")
    # points first: they only translate
    shift = [0] * n
    rest = []
    for p in polys:
        if len(p.vertices) == 1:
            shift = [a + b for a, b in zip(shift, p.vertices[0])]
        else:
            rest.append(p)
    if not rest:
        return Polytope((tuple(shift),))
    acc = rest[0]
    for p in rest[1:]:
        acc = convex_hull({tuple(a + b for a, b in zip(u, v))
                           for u in acc.vertices for v in p.vertices})
    return acc.translate(shift) if any(shift) else acc


def scaled_sum(polys: Sequence[Polytope], coeffs: Sequence[int]) -> Polytope | None:
    """``sum c_i P_i`` for nonnegative integers ``c_i``; None when all are zero."""
    parts = [p.scale(c) for p, c in zip(polys, coeffs) if c]
    if any(c < 0 for c in coeffs):
        raise ValueError("scaled_sum needs nonnegative coefficients")
    return minkowski_sum(parts) if parts else None


def _integer_rows(rows: list[list]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def polytope_from_inequalities(rows: Sequence[Sequence], rhs: Sequence) -> Polytope | None:
    """Vertices of the bounded set ``{x : rows . x <= rhs}``.

    Returns None when the set is empty and raises ``ValueError`` when it is
    unbounded. Vertices may be rational.
    """
    if not rows:
        raise ValueError("no inequalities")
    n = len(rows[0])
    cons = [[c] + [-a for a in r] for r, c in zip(rows, rhs)]
    cons.append([1] + [0] * n)
    cons = _integer_rows(cons)
    rays, lin = extreme_rays(cons, n + 1)
    if lin:
        raise ValueError("inequality system is unbounded")
    pts = []
    for r in rays:
        if r[0] == 0:
            raise ValueError("inequality system is unbounded")
        pts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
    if not pts:
        return None
    return Polytope(tuple(pts))


def signed_difference(p: Polytope, q: Polytope) -> Polytope | None:
    """``P - Q = {x : x + Q subset of P}``, or None when empty.

    The result can have rational vertices; check ``is_lattice``.
    """
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    rows, rhs = [], []
    for e, val in p.equations:
        vals = {dot(e, v) for v in q.vertices}
        if len(vals) > 1:
            return None
        c = val - vals.pop()
        rows += [list(e), [-x for x in e]]
        rhs += [c, -c]
    for f in p.facets:
        rows.append(list(f.normal))
        rhs.append(f.offset - q.support(f.normal))
    if not p.facets:
        # p is a point; the equations pin x down
        t = tuple(a - b for a, b in zip(p.vertices[0], q.vertices[0]))
        return Polytope((t,)) if len(q.vertices) == 1 else None
    return polytope_from_inequalities(rows, rhs)


def is_summand(q: Polytope, p: Polytope) -> bool:
    """True iff ``Q <= P``, i.e. ``(P - Q) + Q == P``."""
    d = signed_difference(p, q)
    if d is None:
        return False
    return minkowski_sum([d, q]) == p


# --------------------------------------------------------------------------
# H-matrices
# --------------------------------------------------------------------------

def _is_positive(v: Sequence[int]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _row_key(v: tuple[int, ...]):
    rep = v if _is_positive(v) else tuple(-x for x in v)
    return (sum(abs(x) for x in rep), tuple(-x for x in rep), 0 if rep == v else 1)


@dataclass(frozen=True)
class HMatrix:
    """Primitive outer normals of a reference polytope, canonically ordered.

    Rows are grouped in ``(v, -v)`` pairs where both occur; ``pairs`` holds
    the index pairs with the positive representative first. ``lineality``
    indexes the rows that pin down the affine hull of the reference.
    ``cones`` lists, per vertex of the reference, the rows tight there; they
    describe its normal fan and are empty when the reference is unknown.
    """

    rows: tuple[tuple[int, ...], ...]
    lineality: frozenset[tuple[int, ...]] = frozenset()
    cones: tuple[frozenset[tuple[int, ...]], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        rows = tuple(sorted(set(tuple(int(x) for x in r) for r in self.rows), key=_row_key))
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def pairs(self) -> list[tuple[int, int]]:
        idx = {r: i for i, r in enumerate(self.rows)}
        out = []
        for i, r in enumerate(self.rows):
            neg = tuple(-x for x in r)
            if _is_positive(r) and neg in idx:
                out.append((i, idx[neg]))
        return out

    @property
    def unpaired(self) -> list[int]:
        paired = {i for pr in self.pairs for i in pr}
        return [i for i in range(len(self.rows)) if i not in paired]

    def index(self, row: Sequence[int]) -> int:
        return self.rows.index(tuple(row))

    @cached_property
    def cone_systems(self) -> list[tuple[list[int], RationalSystem]]:
        out = []
        for cone in self.cones:
            idx = sorted(self.rows.index(r) for r in cone)
            out.append((idx, RationalSystem([self.rows[i] for i in idx])))
        return out

    def apply(self, x: Sequence) -> tuple:
        return tuple(dot(r, x) for r in self.rows)

    def to_json(self) -> dict:
        return {"rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "HMatrix":
        return cls(tuple(tuple(r) for r in obj["rows"]))


def h_matrix_of(p: Polytope) -> HMatrix:
    """H-matrix of a single polytope, lineality rows included as ``+-`` pairs."""
    rows = {f.normal for f in p.facets}
    lin = set()
    for e, _ in p.equations:
        e = canonical_direction(e)
        lin.add(e)
        rows.add(e)
        rows.add(tuple(-x for x in e))
    if not rows:
        raise ValueError("H-matrix of a point in dimension 0")
    both = {r for e in lin for r in (e, tuple(-x for x in e))}
    cones = tuple(frozenset({f.normal for f in p.facets if k in f.vertices} | both)
                  for k in range(len(p.vertices)))
    return HMatrix(tuple(rows), frozenset(lin), cones)


@lru_cache(maxsize=64)
def _h_matrix_cached(polys: tuple[Polytope, ...]) -> HMatrix:
    return h_matrix_of(minkowski_sum(list(polys)))


def h_matrix(polys: Sequence[Polytope]) -> HMatrix:
    """H-matrix of the Minkowski sum of ``polys``; independent of their order."""
    polys = tuple(sorted(polys, key=lambda p: p.vertices))
    if not polys:
        raise ValueError("h_matrix of an empty list")
    return _h_matrix_cached(polys)


# --------------------------------------------------------------------------
# b-vectors
# --------------------------------------------------------------------------

def support_vector(p: Polytope, h: HMatrix) -> tuple:
    """Candidate ``b_i = max_{x in P} v_i . x`` without any check."""
    if p.ambient_dim != h.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: polytope in Z^{p.ambient_dim}, "
                         f"H-matrix in Z^{h.ambient_dim}")
    return tuple(p.support(r) for r in h.rows)


def b_constant(p: Polytope, h: HMatrix) -> tuple | None:
    """The b-vector of ``p`` against ``h``, or None if ``p`` is not representable.

    ``p`` is representable when the normal fan of the reference refines
    that of ``p``: for every vertex cone of the reference, the rows tight
    there must all be attained at one common vertex of ``p``. Without a
    known reference fan only ``p == {x : Hx <= b}`` is checked.
    """
    b = support_vector(p, h)
    if not h.cones:
        if len(p.vertices) == 1:
            return b
        try:
            q = polytope_from_inequalities([list(r) for r in h.rows], list(b))
        except ValueError:
            return None
        return b if q == p else None
    verts = set(p.vertices)
    for idx, system in h.cone_systems:
        x = system.solve([b[i] for i in idx])
        if x is None or tuple(x) not in verts:
            return None
    return b


def point_b_vector(x: Sequence[int], h: HMatrix) -> tuple:
    return h.apply(x)


class Additivity(NamedTuple):
    holds: bool
    summand: bool
    reason: str

    def __bool__(self) -> bool:
        return self.holds


def b_additivity_check(polys: Sequence[Polytope], y: Sequence[int],
                       h: HMatrix | None = None) -> Additivity:
    """Check ``b(F(y)) == sum y_i b(F_i)`` for the signed sum ``F(y)``.

    ``F(y) = F(y+) - F(y-)``. The summand flag reports whether
    ``F(y-) <= F(y+)``; the two answers coincide for valid inputs.
    """
    polys = list(polys)
    if len(polys) != len(y):
        raise ValueError("need one coefficient per polytope")
    h = h if h is not None else h_matrix(polys)
    n = polys[0].ambient_dim
    origin = Polytope(((0,) * n,))
    plus = scaled_sum(polys, [max(c, 0) for c in y]) or origin
    minus = scaled_sum(polys, [max(-c, 0) for c in y]) or origin
    summand = is_summand(minus, plus)
    fy = signed_difference(plus, minus)
    if fy is None:
        return Additivity(False, summand, "F(y) is empty")
    bs = [support_vector(p, h) for p in polys]
    expected = tuple(sum(c * b[i] for c, b in zip(y, bs)) for i in range(len(h)))
    got = b_constant(fy, h) if fy.is_lattice else None
    if got is None:
        return Additivity(False, summand, "F(y) is not H-representable")
    if got != expected:
        return Additivity(False, summand, "b-vectors differ")
    return Additivity(True, summand, "")
