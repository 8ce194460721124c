"""Lattice polytopes with exact hull and face computations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .dd import extreme_rays
from .intlinalg import (
    NoSolutionError,  # noqa: F401  (re-exported)
    hnf_columns,
    nullspace,
    primitive,
    rank,
    rref,
    solve_integer_affine,  # noqa: F401  (re-exported)
)

Number = int | Fraction
Point = tuple


# --------------------------------------------------------------------------
# rationals
# --------------------------------------------------------------------------

def as_rational(x) -> Fraction:
    """Parse an int, Fraction, ``"p/q"`` string or decimal string exactly."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass a string such as '5/2'")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(q) -> int | str:
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def _normalize_number(x) -> Number:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    return _normalize_number(as_rational(x))


def _as_point(p: Iterable) -> Point:
    return tuple(_normalize_number(x) for x in p)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _common_denominator(points: Iterable[Point]) -> int:
    d = 1
    for p in points:
        for x in p:
            if isinstance(x, Fraction):
                d = d * x.denominator // gcd(d, x.denominator)
    return d


def canonical_direction(v: Sequence[int]) -> tuple[int, ...]:
    """Primitive vector with first nonzero entry positive."""
    v = primitive(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


# --------------------------------------------------------------------------
# polytope
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Facet:
    """Inequality ``normal . x <= offset`` of a facet within the affine hull."""

    normal: tuple[int, ...]
    offset: Number
    vertices: frozenset[int]


@dataclass(frozen=True, eq=True)
class Polytope:
    """Polytope given by its irredundant, lexicographically sorted vertex set.

    Use :func:`convex_hull` to build one from arbitrary points. Facet
    normals are expressed in ambient coordinates but live in the affine
    hull: they vanish on the non-pivot coordinates of the hull, so the
    representative of each normal class is canonical.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        verts = tuple(sorted({_as_point(v) for v in self.vertices}))
        if not verts:
            raise ValueError("empty point set")
        if len({len(v) for v in verts}) != 1:
            raise ValueError("vertices have mixed ambient dimensions")
        object.__setattr__(self, "vertices", verts)

    def __repr__(self) -> str:
        return f"Polytope({[list(v) for v in self.vertices]})"

    # -- affine data ------------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def _affine(self) -> tuple[list[int], list[tuple[int, ...]]]:
        base = self.vertices[0]
        diffs = [[a - b for a, b in zip(v, base)] for v in self.vertices[1:]]
        if not diffs:
            pivots: list[int] = []
        else:
            pivots = rref(diffs)[1]
        eqs = nullspace(diffs, self.ambient_dim) if diffs else [
            tuple(int(i == j) for j in range(self.ambient_dim)) for i in range(self.ambient_dim)]
        return pivots, [canonical_direction(e) for e in eqs]

    @property
    def dim(self) -> int:
        return len(self._affine[0])

    @property
    def pivots(self) -> list[int]:
        """Coordinates that parametrise the affine hull (leftmost independent)."""
        return self._affine[0]

    @property
    def equations(self) -> list[tuple[tuple[int, ...], Number]]:
        """Normals to the affine hull with their (constant) values on it."""
        base = self.vertices[0]
        return [(e, _normalize_number(dot(e, base))) for e in self._affine[1]]

    @cached_property
    def affine_basis(self) -> list[tuple[int, ...]]:
        """Lattice basis of the integer points of the hull's direction space."""
        n = self.ambient_dim
        eqs = self._affine[1]
        if not eqs:
            return [tuple(int(i == j) for j in range(n)) for i in range(n)]
        low, u, pivots = hnf_columns(eqs)
        used = {c for _, c in pivots}
        return [tuple(u[r][c] for r in range(n)) for c in range(n) if c not in used]

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    # -- facets -----------------------------------------------------------

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        k = self.dim
        if k == 0:
            return ()
        piv = self.pivots
        scale = _common_denominator(self.vertices)
        proj = [[int(v[i] * scale) for i in piv] for v in self.vertices]
        cons = [[1] + [-x for x in p] for p in proj]
        rays, lin = extreme_rays(cons, k + 1)
        if lin:  # pragma: no cover - projection is full dimensional
            raise RuntimeError("projected point set is not full dimensional")
        out = []
        n = self.ambient_dim
        for r in rays:
            h = r[1:]
            if not any(h):
                continue
            full = [0] * n
            for i, c in zip(piv, h):
                full[i] = c
            normal = primitive(full)
            vals = [dot(normal, v) for v in self.vertices]
            top = max(vals)
            inc = frozenset(i for i, x in enumerate(vals) if x == top)
            out.append(Facet(normal, _normalize_number(top), inc))
        out.sort(key=lambda f: (f.normal, f.offset))
        return tuple(out)

    def contains(self, x: Sequence) -> bool:
        x = _as_point(x)
        if len(x) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        for e, val in self.equations:
            if dot(e, x) != val:
                return False
        return all(dot(f.normal, x) <= f.offset for f in self.facets)

    def support(self, v: Sequence) -> Number:
        return max(dot(v, p) for p in self.vertices)

    def translate(self, t: Sequence) -> "Polytope":
        t = _as_point(t)
        return Polytope(tuple(tuple(a + b for a, b in zip(p, t)) for p in self.vertices))

    def scale(self, c: int) -> "Polytope":
        return Polytope(tuple(tuple(c * a for a in p) for p in self.vertices))

    def lexmin(self) -> Point:
        return self.vertices[0]

    def to_json(self) -> dict:
        return {"vertices": [[format_rational(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict) -> "Polytope":
        if "vertices" not in obj:
            raise ValueError("polytope JSON needs a 'vertices' list")
        return convex_hull([[as_rational(x) for x in v] for v in obj["vertices"]])


def equivalent(p: Polytope, q: Polytope) -> tuple | None:
    """Lattice translation ``t`` with ``p == q + t``, or None."""
    if len(p.vertices) != len(q.vertices) or p.ambient_dim != q.ambient_dim:
        return None
    t = tuple(a - b for a, b in zip(p.vertices[0], q.vertices[0]))
    if not all(isinstance(x, int) for x in t):
        return None
    return t if q.translate(t) == p else None


# --------------------------------------------------------------------------
# hull and faces
# --------------------------------------------------------------------------

def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Exact convex hull, returned as an irredundant vertex set.

    Works for point sets of any affine dimension by computing inside the
    affine hull.
    """
    pts = sorted({_as_point(p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    if len(pts) <= 2:
        return Polytope(tuple(pts))
    cloud = Polytope.__new__(Polytope)
    object.__setattr__(cloud, "vertices", tuple(pts))
    k = cloud.dim
    if k == 0:
        return Polytope((pts[0],))
    if k == 1:
        return Polytope((pts[0], pts[-1]))
    facets = cloud.facets
    everything = frozenset(range(len(pts)))
    incident: dict[int, frozenset[int]] = {}
    for i in range(len(pts)):
        sets = [f.vertices for f in facets if i in f.vertices]
        inter = everything
        for s in sets:
            inter = inter & s
        incident[i] = inter
    verts = [pts[i] for i in range(len(pts)) if incident[i] == frozenset((i,))]
    hull = Polytope(tuple(verts))
    # facets of the hull coincide with those of the cloud; reuse them
    index = {v: j for j, v in enumerate(hull.vertices)}
    remapped = tuple(
        Facet(f.normal, f.offset, frozenset(index[pts[i]] for i in f.vertices if pts[i] in index))
        for f in facets)
    object.__setattr__(hull, "facets", remapped)
    return hull


def affine_rank(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def face_in_direction(p: Polytope, v: Sequence) -> Polytope:
    """Face of ``p`` maximising ``x -> v . x``; the zero functional gives ``p``."""
    if len(v) != p.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    vals = [dot(v, x) for x in p.vertices]
    top = max(vals)
    return Polytope(tuple(x for x, y in zip(p.vertices, vals) if y == top))


def face_lattice(p: Polytope) -> list[frozenset[int]]:
    """All nonempty faces of ``p`` as vertex-index sets (``p`` itself included)."""
    whole = frozenset(range(len(p.vertices)))
    faces = {whole}
    frontier = [whole]
    facet_sets = [f.vertices for f in p.facets]
    while frontier:
        nxt = []
        for face in frontier:
            for s in facet_sets:
                g = face & s
                if g and g != face and g not in faces:
                    faces.add(g)
                    nxt.append(g)
        frontier = nxt
    # vertices are faces too, even when the closure stops early
    faces.update(frozenset((i,)) for i in range(len(p.vertices)))
    return sorted(faces, key=lambda s: (-len(s), sorted(s)))


def all_faces(p: Polytope) -> list[Polytope]:
    """Every face including ``p`` and its vertices, largest first."""
    out = [Polytope(tuple(p.vertices[i] for i in sorted(s))) for s in face_lattice(p)]
    out.sort(key=lambda q: (-q.dim, q.vertices))
    return out


def proper_faces(p: Polytope) -> list[Polytope]:
    """Faces of dimension ``1 .. dim(p) - 1``."""
    return [q for q in all_faces(p) if 1 <= q.dim < p.dim]


def edges(p: Polytope) -> list[Polytope]:
    if p.dim == 1:
        return [p]
    return [q for q in all_faces(p) if q.dim == 1]


def primitive_edge_directions(p: Polytope) -> set[tuple[int, ...]]:
    out = set()
    for e in edges(p):
        a, b = e.vertices
        d = [y - x for x, y in zip(a, b)]
        scale = _common_denominator([tuple(d)])
        out.add(canonical_direction([int(x * scale) for x in d]))
    return out


def _det(m: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def _pulling_simplices(p: Polytope) -> list[tuple[Point, ...]]:
    if p.dim == 0:
        return [p.vertices[:1]]
    apex = p.vertices[0]
    out = []
    for f in p.facets:
        if 0 in f.vertices:
            continue
        face = Polytope(tuple(p.vertices[i] for i in sorted(f.vertices)))
        out.extend((apex,) + s for s in _pulling_simplices(face))
    return out


def normalized_volume(p: Polytope, pivots: Sequence[int] | None = None) -> Fraction:
    """``k!`` times the volume of ``p`` in the coordinates ``pivots``.

    ``pivots`` defaults to the polytope's own; pass a fixed list to compare
    volumes of polytopes lying in parallel affine spaces.
    """
    piv = list(p.pivots if pivots is None else pivots)
    if p.dim < len(piv):
        return Fraction(0)
    if not piv:
        return Fraction(1)
    total = Fraction(0)
    for s in _pulling_simplices(p):
        base = s[0]
        m = [[Fraction(v[i] - base[i]) for i in piv] for v in s[1:]]
        total += abs(_det(m))
    return total


def lattice_points_in_box(lo: Sequence[int], hi: Sequence[int]) -> list[tuple[int, ...]]:
    """All integer points of the box ``lo <= x <= hi`` (test helper)."""
    from itertools import product
    return [tuple(x) for x in product(*(range(a, b + 1) for a, b in zip(lo, hi)))]


__all__ = [
    "Facet", "Polytope", "as_rational", "format_rational", "convex_hull",
    "face_in_direction", "proper_faces", "all_faces", "edges", "face_lattice",
    "primitive_edge_directions", "canonical_direction", "normalized_volume",
    "equivalent", "affine_rank", "dot", "solve_integer_affine", "NoSolutionError",
]
