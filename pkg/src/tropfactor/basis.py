"""Polytope bases: construction, certification and orientations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Sequence

import networkx as nx

from .geometry import (
    Polytope,
    convex_hull,
    equivalent,
    face_in_direction,
    primitive_edge_directions,
    proper_faces,
)
from .intlinalg import AffineSolver, NoSolutionError
from .minkowski import HMatrix, b_constant, h_matrix, is_summand, signed_difference


class BasisError(ValueError):
    """Invalid basis input (duplicates, dimension clashes, empty graphs)."""


class NotRepresentableError(ArithmeticError):
    """A polytope is not representable against the basis H-matrix."""


class Check(NamedTuple):
    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SignedDecomposition:
    """``b(P) = sum_S coeffs[S] b(S) + H w``."""

    coeffs: tuple[Fraction, ...]
    translation: tuple[int, ...]

    @property
    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    @property
    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise ValueError("decomposition has non-integral coefficients")
        return tuple(int(c) for c in self.coeffs)

    def to_json(self, names: Sequence[str]) -> dict:
        from .geometry import format_rational
        return {"coeffs": {nm: format_rational(c) for nm, c in zip(names, self.coeffs) if c},
                "w": list(self.translation)}


@dataclass(frozen=True)
class PositiveBasisReport:
    ok: bool
    h: HMatrix
    step: str = ""
    witness: object = None
    strict_faces: bool = False

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class BasisSet:
    """An ordered list of lattice polytopes with its H-matrix and b-vectors.

    ``homog_index`` names the coordinate that was added when homogenising
    a lower dimensional basis, so that polynomials in one variable fewer can
    be lifted automatically. None means no such coordinate.
    """

    members: tuple[Polytope, ...]
    names: tuple[str, ...]
    h: HMatrix
    bvectors: tuple[tuple[int, ...], ...]
    homog_index: int | None = None
    _decomp_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def ambient_dim(self) -> int:
        return self.members[0].ambient_dim

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        out = set()
        for m in self.members:
            out |= primitive_edge_directions(m)
        return frozenset(out)

    @cached_property
    def solver(self) -> AffineSolver:
        return AffineSolver(list(self.bvectors), list(self.h.rows))

    @cached_property
    def top_dim(self) -> int:
        """Dimension of the Minkowski sum of all members."""
        return len(self.h.rows[0]) - len(self.h.lineality) if self.h.rows else 0

    @property
    def is_basis(self) -> bool:
        """B(S) independent modulo the span of H."""
        return self.solver.independent

    def index(self, p: Polytope) -> int | None:
        for i, m in enumerate(self.members):
            if m == p:
                return i
        return None

    def decompose(self, p: Polytope) -> SignedDecomposition:
        """Signed decomposition of ``p``; cached per polytope.

        Raises :class:`NotRepresentableError` or
        :class:`~tropfactor.intlinalg.NoSolutionError`.
        """
        hit = self._decomp_cache.get(p)
        if hit is not None:
            if isinstance(hit, Exception):
                raise hit
            return hit
        try:
            b = b_constant(p, self.h)
            if b is None:
                raise NotRepresentableError("polytope is not H-representable")
            y, w = self.solver.solve(b)
        except (NotRepresentableError, NoSolutionError) as exc:
            self._decomp_cache[p] = exc
            raise
        dec = SignedDecomposition(tuple(Fraction(c) for c in y), tuple(w))
        self._decomp_cache[p] = dec
        return dec

    def to_json(self) -> dict:
        out = {"polytopes": [m.to_json() for m in self.members], "names": list(self.names)}
        if self.homog_index is not None:
            out["homog_index"] = self.homog_index
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "BasisSet":
        if "polytopes" not in obj:
            raise BasisError("basis JSON needs a 'polytopes' list")
        polys = [Polytope.from_json(p) for p in obj["polytopes"]]
        return build_basis(polys, obj.get("names"), obj.get("homog_index"))


def build_basis(polytopes: Sequence[Polytope], names: Sequence[str] | None = None,
                homog_index: int | None = None) -> BasisSet:
    polys = list(polytopes)
    if not polys:
        raise BasisError("basis needs at least one polytope")
    n = polys[0].ambient_dim
    if any(p.ambient_dim != n for p in polys):
        raise BasisError("basis members live in different ambient dimensions")
    if any(not p.is_lattice for p in polys):
        raise BasisError("basis members must be lattice polytopes")
    names = list(names) if names is not None else [f"P{i + 1}" for i in range(len(polys))]
    if len(names) != len(polys):
        raise BasisError("need one name per polytope")
    dups = [(names[i], names[j]) for i, j in combinations(range(len(polys)), 2)
            if equivalent(polys[i], polys[j]) is not None]
    if dups:
        listed = ", ".join(f"{a}~{b}" for a, b in dups)
        raise BasisError(f"members equal up to translation: {listed}")
    h = h_matrix(polys)
    bvecs = []
    for p, nm in zip(polys, names):
        b = b_constant(p, h)
        # summands of the reference sum are always representable
        assert b is not None, f"member {nm} not representable against its own H"
        bvecs.append(tuple(int(x) for x in b))
    return BasisSet(tuple(polys), tuple(names), h, tuple(bvecs), homog_index)


# --------------------------------------------------------------------------
# face predicates
# --------------------------------------------------------------------------

def _nonneg_search(p: Polytope, basis: BasisSet, depth: int = 0) -> list[int] | None:
    """Nonnegative integer decomposition by peeling summands (non-basis fallback)."""
    if len(p.vertices) == 1:
        return [0] * len(basis)
    for i, m in sorted(enumerate(basis.members), key=lambda t: -t[1].dim):
        if m.dim > p.dim:
            continue
        d = signed_difference(p, m)
        if d is None or not d.is_lattice:
            continue
        from .minkowski import minkowski_sum
        if minkowski_sum([d, m]) != p:
            continue
        rest = _nonneg_search(d, basis, depth + 1)
        if rest is not None:
            rest[i] += 1
            return rest
    return None


def nonneg_decomposition(p: Polytope, basis: BasisSet) -> tuple[int, ...] | None:
    """Coefficients of ``p`` in ``N S`` or None."""
    if basis.is_basis:
        try:
            dec = basis.decompose(p)
        except (NotRepresentableError, NoSolutionError):
            return None
        if dec.is_integral and dec.is_nonnegative:
            return dec.int_coeffs()
        return None
    found = _nonneg_search(p, basis)
    return tuple(found) if found is not None else None


def _unique_proper_faces(basis: BasisSet) -> list[tuple[str, Polytope]]:
    seen = []
    out = []
    for m, nm in zip(basis.members, basis.names):
        for f in proper_faces(m):
            if any(equivalent(f, g) is not None for g in seen):
                continue
            seen.append(f)
            out.append((nm, f))
    return out


def is_canonical(basis: BasisSet) -> Check:
    """No member has one of its proper faces as a Minkowski summand."""
    for m, nm in zip(basis.members, basis.names):
        for f in proper_faces(m):
            if is_summand(f, m):
                return Check(False, (nm, f))
    return Check(True)


def is_hierarchical(basis: BasisSet) -> Check:
    """Every proper face of every member lies in ``N S``."""
    for nm, f in _unique_proper_faces(basis):
        if nonneg_decomposition(f, basis) is None:
            return Check(False, (nm, f))
    return Check(True)


def _faces_in_set(basis: BasisSet) -> Check:
    for nm, f in _unique_proper_faces(basis):
        if all(equivalent(f, m) is None for m in basis.members):
            return Check(False, (nm, f))
    return Check(True)


# --------------------------------------------------------------------------
# orientation
# --------------------------------------------------------------------------

def _supports_facet(p: Polytope, v: Sequence[int]) -> bool:
    if p.dim < 2:
        return False
    return face_in_direction(p, v).dim == p.dim - 1


def _pair_sides(basis: BasisSet, i: int, j: int) -> tuple[list[int], list[int]]:
    """Members with a facet supported by ``rows[i]`` and by ``rows[j]``."""
    v, w = basis.h.rows[i], basis.h.rows[j]
    plus = [k for k, m in enumerate(basis.members) if _supports_facet(m, v)]
    minus = [k for k, m in enumerate(basis.members) if _supports_facet(m, w)]
    return plus, minus


def _pair_conflict(basis: BasisSet, plus: list[int], minus: list[int]) -> list[int] | None:
    """Members violating the orientation condition on one row pair.

    A member with facets on both sides always conflicts. Across members
    only those of full dimension (that of the reference sum) are compared.
    """
    both = sorted(set(plus) & set(minus))
    if both:
        return both
    top = basis.top_dim
    p_top = [k for k in plus if basis.members[k].dim == top]
    m_top = [k for k in minus if basis.members[k].dim == top]
    if p_top and m_top:
        return [p_top[0], m_top[0]]
    return None


def check_positive_basis(basis: BasisSet, strict_faces: bool = False) -> PositiveBasisReport:
    """Certify a positive basis; return H on success or the failing step.

    Steps, in order: face closure (faces in ``N S``, or literally members
    of ``S`` with ``strict_faces``), the orientation condition on every
    ``(v, -v)`` pair of H, the basis condition, and finally canonicity as
    a cross-check.
    """
    h = basis.h
    closure = _faces_in_set(basis) if strict_faces else is_hierarchical(basis)
    if not closure:
        return PositiveBasisReport(False, h, "faces", closure.witness, strict_faces)
    for i, j in h.pairs:
        plus, minus = _pair_sides(basis, i, j)
        bad = _pair_conflict(basis, plus, minus)
        if bad:
            return PositiveBasisReport(
                False, h, "orientation",
                {"row": list(h.rows[i]), "members": [basis.names[k] for k in bad]},
                strict_faces)
    if not basis.is_basis:
        return PositiveBasisReport(False, h, "basis", "b-vectors dependent modulo Im(H)",
                                   strict_faces)
    canon = is_canonical(basis)
    if not canon:
        return PositiveBasisReport(False, h, "canonical", canon.witness, strict_faces)
    return PositiveBasisReport(True, h, "", None, strict_faces)


@dataclass(frozen=True)
class Orientation:
    """Sign of the positive representative of each ``(v, -v)`` pair."""

    signs: tuple[tuple[tuple[int, ...], int], ...]

    def sign(self, v: Sequence[int]) -> int:
        v = tuple(v)
        for r, s in self.signs:
            if r == v:
                return s
            if tuple(-x for x in r) == v:
                return -s
        raise KeyError(v)

    def positive_rows(self) -> list[tuple[int, ...]]:
        return [r if s > 0 else tuple(-x for x in r) for r, s in self.signs]


def orientation_extract(basis: BasisSet) -> Orientation | None:
    """An orientation putting every full-dimensional facet normal on the + side.

    Pairs with no facet on either side get ``+1`` on their lexicographically
    larger row. Returns None if no orientation exists.
    """
    signs = []
    top = basis.top_dim
    for i, j in basis.h.pairs:
        plus, minus = _pair_sides(basis, i, j)
        if _pair_conflict(basis, plus, minus):
            return None
        m_top = [k for k in minus if basis.members[k].dim == top]
        sign = -1 if m_top else 1
        signs.append((basis.h.rows[i], sign))
    return Orientation(tuple(signs))


# --------------------------------------------------------------------------
# constructors and edge criterion
# --------------------------------------------------------------------------

def simplex(indices: Sequence[int], n: int) -> Polytope:
    """``Delta_I = conv{e_i : i in I}`` in ``Z^n`` (0-based indices)."""
    return Polytope(tuple(tuple(int(i == j) for j in range(n)) for i in indices))


def simplex_name(indices: Sequence[int]) -> str:
    return "D{" + ",".join(str(i + 1) for i in indices) + "}"


def graphical_basis(n: int, edges: Sequence[tuple[int, int]]) -> BasisSet:
    """Simplices on the cliques of size at least two of a graph on ``0..n-1``."""
    if n < 2:
        raise BasisError("graph needs at least 2 nodes")
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise BasisError(f"bad edge ({a}, {b})")
        g.add_edge(a, b)
    cliques = sorted((tuple(sorted(c)) for c in nx.enumerate_all_cliques(g) if len(c) >= 2),
                     key=lambda c: (len(c), c))
    if not cliques:
        raise BasisError("no cliques of size >= 2")
    return build_basis([simplex(c, n) for c in cliques], [simplex_name(c) for c in cliques])


def complete_graph_basis(n: int) -> BasisSet:
    return graphical_basis(n, list(combinations(range(n), 2)))


def es_membership(p: Polytope, basis: BasisSet) -> bool:
    """Edge criterion: every primitive edge of ``p`` is an edge direction of S.

    Requires each direction in ``S^1`` to be realised by a primitive
    segment member.
    """
    segs = set()
    for m in basis.members:
        if m.dim == 1:
            (d,) = primitive_edge_directions(m)
            a, b = m.vertices
            if tuple(y - x for x, y in zip(a, b)) in (d, tuple(-t for t in d)):
                segs.add(d)
    missing = basis.edge_set - segs
    if missing:
        raise BasisError(f"edge directions without a primitive segment member: {sorted(missing)}")
    return primitive_edge_directions(p) <= basis.edge_set


def homogenize_polytope(p: Polytope, degree: int, index: int | None = None) -> Polytope:
    """Append (or insert at ``index``) the coordinate ``degree - |x|``."""
    pts = []
    for v in p.vertices:
        e = list(v)
        e.insert(len(e) if index is None else index, degree - sum(v))
        pts.append(tuple(e))
    return convex_hull(pts)
