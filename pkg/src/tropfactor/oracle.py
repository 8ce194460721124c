"""Brute-force verifiers: mixed subdivisions, N[S] membership, unit peeling.

Everything here is exhaustive and meant for small instances. None of it
goes through b-vectors or the signed decomposition solver, so it can be
used to check those routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from itertools import product as itertools_product
from math import gcd
from typing import Sequence

from .dd import extreme_rays
from .geometry import Polytope, all_faces, dot, face_in_direction
from .intlinalg import rank, solve_rational
from .minkowski import is_summand, minkowski_sum
from .tropical import CellFunctional, TropicalPoly, equal_as_complexes, product, unit_from

DEFAULT_MAX_NODES = 200_000
DEFAULT_MAX_DIM = 4
DEFAULT_BOUND = 6


class OracleLimitError(RuntimeError):
    """The search space exceeded the configured limit; nothing was decided."""


@dataclass(frozen=True)
class MixedWitness:
    """Faces ``B_i`` of each sequence polytope for every maximal cell.

    ``cells[k] == translation + sum_i faces[k][i]``. ``units`` are unit
    polynomials on the sequence polytopes whose product equals the input
    up to a constant and a monomial.
    """

    sequence: tuple[Polytope, ...]
    translation: tuple[int, ...]
    cells: tuple[Polytope, ...]
    faces: tuple[tuple[Polytope, ...], ...]
    units: tuple[TropicalPoly, ...] = ()

    def validate(self) -> bool:
        for cell, fs in zip(self.cells, self.faces):
            if not fs:
                if cell.vertices != (self.translation,):
                    return False
            elif minkowski_sum(list(fs)).translate(self.translation) != cell:
                return False
        return True


# --------------------------------------------------------------------------
# Cayley trick
# --------------------------------------------------------------------------

def _directions(p: Polytope) -> list[tuple[int, ...]]:
    n = p.ambient_dim
    dirs = {f.normal for f in p.facets}
    for e, _ in p.equations:
        dirs.add(tuple(e))
        dirs.add(tuple(-x for x in e))
    for i in range(n):
        unit = tuple(int(i == j) for j in range(n))
        dirs.add(unit)
        dirs.add(tuple(-x for x in unit))
    return sorted(dirs)


def _cell_candidates(cell: Polytope, t: Sequence[int], faces: list[list[Polytope]],
                     budget: list[int]) -> list[tuple[int, ...]]:
    """All face tuples (by index) whose sum is ``cell - t``."""
    target_poly = cell.translate([-x for x in t])
    dirs = _directions(target_poly)
    target = [target_poly.support(d) for d in dirs]
    sup = [[[q.support(d) for d in dirs] for q in fl] for fl in faces]
    r = len(faces)
    lo = [[0] * len(dirs) for _ in range(r + 1)]
    hi = [[0] * len(dirs) for _ in range(r + 1)]
    for i in range(r - 1, -1, -1):
        for j in range(len(dirs)):
            col = [s[j] for s in sup[i]]
            lo[i][j] = lo[i + 1][j] + min(col)
            hi[i][j] = hi[i + 1][j] + max(col)
    out: list[tuple[int, ...]] = []
    pick: list[int] = []

    def rec(i: int, acc: list) -> None:
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleLimitError("too large: face search exceeded its node limit")
        if i == r:
            if acc == target:
                chosen = [faces[k][pick[k]] for k in range(r)]
                if minkowski_sum(chosen) == target_poly:
                    out.append(tuple(pick))
            return
        for idx, s in enumerate(sup[i]):
            nxt = [a + b for a, b in zip(acc, s)]
            if all(nxt[j] + lo[i + 1][j] <= target[j] <= nxt[j] + hi[i + 1][j]
                   for j in range(len(dirs))):
                pick.append(idx)
                rec(i + 1, nxt)
                pick.pop()

    rec(0, [0] * len(dirs))
    return out


def _meet(p: Polytope, q: Polytope) -> Polytope | None:
    """Intersection of two faces of one complex, read off common vertices."""
    common = set(p.vertices) & set(q.vertices)
    return Polytope(tuple(sorted(common))) if common else None


def _properly_intersecting(cells: list[Polytope], t, faces: list[list[Polytope]],
                           a: tuple[int, ...], b: tuple[int, ...], ca: int, cb: int) -> bool:
    lhs = _meet(cells[ca], cells[cb])
    parts = []
    for i, fl in enumerate(faces):
        m = _meet(fl[a[i]], fl[b[i]])
        if m is None:
            return lhs is None
        parts.append(m)
    if lhs is None:
        return False
    return minkowski_sum(parts).translate(t) == lhs


def _coherent_slopes(seq: Sequence[Polytope], cells_fun: list[CellFunctional],
                     chosen: list[list[Polytope]]) -> list[tuple[Fraction, ...]] | None:
    """Find ``alpha_i`` with ``face_{alpha_i - grad_sigma}(F_i) = B_i(sigma)`` for every cell."""
    n = seq[0].ambient_dim
    out = []
    for i, f in enumerate(seq):
        # cone in (lam, alpha_1..alpha_n, s); rows are ">= 0" constraints
        cons: list[list[Fraction]] = []
        for fun, faces in zip(cells_fun, chosen):
            g = fun.gradient
            b = faces[i]
            p0 = b.vertices[0]
            for q in f.vertices:
                d = [x - y for x, y in zip(q, p0)]
                gd = dot(g, d)
                row = [gd] + [-x for x in d]
                if q in b.vertices:
                    cons.append(row + [0])
                    cons.append([-x for x in row] + [0])
                else:
                    cons.append(row + [-1])
        cons.append([1] + [0] * n + [-1])
        cons.append([1] + [0] * (n + 1))
        cons.append([0] * (n + 1) + [1])
        den = 1
        for row in cons:
            for x in row:
                if isinstance(x, Fraction):
                    den = den * x.denominator // gcd(den, x.denominator)
        cons_i = [[int(x * den) for x in row] for row in cons]
        rays, _ = extreme_rays(cons_i, n + 2)
        hit = next((r for r in sorted(rays) if r[-1] > 0 and r[0] > 0), None)
        if hit is None:
            return None
        out.append(tuple(Fraction(x, hit[0]) for x in hit[1:n + 1]))
    return out


def cayley_check(f: TropicalPoly, seq: Sequence[Polytope], max_nodes: int = DEFAULT_MAX_NODES,
                 max_dim: int = DEFAULT_MAX_DIM) -> MixedWitness | None:
    """Decide whether ``Delta_f`` is a regular mixed subdivision for ``seq``.

    Returns a witness or None ("not mixed"). Raises :class:`OracleLimitError`
    when the ambient dimension exceeds ``max_dim`` or the search visits more
    than ``max_nodes`` nodes.
    """
    seq = [p for p in seq if len(p.vertices) > 1]
    n = f.n
    if n > max_dim:
        raise OracleLimitError(f"too large: ambient dimension {n} > {max_dim}")
    newt = f.newton
    if not seq:
        if len(newt.vertices) != 1:
            return None
        return MixedWitness((), newt.vertices[0], (newt,), ((),), ())
    total = minkowski_sum(seq)
    t = tuple(a - b for a, b in zip(newt.lexmin(), total.lexmin()))
    if total.translate(t) != newt:
        return None
    cells = [c.polytope for c in f.subdivision.cells]
    funs = [c.functional for c in f.subdivision.cells]
    faces = [all_faces(p) for p in seq]
    budget = [max_nodes]
    cands = [_cell_candidates(c, t, faces, budget) for c in cells]
    if any(not c for c in cands):
        return None
    pick: list[tuple[int, ...]] = []

    def rec(k: int) -> MixedWitness | None:
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleLimitError("too large: assignment search exceeded its node limit")
        if k == len(cells):
            chosen = [[faces[i][pk[i]] for i in range(len(seq))] for pk in pick]
            slopes = _coherent_slopes(seq, funs, chosen)
            if slopes is None:
                return None
            units = tuple(unit_from(p, CellFunctional(a, Fraction(0))) for p, a in zip(seq, slopes))
            if equal_as_complexes(f, product([(u, 1) for u in units], n)) is None:
                return None
            return MixedWitness(tuple(seq), t, tuple(cells),
                                tuple(tuple(c) for c in chosen), units)
        for cand in cands[k]:
            if all(_properly_intersecting(cells, t, faces, cand, pick[j], k, j) for j in range(k)):
                pick.append(cand)
                w = rec(k + 1)
                if w is not None:
                    return w
                pick.pop()
        return None

    return rec(0)


# --------------------------------------------------------------------------
# brute-force membership
# --------------------------------------------------------------------------

def _width(p: Polytope, dirs) -> int:
    return sum(p.support(d) + p.support([-x for x in d]) for d in dirs)


def natural_bound(f: TropicalPoly, basis) -> int:
    """Largest possible number of members in a sum equal to ``newt(f)``."""
    dirs = basis.h.rows
    least = min(_width(m, dirs) for m in basis.members if len(m.vertices) > 1)
    return int(_width(f.newton, dirs) // least)


def bruteforce_ns_membership(f: TropicalPoly, basis, bound: int = DEFAULT_BOUND,
                             max_nodes: int = DEFAULT_MAX_NODES) -> bool:
    """Exhaustive search for an S-unit factorisation of ``f``.

    Tries every multiset of members with at most ``bound`` elements whose sum
    is a translate of ``newt(f)``. Returns False only when ``bound`` covers
    every multiset that could possibly work; otherwise an unsuccessful search
    raises :class:`OracleLimitError`.
    """
    newt = f.newton
    if len(newt.vertices) == 1:
        return True
    members = [m.translate([-x for x in m.lexmin()]) for m in basis.members]
    target = newt.translate([-x for x in newt.lexmin()])
    dirs = list(basis.h.rows) + [fc.normal for fc in target.facets]
    tsup = [target.support(d) for d in dirs]
    msup = [[m.support(d) for d in dirs] for m in members]
    natural = natural_bound(f, basis)
    limit = min(bound, natural)
    found: list[list[int]] = []
    counts = [0] * len(members)

    def rec(k: int, used: int, acc: list) -> None:
        if acc == tsup:
            seq = [members[i] for i, c in enumerate(counts) for _ in range(c)]
            if minkowski_sum(seq) == target:
                found.append(list(counts))
            return
        if k == len(members) or used == limit:
            return
        rec(k + 1, used, acc)
        c = 0
        cur = acc
        while used + c < limit:
            cur = [a + b for a, b in zip(cur, msup[k])]
            if any(x > y for x, y in zip(cur, tsup)):
                break
            c += 1
            counts[k] = c
            rec(k + 1, used + c, cur)
        counts[k] = 0

    rec(0, 0, [0] * len(dirs))
    for counts_ in found:
        seq = [basis.members[i] for i, c in enumerate(counts_) for _ in range(c)]
        if cayley_check(f, seq, max_nodes=max_nodes) is not None:
            return True
    if bound < natural:
        raise OracleLimitError(f"bound {bound} exhausted below the natural bound {natural}")
    return False


# --------------------------------------------------------------------------
# unit peeling
# --------------------------------------------------------------------------

def _neighbor(cells: list[Polytope], k: int, v) -> int | None:
    here = face_in_direction(cells[k], v)
    if here.dim != cells[k].dim - 1:
        return None
    neg = [-x for x in v]
    for j, c in enumerate(cells):
        if j != k and face_in_direction(c, neg) == here:
            return j
    return None


def can_peel_unit(h: TropicalPoly, F: Polytope) -> bool:
    """Whether some unit with Newton polytope ``F`` divides ``h``.

    Looks for a maximal cell having ``F`` as a summand such that, for each
    of its facets ``face_v``, every further cell reached by walking across
    facets in direction ``v`` has ``face_v(F)`` as a summand.
    """
    cells = [c.polytope for c in h.subdivision.cells]
    for k, sigma in enumerate(cells):
        if not is_summand(F, sigma):
            continue
        ok = True
        for facet in sigma.facets:
            v = facet.normal
            fv = face_in_direction(F, v)
            # sigma itself only carries face_v(F) on its facet, so the walk
            # starts at its first neighbour
            seen = {k}
            cur = _neighbor(cells, k, v)
            while cur is not None and cur not in seen:
                if not is_summand(fv, cells[cur]):
                    ok = False
                    break
                seen.add(cur)
                cur = _neighbor(cells, cur, v)
            if not ok:
                break
        if ok:
            return True
    return False


# --------------------------------------------------------------------------
# geometry cross-checks
# --------------------------------------------------------------------------

def refines_normal_fan(ref: Polytope, p: Polytope) -> bool:
    """``N(ref)`` refines ``N(p)``: every normal cone of ``ref`` sits in one of ``p``.

    Equivalent to ``p`` being representable against the H-matrix of ``ref``.
    """
    if p.ambient_dim != ref.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for e, _ in ref.equations:
        if len({dot(e, x) for x in p.vertices}) > 1:
            return False
    if len(ref.vertices) == 1:
        return len(p.vertices) == 1
    for k in range(len(ref.vertices)):
        rays = [fc.normal for fc in ref.facets if k in fc.vertices]
        interior = [sum(col) for col in zip(*rays)]
        target = face_in_direction(p, interior)
        if len(target.vertices) != 1:
            return False
        x = target.vertices[0]
        if any(x not in face_in_direction(p, r).vertices for r in rays):
            return False
    return True


def vertices_bruteforce(points: Sequence[Sequence]) -> list[tuple]:
    """Extreme points by testing membership in every simplex of the others.

    By Caratheodory only simplices on ``d + 1`` of the other points need to
    be tried, where ``d`` is the dimension they span; if the others span
    less than the whole set, ``p`` lies off their affine hull.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 1:
        return pts

    def span(qs):
        return rank([[a - b for a, b in zip(q, qs[0])] for q in qs[1:]]) if len(qs) > 1 else 0

    d = span(pts)
    # cheap certificate first: a unique maximiser of a linear functional is extreme
    certified = set()
    reach = 2 if len(pts[0]) <= 5 else 1
    for c in itertools_product(range(-reach, reach + 1), repeat=len(pts[0])):
        vals = [sum(a * b for a, b in zip(c, p)) for p in pts]
        top = max(vals)
        if vals.count(top) == 1:
            certified.add(pts[vals.index(top)])
    out = []
    for p in pts:
        if p in certified:
            out.append(p)
            continue
        others = [q for q in pts if q != p]
        if span(others) < d:
            out.append(p)
            continue
        inside = False
        for simplex in combinations(others, d + 1):
            if all(min(c) <= x <= max(c) for x, c in zip(p, zip(*simplex))) \
                    and _in_simplex(p, simplex):
                inside = True
                break
        if not inside:
            out.append(p)
    return out


def _in_simplex(p, simplex) -> bool:
    base = simplex[0]
    cols = [[a - b for a, b in zip(q, base)] for q in simplex[1:]]
    rhs = [a - b for a, b in zip(p, base)]
    if not cols:
        return all(x == 0 for x in rhs)
    m = [list(row) for row in zip(*cols)]
    if rank(m) < len(cols):
        return False
    lam = solve_rational(m, rhs)
    if lam is None:
        return False
    return all(x >= 0 for x in lam) and sum(lam) <= 1


def hull_bruteforce(points: Sequence[Sequence]) -> Polytope:
    return Polytope(tuple(vertices_bruteforce(points)))


__all__ = [
    "DEFAULT_BOUND",
    "DEFAULT_MAX_DIM",
    "DEFAULT_MAX_NODES",
    "MixedWitness",
    "OracleLimitError",
    "bruteforce_ns_membership",
    "can_peel_unit",
    "cayley_check",
    "hull_bruteforce",
    "natural_bound",
    "refines_normal_fan",
    "vertices_bruteforce",
]
