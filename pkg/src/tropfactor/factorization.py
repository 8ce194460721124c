"""Membership, factorisation in N[S] and rational factorisation in Z[S]."""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _kernels
from .basis import (
    BasisSet,
    NotRepresentableError,
    SignedDecomposition,
    check_positive_basis,
)
from .geometry import Polytope, convex_hull, format_rational
from .intlinalg import NoSolutionError
from .tropical import (
    Cell,
    TropicalPoly,
    dehomogenize,
    equal_as_complexes,
    format_poly,
    homogenize,
    multiply,
    product,
    unit_from,
)


class Verdict(enum.Enum):
    NS = "NS"
    ZS_NOT_NS = "ZSnotNS"
    NOT_IN_ZS = "NotInZS"

    @property
    def exit_code(self) -> int:
        return {"NS": 0, "ZSnotNS": 10, "NotInZS": 20}[self.value]


class UncertifiedBasisError(ValueError):
    """The basis did not pass the positive-basis check."""

    def __init__(self, report):
        super().__init__(f"basis is not a certified positive basis (failed at {report.step})")
        self.report = report


class NotInZSError(ValueError):
    """Rational factorisation requested for a polynomial outside Z[S]."""

    def __init__(self, cell: Polytope, reason: str):
        super().__init__(f"cell {cell} is not in ZS: {reason}")
        self.cell = cell
        self.reason = reason


class NotInNSError(ValueError):
    """Factorisation in N[S] requested for a polynomial outside N[S]."""


@dataclass(frozen=True)
class CellDecomposition:
    cell: Cell
    decomposition: SignedDecomposition | None
    reason: str = ""


@dataclass(frozen=True)
class MembershipResult:
    verdict: Verdict
    cells: tuple[CellDecomposition, ...]
    poly: TropicalPoly
    homogenized: bool = False

    @property
    def failing(self) -> CellDecomposition | None:
        for c in self.cells:
            if c.decomposition is None or not c.decomposition.is_integral:
                return c
        return None

    def to_json(self, basis: BasisSet) -> dict:
        out = []
        for c in self.cells:
            entry = {"vertices": c.cell.polytope.to_json()["vertices"]}
            if c.decomposition is not None:
                entry.update(c.decomposition.to_json(basis.names))
            if c.reason:
                entry["reason"] = c.reason
            out.append(entry)
        return {"verdict": self.verdict.value, "homogenized": self.homogenized, "cells": out}


@dataclass(frozen=True)
class Factorization:
    """``poly =_2 constant (.) x^shift (.) prod_i unit_i^{m_i}``."""

    factors: tuple[tuple[TropicalPoly, int], ...]
    monomial: tuple[Fraction, tuple[int, ...]]
    members: tuple[int, ...] = ()

    def expand(self) -> TropicalPoly:
        const, shift = self.monomial
        n = len(shift)
        return product(self.factors, n).shift(const, shift)

    def to_json(self) -> dict:
        const, shift = self.monomial
        return {
            "factors": [{"unit": u.to_json()["terms"], "text": format_poly(u), "multiplicity": m}
                        for u, m in self.factors],
            "monomial": {"constant": format_rational(const), "exp": list(shift)},
        }


@dataclass(frozen=True)
class RationalFactorization:
    """``f (.) g =_2 numerator`` with ``g`` the product of the denominator units."""

    denominator: tuple[tuple[TropicalPoly, int], ...]
    numerator: Factorization
    n: int = 0

    @property
    def g(self) -> TropicalPoly:
        return product(self.denominator, self.n)

    def to_json(self) -> dict:
        return {
            "denominator": [{"unit": u.to_json()["terms"], "text": format_poly(u), "multiplicity": m}
                            for u, m in self.denominator],
            "numerator": self.numerator.to_json(),
        }


# --------------------------------------------------------------------------
# preparation
# --------------------------------------------------------------------------

def _certify(basis: BasisSet) -> None:
    report = basis.__dict__.get("_certificate")
    if report is None:
        report = check_positive_basis(basis)
        basis.__dict__["_certificate"] = report
    if not report.ok:
        raise UncertifiedBasisError(report)


def prepare(f: TropicalPoly, basis: BasisSet) -> tuple[TropicalPoly, bool]:
    """Lift ``f`` into the basis' ambient space when it is one variable short."""
    n = basis.ambient_dim
    if f.n == n:
        return f, False
    if f.n == n - 1 and basis.homog_index is not None:
        deg = max(f.degree(), 0)
        return homogenize(f, basis.homog_index, deg), True
    raise ValueError(f"polynomial has {f.n} variables but the basis lives in Z^{n}")


# --------------------------------------------------------------------------
# membership
# --------------------------------------------------------------------------

def _decompose_cell(basis: BasisSet, cell: Cell) -> CellDecomposition:
    try:
        dec = basis.decompose(cell.polytope)
    except NotRepresentableError:
        return CellDecomposition(cell, None, "cell is not H-representable")
    except NoSolutionError as exc:
        return CellDecomposition(cell, None, exc.reason)
    if not dec.is_integral:
        return CellDecomposition(cell, dec, "non-integral coefficients")
    return CellDecomposition(cell, dec)


def membership(f: TropicalPoly, basis: BasisSet, threads: int = 1,
               certify: bool = True) -> MembershipResult:
    """Decide ``f in N[S]``, ``Z[S] \\ N[S]`` or neither, cell by cell."""
    if certify:
        _certify(basis)
    f, lifted = prepare(f, basis)
    cells = f.subdivision.cells
    if threads > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            decs = list(pool.map(lambda c: _decompose_cell(basis, c), cells))
    else:
        decs = [_decompose_cell(basis, c) for c in cells]
    if any(d.decomposition is None or not d.decomposition.is_integral for d in decs):
        verdict = Verdict.NOT_IN_ZS
    elif all(d.decomposition.is_nonnegative for d in decs):
        verdict = Verdict.NS
    else:
        verdict = Verdict.ZS_NOT_NS
    return MembershipResult(verdict, tuple(decs), f, lifted)


# --------------------------------------------------------------------------
# factorisation in N[S]
# --------------------------------------------------------------------------

def _argmax_sets(cells: Sequence[Cell], sigma: Cell, verts: Sequence[tuple]) -> list[list[int]]:
    """For each cell eta the vertex indices maximising ``l_sigma - l_eta``."""
    rows = [[sigma.functional(v) - eta.functional(v) for v in verts] for eta in cells]
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, x.denominator)
    ints = [[int(x * den) for x in r] for r in rows]
    mask = _kernels.tie_mask(ints)
    return [[j for j in range(len(verts)) if mask[i][j]] for i in range(len(cells))]


def factor_ns(h: TropicalPoly, basis: BasisSet, membership_result: MembershipResult | None = None,
              threads: int = 1) -> Factorization:
    """Unique factorisation of ``h in N[S]`` into S-units and a monomial.

    Units are peeled by decreasing member dimension; ties go to the lowest
    member index, then to the lexicographically first cell.
    """
    mem = membership_result or membership(h, basis, threads=threads)
    if mem.verdict is not Verdict.NS:
        raise NotInNSError(f"polynomial is not in N[S] (verdict {mem.verdict.value})")
    h = mem.poly
    cells = [c.cell for c in mem.cells]
    a = [list(c.decomposition.int_coeffs()) for c in mem.cells]
    members = basis.members
    order = sorted(range(len(members)), key=lambda k: (-members[k].dim, k))
    face_dec: dict[tuple, tuple[int, ...]] = {}
    factors: list[tuple[TropicalPoly, int]] = []
    used: list[int] = []
    budget = sum(sum(r) for r in a) + 1
    while True:
        pick = next(((s, k) for k in order for s in range(len(cells)) if a[s][k] > 0), None)
        if pick is None:
            break
        budget -= 1
        if budget < 0:  # pragma: no cover - would mean the basis is not positive
            raise RuntimeError("peeling did not terminate")
        s, k = pick
        sigma = cells[s]
        mult = a[s][k]
        member = members[k]
        factors.append((unit_from(member, sigma.functional), mult))
        used.append(k)
        verts = member.vertices
        for eta_i, J in enumerate(_argmax_sets(cells, sigma, verts)):
            key = tuple(verts[j] for j in J)
            if key not in face_dec:
                face_dec[key] = basis.decompose(convex_hull(key)).int_coeffs()
            for p, c in enumerate(face_dec[key]):
                if c:
                    a[eta_i][p] -= mult * c
        if any(x < 0 for r in a for x in r):  # pragma: no cover - positivity guarantees this
            raise RuntimeError("negative bookkeeping entry while peeling")
    factors = [(normalize_unit(u), m) for u, m in factors]
    n = h.n
    expanded = product(factors, n)
    witness = equal_as_complexes(expanded, h)
    if witness is None:  # pragma: no cover - guaranteed by the peeling argument
        raise RuntimeError("factor product does not reproduce the input")
    return Factorization(tuple(factors), witness, tuple(used))


# --------------------------------------------------------------------------
# rational factorisation
# --------------------------------------------------------------------------

def normalize_unit(u: TropicalPoly) -> TropicalPoly:
    """Shift ``u`` by a constant so that its largest coefficient is 0."""
    return u.shift(-max(c for _, c in u.terms))


def _unit_key(u: TropicalPoly):
    return u.terms


def rational_factor(f: TropicalPoly, basis: BasisSet, threads: int = 1) -> RationalFactorization:
    """Minimal denominator ``g in N[S]`` with ``f (.) g in N[S]`` and its factorisation."""
    mem = membership(f, basis, threads=threads)
    if mem.verdict is Verdict.NOT_IN_ZS:
        bad = mem.failing
        raise NotInZSError(bad.cell.polytope, bad.reason)
    f = mem.poly
    if mem.verdict is Verdict.NS:
        return RationalFactorization((), factor_ns(f, basis, mem), f.n)
    units: dict = {}
    first_seen: list = []
    for c in mem.cells:
        for k, coef in enumerate(c.decomposition.int_coeffs()):
            if coef >= 0:
                continue
            u = normalize_unit(unit_from(basis.members[k], c.cell.functional))
            key = _unit_key(u)
            if key not in units:
                first_seen.append(key)
                units[key] = (u, -coef)
            else:
                units[key] = (u, max(units[key][1], -coef))
    denom = tuple(units[k] for k in first_seen)
    g = product(denom, f.n)
    return RationalFactorization(denom, factor_ns(multiply(f, g), basis, threads=threads), f.n)


def verify_factorization(f: TropicalPoly, result: Factorization | RationalFactorization,
                         basis: BasisSet | None = None):
    """Re-multiply and compare against ``f`` (or ``f (.) g``) up to a monomial.

    Returns the witness ``(a, v)`` or None.
    """
    if basis is not None:
        f, _ = prepare(f, basis)
    if isinstance(result, RationalFactorization):
        target = multiply(f, result.g)
        num = result.numerator
    else:
        target = f
        num = result
    return equal_as_complexes(product(num.factors, target.n), target)


def dehomogenize_factorization(fact: Factorization, index: int) -> Factorization:
    const, shift = fact.monomial
    return Factorization(tuple((dehomogenize(u, index), m) for u, m in fact.factors),
                         (const, shift[:index] + shift[index + 1:]), fact.members)
