"""Max-plus tropical polynomials, regular subdivisions and equality notions."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .geometry import (
    Polytope,
    as_rational,
    convex_hull,
    dot,
    format_rational,
)

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class TropicalPoly:
    """``x -> max_a (c_a + a . x)`` stored as a sorted tuple of ``(a, c_a)``.

    Dominated terms are kept as given; two coefficients on one exponent
    collapse to their maximum.
    """

    terms: tuple[tuple[Exponent, Fraction], ...]

    def __post_init__(self) -> None:
        merged: dict[Exponent, Fraction] = {}
        for a, c in self.terms:
            a = tuple(int(x) for x in a)
            c = as_rational(c)
            if a not in merged or c > merged[a]:
                merged[a] = c
        if not merged:
            raise ValueError("a tropical polynomial needs at least one term")
        if len({len(a) for a in merged}) != 1:
            raise ValueError("exponents have mixed lengths")
        object.__setattr__(self, "terms", tuple(sorted(merged.items())))

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], object] | Iterable) -> "TropicalPoly":
        items = terms.items() if isinstance(terms, Mapping) else terms
        return cls(tuple((tuple(a), as_rational(c)) for a, c in items))

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=0) -> "TropicalPoly":
        return cls(((tuple(exp), as_rational(coeff)),))

    @property
    def n(self) -> int:
        return len(self.terms[0][0])

    @property
    def term_map(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    @property
    def exponents(self) -> list[Exponent]:
        return [a for a, _ in self.terms]

    def degree(self) -> int:
        return max(sum(a) for a, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a, _ in self.terms}) == 1

    def __call__(self, x: Sequence) -> Fraction:
        return max(c + dot(a, x) for a, c in self.terms)

    def __mul__(self, other: "TropicalPoly") -> "TropicalPoly":
        return multiply(self, other)

    def __pow__(self, k: int) -> "TropicalPoly":
        if k < 0:
            raise ValueError("negative tropical power")
        out = TropicalPoly.monomial((0,) * self.n)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def shift(self, const=0, exp: Sequence[int] | None = None) -> "TropicalPoly":
        """``const (.) x^exp (.) self``."""
        const = as_rational(const)
        exp = tuple(exp) if exp is not None else (0,) * self.n
        return TropicalPoly(tuple((tuple(x + y for x, y in zip(a, exp)), c + const)
                                  for a, c in self.terms))

    @cached_property
    def newton(self) -> Polytope:
        return convex_hull(self.exponents)

    @cached_property
    def subdivision(self) -> "RegularSubdivision":
        return _regular_subdivision(self)

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "convention": "max-plus",
            "terms": [{"exp": list(a), "coeff": format_rational(c)} for a, c in self.terms],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "TropicalPoly":
        conv = obj.get("convention", "max-plus")
        if conv != "max-plus":
            raise ValueError(f"unsupported convention {conv!r}; only max-plus is supported")
        terms = obj.get("terms")
        if not terms:
            raise ValueError("polynomial JSON needs a nonempty 'terms' list")
        poly = cls(tuple((tuple(t["exp"]), as_rational(t["coeff"])) for t in terms))
        if "n" in obj and obj["n"] != poly.n:
            raise ValueError(f"declared n={obj['n']} but exponents have length {poly.n}")
        return poly


@dataclass(frozen=True)
class CellFunctional:
    """Affine function ``y -> gradient . y + constant``.

    Gradients vanish on the coordinates that do not parametrise the
    Newton polytope's affine hull, which makes the representation canonical.
    """

    gradient: tuple[Fraction, ...]
    constant: Fraction

    def __call__(self, y: Sequence) -> Fraction:
        return dot(self.gradient, y) + self.constant

    def to_json(self) -> dict:
        return {"gradient": [format_rational(g) for g in self.gradient],
                "constant": format_rational(self.constant)}


@dataclass(frozen=True)
class Cell:
    polytope: Polytope
    functional: CellFunctional


@dataclass(frozen=True)
class RegularSubdivision:
    support: Polytope
    cells: tuple[Cell, ...]

    def __len__(self) -> int:
        return len(self.cells)

    def cell_containing(self, y: Sequence) -> Cell | None:
        for c in self.cells:
            if c.polytope.contains(y):
                return c
        return None

    def to_json(self) -> dict:
        return {"cells": [{"vertices": c.polytope.to_json()["vertices"],
                           "functional": c.functional.to_json()} for c in self.cells]}


# --------------------------------------------------------------------------
# subdivision
# --------------------------------------------------------------------------

def newton_polytope(f: TropicalPoly) -> Polytope:
    return f.newton


def regular_subdivision(f: TropicalPoly) -> RegularSubdivision:
    """Maximal cells of the subdivision induced by the upper hull of ``(a, c_a)``."""
    return f.subdivision


def _regular_subdivision(f: TropicalPoly) -> RegularSubdivision:
    newt = f.newton
    n = f.n
    piv = newt.pivots
    k = len(piv)
    if k == 0:
        a, c = f.terms[0]
        return RegularSubdivision(newt, (Cell(newt, CellFunctional((Fraction(0),) * n, c)),))
    den = 1
    for _, c in f.terms:
        den = den * c.denominator // math.gcd(den, c.denominator)
    lifted = {}
    for a, c in f.terms:
        lifted[tuple(a[i] for i in piv) + (int(c * den),)] = a
    hull = convex_hull(lifted)

    def functional(normal, offset) -> CellFunctional:
        hc = normal[-1] * den
        grad = [Fraction(0)] * n
        for j, i in enumerate(piv):
            grad[i] = Fraction(-normal[j], hc)
        return CellFunctional(tuple(grad), Fraction(offset) / hc)

    if hull.dim == k:
        # affine lift: one cell
        eq = next(e for e, _ in hull.equations if e[-1] != 0)
        val = next(v for e, v in hull.equations if e == eq)
        return RegularSubdivision(newt, (Cell(newt, functional(eq, val)),))
    cells = []
    for facet in hull.facets:
        if facet.normal[-1] <= 0:
            continue
        pts = [lifted[hull.vertices[i]] for i in facet.vertices]
        cells.append(Cell(convex_hull(pts), functional(facet.normal, facet.offset)))
    cells.sort(key=lambda c: c.polytope.vertices)
    return RegularSubdivision(newt, tuple(cells))


def is_unit(f: TropicalPoly) -> bool:
    sub = f.subdivision
    return len(sub.cells) == 1 and sub.cells[0].polytope == f.newton


def multiply(f: TropicalPoly, g: TropicalPoly) -> TropicalPoly:
    if f.n != g.n:
        raise ValueError("cannot multiply polynomials in different numbers of variables")
    out: dict[Exponent, Fraction] = {}
    for a, c in f.terms:
        for b, d in g.terms:
            e = tuple(x + y for x, y in zip(a, b))
            v = c + d
            if e not in out or v > out[e]:
                out[e] = v
    return TropicalPoly(tuple(out.items()))


def product(factors: Iterable[tuple[TropicalPoly, int]], n: int) -> TropicalPoly:
    """``(.)_i f_i^{m_i}``; the empty product is the zero monomial."""
    out = TropicalPoly.monomial((0,) * n)
    for f, m in factors:
        for _ in range(m):
            out = multiply(out, f)
    return out


def unit_from(p: Polytope, l: CellFunctional) -> TropicalPoly:
    """The unit ``max_{v in V(P)} (v . x + l(v))``."""
    if not p.is_lattice:
        raise ValueError("unit_from needs a lattice polytope")
    return TropicalPoly(tuple((v, l(v)) for v in p.vertices))


# --------------------------------------------------------------------------
# equality
# --------------------------------------------------------------------------

def equal_as_functions(f: TropicalPoly, g: TropicalPoly) -> bool:
    """``f =_2 g``: same Newton polytope, cells and cell functionals."""
    if f.n != g.n:
        return False
    sf, sg = f.subdivision, g.subdivision
    return sf.support == sg.support and sf.cells == sg.cells


def equal_as_complexes(f: TropicalPoly, g: TropicalPoly) -> tuple[Fraction, tuple[int, ...]] | None:
    """Witness ``(a, v)`` with ``g =_2 a (.) x^v (.) f``, or None."""
    f, g = g, f
    if f.n != g.n:
        return None
    nf, ng = f.newton, g.newton
    v = tuple(x - y for x, y in zip(nf.lexmin(), ng.lexmin()))
    if ng.translate(v) != nf:
        return None
    sf, sg = f.subdivision, g.subdivision
    if len(sf.cells) != len(sg.cells):
        return None
    a = None
    for cf, cg in zip(sf.cells, sg.cells):
        if cg.polytope.translate(v) != cf.polytope:
            return None
        if cf.functional.gradient != cg.functional.gradient:
            return None
        shift = cf.functional.constant - cg.functional.constant + dot(cg.functional.gradient, v)
        if a is None:
            a = shift
        elif shift != a:
            return None
    return a, v


def legendre_value(f: TropicalPoly, y: Sequence) -> Fraction | float:
    """``f*(y) = -l_sigma(y)`` on ``newt(f)``; ``math.inf`` outside."""
    cell = f.subdivision.cell_containing([as_rational(t) for t in y])
    if cell is None:
        return math.inf
    return -cell.functional([as_rational(t) for t in y])


# --------------------------------------------------------------------------
# homogenisation
# --------------------------------------------------------------------------

def homogenize(f: TropicalPoly, index: int = 0, degree: int | None = None) -> TropicalPoly:
    """Insert a variable at ``index`` carrying ``d - |a|`` for each term."""
    d = f.degree() if degree is None else degree
    if d < f.degree():
        raise ValueError("degree below the polynomial's total degree")
    terms = []
    for a, c in f.terms:
        e = list(a)
        e.insert(index, d - sum(a))
        terms.append((tuple(e), c))
    return TropicalPoly(tuple(terms))


def dehomogenize(f: TropicalPoly, index: int = 0) -> TropicalPoly:
    return TropicalPoly(tuple((a[:index] + a[index + 1:], c) for a, c in f.terms))


# --------------------------------------------------------------------------
# text form
# --------------------------------------------------------------------------

def format_linear(exp: Sequence[int], const) -> str:
    parts = []
    for i, e in enumerate(exp):
        if not e:
            continue
        mag = "" if abs(e) == 1 else str(abs(e))
        sign = "-" if e < 0 else ("+" if parts else "")
        parts.append(f"{sign}{mag}x{i + 1}")
    const = Fraction(const)
    if const or not parts:
        c = format_rational(abs(const))
        sign = "-" if const < 0 else ("+" if parts else "")
        parts.append(f"{sign}{c}")
    return "".join(parts)


def format_poly(f: TropicalPoly) -> str:
    body = ", ".join(format_linear(a, c) for a, c in reversed(f.terms))
    return body if len(f.terms) == 1 else f"max({body})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<var>x_?(?P<idx>\d+))"
                    r"|(?P<op>[+\-*,()])|(?P<max>max))")


def _tokens(text: str):
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 12]!r} (offset {pos})")
        pos = m.end()
        if m.group("num"):
            yield "num", as_rational(m.group("num"))
        elif m.group("var"):
            yield "var", int(m.group("idx"))
        elif m.group("max"):
            yield "max", None
        else:
            yield m.group("op"), None


def _parse_linear(toks: list, start: int) -> tuple[dict[int, int], Fraction, int]:
    exps: dict[int, int] = {}
    const = Fraction(0)
    i = start
    first = True
    while i < len(toks) and toks[i][0] not in (",", ")"):
        sign = 1
        if toks[i][0] in "+-":
            sign = -1 if toks[i][0] == "-" else 1
            i += 1
        elif not first:
            raise ValueError("expected + or - between terms")
        first = False
        coef = None
        if i < len(toks) and toks[i][0] == "num":
            coef = toks[i][1]
            i += 1
            if i < len(toks) and toks[i][0] == "*":
                i += 1
        if i < len(toks) and toks[i][0] == "var":
            if coef is not None and coef.denominator != 1:
                raise ValueError("variable multipliers must be integers")
            idx = toks[i][1]
            exps[idx] = exps.get(idx, 0) + sign * int(coef if coef is not None else 1)
            i += 1
        elif coef is not None:
            const += sign * coef
        else:
            raise ValueError("dangling sign in linear form")
    return exps, const, i


def parse_poly(text: str, n: int | None = None, zero_based: bool = False) -> TropicalPoly:
    """Parse ``max(x1+x2-6, 2x3-5/2, ...)`` or a single linear form.

    Variables are ``x1 .. xn`` (``x_1`` also accepted); ``zero_based``
    maps ``x0`` to the first coordinate instead.
    """
    toks = list(_tokens(text))
    if not toks:
        raise ValueError("empty polynomial")
    forms = []
    if toks[0][0] == "max":
        if len(toks) < 3 or toks[1][0] != "(" or toks[-1][0] != ")":
            raise ValueError("expected max( ... )")
        i = 2
        while True:
            exps, const, i = _parse_linear(toks, i)
            forms.append((exps, const))
            if toks[i][0] == ")":
                if i != len(toks) - 1:
                    raise ValueError("trailing input after max(...)")
                break
            i += 1
    else:
        exps, const, i = _parse_linear(toks, 0)
        if i != len(toks):
            raise ValueError("unexpected token in linear form")
        forms.append((exps, const))
    offset = 0 if zero_based else 1
    top = max((k for e, _ in forms for k in e), default=offset - 1)
    if not zero_based and any(k == 0 for e, _ in forms for k in e):
        raise ValueError("x0 used without zero_based=True")
    size = n if n is not None else top - offset + 1
    if top - offset + 1 > size:
        raise ValueError(f"variable x{top} exceeds n={size}")
    terms = []
    for e, c in forms:
        vec = [0] * size
        for k, v in e.items():
            vec[k - offset] += v
        terms.append((tuple(vec), c))
    return TropicalPoly(tuple(terms))
