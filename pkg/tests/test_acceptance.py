"""Acceptance criteria 1-11, one PASS/FAIL line each in the terminal summary.

All comparisons are exact (rational arithmetic); the only pinned tolerances
are the wall-clock limits passed to ``criterion``.
"""

import os
import random
import subprocess
import sys
from contextlib import contextmanager
from fractions import Fraction
from itertools import product as cartesian
from time import perf_counter

import networkx as nx
import pytest

import reference
from conftest import random_unit
from helpers import (
    expand_multiplicities,
    match_up_to_complexes,
    named_coeffs,
    parse_all,
    record,
    simplex_coeffs,
)
from tropfactor import (
    OracleLimitError,
    TropicalPoly,
    Verdict,
    b_additivity_check,
    b_constant,
    bruteforce_ns_membership,
    build_basis,
    check_positive_basis,
    complete_graph_basis,
    factor_ns,
    graphical_basis,
    homogenize_polytope,
    is_summand,
    is_unit,
    load_fixture,
    membership,
    minkowski_sum,
    multiply,
    parse_poly,
    product,
    rational_factor,
    signed_difference,
    verify_factorization,
)
from tropfactor.cli import main
from tropfactor.fixtures import (
    basis_fig2,
    basis_fig3,
    tree_example_graph,
    fixture_document,
    fixture_names,
    recover_tree_weights,
    spanning_tree_polynomial,
)
from tropfactor.geometry import Polytope, convex_hull, face_in_direction, proper_faces
from tropfactor.intlinalg import primitive
from tropfactor.minkowski import scaled_sum
from tropfactor.oracle import hull_bruteforce, refines_normal_fan

SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])


@contextmanager
def criterion(n: int, label: str, limit: float | None = None):
    """Record PASS/FAIL for one check of criterion ``n``, with an optional time limit in seconds."""
    t0 = perf_counter()
    try:
        yield
    except BaseException as exc:
        if isinstance(exc, pytest.xfail.Exception):
            raise
        record(n, False, f"{label}: {type(exc).__name__} {str(exc)[:160]}")
        raise
    dt = perf_counter() - t0
    ok = limit is None or dt < limit
    timing = f"{dt:.2f} s" + (f" < {limit} s" if ok and limit else f" OVER {limit} s" if limit else "")
    record(n, ok, f"{label} ({timing})")
    assert ok, f"criterion {n} took {dt:.2f} s, limit {limit} s"


def multiset_matches(got, want) -> int:
    """How many of ``want`` find an =_3 partner in ``got`` (each used once)."""
    rest = list(got)
    hits = 0
    for w in want:
        for i, u in enumerate(rest):
            if match_up_to_complexes([u], [w]):
                del rest[i]
                hits += 1
                break
    return hits


def basis_for(n: int):
    return {3: basis_fig2, 4: lambda: complete_graph_basis(4), 5: lambda: complete_graph_basis(5)}[n]()


# --------------------------------------------------------------------------
# 1. positive-basis certification
# --------------------------------------------------------------------------

def test_criterion_1_certification():
    with criterion(1, "certification of K3-K5, connected graphs <= 4 nodes, fig2, fig3; "
                      "square sets rejected", limit=5.0):
        good = [complete_graph_basis(n) for n in (3, 4, 5)] + [basis_fig2(), basis_fig3()]
        for g in nx.graph_atlas_g()[1:]:
            if 2 <= g.number_of_nodes() <= 4 and nx.is_connected(g):
                good.append(graphical_basis(g.number_of_nodes(), list(g.edges())))
        assert len(good) == 5 + 1 + 2 + 6
        for b in good:
            assert check_positive_basis(b).ok, b.names

        e1, e2 = convex_hull([(0, 0), (1, 0)]), convex_hull([(0, 0), (0, 1)])
        square3 = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
        square4 = convex_hull([(1, 0, 0, 1), (0, 1, 0, 1), (1, 0, 1, 0), (0, 1, 1, 0)])
        bad = [
            [SQUARE],
            [SQUARE, e1, e2],
            [SQUARE, e1, e2, convex_hull([(0, 0), (1, 1)])],
            [square3] + list(complete_graph_basis(3).members),
            list(basis_fig2().members) + [homogenize_polytope(SQUARE, 2)],
            list(complete_graph_basis(4).members) + [square4],
        ]
        for members in bad:
            report = check_positive_basis(build_basis(members))
            assert not report.ok and report.witness is not None


# --------------------------------------------------------------------------
# 2. the 3 x 14 H-matrix
# --------------------------------------------------------------------------

def test_criterion_2_h_matrix():
    with criterion(2, "H(fig2) = 14 printed columns up to row order"):
        rows = basis_fig2().h.rows
        assert len(rows) == 14 and sorted(rows) == sorted(reference.H_FIG2_ROWS)


# --------------------------------------------------------------------------
# 3. spanning-tree example over K5
# --------------------------------------------------------------------------

def test_criterion_3_tree_example(K5):
    with criterion(3, "tree example: 8 terms, unit, 4-unit denominator, 7 factors, "
                      "Newton decomposition", limit=30.0):
        printed = parse_poly("max(" + ", ".join(reference.FG_TERMS) + ")", 5)
        edges = [(a, b) for a, b, _ in tree_example_graph().edges]
        g = recover_tree_weights(4, edges, printed)
        fg = spanning_tree_polynomial(g)
        assert fg.term_map == printed.term_map and len(fg.terms) == 8
        assert is_unit(fg)

        rf = rational_factor(fg, K5)
        den = expand_multiplicities(rf.denominator)
        assert len(den) == 4
        assert match_up_to_complexes(den, parse_all(reference.FG_DENOMINATOR, 5))
        assert verify_factorization(fg, rf) is not None

        gg = product([(u, 1) for u in parse_all(reference.FG_DENOMINATOR, 5)], 5)
        fact = factor_ns(multiply(fg, gg), K5)
        units = expand_multiplicities(fact.factors)
        assert len(units) == 7
        assert match_up_to_complexes(units, parse_all(reference.FG_NUMERATOR, 5))

        d = K5.decompose(fg.newton)
        assert simplex_coeffs(K5, d.coeffs) == reference.FG_NEWTON


# --------------------------------------------------------------------------
# 4. quadratic example over K4
# --------------------------------------------------------------------------

def test_criterion_4_quadratic_example(K4):
    with criterion(4, "quad: ZS not NS, 14 cell decompositions, 7-unit factorisation", limit=30.0):
        quad = parse_poly(reference.QUAD)
        assert quad == load_fixture("quad_exa")
        res = membership(quad, K4)
        assert res.verdict is Verdict.ZS_NOT_NS
        got = [(simplex_coeffs(K4, c.decomposition.coeffs), tuple(c.decomposition.translation))
               for c in res.cells]
        want = list(reference.QUAD_CELLS)
        assert len(got) == 14
        for cell in got:
            want.remove(cell)
        assert want == []

        rf = rational_factor(quad, K4)
        den = expand_multiplicities(rf.denominator)
        assert len(den) == 4
        num = expand_multiplicities(rf.numerator.factors)
        assert len(num) == 7
        assert match_up_to_complexes(num, parse_all(reference.QUAD_NUMERATOR, 4))
        assert verify_factorization(quad, rf) is not None


@pytest.mark.xfail(strict=True, reason="two printed denominator units are inconsistent "
                                       "with the printed numerator; see /root/notes/decisions.md")
def test_criterion_4_printed_denominator(K4):
    den = expand_multiplicities(rational_factor(load_fixture("quad_exa"), K4).denominator)
    printed = parse_all(reference.QUAD_DENOMINATOR, 4)
    hits = multiset_matches(den, printed)
    ok = hits == 4
    record(4, ok, f"printed denominator: {hits} of 4 units match under =_3; the printed "
                  f"numerator matches the product with the computed denominator, so the two "
                  f"unmatched printed units are taken to be misprints")
    # with the printed g the product is not even in N[S]
    h = multiply(load_fixture("quad_exa"), product([(u, 1) for u in printed], 4))
    assert membership(h, K4).verdict is not Verdict.NS
    assert ok


# --------------------------------------------------------------------------
# 5. plane-curve example over the ten-polygon basis
# --------------------------------------------------------------------------

def test_criterion_5_plane_curve(fig2):
    with criterion(5, "plane curve: 3 signed cells with translations, 4-unit g_q, "
                      "7 factors with monomial", limit=30.0):
        fq = load_fixture("fq")
        assert fq == parse_poly(reference.FQ)
        res = membership(fq, fig2)
        assert res.verdict is Verdict.ZS_NOT_NS
        got = [(named_coeffs(fig2, c.decomposition.coeffs), tuple(c.decomposition.translation))
               for c in res.cells]
        want = list(reference.FQ_CELLS)
        assert len(got) == 3
        for cell in got:
            want.remove(cell)
        assert want == []

        rf = rational_factor(fq, fig2)
        den = expand_multiplicities(rf.denominator)
        printed_g = parse_all(reference.FQ_DENOMINATOR, 3)
        assert len(den) == 4 and match_up_to_complexes(den, printed_g)

        hq = multiply(fq, product([(u, 1) for u in printed_g], 3))
        fact = factor_ns(hq, fig2)
        assert sum(m for _, m in fact.factors) == 7
        want_units = [(parse_poly(t, 3), m) for t, m in reference.HQ_FACTORS]
        assert match_up_to_complexes(expand_multiplicities(fact.factors),
                                     expand_multiplicities(want_units))
        exp, const = reference.HQ_MONOMIAL
        assert fact.monomial == (const, exp)


# --------------------------------------------------------------------------
# 6. products of units factor back, brute force agrees
# --------------------------------------------------------------------------

def test_criterion_6_unique_factorisation(K3, fig2):
    with criterion(6, "randomised products over K3 and fig2", limit=300.0):
        rng = random.Random(20240601)
        products_done = decided = negatives = 0
        for basis in (K3, fig2):
            for _ in range(110):
                units = [random_unit(rng, rng.choice(basis.members))
                         for _ in range(rng.randint(1, 4))]
                h = product([(u, 1) for u in units], basis.ambient_dim)
                fact = factor_ns(h, basis)
                assert verify_factorization(h, fact) is not None
                assert match_up_to_complexes(expand_multiplicities(fact.factors), units)
                products_done += 1
                # both verdicts: the product itself and a perturbed copy
                terms = dict(h.terms)
                a = rng.choice(sorted(terms))
                terms[a] += rng.choice([-2, -1, Fraction(-1, 2), Fraction(1, 3), 1])
                for f in (h, TropicalPoly.from_terms(terms)):
                    verdict = membership(f, basis).verdict
                    try:
                        brute = bruteforce_ns_membership(f, basis, bound=8)
                    except OracleLimitError:
                        continue
                    assert brute == (verdict is Verdict.NS), (f, verdict)
                    decided += 1
                    negatives += not brute
        assert products_done >= 200 and decided >= 200 and negatives > 0


# --------------------------------------------------------------------------
# 7. invariance under basis order and monomial shifts
# --------------------------------------------------------------------------

def factor_classes(f, basis):
    """(denominator units, numerator units, monomial) of the rational factorisation."""
    rf = rational_factor(f, basis)
    return (expand_multiplicities(rf.denominator),
            expand_multiplicities(rf.numerator.factors), rf.numerator.monomial)


def permuted(basis, rng):
    order = list(range(len(basis)))
    rng.shuffle(order)
    return build_basis([basis.members[i] for i in order], [basis.names[i] for i in order],
                       basis.homog_index)


def check_invariance(f, basis, rng):
    den, num, (c, v) = factor_classes(f, basis)
    shift_c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    shift_v = tuple(rng.randint(0, 3) for _ in range(f.n))
    den2, num2, (c2, v2) = factor_classes(f.shift(shift_c, shift_v), permuted(basis, rng))
    assert len(den) == len(den2) and match_up_to_complexes(den, den2)
    assert len(num) == len(num2) and match_up_to_complexes(num, num2)
    # units are normalised, so the shift lands in the monomial part exactly
    assert c2 == c + shift_c and v2 == tuple(a + b for a, b in zip(v, shift_v))


def test_criterion_7_invariance(K3, K4, fig2):
    with criterion(7, "basis permutation and monomial shifts on fixtures + 50 random instances"):
        rng = random.Random(77)
        polys = [name for name in fixture_names() if fixture_document(name)["kind"] == "poly"]
        bases = {n: basis_for(n) for n in (3, 4, 5)}
        for name in polys:
            f = load_fixture(name)
            check_invariance(f, bases[f.n], rng)
        done = rational = 0
        for basis in [K3] * 20 + [fig2] * 15 + [K4] * 15:
            units = [random_unit(rng, rng.choice(basis.members)) for _ in range(rng.randint(1, 3))]
            f = product([(u, 1) for u in units], basis.ambient_dim)
            if rng.random() < 0.5:
                f = rational_probe(f, basis, rng)
                rational += membership(f, basis).verdict is Verdict.ZS_NOT_NS
            check_invariance(f, basis, rng)
            done += 1
        assert len(polys) >= 7 and done == 50 and rational > 0


def rational_probe(f, basis, rng):
    """Perturb one coefficient; keep the result only if it lands in Z[S] but not N[S]."""
    for _ in range(5):
        terms = dict(f.terms)
        terms[rng.choice(sorted(terms))] -= rng.randint(1, 3)
        candidate = TropicalPoly.from_terms(terms)
        if membership(candidate, basis).verdict is Verdict.ZS_NOT_NS:
            return candidate
    return f


# --------------------------------------------------------------------------
# 8. additivity of b-vectors
# --------------------------------------------------------------------------

def support(p: Polytope, row) -> int:
    return max(sum(a * b for a, b in zip(row, v)) for v in p.vertices)


def summand_by_fans(p: Polytope, q: Polytope) -> bool:
    """``p <= q`` decided from normal cones and brute-force hulls only."""
    if not refines_normal_fan(q, p):
        return False
    diffs = []
    for k, v in enumerate(q.vertices):
        rays = [fc.normal for fc in q.facets if k in fc.vertices]
        inner = [sum(col) for col in zip(*rays)] if rays else [0] * q.ambient_dim
        (x,) = face_in_direction(p, inner).vertices
        diffs.append(tuple(a - b for a, b in zip(v, x)))
    rest = hull_bruteforce(diffs)
    total = hull_bruteforce([tuple(a + b for a, b in zip(s, t))
                             for s in rest.vertices for t in p.vertices])
    return set(total.vertices) == set(q.vertices)


def test_criterion_8_additivity(K3, K4):
    with criterion(8, "b(sum y_i F_i) = sum y_i b(F_i) on 500 K4 sub-lists; signed cases "
                      "agree with the summand test"):
        rng = random.Random(8)
        h = K4.h
        bs = [tuple(support(m, r) for r in h.rows) for m in K4.members]
        for _ in range(500):
            idx = sorted(rng.sample(range(len(K4)), rng.randint(1, 5)))
            y = [rng.randint(0, 3) for _ in idx]
            if not any(y):
                y[0] = 1
            total = scaled_sum([K4.members[i] for i in idx], y)
            want = tuple(sum(c * bs[i][r] for c, i in zip(y, idx)) for r in range(len(h)))
            assert b_constant(total, h) == want

        cases = agree_true = 0
        for y in cartesian(range(-2, 3), repeat=len(K3)):
            res = b_additivity_check(list(K3.members), list(y), K3.h)
            origin = Polytope(((0, 0, 0),))
            plus = scaled_sum(list(K3.members), [max(c, 0) for c in y]) or origin
            minus = scaled_sum(list(K3.members), [max(-c, 0) for c in y]) or origin
            expected = summand_by_fans(minus, plus)
            assert res.holds == expected and res.summand == expected, y
            cases += 1
            agree_true += expected
        for _ in range(150):
            y = [rng.choice([-1, 0, 0, 0, 1, 1]) for _ in range(len(K4))]
            res = b_additivity_check(list(K4.members), y, K4.h)
            origin = Polytope(((0,) * 4,))
            plus = scaled_sum(list(K4.members), [max(c, 0) for c in y]) or origin
            minus = scaled_sum(list(K4.members), [max(-c, 0) for c in y]) or origin
            expected = summand_by_fans(minus, plus)
            assert res.holds == expected and res.summand == expected, y
            cases += 1
            agree_true += expected
        assert cases == 625 + 150 and 0 < agree_true < cases


# --------------------------------------------------------------------------
# 9. cancellation law
# --------------------------------------------------------------------------

def random_lattice_polytope(rng, dim):
    pts = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(1, 6))]
    return convex_hull(pts)


def test_criterion_9_cancellation():
    with criterion(9, "(P+Q)-Q = P, Q <= P+Q, P-P = 0 on 500 random pairs in dims 2-4"):
        rng = random.Random(9)
        for i in range(500):
            dim = 2 + i % 3
            p, q = random_lattice_polytope(rng, dim), random_lattice_polytope(rng, dim)
            s = minkowski_sum([p, q])
            # support functions add: h_{P+Q} = h_P + h_Q on a grid of directions
            for c in cartesian(range(-1, 2), repeat=dim):
                assert support(s, c) == support(p, c) + support(q, c)
            if dim < 4 and i % 5 == 0:
                # independent sum: hull of all pairwise vertex sums
                brute = hull_bruteforce([tuple(a + b for a, b in zip(u, v))
                                         for u in p.vertices for v in q.vertices])
                assert set(brute.vertices) == set(s.vertices)
            assert signed_difference(s, q) == p
            assert is_summand(q, s)
            assert signed_difference(p, p) == Polytope(((0,) * dim,))


# --------------------------------------------------------------------------
# 10. bivariate rational factorisation over fig2
# --------------------------------------------------------------------------

QUADRATIC_SUPPORT = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def random_conic(rng):
    exps = rng.sample(QUADRATIC_SUPPORT, rng.randint(2, 6))
    return TropicalPoly.from_terms({e: Fraction(rng.randint(-12, 12), rng.randint(1, 3))
                                    for e in exps})


def edge_directions(f):
    out = set()
    for cell in f.subdivision.cells:
        p = cell.polytope
        edges = [p] if p.dim == 1 else [e for e in proper_faces(p) if e.dim == 1]
        for e in edges:
            a, b = e.vertices
            out.add(tuple(primitive([y - x for x, y in zip(a, b)])))
    return out


def test_criterion_10_bivariate(fig2):
    with criterion(10, "random bivariate inputs with degree-2 edge directions factor over fig2"):
        rng = random.Random(10)
        allowed = reference.DEGREE2_EDGES | {tuple(-x for x in d) for d in reference.DEGREE2_EDGES}
        done = rational = 0
        while done < 60:
            f = product([(random_conic(rng), 1) for _ in range(rng.randint(1, 3))], 2)
            if len(f.terms) < 2:
                continue
            assert edge_directions(f) <= allowed
            rf = rational_factor(f, fig2)
            assert verify_factorization(f, rf, fig2) is not None
            rational += bool(rf.denominator)
            done += 1
        assert rational > 0


# --------------------------------------------------------------------------
# 11. byte-determinism of the command line
# --------------------------------------------------------------------------

def cli_runs(name: str, tmp) -> list[list[str]]:
    doc = fixture_document(name)
    kind = doc["kind"]
    runs = [["fixtures", "show", name]]
    if kind == "basis":
        runs += [["check-basis", name], ["check-basis", name, "--text"],
                 ["render", name, f"{tmp}/{name}.svg"]]
    elif kind == "poly":
        b = {3: "basis_fig2", 4: "K4", 5: "K5"}[doc["n"]]
        runs += [["subdivide", name], ["membership", name, b], ["membership", name, b, "--text"],
                 ["factor", name, b, "--verify"], ["rational-factor", name, b, "--verify"],
                 ["rational-factor", name, b, "--text"],
                 ["oracle", "peel", name, b, "--member", basis_for(doc["n"]).names[0]],
                 ["render", name, f"{tmp}/{name}.svg", "--basis", b]]
    return runs


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    svg = b""
    if argv[0] == "render" and os.path.exists(argv[2]):
        with open(argv[2], "rb") as fh:
            svg = fh.read()
        os.remove(argv[2])
    return code, out.encode(), err.encode(), svg


def test_criterion_11_cli_determinism(tmp_path, capsys):
    with criterion(11, "every command twice on every fixture, byte-identical"):
        total = 0
        svgs = 0
        for name in fixture_names():
            for argv in cli_runs(name, tmp_path):
                first = run_cli(argv, capsys)
                second = run_cli(argv, capsys)
                assert first == second, argv
                total += 1
                svgs += bool(first[3])
        # a fresh interpreter with a different hash seed and locale gives the same bytes
        for argv in (["factor", "fG_times_gG", "K5", "--verify"],
                     ["rational-factor", "fq", "basis_fig2", "--text"],
                     ["check-basis", "basis_fig3"]):
            env = dict(os.environ, PYTHONHASHSEED="12345", TZ="Asia/Tokyo", LC_ALL="C")
            proc = subprocess.run([sys.executable, "-m", "tropfactor", *argv],
                                  capture_output=True, env=env)
            assert proc.stdout == run_cli(argv, capsys)[1]
        assert total >= 60 and svgs >= 4
