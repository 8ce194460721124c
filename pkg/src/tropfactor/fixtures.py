"""Example data: generators, the shipped corpus and its checksummed loader."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

import networkx as nx

from .basis import BasisSet, build_basis, complete_graph_basis, homogenize_polytope
from .geometry import as_rational, convex_hull, format_rational
from .intlinalg import solve_rational
from .tropical import TropicalPoly, format_poly, multiply, parse_poly, product

SCHEMA = "tropfactor/1"
FIXTURE_ENV = "TROPFACTOR_FIXTURES"
MANIFEST = "manifest.json"
DATA_DIR = Path(__file__).with_name("data")


class FixtureError(LookupError):
    pass


# --------------------------------------------------------------------------
# weighted graphs and spanning-tree polynomials
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedGraph:
    """Simple graph on nodes ``0..nodes-1``; edge ``i`` carries variable ``x_{i+1}``."""

    nodes: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self) -> None:
        seen = set()
        edges = []
        for a, b, w in self.edges:
            if a == b or not (0 <= a < self.nodes and 0 <= b < self.nodes):
                raise ValueError(f"bad edge ({a}, {b})")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)
            edges.append((a, b, as_rational(w)))
        object.__setattr__(self, "edges", tuple(edges))

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.nodes))
        g.add_edges_from((a, b) for a, b, _ in self.edges)
        return g

    def spanning_trees(self) -> list[tuple[int, ...]]:
        """Edge-index sets of all spanning trees, lexicographically ordered."""
        out = []
        for sub in combinations(range(len(self.edges)), self.nodes - 1):
            g = nx.Graph()
            g.add_nodes_from(range(self.nodes))
            g.add_edges_from(self.edges[i][:2] for i in sub)
            if nx.is_tree(g):
                out.append(sub)
        return out

    def to_json(self) -> dict:
        return {"nodes": self.nodes,
                "edges": [[a, b, format_rational(w)] for a, b, w in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "WeightedGraph":
        return cls(int(obj["nodes"]), tuple((int(a), int(b), as_rational(w))
                                            for a, b, w in obj["edges"]))


def spanning_tree_polynomial(g: WeightedGraph) -> TropicalPoly:
    """``max_T (sum_{e in T} x_e - sum_{e in T} w_e)`` over spanning trees ``T``."""
    if g.nodes == 0 or not nx.is_connected(g.graph()):
        raise ValueError("spanning-tree polynomial needs a connected graph")
    m = len(g.edges)
    terms = []
    for tree in g.spanning_trees():
        exp = tuple(int(i in tree) for i in range(m))
        terms.append((exp, -sum(g.edges[i][2] for i in tree)))
    if m == 0:
        # a single node: the empty tree
        return TropicalPoly((((), Fraction(0)),))
    return TropicalPoly(tuple(terms))


def recover_tree_weights(nodes: int, edges: Sequence[tuple[int, int]],
                         f: TropicalPoly) -> WeightedGraph:
    """Edge weights reproducing ``f`` as a spanning-tree polynomial of the given graph.

    Solves ``sum_{e in T} w_e = -c_T`` over the trees ``T``; raises
    ``ValueError`` when the supports differ or the system is inconsistent.
    """
    probe = WeightedGraph(nodes, tuple((a, b, 0) for a, b in edges))
    trees = probe.spanning_trees()
    want = {tuple(int(i in t) for i in range(len(edges))) for t in trees}
    if set(f.term_map) != want:
        raise ValueError("polynomial support is not the set of spanning trees")
    rows = [list(exp) for exp in sorted(want)]
    rhs = [-f.term_map[tuple(r)] for r in rows]
    w = solve_rational(rows, rhs)
    if w is None:
        raise ValueError("tree sums are inconsistent")
    g = WeightedGraph(nodes, tuple((a, b, x) for (a, b), x in zip(edges, w)))
    if spanning_tree_polynomial(g) != f:
        raise ValueError("tree weights are not uniquely determined")
    return g


# --------------------------------------------------------------------------
# the corpus
# --------------------------------------------------------------------------

F_G = ("max(x1+x2+x3-6, x1+x2+x4-7, x1+x3+x4-8, x2+x3+x4-9, x1+x2+x5-6.5, "
       "x1+x3+x5-7.5, x2+x4+x5-9.5, x3+x4+x5-10.5)")
G_G = ["max(x1, x2-1, x3-2, x5-2.5)", "max(x1, x2-1, x4-3, x5-2.5)",
       "max(x1, x3-2, x4-3, x5-2.5)", "max(x2, x3-1, x4-2, x5-1.5)"]
QUAD = ("max(3x1-18, 3x2-45, 3x3-54, 3x4-81, x1+2x2-34, x1+2x3-34, x1+2x4-42, "
        "2x1+x2-25, 2x1+x3-22, 2x1+x4-21, x2+2x3-45, x2+2x4-53, 2x2+x3-42, 2x2+x4-41, "
        "x3+2x4-54, 2x3+x4-45, x1+x2+x3-31, x1+x2+x4-30, x1+x3+x4-29, x2+x3+x4-40)")
QUAD_G = ["max(x2, x3-11, x4-10)", "max(x1, x2-11, x3-15, x4-11)",
          "max(x1, x2-11, x3-12, x4-25)", "max(x1, x2-9, x3-8, x4-7)"]
F_Q = "max(2x1+2x2, x1+3x2-2, x1+x2+2x3-3, 3x1+x3-1, x1+2x2+x3-4, 4x1-3)"
G_Q = ["max(2x1, 2x3-10/3, x2+x3-2)", "max(x1+x3, 2x3-5/3, x2+x3-1/3)",
       "max(2x3, 2x2-1, x1+x3-2)", "max(2x1, 2x3-5, x1+x2-2)"]

# Primitive edge directions of plane curves of degree 2.
DEGREE2_EDGES = [(0, 1), (1, 0), (1, 1), (1, -2), (-2, 1), (1, -1)]

# The graph is K4 minus an edge; x5 is the diagonal, and {x1,x4,x5},
# {x2,x3,x5} are its triangles. The weights were not given directly: they
# are the unique solution of the eight tree-sum equations of F_G
# (see recover_tree_weights).
TREE_GRAPH_EDGES = [(0, 1), (0, 3), (2, 3), (1, 2), (0, 2)]
TREE_GRAPH_WEIGHTS = ["1", "2", "3", "4", "7/2"]

_SEGMENTS = [[(0, 0), (0, 1)], [(0, 0), (1, 0)], [(0, 0), (1, 1)],
             [(0, 1), (1, 0)], [(0, 2), (1, 0)], [(0, 1), (2, 0)]]
# Polygons whose outer normals point along (-1,0), (0,-1), (1,1), (1,-1), (-1,-2), (-2,-1)
# and the opposite choice, respectively; both lists end with the same six segments.
_FIG2 = [[(0, 0), (2, 0), (1, 1)], [(0, 0), (2, 0), (0, 1)], [(0, 0), (1, 0), (0, 2)],
         [(0, 0), (1, 0), (0, 1)], [(0, 0), (0, 1)], [(0, 0), (1, 0)], [(0, 0), (1, 1)],
         [(0, 1), (1, 0)], [(0, 2), (1, 0)], [(0, 1), (2, 0)]]
_FIG3 = [[(0, 0), (1, 0), (0, 1)], [(0, 0), (1, 1), (0, 2)], [(0, 1), (0, 2), (2, 0)],
         [(1, 0), (2, 0), (0, 2)]] + _SEGMENTS


def plane_basis(shapes: Sequence[Sequence[tuple[int, int]]], prefix: str) -> BasisSet:
    """Homogenise plane polygons to degree 2 with the new coordinate last."""
    polys = [homogenize_polytope(convex_hull(s), 2) for s in shapes]
    return build_basis(polys, [f"{prefix}{i + 1}" for i in range(len(polys))], homog_index=2)


def basis_fig2() -> BasisSet:
    return plane_basis(_FIG2, "P")


def basis_fig3() -> BasisSet:
    return plane_basis(_FIG3, "Q")


def tree_example_graph() -> WeightedGraph:
    return WeightedGraph(4, tuple((a, b, as_rational(w))
                                  for (a, b), w in zip(TREE_GRAPH_EDGES, TREE_GRAPH_WEIGHTS)))


def _poly_doc(f: TropicalPoly) -> dict:
    return {"kind": "poly", **f.to_json(), "text": format_poly(f)}


def _product_doc(units: Sequence[str], n: int) -> dict:
    polys = [parse_poly(u, n) for u in units]
    doc = _poly_doc(product([(u, 1) for u in polys], n))
    doc["factors"] = [{"text": format_poly(u), "multiplicity": 1} for u in polys]
    return doc


def _basis_doc(b: BasisSet) -> dict:
    return {"kind": "basis", **b.to_json()}


def _documents() -> dict[str, dict]:
    fg = parse_poly(F_G, 5)
    gg = product([(parse_poly(u, 5), 1) for u in G_G], 5)
    docs = {
        "fG": _poly_doc(fg),
        "gG": _product_doc(G_G, 5),
        "fG_times_gG": _poly_doc(multiply(fg, gg)),
        "quad_exa": _poly_doc(parse_poly(QUAD, 4)),
        "quad_g": _product_doc(QUAD_G, 4),
        "fq": _poly_doc(parse_poly(F_Q, 3)),
        "gq": _product_doc(G_Q, 3),
        "basis_fig2": _basis_doc(basis_fig2()),
        "basis_fig3": _basis_doc(basis_fig3()),
        "K3": _basis_doc(complete_graph_basis(3)),
        "K4": _basis_doc(complete_graph_basis(4)),
        "K5": _basis_doc(complete_graph_basis(5)),
        "eq51_edges": {"kind": "edges", "edges": [list(e) for e in DEGREE2_EDGES]},
        "tree_example_graph": {"kind": "graph", **tree_example_graph().to_json(),
                            "derivation": "weights solve the eight tree-sum equations of fG"},
    }
    return {k: {"schema": SCHEMA, "name": k, **v} for k, v in docs.items()}


def dumps(obj) -> str:
    """Canonical JSON text used for every file and CLI document."""
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=True) + "\n"


def generate_fixtures() -> dict[str, bytes]:
    """File name -> bytes for the whole corpus, manifest included."""
    files = {f"{k}.json": dumps(v).encode() for k, v in sorted(_documents().items())}
    manifest = {"schema": SCHEMA, "version": 1,
                "files": {name[:-5]: {"path": name, "sha256": hashlib.sha256(data).hexdigest()}
                          for name, data in files.items()}}
    files[MANIFEST] = dumps(manifest).encode()
    return files


def write_fixtures(directory: str | os.PathLike) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, data in generate_fixtures().items():
        path = out / name
        path.write_bytes(data)
        written.append(path)
    return written


# --------------------------------------------------------------------------
# loading
# --------------------------------------------------------------------------

def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else DATA_DIR


def fixture_names() -> list[str]:
    manifest = json.loads((fixture_dir() / MANIFEST).read_text())
    return sorted(manifest["files"])


def fixture_document(name: str) -> dict:
    """Raw JSON of a fixture after checking it against the manifest."""
    d = fixture_dir()
    try:
        manifest = json.loads((d / MANIFEST).read_text())
    except FileNotFoundError:
        raise FixtureError(f"no {MANIFEST} in {d}") from None
    entry = manifest["files"].get(name)
    if entry is None:
        known = ", ".join(sorted(manifest["files"]))
        raise FixtureError(f"unknown fixture {name!r}; known: {known}")
    data = (d / entry["path"]).read_bytes()
    if hashlib.sha256(data).hexdigest() != entry["sha256"]:
        raise FixtureError(f"checksum mismatch for fixture {name!r}")
    return json.loads(data)


def from_document(doc: dict):
    kind = doc.get("kind")
    if kind == "poly":
        return TropicalPoly.from_json(doc)
    if kind == "basis":
        return BasisSet.from_json(doc)
    if kind == "edges":
        return [tuple(e) for e in doc["edges"]]
    if kind == "graph":
        return WeightedGraph.from_json(doc)
    raise FixtureError(f"unknown fixture kind {kind!r}")


def load_fixture(name: str):
    """Polynomial, basis, edge list or graph stored under ``name``."""
    return from_document(fixture_document(name))


def load_factors(name: str) -> list[tuple[TropicalPoly, int]]:
    """The listed factors of a product fixture such as ``gG``."""
    doc = fixture_document(name)
    if "factors" not in doc:
        raise FixtureError(f"fixture {name!r} has no factor list")
    n = doc["n"]
    return [(parse_poly(f["text"], n), int(f["multiplicity"])) for f in doc["factors"]]
