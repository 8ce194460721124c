import hashlib
import json

import pytest

import reference
from helpers import parse_all
from tropfactor import (
    BasisSet,
    FixtureError,
    TropicalPoly,
    check_positive_basis,
    is_unit,
    load_fixture,
    parse_poly,
    product,
)
from tropfactor.fixtures import (
    DATA_DIR,
    FIXTURE_ENV,
    MANIFEST,
    WeightedGraph,
    tree_example_graph,
    fixture_names,
    generate_fixtures,
    load_factors,
    recover_tree_weights,
    spanning_tree_polynomial,
    write_fixtures,
)


def test_shipped_files_match_the_generator():
    for name, data in generate_fixtures().items():
        assert (DATA_DIR / name).read_bytes() == data, name


def test_manifest_checksums():
    manifest = json.loads((DATA_DIR / MANIFEST).read_text())
    for entry in manifest["files"].values():
        data = (DATA_DIR / entry["path"]).read_bytes()
        assert hashlib.sha256(data).hexdigest() == entry["sha256"]


def test_every_fixture_loads():
    for name in fixture_names():
        assert load_fixture(name) is not None


def test_env_override_and_tampering(tmp_path, monkeypatch):
    write_fixtures(tmp_path)
    monkeypatch.setenv(FIXTURE_ENV, str(tmp_path))
    assert load_fixture("fq") == parse_poly(reference.FQ)
    path = tmp_path / "fq.json"
    path.write_text(path.read_text().replace("-3", "-4"))
    with pytest.raises(FixtureError, match="checksum"):
        load_fixture("fq")


def test_unknown_name():
    with pytest.raises(FixtureError, match="unknown fixture"):
        load_fixture("nope")


def test_missing_manifest(tmp_path, monkeypatch):
    monkeypatch.setenv(FIXTURE_ENV, str(tmp_path))
    with pytest.raises(FixtureError):
        load_fixture("fq")


def test_triangle_spanning_trees():
    g = WeightedGraph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 1)))
    f = spanning_tree_polynomial(g)
    assert len(f.terms) == 3 and {c for _, c in f.terms} == {-2}
    assert is_unit(f)


def test_a_tree_gives_a_monomial():
    g = WeightedGraph(4, ((0, 1, 1), (1, 2, 2), (1, 3, 3)))
    assert spanning_tree_polynomial(g) == TropicalPoly.monomial((1, 1, 1), -6)


def test_disconnected_graph_is_rejected():
    with pytest.raises(ValueError):
        spanning_tree_polynomial(WeightedGraph(4, ((0, 1, 1), (2, 3, 1))))
    with pytest.raises(ValueError):
        WeightedGraph(2, ((0, 0, 1),))


def test_tree_example_graph():
    g = tree_example_graph()
    fg = spanning_tree_polynomial(g)
    assert fg == parse_poly(" , ".join(reference.FG_TERMS).join(["max(", ")"]), 5)
    assert len(fg.terms) == 8 and is_unit(fg)
    assert fg == load_fixture("fG")
    assert load_fixture("tree_example_graph") == g


def test_weights_are_recovered_from_the_polynomial():
    g = tree_example_graph()
    edges = [(a, b) for a, b, _ in g.edges]
    assert recover_tree_weights(4, edges, load_fixture("fG")) == g
    with pytest.raises(ValueError):
        recover_tree_weights(4, edges, parse_poly("max(x1+x2+x3, x1+x2+x4)", 5))


def test_corpus_contents():
    assert load_fixture("fq") == parse_poly(reference.FQ)
    assert set(load_fixture("eq51_edges")) == reference.DEGREE2_EDGES
    k3 = load_fixture("K3")
    assert isinstance(k3, BasisSet) and check_positive_basis(k3).ok
    gg = load_factors("gG")
    assert len(gg) == 4 and load_fixture("gG") == product(gg, 5)
    assert load_fixture("fG_times_gG").n == 5
    with pytest.raises(FixtureError):
        load_factors("fq")


def test_quad_g_denominator():
    units = [u for u, _ in load_factors("quad_g")]
    assert units == parse_all(reference.QUAD_DENOMINATOR, 4)
    assert all(is_unit(u) for u in units)
