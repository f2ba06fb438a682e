import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from phoeg import hull
from phoeg.store import Store, cloud_from_values

coords = st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=1, max_size=40)


@given(coords)
@settings(max_examples=300)
def test_hull_matches_brute_force(pts):
    h = hull.convex_hull(pts)
    assert set(h) == oracles.convex_hull_vertices(pts)


@given(coords)
@settings(max_examples=200)
def test_facets_sound_and_tight(pts):
    h = hull.convex_hull(pts)
    fs = hull.facets(h, pts)
    if len(h) >= 2:
        assert len(fs) == (2 if len(h) == 2 else len(h))
    for f in fs:
        assert all(f.holds(*p) for p in pts)
        assert len(f.tight) >= 2
        assert f.a > 0 or (f.a == 0 and f.b > 0)


def test_hull_is_ccw_from_lowest_leftmost():
    pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)]
    assert hull.convex_hull(pts) == [(0, 0), (2, 0), (2, 2), (0, 2)]


def test_degenerate():
    assert hull.convex_hull([(3, 3), (3, 3)]) == [(3, 3)]
    assert hull.convex_hull([(0, 0), (1, 1), (2, 2)]) == [(0, 0), (2, 2)]


def test_normalize():
    assert hull.normalize(-2, 4, -6) == (1, -2, 3, ">=")
    assert hull.normalize(0, -3, 9) == (0, 1, -3, ">=")
    assert hull.normalize(4, 2, 8) == (2, 1, 4, "<=")
    with pytest.raises(ValueError):
        hull.normalize(0, 0, 0)


def test_coordinate_bound():
    with pytest.raises(OverflowError):
        hull.convex_hull([(0, 0), (10**12, 1), (1, 10**12)])


def test_bound_text():
    f = hull.Facet(1, -1, 21, "<=")
    assert f.bound_text("eci", "m") == "eci <= m + 21"
    assert f.linear_text("eci", "m") == "eci - m <= 21"


@pytest.fixture(scope="module")
def store7(tmp_path_factory):
    st = Store(tmp_path_factory.mktemp("h"))
    st.build(7, "connected", ["eci", "num_edges"])
    return st


def test_sample_problem_report(store7):
    rep = hull.conjecture_report(store7, "eci", "num_edges", "connected", [5, 6, 7])
    for o in rep.orders:
        pts = [(p.x, p.y) for p in o.cloud.points]
        assert set(o.hull) == oracles.convex_hull_vertices(pts)
        for v in o.hull:
            assert o.vertex_witnesses[v]
    assert "for all connected graphs, n = 7" in rep.text()
    data = json.loads(hull.dumps_json(rep))
    assert [d["n"] for d in data["orders"]] == [5, 6, 7]
    for s in rep.stability:
        assert s["kind"] in ("identical", "parallel")


def test_tikz_and_csv(store7):
    rep = hull.order_report(store7, "eci", "num_edges", "connected", 7)
    tikz = hull.to_tikz(rep, "eci", "num_edges")
    assert tikz.count("\\addplot") == 2 and "\\end{tikzpicture}" in tikz
    rows = hull.to_csv_rows(rep)
    assert sum(r[3] for r in rows) == 853
    assert sum(r[4] for r in rows) == len(rep.hull)


def test_cloud_from_values():
    rng = random.Random(1)
    vals = [(f"s{i}", rng.randint(0, 5), rng.randint(0, 5)) for i in range(100)]
    cloud = cloud_from_values("x", "y", vals)
    assert cloud.total() == 100
    assert set(hull.convex_hull(cloud)) == oracles.convex_hull_vertices([(x, y) for _, x, y in vals])
