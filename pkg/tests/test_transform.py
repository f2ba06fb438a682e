import itertools

import pytest

import oracles
from phoeg import transform as tr
from phoeg.canon import is_isomorphic, signature
from phoeg.enumerate import enumerate_all
from phoeg.errors import ParameterError
from phoeg.graph import Graph
from phoeg.invariants import is_connected


def _apps(g, name):
    return [p for p, _ in tr.enumerate_applications(g, name)]


def test_registry_order():
    assert tr.NAMES == (
        "remove_edge", "add_edge", "rotation", "move_edge", "detour", "shortcut", "two_opt", "slide",
    )
    assert [t.tid for t in tr.TRANSFORMATIONS] == list(range(8))


def test_small_examples():
    assert _apps(Graph.empty(2), "add_edge") == [(0, 1)]
    assert sorted(_apps(Graph.path(3), "rotation")) == [(0, 1, 2), (2, 1, 0)]
    assert len(_apps(Graph.complete(4), "remove_edge")) == 6


def test_precondition_errors():
    with pytest.raises(ParameterError, match="precondition"):
        tr.apply(Graph.complete(3), "rotation", (0, 1, 2))
    with pytest.raises(ParameterError):
        tr.apply(Graph.path(3), "rotation", (0, 1))
    with pytest.raises(ParameterError):
        tr.apply(Graph.path(3), "remove_edge", (0, 7))
    with pytest.raises(ParameterError):
        tr.get("teleport")
    # shortcut needs ab absent
    with pytest.raises(ParameterError):
        tr.apply(Graph.complete(3), "shortcut", (0, 1, 2))


def test_parse_subset():
    assert [t.name for t in tr.parse_subset("slide,add_edge")] == ["add_edge", "slide"]
    assert len(tr.parse_subset("all")) == 8


def test_every_application_passes_its_check():
    for n in range(1, 6):
        for g in enumerate_all(n):
            for t in tr.TRANSFORMATIONS:
                for p in t.applications(g):
                    t.check(g, p)


def test_canonical_tuples_cover_naive_moves():
    """Every vertex-tuple application is isomorphic to some canonical application, and vice versa."""
    for n in range(1, 6):
        for g in enumerate_all(n):
            for t in tr.TRANSFORMATIONS:
                ours = {signature(h) for _, h in tr.enumerate_applications(g, t.tid)}
                naive = {
                    signature(Graph.from_edges(n, e))
                    for name, e in oracles.naive_moves(n, set(g.edges()))
                    if name == t.name
                }
                assert ours == naive, (t.name, g)


def test_inverse_round_trip():
    for n in range(1, 7):
        for g in enumerate_all(n):
            for t in tr.TRANSFORMATIONS:
                for params, h in tr.enumerate_applications(g, t.tid):
                    name, inv = tr.inverse(t.tid, params)
                    assert is_isomorphic(tr.apply(h, name, inv), g)


def test_slide_preserves_connectivity_n7():
    for g in enumerate_all(7, is_connected):
        for _, h in tr.enumerate_applications(g, "slide"):
            assert is_connected(h)


def test_two_opt_canonical():
    p = (3, 1, 0, 2)
    reps = {tr.two_opt_canonical(q) for q in [(3, 1, 0, 2), (1, 3, 2, 0), (0, 2, 3, 1), (2, 0, 1, 3)]}
    assert reps == {tr.two_opt_canonical(p)} == {(0, 2, 3, 1)}


def test_no_duplicate_edits():
    for g in enumerate_all(5):
        for t in tr.TRANSFORMATIONS:
            edits = []
            for p in t.applications(g):
                rem, add = t.edit(p)
                edits.append((frozenset(map(frozenset, rem)), frozenset(map(frozenset, add))))
            assert len(edits) == len(set(edits)), t.name


def test_m_delta():
    for g in itertools.islice(enumerate_all(6), 60):
        for t in tr.TRANSFORMATIONS:
            for _, h in tr.enumerate_applications(g, t.tid):
                assert h.num_edges - g.num_edges == t.m_delta
