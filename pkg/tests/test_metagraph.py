import networkx as nx
import numpy as np
import pytest

import oracles
from phoeg import transform as tr
from phoeg.errors import OrderError, UnknownSignatureError
from phoeg.graph import Graph
from phoeg.graph6 import decode, encode
from phoeg.metagraph import ARC_DTYPE, Metagraph, build_and_save, rederive


@pytest.fixture(scope="module")
def mg4():
    return Metagraph.build(4, "all", "all")


def test_record_layout():
    assert ARC_DTYPE.itemsize == 13


def test_vertex_counts():
    assert len(Metagraph.build(5, "all", "all").signatures) == 34
    assert len(Metagraph.build(5, "connected", "all").signatures) == 21


def test_count_modes_ordered():
    for n in range(1, 6):
        mg = Metagraph.build(n, "all", "all")
        for self_arcs in (True, False):
            raw = mg.count("raw", self_arcs)
            trip = mg.count("per-triple", self_arcs)
            pair = mg.count("per-pair", self_arcs)
            assert pair <= trip <= raw


def test_empty_subset():
    mg = Metagraph.build(4, "all", [])
    assert mg.count("raw") == 0 and mg.count("per-pair") == 0


def test_n2_counts():
    mg = Metagraph.build(2, "all", "all")
    assert mg.count("raw") == 2
    (arc,) = mg.neighbors(encode(Graph.complete(2)), "out")
    assert arc.tid == "remove_edge" and arc.dst == encode(Graph.empty(2))


def test_pairs_match_naive_builder(mg4):
    reps = oracles.atlas(4)

    def index(h):
        (i,) = [k for k, r in enumerate(reps) if nx.is_isomorphic(h, r)]
        return i

    naive = set()
    for i, r in enumerate(reps):
        for _, edges in oracles.naive_moves(4, set(r.edges())):
            naive.add((i, index(oracles.to_nx(4, edges))))
    ids = [index(oracles.to_nx(*oracles.g6_decode(s))) for s in mg4.signatures]
    ours = {(ids[s], ids[d]) for s, d in mg4.pairs(self_arcs=True)}
    assert ours == naive


def test_remove_edge_is_deletion_poset_cover():
    mg = Metagraph.build(4, "all", "remove_edge")
    pairs = mg.pairs()
    sigs = mg.signatures
    for s, d in pairs:
        g, h = decode(sigs[s]), decode(sigs[d])
        assert h.num_edges == g.num_edges - 1
    expected = set()
    for s, sig in enumerate(sigs):
        g = oracles.to_nx(*oracles.g6_decode(sig))
        for e in list(g.edges()):
            h = g.copy()
            h.remove_edge(*e)
            for d, other in enumerate(sigs):
                if nx.is_isomorphic(h, oracles.to_nx(*oracles.g6_decode(other))):
                    expected.add((s, d))
    assert pairs == expected


def test_every_arc_rederives(mg4):
    assert all(rederive(mg4, rec) for rec in mg4.arcs)


def test_in_out_symmetry():
    mg = Metagraph.build(5, "all", "remove_edge,add_edge")
    for sig in mg.signatures:
        for a in mg.neighbors(sig, "out", ["remove_edge"]):
            assert sig in {b.dst for b in mg.neighbors(a.dst, "out", ["add_edge"])}
            assert a.dst in {b.src for b in mg.neighbors(sig, "in", ["add_edge"])}


def test_two_opt_filter_preserves_degrees():
    mg = Metagraph.build(6, "all", "two_opt")
    for sig in mg.signatures[::7]:
        for a in mg.neighbors(sig, "out", ["two_opt"]):
            assert sorted(decode(a.src).degrees()) == sorted(decode(a.dst).degrees())


def test_unknown_signature(mg4):
    with pytest.raises(UnknownSignatureError):
        mg4.neighbors("Bw", "out")


def test_order_limit():
    with pytest.raises(OrderError):
        Metagraph.build(10)


def test_save_load_deterministic(tmp_path, mg4):
    a = build_and_save(4, "all", "all", tmp_path / "a")
    build_and_save(4, "all", "all", tmp_path / "b")
    for f in ("meta.json", "signatures.g6", "arcs.bin", "index.bin"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    back = Metagraph.load(tmp_path / "a")
    assert back.signatures == a.signatures
    assert np.array_equal(back.arcs, a.arcs)
    assert back.count("per-pair") == mg4.count("per-pair")


def test_arcs_sorted(mg4):
    keys = [(int(r["src"]), int(r["tid"]), tuple(int(x) for x in r["params"])) for r in mg4.arcs]
    assert keys == sorted(keys)


def test_workers_same_arcs():
    a = Metagraph.build(6, "all", "all", workers=1)
    b = Metagraph.build(6, "all", "all", workers=2)
    assert np.array_equal(a.arcs, b.arcs)


def test_exports(mg4):
    dot = mg4.to_dot()
    assert dot.startswith("digraph") and "remove_edge" in dot
    rows = list(mg4.csv_rows())
    assert len(rows) == len(mg4)
    assert sum(mg4.counts_by_transformation().values()) == len(mg4)
    assert set(mg4.counts_by_transformation()) == set(tr.NAMES)


def test_connected_class_drops_outgoing():
    mg = Metagraph.build(5, "connected", "all")
    for rec in mg.arcs[:200]:
        assert rederive(mg, rec)
    assert "remove_edge" in mg.transformations
