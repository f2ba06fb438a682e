import random

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from phoeg.canon import canonical_form, is_isomorphic, isomorphism, signature
from phoeg.enumerate import enumerate_all
from phoeg.graph import Graph
from phoeg.graph6 import encode


@st.composite
def graph_and_perm(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    return Graph.from_edges(n, edges), list(perm)


@given(graph_and_perm())
@settings(max_examples=300)
def test_signature_is_relabeling_invariant(gp):
    g, perm = gp
    assert signature(g) == signature(g.permute(perm))


@given(graph_and_perm())
@settings(max_examples=200)
def test_canonical_form_permutation(gp):
    g, _ = gp
    c, perm = canonical_form(g)
    assert g.permute(perm) == c
    assert encode(c) == signature(g)


def test_signature_is_fixed_point():
    for g in enumerate_all(6):
        assert signature(g) == encode(g)


def test_regular_graphs_distinguished():
    # same degree sequence, not isomorphic
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    k33 = Graph.complete_bipartite(3, 3)
    assert not is_isomorphic(prism, k33)
    petersen = Graph.from_edges(10, nx.petersen_graph().edges())
    assert signature(petersen) == signature(petersen.permute([3, 1, 4, 0, 5, 9, 2, 6, 8, 7]))


def test_isomorphism_agrees_with_networkx():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 8)
        m = rng.randint(0, n * (n - 1) // 2)
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        g = Graph.from_edges(n, rng.sample(pairs, m))
        h = Graph.from_edges(n, rng.sample(pairs, m))
        expected = nx.is_isomorphic(oracles.to_nx(n, g.edges()), oracles.to_nx(n, h.edges()))
        assert is_isomorphic(g, h) == expected
        phi = isomorphism(g, h)
        assert (phi is not None) == expected
        if phi is not None:
            assert g.permute(phi) == h
