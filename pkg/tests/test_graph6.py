import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from phoeg.errors import (
    Graph6CharacterError,
    Graph6HeaderError,
    Graph6LengthError,
    Graph6PaddingError,
)
from phoeg.graph import Graph
from phoeg.graph6 import decode, encode, encoded_length


@st.composite
def graphs(draw, max_n=20):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def test_known_encodings():
    assert encode(Graph.complete(3)) == "Bw"
    assert encode(Graph.empty(1)) == "@"
    assert encode(Graph.path(4)) == "Ch"
    assert decode("Bw") == Graph.complete(3)


@given(graphs())
@settings(max_examples=200)
def test_round_trip(g):
    text = encode(g)
    assert len(text) == encoded_length(g.n)
    assert decode(text) == g


@given(graphs(max_n=62))
@settings(max_examples=50)
def test_matches_reference_decoder(g):
    n, edges = oracles.g6_decode(encode(g))
    assert n == g.n and edges == set(g.edges())


def test_header_prefix_is_accepted():
    assert decode(">>graph6<<Bw") == Graph.complete(3)


@pytest.mark.parametrize(
    "text, err",
    [
        ("", Graph6HeaderError),
        ("~??", Graph6HeaderError),
        ("B", Graph6LengthError),
        ("Bww", Graph6LengthError),
        ("B ", Graph6CharacterError),
        ("B\x7f", Graph6CharacterError),
        ("Bx", Graph6PaddingError),
    ],
)
def test_malformed(text, err):
    with pytest.raises(err):
        decode(text)


def test_random_sample_against_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 40)
        g = Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.3])
        h = nx.from_graph6_bytes(encode(g).encode())
        assert sorted(h.edges()) == sorted(g.edges())
