import os
import subprocess
import sys

import networkx as nx
import pytest

import oracles
from phoeg.enumerate import canonical_keys, check_order, count, enumerate_all, enumerate_signatures, unpack_key
from phoeg.errors import OrderError
from phoeg.invariants import is_connected

COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


@pytest.mark.parametrize("n", sorted(COUNTS))
def test_counts(n):
    assert count(n) == COUNTS[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_connected_counts(n):
    assert count(n, is_connected) == CONNECTED[n]


@pytest.mark.parametrize("n", range(1, 7))
def test_matches_atlas_up_to_isomorphism(n):
    ours = [oracles.to_nx(g.n, g.edges()) for g in enumerate_all(n)]
    ref = oracles.atlas(n)
    assert len(ours) == len(ref)
    for h in ref:
        assert sum(nx.is_isomorphic(h, g) for g in ours) == 1


def test_sorted_and_deterministic():
    keys = canonical_keys(7)
    assert (keys[1:] > keys[:-1]).all()
    sigs = list(enumerate_signatures(7))
    assert sigs == sorted(sigs)
    assert unpack_key(7, int(keys[0])).num_edges == 0


def test_order_bounds():
    with pytest.raises(OrderError):
        check_order(0)
    with pytest.raises(OrderError):
        list(enumerate_all(99))


def test_pure_python_fallback_counts():
    env = dict(os.environ, PHOEG_PURE_PYTHON="1")
    code = (
        "from phoeg.canon import BACKEND; from phoeg.enumerate import count;"
        "print(BACKEND, [count(n) for n in range(1, 7)])"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    assert out.split(" ", 1)[0] == "python"
    assert out.split(" ", 1)[1].strip() == "[1, 2, 4, 11, 34, 156]"


def test_workers_do_not_change_output():
    from phoeg import enumerate as en

    en._cache.pop(8, None)
    a = en.canonical_keys(8, workers=1).copy()
    en._cache.pop(8, None)
    b = en.canonical_keys(8, workers=2)
    assert (a == b).all()
