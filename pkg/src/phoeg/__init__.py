"""Exhaustive small-graph enumeration, exact invariants, hull conjectures,
obstruction sets and a metagraph of graph transformations."""

__version__ = "0.1.0"

from .canon import BACKEND, canonical_form, is_isomorphic, signature
from .enumerate import enumerate_all, enumerate_signatures
from .graph import Graph
from .graph6 import decode, encode

__all__ = [
    "BACKEND",
    "Graph",
    "__version__",
    "canonical_form",
    "decode",
    "encode",
    "enumerate_all",
    "enumerate_signatures",
    "is_isomorphic",
    "signature",
]
