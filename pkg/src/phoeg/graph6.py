"""graph6 codec restricted to single-byte order headers (n <= 62).

The order byte is ``63 + n``.  The upper-triangle adjacency bits are written
column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), padded with zeros to a
multiple of six, and each 6-bit group is emitted as ``63 + value``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .errors import (
    Graph6CharacterError,
    Graph6HeaderError,
    Graph6LengthError,
    Graph6PaddingError,
    OrderError,
)
from .graph import MAX_ORDER, Graph


def encoded_length(n: int) -> int:
    return 1 + (n * (n - 1) // 2 + 5) // 6


def encode(g: Graph) -> str:
    n = g.n
    if not 1 <= n <= MAX_ORDER:
        raise OrderError(f"graph6 order header supports 1..{MAX_ORDER}, got {n}")
    rows = g.rows
    out = [chr(63 + n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = rows[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode(text: str) -> Graph:
    if text.startswith(">>graph6<<"):
        text = text[10:]
    if not text:
        raise Graph6HeaderError("empty graph6 string")
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6CharacterError(f"byte {ord(ch)!r} at position {pos} is outside the graph6 range 63..126")
    n = ord(text[0]) - 63
    if n == 63:
        raise Graph6HeaderError("multi-byte order headers (n > 62) are not supported")
    if not 1 <= n <= MAX_ORDER:
        raise Graph6HeaderError(f"order byte encodes n={n}; supported orders are 1..{MAX_ORDER}")
    expected = encoded_length(n)
    if len(text) != expected:
        raise Graph6LengthError(f"graph6 string for n={n} must have {expected} bytes, got {len(text)}")
    rows = [0] * n
    data = text[1:]
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (ord(data[k // 6]) - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if k % 6:
        pad = (ord(data[-1]) - 63) & ((1 << (6 - k % 6)) - 1)
        if pad:
            raise Graph6PaddingError("nonzero padding bits in the final graph6 byte")
    return Graph._trusted(n, rows)


def read_lines(stream: TextIO) -> Iterator[Graph]:
    """Decode one graph per non-blank line."""
    for line in stream:
        line = line.strip()
        if line:
            yield decode(line)


def write_lines(stream: TextIO, signatures: Iterable[str]) -> None:
    for s in signatures:
        stream.write(s)
        stream.write("\n")
