"""graph6 codec.

Bit-exact with the nauty format: an N(n) size header followed by the upper
triangle of the adjacency matrix in column order (0,1),(0,2),(1,2),(0,3),...
packed big-endian into 6-bit groups, each offset by 63.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

import numpy as np

from .graph import Graph

HEADER = b">>graph6<<"
_MAX_N = 68719476735  # 2**36 - 1


class Graph6Error(ValueError):
    """Malformed graph6 input."""


class Graph6TruncatedError(Graph6Error):
    """Fewer data bytes than the header requires."""


def _encode_n(n: int) -> bytes:
    if n < 0 or n > _MAX_N:
        raise Graph6Error(f"n={n} out of range for graph6")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, number of header bytes consumed)."""
    if not data:
        raise Graph6TruncatedError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6TruncatedError("truncated 8-byte size header")
        body = data[2:8]
    else:
        if len(data) < 4:
            raise Graph6TruncatedError("truncated 4-byte size header")
        body = data[1:4]
    n = 0
    for b in body:
        n = (n << 6) | (b - 63)
    return n, len(body) + (2 if len(body) == 6 else 1)


def _upper_mask(n: int) -> tuple[np.ndarray, np.ndarray]:
    # column order: for j, for i < j
    j, i = np.tril_indices(n, -1)
    return i, j


def parse_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    bad = [b for b in data if not 63 <= b <= 126]
    if bad:
        raise Graph6Error(f"byte {bad[0]!r} outside the printable graph6 range 63..126")
    n, off = _decode_n(data)
    if n < 1:
        raise Graph6Error("graph6 with zero vertices is not supported")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[off:]
    if len(body) < nbytes:
        raise Graph6TruncatedError(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    if len(body) > nbytes:
        raise Graph6Error(f"{len(body) - nbytes} trailing bytes after graph6 data for n={n}")
    sextets = np.frombuffer(body, dtype=np.uint8) - 63
    bits = np.unpackbits(sextets[:, None], axis=1)[:, 2:].ravel()[:nbits].astype(bool)
    a = np.zeros((n, n), dtype=bool)
    i, j = _upper_mask(n)
    a[i, j] = bits
    a[j, i] = bits
    return Graph(a)


def encode_graph6(g: Graph) -> bytes:
    n = g.n
    i, j = _upper_mask(n)
    bits = g.adjacency[i, j].astype(np.uint8)
    pad = -len(bits) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ (1 << np.arange(5, -1, -1)) + 63
    return _encode_n(n) + bytes(vals.astype(np.uint8).tolist())


def iter_graph6_lines(text: bytes) -> Iterator[tuple[int, Graph]]:
    """Yield (line number, graph) for every non-blank line of a graph6 file."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line.startswith(HEADER):
            line = line[len(HEADER):]
        if not line:
            continue
        try:
            yield lineno, parse_graph6(line)
        except Graph6Error as e:
            raise type(e)(f"line {lineno}: {e}") from None


def read_graph6_file(path: str | Path) -> list[Graph]:
    return [g for _, g in iter_graph6_lines(Path(path).read_bytes())]


def write_graph6_file(path: str | Path, graphs) -> None:
    Path(path).write_bytes(b"".join(encode_graph6(g) + b"\n" for g in graphs))
