"""graph6 encoding for simple graphs of order at most 62."""

from __future__ import annotations

from .graph import MultiGraph, UnsupportedGraphError


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _pairs(n: int):
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def to_graph6(g: MultiGraph) -> str:
    if not g.is_simple:
        raise UnsupportedGraphError("graph6 cannot encode parallel edges")
    if g.n > 62:
        raise UnsupportedGraphError("graph6 support is limited to n <= 62")
    bits = [g.mult[i][j] for i, j in _pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def parse_graph6(s: str) -> MultiGraph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
        base = len(">>graph6<<")
    else:
        base = 0
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 character {ch!r}", base + k)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("orders above 62 are not supported", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = s[1:]
    if len(payload) < need:
        raise Graph6Error(f"truncated payload: need {need} bytes, got {len(payload)}",
                          base + 1 + len(payload))
    if len(payload) > need:
        raise Graph6Error("trailing bytes after payload", base + 1 + need)
    bits = []
    for ch in payload:
        val = ord(ch) - 63
        bits.extend((val >> (5 - t)) & 1 for t in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", base + len(s) - 1)
    edges = [(i, j) for (i, j), b in zip(_pairs(n), bits) if b]
    return MultiGraph.from_edges(n, edges)
