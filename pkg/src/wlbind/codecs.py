"""graph6 and adjacency-list text codecs for simple graphs."""
from __future__ import annotations

from .graphs import EDGE, SimpleGraph

_HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class AdjlistError(ValueError):
    """Malformed adjacency-list input; carries the line number of the defect."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"{message} (line {line})")
        self.line = line


def parse_graph6(data: bytes | str) -> SimpleGraph:
    """Decode one graph6 record into a SimpleGraph.

    Accepts the optional '>>graph6<<' prefix and ignores surrounding
    whitespace. Everything else is validated: byte range, header form,
    and the exact padded bit length.
    """
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    raw = data.strip()
    if raw.startswith(_HEADER):
        raw = raw[len(_HEADER):]
    if not raw:
        raise Graph6Error("empty graph6 record", 0)
    for off, b in enumerate(raw):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside graph6 range [63, 126]", off)

    pos = 0
    if raw[0] != 126:
        n = raw[0] - 63
        pos = 1
    else:
        if len(raw) >= 2 and raw[1] != 126:
            if len(raw) < 4:
                raise Graph6Error("truncated 3-byte order field", len(raw))
            n = ((raw[1] - 63) << 12) | ((raw[2] - 63) << 6) | (raw[3] - 63)
            pos = 4
        else:
            if len(raw) < 8:
                raise Graph6Error("truncated 6-byte order field", len(raw))
            n = 0
            for k in range(2, 8):
                n = (n << 6) | (raw[k] - 63)
            pos = 8
    if n < 1:
        raise Graph6Error(f"order {n} unsupported (need n >= 1)", 0)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = raw[pos:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} body bytes for order {n}, got {len(body)}", pos + min(len(body), nbytes)
        )

    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise Graph6Error("non-zero padding bits", pos + nbits // 6)

    m = [[0] * n for _ in range(n)]
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                m[i][j] = EDGE
                m[j][i] = EDGE
            k += 1
    return SimpleGraph(tuple(tuple(r) for r in m))


def encode_graph6(g: SimpleGraph) -> bytes:
    """Encode a SimpleGraph as one graph6 record (no trailing newline)."""
    n = g.order
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    elif n <= 258047:
        out.append(126)
        out.append(((n >> 12) & 63) + 63)
        out.append(((n >> 6) & 63) + 63)
        out.append((n & 63) + 63)
    else:
        raise ValueError(f"order {n} too large for this encoder")

    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.rows[i][j] == EDGE else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out)


def parse_adjlist(text: str) -> SimpleGraph:
    """Parse the 'n\\nu v\\n...' edge-list format with 1-based vertices."""
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise AdjlistError("missing order line", 1)
    try:
        n = int(lines[idx].strip())
    except ValueError:
        raise AdjlistError(f"order line is not an integer: {lines[idx]!r}", idx + 1) from None
    if n < 1:
        raise AdjlistError(f"order {n} unsupported (need n >= 1)", idx + 1)

    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for lineno in range(idx + 1, len(lines)):
        line = lines[lineno].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise AdjlistError(f"expected 'u v', got {line!r}", lineno + 1)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise AdjlistError(f"non-integer endpoint in {line!r}", lineno + 1) from None
        if u == v:
            raise AdjlistError(f"self-loop at vertex {u}", lineno + 1)
        if not (1 <= u <= n and 1 <= v <= n):
            raise AdjlistError(f"edge ({u},{v}) out of range for order {n}", lineno + 1)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise AdjlistError(f"duplicate edge ({u},{v})", lineno + 1)
        seen.add(key)
        edges.append(key)
    return SimpleGraph.from_edges(n, edges)


def emit_adjlist(g: SimpleGraph) -> str:
    lines = [str(g.order)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
