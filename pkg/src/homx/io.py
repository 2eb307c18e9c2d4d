"""graph6 lines for source graphs and the target-graph document format.

graph6 packs ``n`` into a size header and the upper triangle of the
adjacency matrix, column by column (``(0,1), (0,2), (1,2), (0,3), ...``),
into 6-bit groups offset by 63.

A target document is JSON::

    {"q": 2, "adj": ["01", "11"], "weights": ["1", "2/3"]}

``weights`` is optional. The inline form joins the rows with ``/``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Iterable, Iterator

from .errors import FormatError, ParameterError
from .graphs import SimpleGraph, TargetGraph

HEADER = ">>graph6<<"


def _encode_size(n: int) -> list[int]:
    if n < 63:
        return [n + 63]
    if n < 258048:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    if n < 1 << 36:
        return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    raise ParameterError(f"graph too large for graph6: n={n}")


def write_graph6(g: SimpleGraph) -> str:
    out = _encode_size(g.n)
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise FormatError("empty graph6 string", offset=0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 36-bit size header", offset=len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated 18-bit size header", offset=len(data))
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def parse_graph6(text: str | bytes) -> SimpleGraph:
    if isinstance(text, str):
        try:
            data = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise FormatError("non-ASCII character", offset=exc.start) from None
    else:
        data = bytes(text)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
        base = len(HEADER)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b!r} outside graph6 range 63..126", offset=base + i)
    n, pos = _decode_size(data)
    nbits = n * (n - 1) // 2
    expected = pos + (nbits + 5) // 6
    if len(data) != expected:
        raise FormatError(
            f"length {len(data)} does not match n={n} (expected {expected})",
            offset=base + min(len(data), expected),
        )
    adj = [0] * n
    k = 0
    i, j = 0, 1
    for b in data[pos:]:
        v = b - 63
        for s in range(5, -1, -1):
            if k >= nbits:
                break
            if v >> s & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                j += 1
                i = 0
    return SimpleGraph.from_masks(adj)


def read_graph6_stream(stream: IO[str] | Iterable[str], with_lines: bool = False) -> Iterator:
    """Yield graphs from a graph6 stream; blank lines are skipped.

    With ``with_lines=True`` yields ``(line number, graph)`` pairs.
    """
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            g = parse_graph6(line)
        except FormatError as exc:
            raise FormatError(str(exc), line=lineno) from None
        yield (lineno, g) if with_lines else g


# -- target graphs ------------------------------------------------------------


def _parse_weight(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad weight {text!r}") from None


def parse_weights(text: str) -> list[Fraction]:
    return [_parse_weight(t) for t in text.split(",")]


def target_from_document(doc: dict) -> TargetGraph:
    if not isinstance(doc, dict) or "adj" not in doc:
        raise FormatError("target document needs an 'adj' field")
    rows = doc["adj"]
    if isinstance(rows, str):
        rows = rows.split("/")
    q = doc.get("q", len(rows))
    if q != len(rows):
        raise FormatError(f"q={q} but {len(rows)} adjacency rows")
    weights = doc.get("weights")
    if weights is not None:
        weights = [_parse_weight(w) for w in weights]
    return TargetGraph([str(r) for r in rows], weights)


def target_to_document(h: TargetGraph) -> dict:
    doc = {"q": h.q, "adj": h.inline().split("/")}
    if not h.is_unweighted:
        doc["weights"] = [str(w) for w in h.weights]
    return doc


def load_target(path: str) -> TargetGraph:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc.msg}", offset=exc.pos) from None
    return target_from_document(doc)
