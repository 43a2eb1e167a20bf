"""graph6 and edge-list codecs, and JSON/CSV writers for result records."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import InvalidInputError, ParseError
from .graph import SimpleGraph

RESULT_FIELDS = ("graph", "n", "m", "laman_number")
STATS_FIELDS = ("nodes_visited", "memo_hits", "seconds")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (vertex count, header length)."""
    if not data:
        raise ParseError("empty graph6 string", offset=0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated 36-bit vertex count", offset=len(data))
        groups, head = data[2:8], 8
    else:
        if len(data) < 4:
            raise ParseError("truncated 18-bit vertex count", offset=len(data))
        groups, head = data[1:4], 4
    n = 0
    for c in groups:
        n = (n << 6) | (c - 63)
    return n, head


def parse_graph6(line: str) -> SimpleGraph:
    """Decode one graph6 string (an optional ``>>graph6<<`` header is accepted)."""
    text = line.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError:
        bad = next(i for i, ch in enumerate(text) if ord(ch) > 127)
        raise ParseError("non-ASCII character", offset=bad) from None
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise ParseError(f"byte {c} outside 63..126", offset=i)
    n, head = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[head:]
    if len(body) != need:
        raise ParseError(f"expected {need} adjacency bytes for n={n}, got {len(body)}", offset=head + min(len(body), need))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((u, v))
            k += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise ParseError("nonzero padding bits", offset=head + need - 1)
    return SimpleGraph.from_edges(edges, vertices=range(n))


def write_graph6(g: SimpleGraph) -> str:
    if not g.is_dense():
        raise InvalidInputError("graph6 needs vertex ids 0..n-1")
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        raise InvalidInputError("graph too large for graph6")
    bits = [1 if (u, v) in g.edges else 0 for v in range(1, n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode("ascii")


def iter_graph6(stream: Iterable[str]) -> Iterator[tuple[int, str, SimpleGraph | ParseError]]:
    """Yield ``(line_number, text, graph_or_error)`` for each non-blank line."""
    for lineno, raw in enumerate(stream, 1):
        text = raw.strip()
        if not text:
            continue
        try:
            yield lineno, text, parse_graph6(text)
        except ParseError as exc:
            exc.line = lineno
            yield lineno, text, exc


def parse_edge_list(text: str) -> SimpleGraph:
    """Parse ``u v`` lines; ``#`` starts a comment, blank lines are ignored."""
    edges: set[tuple[int, int]] = set()
    vertices: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        toks = body.split()
        if len(toks) != 2:
            raise ParseError(f"expected two vertex ids, got {len(toks)} tokens", line=lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"malformed token in {body!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise ParseError("vertex ids must be nonnegative", line=lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=lineno)
        e = (u, v) if u < v else (v, u)
        if e in edges:
            raise ParseError(f"duplicate edge {e}", line=lineno)
        edges.add(e)
        vertices.update(e)
    return SimpleGraph.from_edges(edges, vertices=vertices)


def write_edge_list(g: SimpleGraph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.sorted_edges())


def read_graph_file(path: str | Path, fmt: str | None = None) -> SimpleGraph:
    """Read a single graph; ``fmt`` is ``graph6`` or ``edges`` (guessed from the suffix if omitted)."""
    path = Path(path)
    text = path.read_text()
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edges"
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError(f"expected exactly one graph6 line, got {len(lines)}")
        return parse_graph6(lines[0])
    return parse_edge_list(text)


def result_fields(stats: bool) -> tuple[str, ...]:
    return RESULT_FIELDS + (STATS_FIELDS if stats else ()) + ("error",)


class RecordWriter:
    """Single-consumer writer of result records as text, JSON lines or CSV."""

    def __init__(self, out: IO[str], fmt: str, fields: tuple[str, ...]):
        if fmt not in ("text", "json", "csv"):
            raise InvalidInputError(f"unknown output format {fmt!r}")
        self.out = out
        self.fmt = fmt
        self.fields = fields
        self._csv = None
        if fmt == "csv":
            self._csv = csv.DictWriter(out, fieldnames=list(fields), extrasaction="ignore", lineterminator="\n")
            self._csv.writeheader()

    def write(self, record: dict) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps({k: v for k, v in record.items() if v is not None}) + "\n")
        elif self.fmt == "csv":
            self._csv.writerow({k: ("" if record.get(k) is None else record.get(k)) for k in self.fields})
        else:
            self.out.write("\t".join(str(record[k]) for k in self.fields if record.get(k) is not None) + "\n")
        self.out.flush()


def records_to_csv(records: Iterable[dict], fields: tuple[str, ...]) -> str:
    buf = io.StringIO()
    w = RecordWriter(buf, "csv", fields)
    for r in records:
        w.write(r)
    return buf.getvalue()
