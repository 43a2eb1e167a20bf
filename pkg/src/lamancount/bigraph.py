"""Bigraphs: two multigraphs over one shared set of biedges.

Besides the public :class:`Bigraph` type this module defines the compact
"quad" form used by the counting engine: a tuple of
``(g_u, g_v, h_u, h_v)`` records, one per biedge, with vertices implicit
(isolated vertices carry no information for counting and are dropped).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .canon import canonical_labeling
from .errors import InvalidInputError
from .graph import Multigraph, SimpleGraph, dim, quotient, restrict

Quad = tuple[int, int, int, int]


@dataclass(frozen=True)
class Bigraph:
    g: Multigraph
    h: Multigraph

    def __post_init__(self):
        if self.g.edge_ids() != self.h.edge_ids():
            raise InvalidInputError("both sides of a bigraph must carry the same biedge ids")

    @property
    def biedges(self) -> tuple[int, ...]:
        return tuple(sorted(self.g.edge_ids()))

    def __len__(self) -> int:
        return len(self.g.edges)

    def has_loop(self) -> bool:
        return self.g.has_loop() or self.h.has_loop()


@dataclass(frozen=True)
class SplitPair:
    """A cover ``m | n`` of the biedges with ``m & n == {pivot}``."""

    m: frozenset[int]
    n: frozenset[int]


def bigraph_of(g: SimpleGraph) -> Bigraph:
    mg = g.to_multigraph()
    return Bigraph(mg, mg)


def swap_sides(b: Bigraph) -> Bigraph:
    return Bigraph(b.h, b.g)


def is_pseudo_laman(b: Bigraph) -> bool:
    return dim(b.g) + dim(b.h) == len(b) + 1


def _check(b: Bigraph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    unknown = s - b.g.edge_ids()
    if unknown:
        raise InvalidInputError(f"unknown biedge ids {sorted(unknown)}")
    return s


def left_quot(b: Bigraph, m: Iterable[int]) -> Bigraph:
    """``(G / m, H \\ m)`` over the biedges not in ``m``."""
    m = _check(b, m)
    return Bigraph(quotient(b.g, m), restrict(b.h, m))


def right_quot(b: Bigraph, n: Iterable[int]) -> Bigraph:
    """``(G \\ n, H / n)`` over the biedges not in ``n``."""
    n = _check(b, n)
    return Bigraph(restrict(b.g, n), quotient(b.h, n))


class _Forest:
    """Copy-on-branch union-find over a dict of vertices."""

    __slots__ = ("parent", "rank")

    def __init__(self, parent: dict[int, int], rank: int = 0):
        self.parent = parent
        self.rank = rank

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            x = p[x]
        return x

    def joined(self, a: int, b: int) -> "_Forest | None":
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        p = dict(self.parent)
        p[ra] = rb
        return _Forest(p, self.rank + 1)


def enumerate_splits(b: Bigraph, pivot: int) -> list[SplitPair]:
    """All split pairs of ``b`` at ``pivot`` whose quotients are pseudo-Laman.

    Depth-first assignment of the other biedges to ``m`` or ``n`` (in id
    order, ``m`` first). Writing ``A = rank_G(m - pivot)`` and
    ``B = rank_H(n - pivot)``, the slack ``dim G - A + B - |n - pivot| - 1``
    must end at 0 and drops by at most one per assigned biedge, which
    bounds every branch.
    """
    if not is_pseudo_laman(b):
        raise InvalidInputError("split enumeration needs a pseudo-Laman bigraph")
    gend, hend = b.g.endpoints(), b.h.endpoints()
    if pivot not in gend:
        raise InvalidInputError(f"unknown biedge {pivot}")
    rest = [e for e in b.biedges if e != pivot]
    dim_g, dim_h = dim(b.g), dim(b.h)
    pg, ph = gend[pivot], hend[pivot]
    out: list[SplitPair] = []

    def leaf(fg: _Forest, fh: _Forest, ms: list[int], ns: list[int]) -> None:
        if not ms or not ns:
            return
        rank_gm = fg.rank + (fg.find(pg[0]) != fg.find(pg[1]))
        rank_hn = fh.rank + (fh.find(ph[0]) != fh.find(ph[1]))
        m_size, n_size = len(ms) + 1, len(ns) + 1
        if dim_g - rank_gm + fh.rank != n_size:
            return
        if fg.rank + dim_h - rank_hn != m_size:
            return
        out.append(SplitPair(frozenset(ms + [pivot]), frozenset(ns + [pivot])))

    def dfs(i: int, fg: _Forest, fh: _Forest, ms: list[int], ns: list[int]) -> None:
        slack = dim_g - fg.rank + fh.rank - len(ns) - 1
        if slack < 0 or slack > len(rest) - i:
            return
        if i == len(rest):
            leaf(fg, fh, ms, ns)
            return
        e = rest[i]
        a, c = gend[e]
        dfs(i + 1, fg.joined(a, c) or fg, fh, ms + [e], ns)
        a, c = hend[e]
        dfs(i + 1, fg, fh.joined(a, c) or fh, ms, ns + [e])

    dfs(0, _Forest({v: v for v in b.g.vertices}), _Forest({v: v for v in b.h.vertices}), [], [])
    return out


def to_quads(b: Bigraph) -> tuple[list[Quad], list[int]]:
    """Quad form of ``b`` (biedges in id order) and the matching id list."""
    gi = {v: i for i, v in enumerate(b.g.vertices)}
    hi = {v: i for i, v in enumerate(b.h.vertices)}
    gend, hend = b.g.endpoints(), b.h.endpoints()
    ids = list(b.biedges)
    quads = []
    for e in ids:
        (a, c), (x, y) = gend[e], hend[e]
        quads.append((gi[a], gi[c], hi[x], hi[y]))
    return quads, ids


def from_quads(quads: Sequence[Quad], ids: Sequence[int] | None = None) -> Bigraph:
    ids = list(range(len(quads))) if ids is None else list(ids)
    g = Multigraph.from_records((e, q[0], q[1]) for e, q in zip(ids, quads))
    h = Multigraph.from_records((e, q[2], q[3]) for e, q in zip(ids, quads))
    return Bigraph(g, h)


def canonical_quads(quads: Iterable[Quad]) -> tuple[Quad, ...]:
    """Canonical representative of a quad-form bigraph.

    Canonical labeling of the three-layer incidence structure
    (G-vertices, biedge nodes, H-vertices). Biedges that coincide on both
    sides collapse into one node colored by multiplicity. Isomorphic
    bigraphs map to the identical tuple.
    """
    groups: dict[Quad, int] = {}
    for a, b, c, d in quads:
        if a > b:
            a, b = b, a
        if c > d:
            c, d = d, c
        q = (a, b, c, d)
        groups[q] = groups.get(q, 0) + 1
    gvs = sorted({x for q in groups for x in q[:2]})
    hvs = sorted({x for q in groups for x in q[2:]})
    ng = len(gvs)
    gi = {v: i for i, v in enumerate(gvs)}
    hi = {v: ng + i for i, v in enumerate(hvs)}
    off = ng + len(hvs)
    colors: list[tuple] = [(0,)] * ng + [(1,)] * len(hvs)
    adj: list[list[int]] = [[] for _ in range(off)]
    items = list(groups.items())
    for j, (q, mult) in enumerate(items):
        x = off + j
        colors.append((2, int(q[0] == q[1]), int(q[2] == q[3]), mult))
        adj.append([])
        for t in {gi[q[0]], gi[q[1]]} | {hi[q[2]], hi[q[3]]}:
            adj[x].append(t)
            adj[t].append(x)
    _, lab = canonical_labeling(colors, adj)
    # colors sort G < H < biedges, so canonical positions keep the layers apart
    hoff = ng
    rep = []
    for j in sorted(range(len(items)), key=lambda j: lab[off + j]):
        q, mult = items[j]
        a, b = sorted((lab[gi[q[0]]], lab[gi[q[1]]]))
        c, d = sorted((lab[hi[q[2]]] - hoff, lab[hi[q[3]]] - hoff))
        rep.extend([(a, b, c, d)] * mult)
    return tuple(rep)


def quads_key(rep: Sequence[Quad]) -> bytes:
    flat = [x for q in rep for x in q]
    if flat and max(flat) > 255:
        return b"r" + repr(tuple(rep)).encode("ascii")
    return b"b" + bytes(flat)


def canonical_bigraph_key(b: Bigraph) -> bytes:
    """Equal keys iff the bigraphs are isomorphic (side-preserving)."""
    quads, _ = to_quads(b)
    return quads_key(canonical_quads(quads))
