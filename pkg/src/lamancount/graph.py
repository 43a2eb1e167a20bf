"""Simple graphs, edge-identified multigraphs and the contraction calculus."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .canon import canonical_certificate, certificate_bytes
from .errors import InvalidInputError

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph without loops or parallel edges.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``.
    """

    vertices: tuple[int, ...]
    edges: frozenset[Edge]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InvalidInputError("duplicate vertex ids")
        for u, v in self.edges:
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if u > v:
                raise InvalidInputError(f"edge {(u, v)} is not normalized")
            if u not in vs or v not in vs:
                raise InvalidInputError(f"edge {(u, v)} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None) -> "SimpleGraph":
        """Build a graph from endpoint pairs; duplicates collapse, loops raise."""
        es = set()
        vs = set(vertices) if vertices is not None else set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u < 0 or v < 0:
                raise InvalidInputError("vertex ids must be nonnegative")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            es.add(_edge(u, v))
            if vertices is None:
                vs.update((u, v))
        return cls(tuple(sorted(vs)), frozenset(es))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_dense(self) -> bool:
        """True when the vertex ids are exactly 0..n-1."""
        return self.vertices == tuple(range(self.n))

    def relabel(self, mapping: Mapping[int, int]) -> "SimpleGraph":
        """Rename vertices through an injective ``mapping``."""
        return SimpleGraph.from_edges(
            ((mapping[u], mapping[v]) for u, v in self.edges),
            vertices=(mapping[v] for v in self.vertices),
        )

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        ws = set(vertices)
        missing = ws - set(self.vertices)
        if missing:
            raise InvalidInputError(f"vertices {sorted(missing)} are not in the graph")
        return SimpleGraph(tuple(sorted(ws)), frozenset(e for e in self.edges if e[0] in ws and e[1] in ws))

    def triangles(self) -> list[tuple[int, int, int]]:
        """All 3-cycles as sorted vertex triples, in lexicographic order."""
        adj = self.adjacency()
        out = []
        for u, v in self.sorted_edges():
            for w in sorted(adj[u] & adj[v]):
                if w > v:
                    out.append((u, v, w))
        return out

    def to_multigraph(self) -> "Multigraph":
        """Edge ids are the ranks of the edges in sorted order."""
        return Multigraph(self.vertices, tuple((i, u, v) for i, (u, v) in enumerate(self.sorted_edges())))

    def endpoint_pairs(self) -> Iterable[Edge]:
        return self.edges


@dataclass(frozen=True)
class Multigraph:
    """Graph whose edges carry identities; loops and parallel edges allowed.

    ``edges`` is a tuple of ``(edge_id, a, b)`` records; ``a == b`` is a loop.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InvalidInputError("duplicate vertex ids")
        ids = set()
        for eid, a, b in self.edges:
            if eid in ids:
                raise InvalidInputError(f"duplicate edge id {eid}")
            ids.add(eid)
            if a not in vs or b not in vs:
                raise InvalidInputError(f"edge {eid} has an endpoint outside the vertex set")

    @classmethod
    def from_records(cls, records: Iterable[tuple[int, int, int]], vertices: Iterable[int] | None = None) -> "Multigraph":
        recs = tuple((int(e), int(a), int(b)) for e, a, b in records)
        if vertices is None:
            vs = sorted({x for _, a, b in recs for x in (a, b)})
        else:
            vs = sorted(set(vertices))
        return cls(tuple(vs), recs)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_ids(self) -> frozenset[int]:
        return frozenset(e for e, _, _ in self.edges)

    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {e: (a, b) for e, a, b in self.edges}

    def has_loop(self) -> bool:
        return any(a == b for _, a, b in self.edges)

    def endpoint_pairs(self) -> Iterable[Edge]:
        return ((a, b) for _, a, b in self.edges)


AnyGraph = Union[SimpleGraph, Multigraph]


class _DSU:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(g: AnyGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest member."""
    dsu = _DSU(g.vertices)
    for a, b in g.endpoint_pairs():
        dsu.union(a, b)
    groups: dict[int, list[int]] = {}
    for v in g.vertices:
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted((sorted(c) for c in groups.values()), key=lambda c: c[0])


def dim(g: AnyGraph) -> int:
    """|V| minus the number of components (rank of the graphic matroid)."""
    dsu = _DSU(g.vertices)
    return sum(1 for a, b in g.endpoint_pairs() if dsu.union(a, b))


def _check_subset(g: Multigraph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    unknown = s - g.edge_ids()
    if unknown:
        raise InvalidInputError(f"unknown edge ids {sorted(unknown)}")
    return s


def quotient(g: Multigraph, s: Iterable[int]) -> Multigraph:
    """Contract the edges ``s``: G / s.

    Vertices become the connectivity classes of the subgraph spanned by
    ``s``, renumbered 0..k-1 by smallest original member. Surviving edges
    keep their ids; loops and parallel edges may appear.
    """
    s = _check_subset(g, s)
    dsu = _DSU(g.vertices)
    for e, a, b in g.edges:
        if e in s:
            dsu.union(a, b)
    roots = sorted({dsu.find(v) for v in g.vertices})
    # the DSU keeps the smallest member as root, so root order is class order
    index = {r: i for i, r in enumerate(roots)}
    cls = {v: index[dsu.find(v)] for v in g.vertices}
    return Multigraph(
        tuple(range(len(roots))),
        tuple((e, cls[a], cls[b]) for e, a, b in g.edges if e not in s),
    )


def restrict(g: Multigraph, s: Iterable[int]) -> Multigraph:
    """Delete the edges ``s`` and every vertex left without edges: G \\ s."""
    s = _check_subset(g, s)
    kept = tuple(rec for rec in g.edges if rec[0] not in s)
    vs = sorted({x for _, a, b in kept for x in (a, b)})
    return Multigraph(tuple(vs), kept)


def henneberg1(g: SimpleGraph, u: int, v: int) -> SimpleGraph:
    """Add a fresh vertex (max id + 1) joined to ``u`` and ``v``."""
    if u == v:
        raise InvalidInputError("Henneberg step needs two distinct vertices")
    if u not in g.vertices or v not in g.vertices:
        raise InvalidInputError(f"vertices {u}, {v} must both be in the graph")
    w = max(g.vertices) + 1 if g.vertices else 0
    return SimpleGraph(g.vertices + (w,), g.edges | {_edge(u, w), _edge(v, w)})


def henneberg2(g: SimpleGraph, u: int, v: int, x: int) -> SimpleGraph:
    """Split edge ``uv`` by a fresh vertex that is also joined to ``x``."""
    if _edge(u, v) not in g.edges:
        raise InvalidInputError(f"{(u, v)} is not an edge")
    if x in (u, v) or x not in g.vertices:
        raise InvalidInputError(f"{x} must be a third vertex of the graph")
    w = max(g.vertices) + 1
    edges = (g.edges - {_edge(u, v)}) | {_edge(u, w), _edge(v, w), _edge(x, w)}
    return SimpleGraph(g.vertices + (w,), frozenset(edges))


def permute(g: SimpleGraph, perm: Mapping[int, int]) -> SimpleGraph:
    return g.relabel(perm)


def canonical_key(g: AnyGraph) -> bytes:
    """Isomorphism-complete key of a (multi)graph.

    Built on the vertex/edge incidence structure; parallel edges are merged
    into one edge node colored by multiplicity, and loops get their own
    color, so equal keys mean isomorphic multigraphs.
    """
    if isinstance(g, SimpleGraph):
        pairs = [(a, b) for a, b in g.sorted_edges()]
    else:
        pairs = [_edge(a, b) for _, a, b in g.edges]
    mult: dict[Edge, int] = {}
    for p in pairs:
        mult[p] = mult.get(p, 0) + 1
    index = {v: i for i, v in enumerate(g.vertices)}
    n = len(index)
    colors: list[tuple] = [(0,)] * n
    adj: list[list[int]] = [[] for _ in range(n)]
    for (a, b), k in sorted(mult.items()):
        x = len(colors)
        colors.append((1, int(a == b), k))
        adj.append([])
        for t in {index[a], index[b]}:
            adj[x].append(t)
            adj[t].append(x)
    return certificate_bytes(canonical_certificate(colors, adj))
