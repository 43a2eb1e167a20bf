"""Gluing constructions, lower and upper bounds, and the bundled fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Iterable, Optional, Sequence

from .codecs import parse_edge_list
from .engine import laman_number
from .errors import ComputationError, InvalidInputError, NotLamanError
from .graph import SimpleGraph
from .pebble import LAMAN, is_laman, laman_defect

# record graphs M(6)..M(12) and the fan bases, 0-based edge lists
FIXTURE_EDGES: dict[str, list[tuple[int, int]]] = {
    "f6": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
    "f7": [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (2, 6), (3, 4), (3, 5), (4, 6), (5, 6)],
    "f8": [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 6), (1, 7), (2, 4), (3, 6), (4, 7),
           (5, 6), (5, 7)],
    "f9": [(0, 1), (0, 3), (0, 4), (0, 7), (1, 5), (1, 6), (1, 8), (2, 3), (2, 4), (2, 5), (2, 6),
           (3, 7), (4, 8), (5, 7), (6, 8)],
    "f10": [(0, 1), (0, 4), (0, 6), (0, 7), (1, 5), (1, 8), (1, 9), (2, 4), (2, 5), (2, 6), (2, 8),
            (3, 4), (3, 5), (3, 7), (3, 9), (6, 8), (7, 9)],
    "f11": [(0, 1), (0, 5), (0, 6), (0, 9), (1, 5), (1, 7), (1, 10), (2, 3), (2, 6), (2, 8), (2, 9),
            (3, 7), (3, 8), (3, 10), (4, 5), (4, 6), (4, 7), (4, 8), (9, 10)],
    "f12": [(0, 1), (0, 6), (0, 7), (0, 8), (1, 9), (1, 10), (1, 11), (2, 3), (2, 6), (2, 7), (2, 9),
            (3, 8), (3, 10), (3, 11), (4, 5), (4, 6), (4, 8), (4, 10), (5, 7), (5, 9), (5, 11)],
    "triangle": [(0, 1), (0, 2), (1, 2)],
    "h1": [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
    "h2": [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 4)],
    "h3": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
}

EXPECTED_COUNTS: dict[str, int] = {
    "f6": 24, "f7": 56, "f8": 136, "f9": 344, "f10": 880, "f11": 2288, "f12": 6180,
    "triangle": 2, "h1": 4, "h2": 8, "h3": 24,
}

RECORD_NAMES = ("f6", "f7", "f8", "f9", "f10", "f11", "f12")


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: SimpleGraph
    expected: int


def fixture_graph(name: str) -> SimpleGraph:
    try:
        return SimpleGraph.from_edges(FIXTURE_EDGES[name])
    except KeyError:
        raise InvalidInputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_EDGES)}") from None


def fixtures() -> dict[str, Fixture]:
    return {name: Fixture(name, fixture_graph(name), EXPECTED_COUNTS[name]) for name in FIXTURE_EDGES}


def fixture_file_text(name: str) -> str:
    """Contents of the shipped ``data/<name>.edges`` file."""
    return resources.files("lamancount").joinpath("data", f"{name}.edges").read_text()


def load_fixture_file(name: str) -> SimpleGraph:
    return parse_edge_list(fixture_file_text(name))


# -- gluing ----------------------------------------------------------------------

def _require_laman(g: SimpleGraph) -> None:
    defect = laman_defect(g)
    if defect != LAMAN:
        raise NotLamanError(defect)


def _compact(edges: Iterable[tuple[int, int]], order: Sequence[int]) -> SimpleGraph:
    index = {v: i for i, v in enumerate(order)}
    return SimpleGraph.from_edges(((index[u], index[v]) for u, v in edges), vertices=range(len(order)))


def _norm(e: Sequence[int]) -> tuple[int, int]:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


def _default_exit(g: SimpleGraph, entry: tuple[int, int]) -> tuple[int, int]:
    disjoint = [e for e in g.sorted_edges() if not set(e) & set(entry)]
    if disjoint:
        return disjoint[-1]
    others = [e for e in g.sorted_edges() if e != entry]
    return others[-1] if others else entry


def caterpillar(g: SimpleGraph, k: int, shared_edge: Optional[Sequence[int]] = None,
                exit_edge: Optional[Sequence[int]] = None) -> SimpleGraph:
    """Chain ``k`` copies of ``g``; copy ``i+1`` shares an edge with copy ``i``.

    Copy ``i+1`` enters through ``shared_edge`` (default: smallest edge),
    glued onto the ``exit_edge`` of copy ``i`` (default: largest edge
    disjoint from the entry edge), endpoints matched in ascending order.
    Result vertices are renumbered 0..N-1 in order of creation.
    """
    _require_laman(g)
    if k < 1:
        raise InvalidInputError("k must be positive")
    entry = _norm(shared_edge) if shared_edge is not None else g.sorted_edges()[0]
    if entry not in g.edges:
        raise InvalidInputError(f"{entry} is not an edge of the graph")
    exit_ = _norm(exit_edge) if exit_edge is not None else _default_exit(g, entry)
    if exit_ not in g.edges:
        raise InvalidInputError(f"{exit_} is not an edge of the graph")

    order: list[tuple[int, int]] = []   # (copy, vertex) in creation order
    where: dict[tuple[int, int], tuple[int, int]] = {}
    for v in g.vertices:
        where[(0, v)] = (0, v)
        order.append((0, v))
    for i in range(1, k):
        where[(i, entry[0])] = where[(i - 1, exit_[0])]
        where[(i, entry[1])] = where[(i - 1, exit_[1])]
        for v in g.vertices:
            if (i, v) not in where:
                where[(i, v)] = (i, v)
                order.append((i, v))
    edges = {tuple(sorted((where[(i, u)], where[(i, v)]))) for i in range(k) for u, v in g.edges}
    return _compact(edges, order)


def generalized_fan(g: SimpleGraph, sub_vertices: Iterable[int], k: int) -> SimpleGraph:
    """Glue ``k`` copies of ``g`` along the Laman subgraph induced on ``sub_vertices``.

    The shared vertices keep their ids; copy ``j >= 2`` appends fresh ids
    for the remaining vertices in ascending order.
    """
    _require_laman(g)
    if k < 1:
        raise InvalidInputError("k must be positive")
    w = sorted(set(sub_vertices))
    sub = g.induced(w)
    if sub.n < 2 or not is_laman(sub):
        raise InvalidInputError(f"vertices {w} do not span a Laman subgraph")
    shared = set(w)
    private = [v for v in g.vertices if v not in shared]
    order = list(g.vertices)
    nxt = max(g.vertices) + 1
    edges = set(g.edges)
    for _ in range(1, k):
        ren = {v: v for v in w}
        for v in private:
            ren[v] = nxt
            order.append(nxt)
            nxt += 1
        edges.update(_norm((ren[u], ren[v])) for u, v in g.edges)
    return _compact(edges, order)


def _triangle(g: SimpleGraph, t: Optional[Sequence[int]]) -> tuple[int, int, int]:
    tris = g.triangles()
    if t is None:
        if not tris:
            raise InvalidInputError("graph has no triangle")
        return tris[0]
    tt = tuple(sorted(int(x) for x in t))
    if tt not in tris:
        raise InvalidInputError(f"{tt} is not a triangle of the graph")
    return tt


def fan(g: SimpleGraph, k: int, triangle: Optional[Sequence[int]] = None) -> SimpleGraph:
    """Glue ``k`` copies of ``g`` along a triangle (default: smallest one)."""
    _require_laman(g)
    return generalized_fan(g, _triangle(g, triangle), k)


# -- lower bounds ------------------------------------------------------------------

def _lam(g: SimpleGraph, lam: Optional[int]) -> int:
    return laman_number(g, exact=True) if lam is None else lam


def caterpillar_bound(g: SimpleGraph, n: int, lam: Optional[int] = None) -> int:
    """``2**((n-2) % (|V|-2)) * Lam(g)**((n-2) // (|V|-2))`` for ``n >= 2``."""
    _require_laman(g)
    if g.n < 3:
        raise InvalidInputError("caterpillar needs a block with at least 3 vertices")
    if n < 2:
        raise InvalidInputError("caterpillar bound needs n >= 2")
    q, r = divmod(n - 2, g.n - 2)
    return 2**r * _lam(g, lam) ** q


def fan_bound(g: SimpleGraph, n: int, lam: Optional[int] = None) -> int:
    """``2**((n-3) % (|V|-3)) * 2 * (Lam(g)/2)**((n-3) // (|V|-3))`` for ``n >= 3``."""
    _require_laman(g)
    _triangle(g, None)
    if g.n < 4:
        raise InvalidInputError("fan needs a block with at least 4 vertices")
    if n < 3:
        raise InvalidInputError("fan bound needs n >= 3")
    value = _lam(g, lam)
    if value % 2:
        raise ComputationError(f"odd Laman number {value} for a triangle-containing graph")
    q, r = divmod(n - 3, g.n - 3)
    return 2**r * 2 * (value // 2) ** q


def generalized_fan_bound(g: SimpleGraph, sub_vertices: Iterable[int], n: int,
                          lam: Optional[int] = None, lam_sub: Optional[int] = None) -> int:
    """``2**((n-|W|) % (|V|-|W|)) * Lam(H) * (Lam(g)/Lam(H))**((n-|W|) // (|V|-|W|))``.

    The ratio is kept exact; a non-integer result raises ComputationError.
    """
    _require_laman(g)
    w = sorted(set(sub_vertices))
    sub = g.induced(w)
    if sub.n < 2 or not is_laman(sub):
        raise InvalidInputError(f"vertices {w} do not span a Laman subgraph")
    if sub.n >= g.n:
        raise InvalidInputError("the glued subgraph must be proper")
    if n < sub.n:
        raise InvalidInputError(f"generalized fan bound needs n >= {sub.n}")
    lg = _lam(g, lam)
    lh = _lam(sub, lam_sub)
    q, r = divmod(n - sub.n, g.n - sub.n)
    value = 2**r * lh * Fraction(lg, lh) ** q
    if value.denominator != 1:
        raise ComputationError(f"non-integer bound {value}: Lam(G)/Lam(H) = {Fraction(lg, lh)}")
    return int(value)


def growth_rate(kind: str, g: SimpleGraph, sub_vertices: Optional[Iterable[int]] = None,
                lam: Optional[int] = None) -> float:
    """Per-vertex base of a bound: the limit of its ``n``-th root."""
    _require_laman(g)
    value = _lam(g, lam)
    if kind == "caterpillar":
        if g.n < 3:
            raise InvalidInputError("caterpillar rate needs at least 3 vertices")
        return value ** (1.0 / (g.n - 2))
    if kind == "fan":
        _triangle(g, None)
        if g.n < 4:
            raise InvalidInputError("fan rate needs at least 4 vertices")
        return (value / 2) ** (1.0 / (g.n - 3))
    if kind == "gfan":
        if sub_vertices is None:
            raise InvalidInputError("gfan needs a subgraph")
        sub = g.induced(sub_vertices)
        if not is_laman(sub) or sub.n >= g.n:
            raise InvalidInputError("gfan needs a proper Laman subgraph")
        return (value / laman_number(sub, exact=True)) ** (1.0 / (g.n - sub.n))
    raise InvalidInputError(f"unknown construction {kind!r}")


# -- upper bounds ------------------------------------------------------------------

@dataclass(frozen=True)
class UpperBounds:
    binom: int
    mixedvol: int
    degree2: Optional[int]

    def minimum(self) -> int:
        return min(x for x in (self.binom, self.mixedvol, self.degree2) if x is not None)


def upper_bounds(g: SimpleGraph) -> UpperBounds:
    _require_laman(g)
    n = g.n
    adj = g.adjacency()
    k = sum(1 for v in g.vertices if len(adj[v]) == 2)
    degree2 = 2 ** (k - 4) * 4 ** (n - k) if k >= 4 else None
    return UpperBounds(comb(2 * n - 4, n - 2), 4 ** (n - 2), degree2)
