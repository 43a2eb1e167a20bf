"""(2,3)-pebble game for Laman sparsity.

Every vertex starts with two pebbles. An edge ``uv`` is accepted when four
pebbles can be gathered on ``u`` and ``v`` together; one of them is then
spent to orient the edge out of ``u``. Accepted edges form a maximum
(2,3)-sparse subset, rejected edges are redundant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError
from .graph import SimpleGraph

LAMAN = "laman"
FLEXIBLE = "flexible"
OVERCONSTRAINED = "overconstrained"
MIXED = "mixed"


@dataclass(frozen=True)
class PebbleResult:
    accepted: int
    rejected: int


class _PebbleGame:
    def __init__(self, vertices):
        self.pebbles = {v: 2 for v in vertices}
        self.out = {v: [] for v in vertices}

    def _fetch(self, root: int, frozen: tuple[int, ...]) -> bool:
        """Move one free pebble to ``root`` by reversing a directed path."""
        parent = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent:
                    continue
                parent[y] = x
                if self.pebbles[y] > 0 and y not in frozen:
                    self.pebbles[y] -= 1
                    # reverse the path root -> ... -> y
                    while parent[y] is not None:
                        p = parent[y]
                        self.out[p].remove(y)
                        self.out[y].append(p)
                        y = p
                    self.pebbles[root] += 1
                    return True
                stack.append(y)
        return False

    def insert(self, u: int, v: int) -> bool:
        while self.pebbles[u] < 2 and self._fetch(u, (u, v)):
            pass
        while self.pebbles[v] < 2 and self._fetch(v, (u, v)):
            pass
        if self.pebbles[u] + self.pebbles[v] < 4:
            return False
        self.pebbles[u] -= 1
        self.out[u].append(v)
        return True


def pebble_game(g: SimpleGraph) -> PebbleResult:
    game = _PebbleGame(g.vertices)
    accepted = sum(1 for u, v in g.sorted_edges() if game.insert(u, v))
    return PebbleResult(accepted, g.m - accepted)


def _require_two(g: SimpleGraph) -> None:
    if g.n < 2:
        raise InvalidInputError("Laman checks need at least 2 vertices")


def laman_defect(g: SimpleGraph) -> str:
    """Classify ``g`` as laman, flexible, overconstrained or mixed.

    ``flexible``: sparse but too few independent edges; ``overconstrained``:
    rigid with redundant edges; ``mixed``: redundant edges and still not rigid.
    """
    _require_two(g)
    res = pebble_game(g)
    rigid = res.accepted == 2 * g.n - 3
    if res.rejected == 0:
        return LAMAN if rigid else FLEXIBLE
    return OVERCONSTRAINED if rigid else MIXED


def is_laman(g: SimpleGraph) -> bool:
    _require_two(g)
    if g.m != 2 * g.n - 3:
        return False
    return pebble_game(g).rejected == 0
