"""Recursive Laman-number computation on bigraphs.

For a pseudo-Laman bigraph ``B`` and a pivot biedge ``e``::

    Lam(B) = Lam(left_quot(B, {e})) + Lam(right_quot(B, {e}))
             + sum over split pairs (M, N) of Lam(left_quot(B, M)) * Lam(right_quot(B, N))

with ``Lam = 0`` when a side has a loop or ``B`` is not pseudo-Laman, and
``Lam = 1`` for a single biedge joining distinct vertices on both sides.
Results are memoized on the canonical form of the bigraph.
"""

from __future__ import annotations

import base64
import logging
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from .bigraph import Bigraph, Quad, bigraph_of, canonical_quads, quads_key, to_quads
from .errors import ComputationTimeout, CountOverflowError, InvalidInputError, NotLamanError
from .graph import SimpleGraph
from .pebble import LAMAN, laman_defect

log = logging.getLogger(__name__)

INT64_MAX = 2**63 - 1
STRATEGIES = ("auto", "first-id")
# below this size recomputing is cheaper than canonicalizing; roots are always memoized
MEMO_MIN_BIEDGES = 8


@dataclass
class ComputationStats:
    nodes_visited: int = 0
    memo_hits: int = 0
    splits_examined: int = 0
    max_depth: int = 0
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


class Memo:
    """Process-wide table from canonical bigraph keys to Laman numbers.

    Entries are never evicted. ``fresh`` collects entries added since the
    last :meth:`drain`, so worker processes can ship their additions back.
    """

    HEADER = "# lamancount memo v1"

    def __init__(self):
        self.table: dict[bytes, int] = {}
        self.fresh: dict[bytes, int] = {}

    def __len__(self) -> int:
        return len(self.table)

    def get(self, key: bytes) -> Optional[int]:
        return self.table.get(key)

    def put(self, key: bytes, value: int) -> None:
        self.table[key] = value
        self.fresh[key] = value

    def update(self, entries: dict[bytes, int]) -> None:
        self.table.update(entries)

    def drain(self) -> dict[bytes, int]:
        out, self.fresh = self.fresh, {}
        return out

    def clear(self) -> None:
        self.table.clear()
        self.fresh.clear()

    def save(self, path: Union[str, Path]) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w") as fh:
            fh.write(self.HEADER + "\n")
            for key, val in self.table.items():
                fh.write(f"{base64.b64encode(key).decode('ascii')}\t{val}\n")
        tmp.replace(path)

    def load(self, path: Union[str, Path]) -> int:
        """Merge a cache file; unreadable lines are skipped with a warning."""
        path = Path(path)
        if not path.exists():
            return 0
        loaded = 0
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if lineno == 1:
                    if line != self.HEADER:
                        log.warning("%s: unknown cache header %r, ignoring file", path, line)
                        return 0
                    continue
                if not line:
                    continue
                try:
                    k, v = line.split("\t")
                    key = base64.b64decode(k, validate=True)
                    val = int(v)
                    if val < 0:
                        raise ValueError(v)
                except ValueError:
                    log.warning("%s:%d: skipping corrupt cache line", path, lineno)
                    continue
                self.table[key] = val
                loaded += 1
        return loaded


_process_memo = Memo()


def default_memo() -> Memo:
    return _process_memo


# -- quad-form helpers --------------------------------------------------------

def _ranks(quads: Sequence[Quad]) -> tuple[int, int]:
    pg: dict[int, int] = {}
    ph: dict[int, int] = {}
    rg = rh = 0
    for a, b, c, d in quads:
        ra = pg.setdefault(a, a)
        while ra != pg[ra]:
            ra = pg[ra]
        rb = pg.setdefault(b, b)
        while rb != pg[rb]:
            rb = pg[rb]
        if ra != rb:
            pg[ra] = rb
            rg += 1
        rc = ph.setdefault(c, c)
        while rc != ph[rc]:
            rc = ph[rc]
        rd = ph.setdefault(d, d)
        while rd != ph[rd]:
            rd = ph[rd]
        if rc != rd:
            ph[rc] = rd
            rh += 1
    return rg, rh


def _find(p: list[int], x: int) -> int:
    while p[x] != x:
        x = p[x]
    return x


def _contract(quads: Sequence[Quad], cut: Sequence[int], keep: Sequence[int], side: int) -> list[Quad]:
    """Contract biedges ``cut`` on one side (0 = G, 2 = H), return ``keep``."""
    size = 1 + max(max(q[side], q[side + 1]) for q in quads)
    p = list(range(size))
    for i in cut:
        q = quads[i]
        ra, rb = _find(p, q[side]), _find(p, q[side + 1])
        if ra != rb:
            p[ra] = rb
    out = []
    for i in keep:
        q = list(quads[i])
        q[side] = _find(p, q[side])
        q[side + 1] = _find(p, q[side + 1])
        out.append(tuple(q))
    return out


def _nonzero_splits(quads: Sequence[Quad], pivot: int, dim_g: int) -> Iterator[tuple[list[int], list[int]]]:
    """Split pairs whose two quotients are pseudo-Laman and loop-free.

    Loop-bearing quotients count zero, so skipping them loses nothing; the
    test is incremental: an ``n`` biedge must join distinct classes of the
    G-side contraction by ``m`` (pivot included), and symmetrically on H.
    """
    rest = [i for i in range(len(quads)) if i != pivot]
    total = len(rest)
    pv = quads[pivot]
    ng = 1 + max(max(q[0], q[1]) for q in quads)
    nh = 1 + max(max(q[2], q[3]) for q in quads)

    def g_loop(p, i):
        q = quads[i]
        a, b = _find(p, q[0]), _find(p, q[1])
        if a == b:
            return True
        e0, e1 = _find(p, pv[0]), _find(p, pv[1])
        return (a == e0 and b == e1) or (a == e1 and b == e0)

    def h_loop(p, i):
        q = quads[i]
        a, b = _find(p, q[2]), _find(p, q[3])
        if a == b:
            return True
        e0, e1 = _find(p, pv[2]), _find(p, pv[3])
        return (a == e0 and b == e1) or (a == e1 and b == e0)

    # slack = dim_g - rank_G(M - pivot) + rank_H(N - pivot) - |N - pivot| - 1, must end at 0
    stack = [(0, list(range(ng)), list(range(nh)), dim_g - 1, [], [])]
    while stack:
        i, pg, ph, slack, ms, ns = stack.pop()
        if slack < 0 or slack > total - i:
            continue
        if i == total:
            if ms and ns and _find(pg, pv[0]) == _find(pg, pv[1]) and _find(ph, pv[2]) == _find(ph, pv[3]):
                yield ms, ns
            continue
        e = rest[i]
        q = quads[e]
        # branch: e in N only (pushed first so M-first order is preserved)
        if not g_loop(pg, e):
            rc, rd = _find(ph, q[2]), _find(ph, q[3])
            if rc == rd:
                stack.append((i + 1, pg, ph, slack - 1, ms, ns + [e]))
            else:
                p2 = ph[:]
                p2[rc] = rd
                if not any(h_loop(p2, x) for x in ms):
                    stack.append((i + 1, pg, p2, slack, ms, ns + [e]))
        # branch: e in M only
        if not h_loop(ph, e):
            ra, rb = _find(pg, q[0]), _find(pg, q[1])
            if ra == rb:
                stack.append((i + 1, pg, ph, slack, ms + [e], ns))
            else:
                p2 = pg[:]
                p2[ra] = rb
                if not any(g_loop(p2, x) for x in ns):
                    stack.append((i + 1, p2, ph, slack - 1, ms + [e], ns))


def _degrees(quads: Sequence[Quad]) -> tuple[dict[int, int], dict[int, int]]:
    dg: dict[int, int] = {}
    dh: dict[int, int] = {}
    for a, b, c, d in quads:
        dg[a] = dg.get(a, 0) + 1
        dg[b] = dg.get(b, 0) + 1
        dh[c] = dh.get(c, 0) + 1
        dh[d] = dh.get(d, 0) + 1
    return dg, dh


def _pick_auto(quads: Sequence[Quad]) -> int:
    """Pivot with the fewest candidate splits by a degree estimate.

    Every split needs paths closing the pivot on both sides, and the number
    of such paths grows with the endpoint degrees; the estimate is the
    product of the four endpoint degrees. Ties go to the smallest index.
    """
    dg, dh = _degrees(quads)
    best, best_i = None, 0
    for i, (a, b, c, d) in enumerate(quads):
        est = dg[a] * dg[b] * dh[c] * dh[d]
        if best is None or est < best:
            best, best_i = est, i
    return best_i


def _pick(quads: Sequence[Quad], strategy: str) -> int:
    if strategy == "first-id":
        return 0
    if strategy == "auto":
        return _pick_auto(quads)
    raise InvalidInputError(f"unknown biedge strategy {strategy!r}")


class _Counter:
    def __init__(self, memo: Optional[Memo], stats: ComputationStats, strategy: str,
                 exact: bool, deadline: Optional[float]):
        if strategy not in STRATEGIES:
            raise InvalidInputError(f"unknown biedge strategy {strategy!r}")
        self.memo = memo
        self.stats = stats
        self.strategy = strategy
        self.exact = exact
        self.deadline = deadline

    def _checked(self, value: int) -> int:
        if not self.exact and value > INT64_MAX:
            raise CountOverflowError(f"Laman count {value} exceeds the 64-bit range")
        return value

    def count(self, quads: Sequence[Quad], depth: int = 0, forced: Optional[int] = None) -> int:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ComputationTimeout("deadline expired during recursion")
        m = len(quads)
        rg, rh = _ranks(quads)
        if rg + rh != m + 1:
            return 0
        for a, b, c, d in quads:
            if a == b or c == d:
                return 0
        if m == 1:
            return 1
        key = None
        if self.memo is not None and forced is None and (depth == 0 or m >= MEMO_MIN_BIEDGES):
            quads = canonical_quads(quads)
            key = quads_key(quads)
            hit = self.memo.get(key)
            if hit is not None:
                self.stats.memo_hits += 1
                return self._checked(hit)
        st = self.stats
        st.nodes_visited += 1
        if depth > st.max_depth:
            st.max_depth = depth
        pivot = forced if forced is not None else _pick(quads, self.strategy)
        others = [i for i in range(m) if i != pivot]
        total = self.count(_contract(quads, [pivot], others, 0), depth + 1)
        total += self.count(_contract(quads, [pivot], others, 2), depth + 1)
        for ms, ns in _nonzero_splits(quads, pivot, rg):
            st.splits_examined += 1
            left = self.count(_contract(quads, ms + [pivot], ns, 0), depth + 1)
            if left:
                right = self.count(_contract(quads, ns + [pivot], ms, 2), depth + 1)
                total += left * right
        total = self._checked(total)
        if key is not None:
            self.memo.put(key, total)
        return total


def _deadline(timeout: Optional[float]) -> Optional[float]:
    if timeout is None:
        return None
    if timeout <= 0:
        raise InvalidInputError("timeout must be positive")
    return time.monotonic() + timeout


def lam_bigraph(b: Bigraph, memo: Optional[Memo] = None, stats: Optional[ComputationStats] = None, *,
                strategy: str = "auto", root: Optional[int] = None, exact: bool = False,
                timeout: Optional[float] = None, use_memo: bool = True) -> int:
    """Laman number of a bigraph (0 when it is not pseudo-Laman).

    ``root`` forces the pivot biedge at the top level. ``exact`` switches
    from checked 64-bit counts to unbounded integers. ``memo`` defaults to
    the process-wide table; ``use_memo=False`` disables memoization.
    """
    stats = stats if stats is not None else ComputationStats()
    if use_memo and memo is None:
        memo = _process_memo
    counter = _Counter(memo if use_memo else None, stats, strategy, exact, _deadline(timeout))
    quads, ids = to_quads(b)
    forced = None
    if root is not None:
        if root not in ids:
            raise InvalidInputError(f"unknown biedge {root}")
        forced = ids.index(root)
    t0 = time.perf_counter()
    try:
        return counter.count(quads, 0, forced)
    finally:
        stats.seconds += time.perf_counter() - t0


def laman_number(g: SimpleGraph, memo: Optional[Memo] = None, stats: Optional[ComputationStats] = None,
                 **kw) -> int:
    """Number of complex realizations of a Laman graph, up to direct isometries."""
    defect = laman_defect(g)
    if defect != LAMAN:
        raise NotLamanError(defect)
    return lam_bigraph(bigraph_of(g), memo, stats, **kw)


def choose_biedge(b: Bigraph, strategy: str = "auto") -> int:
    if len(b) == 0:
        raise InvalidInputError("bigraph has no biedges")
    quads, ids = to_quads(b)
    return ids[_pick(quads, strategy)]

