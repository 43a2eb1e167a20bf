"""Canonical forms of small vertex-colored graphs.

Individualization-refinement: color refinement to an equitable partition,
then branching on the smallest non-singleton cell. The lexicographically
smallest leaf certificate is the canonical form, so equal certificates
certify isomorphism. Automorphisms found at equal leaves prune sibling
branches lying in the same orbit.
"""

from __future__ import annotations

from typing import Sequence


def refine(colors: list[int], adj: Sequence[Sequence[int]]) -> list[int]:
    """Return the coarsest equitable refinement of ``colors``.

    New colors are dense ranks of (old color, sorted neighbor colors), so
    the result depends only on the isomorphism type of the input.
    """
    n = len(colors)
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted([colors[w] for w in adj[v]]))) for v in range(n)]
        order = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(order)}
        colors = [rank[s] for s in sigs]
        if len(order) == k:
            return colors
        k = len(order)


def _in_orbit(w: int, tried: list[int], autos: list[list[int]], path: list[int]) -> bool:
    gens = [a for a in autos if all(a[p] == p for p in path)]
    if not gens:
        return False
    seen = set(tried)
    stack = list(tried)
    while stack:
        x = stack.pop()
        for a in gens:
            y = a[x]
            if y not in seen:
                if y == w:
                    return True
                seen.add(y)
                stack.append(y)
    return False


def canonical_labeling(colors: Sequence, adj: Sequence[Sequence[int]]) -> tuple[tuple, list[int]]:
    """Canonical certificate and labeling of a vertex-colored simple graph.

    ``colors`` may be any mutually comparable values; ``adj[v]`` lists the
    neighbors of ``v``. Two inputs give equal certificates iff there is a
    color-preserving isomorphism between them. ``labeling[v]`` is the
    canonical position of ``v``.
    """
    n = len(colors)
    if n == 0:
        return ((), ()), []
    palette = {c: i for i, c in enumerate(sorted(set(colors)))}
    pairs = [(v, w) for v in range(n) for w in adj[v] if v < w]
    best_cert = None
    best_lab: list[int] | None = None
    autos: list[list[int]] = []

    def leaf(lab: list[int]) -> None:
        nonlocal best_cert, best_lab
        edges = sorted((lab[v], lab[w]) if lab[v] < lab[w] else (lab[w], lab[v]) for v, w in pairs)
        cert = (tuple(sorted((lab[v], colors[v]) for v in range(n))), tuple(edges))
        if best_cert is None or cert < best_cert:
            best_cert, best_lab = cert, lab
        elif cert == best_cert:
            inv = [0] * n
            for v in range(n):
                inv[best_lab[v]] = v
            autos.append([inv[lab[v]] for v in range(n)])

    def search(col: list[int], path: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(col[v], []).append(v)
        if len(cells) == n:
            leaf(col)
            return
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        tried: list[int] = []
        for w in cells[target]:
            if tried and _in_orbit(w, tried, autos, path):
                continue
            tried.append(w)
            split = [2 * c + (1 if c == target and v != w else 0) for v, c in enumerate(col)]
            search(refine(split, adj), path + [w])

    search(refine([palette[c] for c in colors], adj), [])
    return best_cert, best_lab


def canonical_certificate(colors: Sequence, adj: Sequence[Sequence[int]]) -> tuple:
    return canonical_labeling(colors, adj)[0]


def certificate_bytes(cert: tuple) -> bytes:
    return repr(cert).encode("ascii")
