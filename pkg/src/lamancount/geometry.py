"""Complex realizations, labelings, direct isometries and system export.

Labels are squared distances under the bilinear form
``<x, y> = x1*y1 + x2*y2`` (no conjugation), so isotropic nonzero
differences have label 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import DegenerateInputError, InvalidInputError
from .graph import SimpleGraph, components

Point = tuple[complex, complex]
Realization = Mapping[int, Point]
Labeling = Mapping[tuple[int, int], complex]

DEFAULT_TOL = 1e-9


def _form(d: Point) -> complex:
    return d[0] * d[0] + d[1] * d[1]


def _diff(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def _check_cover(g: SimpleGraph, rho: Realization) -> None:
    missing = [v for v in g.vertices if v not in rho]
    if missing:
        raise InvalidInputError(f"realization misses vertices {missing}")


def labeling_from_realization(g: SimpleGraph, rho: Realization) -> dict[tuple[int, int], complex]:
    _check_cover(g, rho)
    return {(u, v): _form(_diff(rho[u], rho[v])) for u, v in g.sorted_edges()}


def _scale(values) -> float:
    return max((abs(x) for x in values), default=0.0) or 1.0


def is_compatible(g: SimpleGraph, rho: Realization, lam: Labeling, tol: float = DEFAULT_TOL) -> bool:
    """Per-edge check ``|<d,d> - lam(e)| <= tol * max|lam|``."""
    computed = labeling_from_realization(g, rho)
    missing = [e for e in computed if e not in lam]
    if missing:
        raise InvalidInputError(f"labeling misses edges {missing}")
    bound = tol * _scale(lam[e] for e in computed)
    return all(abs(computed[e] - lam[e]) <= bound for e in computed)


@dataclass(frozen=True)
class DirectIsometry:
    """``p -> A p + b`` with ``A = [[c, -s], [s, c]]`` and ``c^2 + s^2 = 1``."""

    c: complex
    s: complex
    b: Point = (0j, 0j)

    def apply(self, p: Point) -> Point:
        x, y = p
        return (self.c * x - self.s * y + self.b[0], self.s * x + self.c * y + self.b[1])

    def __call__(self, rho: Realization) -> dict[int, Point]:
        return {v: self.apply(p) for v, p in rho.items()}

    def determinant_defect(self) -> float:
        return abs(self.c * self.c + self.s * self.s - 1)


def are_equivalent(g: SimpleGraph, rho1: Realization, rho2: Realization,
                   tol: float = DEFAULT_TOL) -> Optional[DirectIsometry]:
    """Return a direct isometry carrying ``rho1`` onto ``rho2``, or ``None``.

    The witness comes from aligning the vertex pair whose difference has the
    largest ``|<d,d>|`` in ``rho1``; it is then checked on every vertex.
    """
    if g.n < 2:
        raise InvalidInputError("equivalence needs at least 2 vertices")
    _check_cover(g, rho1)
    _check_cover(g, rho2)
    vs = g.vertices
    best = None
    for i, p in enumerate(vs):
        for q in vs[i + 1:]:
            w = abs(_form(_diff(rho1[q], rho1[p])))
            if best is None or w > best[0]:
                best = (w, p, q)
    scale = _scale(c for v in vs for pt in (rho1[v], rho2[v]) for c in pt)
    if best[0] <= tol * scale * scale:
        raise DegenerateInputError("realization has no non-isotropic vertex difference")
    _, p, q = best
    d1 = _diff(rho1[q], rho1[p])
    d2 = _diff(rho2[q], rho2[p])
    # [[d1x, -d1y], [d1y, d1x]] (c, s) = d2
    det = _form(d1)
    c = (d1[0] * d2[0] + d1[1] * d2[1]) / det
    s = (d1[0] * d2[1] - d1[1] * d2[0]) / det
    if abs(c * c + s * s - 1) > tol * max(1.0, abs(c) ** 2 + abs(s) ** 2):
        return None
    a = DirectIsometry(c, s)
    moved = a.apply(rho1[p])
    iso = DirectIsometry(c, s, (rho2[p][0] - moved[0], rho2[p][1] - moved[1]))
    for v in vs:
        img = iso.apply(rho1[v])
        if abs(img[0] - rho2[v][0]) > tol * scale or abs(img[1] - rho2[v][1]) > tol * scale:
            return None
    return iso


def _sym(name: str, v: int, pin: int) -> Optional[str]:
    return None if v == pin else f"{name}_{v}"


def _factor(name: str, u: int, v: int, pin: int) -> str:
    a, b = _sym(name, u, pin), _sym(name, v, pin)
    if a is None:
        return f"-{b}"
    if b is None:
        return a
    return f"{a} - {b}"


@dataclass
class PolynomialSystem:
    """Bilinear edge equations ``(x_u - x_v)(y_u - y_v) = lambda_uv``.

    Coordinates are ``x = X + iY``, ``y = X - iY`` of the planar point
    ``(X, Y)``; the pinned vertex sits at the origin.
    """

    unknowns: list[str]
    pinned: int
    equations: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"unknowns": list(self.unknowns), "pinned": self.pinned, "equations": self.equations}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def residuals(self, values: Mapping[str, complex]) -> list[complex]:
        """Evaluate lhs - rhs for every equation under ``values``."""
        def val(name: str, v: int) -> complex:
            return 0j if v == self.pinned else values[f"{name}_{v}"]

        out = []
        for eq in self.equations:
            u, v = eq["edge"]
            rhs = complex(eq["rhs"]["re"], eq["rhs"]["im"])
            out.append((val("x", u) - val("x", v)) * (val("y", u) - val("y", v)) - rhs)
        return out


def transformed_coordinates(rho: Realization, pin: int) -> dict[str, complex]:
    """Translate ``pin`` to the origin and map ``(X, Y)`` to ``(X+iY, X-iY)``."""
    ox, oy = rho[pin]
    out = {}
    for v in sorted(rho):
        if v == pin:
            continue
        x, y = rho[v][0] - ox, rho[v][1] - oy
        out[f"x_{v}"] = x + 1j * y
        out[f"y_{v}"] = x - 1j * y
    return out


def export_system(g: SimpleGraph, lam: Labeling, pin: Optional[int] = None) -> PolynomialSystem:
    if pin is None:
        pin = g.vertices[0]
    if pin not in g.vertices:
        raise InvalidInputError(f"pinned vertex {pin} is not in the graph")
    if len(components(g)) != 1:
        raise InvalidInputError("export needs a connected graph")
    unknowns = [s for v in g.vertices if v != pin for s in (f"x_{v}", f"y_{v}")]
    eqs = []
    for u, v in g.sorted_edges():
        val = lam.get((u, v), lam.get((v, u)))
        if val is None:
            raise InvalidInputError(f"labeling misses edge {(u, v)}")
        val = complex(val)
        eqs.append({
            "edge": [u, v],
            "lhs": [_factor("x", u, v, pin), _factor("y", u, v, pin)],
            "rhs": {"re": val.real, "im": val.imag},
        })
    return PolynomialSystem(unknowns, pin, eqs)
