"""Independent reference implementations used to cross-check the engine.

These deliberately use different algorithms than the package: winding number
instead of ray casting for containment, per-gene occurrence counting for the
set combinators. They must stay free of imports from the package's selection
internals.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence

Vertex = tuple[float, float]


def _is_left(point: Vertex, a: Vertex, b: Vertex) -> float:
    """> 0 if point is left of the directed line a->b, < 0 right, 0 on it."""
    return (b[0] - a[0]) * (point[1] - a[1]) - (point[0] - a[0]) * (b[1] - a[1])


def winding_number(point: Vertex, vertices: Sequence[Vertex]) -> int:
    wn = 0
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        if a[1] <= point[1]:
            if b[1] > point[1] and _is_left(point, a, b) > 0:
                wn += 1
        elif b[1] <= point[1] and _is_left(point, a, b) < 0:
            wn -= 1
    return wn


def contains_winding(point: Vertex, vertices: Sequence[Vertex]) -> bool:
    """Nonzero-winding containment; agrees with even-odd on simple polygons."""
    return winding_number(point, vertices) != 0


def min_edge_distance(point: Vertex, vertices: Sequence[Vertex]) -> float:
    """Distance from point to the nearest polygon edge."""
    px, py = point
    best = math.inf
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        dx, dy = x2 - x1, y2 - y1
        seg = dx * dx + dy * dy
        if seg == 0.0:
            t = 0.0
        else:
            t = max(0.0, min(1.0, ((px - x1) * dx + (py - y1) * dy) / seg))
        ex = x1 + t * dx - px
        ey = y1 + t * dy - py
        best = min(best, math.hypot(ex, ey))
    return best


def random_simple_polygon(rng, n_vertices: int, radius: float = 5.0) -> list[Vertex]:
    """Star-shaped polygon around a random center: sorted angles guarantee simplicity."""
    cx = rng.uniform(-10.0, 10.0)
    cy = rng.uniform(-10.0, 10.0)
    angles = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(n_vertices))
    # Collapse nearly-equal angles so no two vertices coincide.
    vertices = []
    for theta in angles:
        r = rng.uniform(0.3 * radius, radius)
        vertices.append((cx + r * math.cos(theta), cy + r * math.sin(theta)))
    return vertices


def occurrence_counts(sets: Iterable[Iterable[str]]) -> Counter:
    counts: Counter = Counter()
    for members in sets:
        counts.update(set(members))
    return counts


def combine_by_counts(sets: list[set[str]], op: str) -> set[str]:
    counts = occurrence_counts(sets)
    if op == "keep_all":
        return {name for name, c in counts.items() if c >= 1}
    if op == "keep_multiples":
        return {name for name, c in counts.items() if c >= 2}
    if op == "keep_singles":
        return {name for name, c in counts.items() if c == 1}
    raise ValueError(op)
