"""Gene selection: lasso polygons, boxes, name search, and Boolean combination.

Plot-space coordinates are (a, m) pairs: a on the x-axis, m on the y-axis.
Point-in-polygon uses the even-odd (ray casting) rule, so free-hand lassos
that self-intersect still resolve sensibly. Points within ``BOUNDARY_EPS`` of
an edge count as inside: a gesture should err toward including what it
visibly encloses.
"""

from __future__ import annotations

import math
import uuid
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Sequence

import numpy as np

from .errors import DegeneratePolygon, MixedDatasets, UnknownGene
from .ingest import Dataset

BOUNDARY_EPS = 1e-9


def _new_id() -> str:
    return "sel-" + uuid.uuid4().hex[:8]


@dataclass(frozen=True)
class Polygon:
    """Implicitly closed polygon with at least 3 finite vertices."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        vertices = tuple((float(a), float(m)) for a, m in self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) < 3:
            raise DegeneratePolygon(
                f"a polygon needs at least 3 vertices, got {len(vertices)}"
            )
        if not all(math.isfinite(a) and math.isfinite(m) for a, m in vertices):
            raise DegeneratePolygon("polygon vertices must be finite")
        if _all_collinear(vertices):
            raise DegeneratePolygon("zero-area polygon: all vertices are collinear")


@dataclass(frozen=True)
class Box:
    """Axis-aligned selection rectangle; bounds are inclusive."""

    a_min: float
    a_max: float
    m_min: float
    m_max: float

    def __post_init__(self):
        for name in ("a_min", "a_max", "m_min", "m_max"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.a_min > self.a_max or self.m_min > self.m_max:
            raise ValueError(
                f"box bounds out of order: a=[{self.a_min}, {self.a_max}], "
                f"m=[{self.m_min}, {self.m_max}]"
            )

    def as_polygon(self) -> Polygon:
        return Polygon(
            (
                (self.a_min, self.m_min),
                (self.a_max, self.m_min),
                (self.a_max, self.m_max),
                (self.a_min, self.m_max),
            )
        )


class CombineOp(str, Enum):
    KEEP_ALL = "keep_all"
    KEEP_MULTIPLES = "keep_multiples"
    KEEP_SINGLES = "keep_singles"


@dataclass(frozen=True)
class Origin:
    """How a selection came to be; subclasses carry the gesture or query."""

    kind: ClassVar[str] = "unknown"

    def describe(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class LassoOrigin(Origin):
    kind: ClassVar[str] = "lasso"
    polygon: Polygon

    def describe(self) -> dict:
        return {"kind": self.kind, "vertices": [[a, m] for a, m in self.polygon.vertices]}


@dataclass(frozen=True)
class BoxOrigin(Origin):
    kind: ClassVar[str] = "box"
    box: Box

    def describe(self) -> dict:
        b = self.box
        return {
            "kind": self.kind,
            "a_min": b.a_min,
            "a_max": b.a_max,
            "m_min": b.m_min,
            "m_max": b.m_max,
        }


@dataclass(frozen=True)
class SearchOrigin(Origin):
    kind: ClassVar[str] = "search"
    query: str = ""
    pick: str | None = None

    def describe(self) -> dict:
        out = {"kind": self.kind, "query": self.query}
        if self.pick is not None:
            out["pick"] = self.pick
        return out


@dataclass(frozen=True)
class CombineOrigin(Origin):
    kind: ClassVar[str] = "combine"
    op: CombineOp = CombineOp.KEEP_ALL
    inputs: tuple[str, ...] = ()

    def describe(self) -> dict:
        return {"kind": self.kind, "op": self.op.value, "inputs": list(self.inputs)}


@dataclass(frozen=True)
class SelectionSet:
    """Named, immutable set of gene names plus the gesture/query that made it."""

    id: str
    label: str
    dataset_id: str
    members: frozenset[str]
    origin: Origin

    @property
    def sorted_members(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def _all_collinear(vertices: Sequence[tuple[float, float]]) -> bool:
    x0, y0 = vertices[0]
    direction = None
    for x, y in vertices[1:]:
        if direction is None:
            if (x, y) != (x0, y0):
                direction = (x - x0, y - y0)
            continue
        if (x - x0) * direction[1] - (y - y0) * direction[0] != 0.0:
            return False
    return True


def _segment_distance_sq(
    px: float, py: float, x1: float, y1: float, x2: float, y2: float
) -> float:
    dx = x2 - x1
    dy = y2 - y1
    seg = dx * dx + dy * dy
    if seg == 0.0:
        ex = px - x1
        ey = py - y1
    else:
        t = ((px - x1) * dx + (py - y1) * dy) / seg
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        ex = x1 + t * dx - px
        ey = y1 + t * dy - py
    return ex * ex + ey * ey


def point_in_polygon(point: tuple[float, float], polygon: Polygon) -> bool:
    """Even-odd containment; points within BOUNDARY_EPS of an edge are inside."""
    x = float(point[0])
    y = float(point[1])
    vertices = polygon.vertices
    n = len(vertices)
    eps_sq = BOUNDARY_EPS * BOUNDARY_EPS
    inside = False
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        if _segment_distance_sq(x, y, x1, y1, x2, y2) <= eps_sq:
            return True
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < x_cross:
                inside = not inside
    return inside


def points_in_polygon(a: np.ndarray, m: np.ndarray, polygon: Polygon) -> np.ndarray:
    """Vectorized point_in_polygon over parallel coordinate arrays.

    Keeps the exact arithmetic of the scalar version (same operation order) so
    the two agree bit-for-bit.
    """
    xs = np.asarray(a, dtype=float)
    ys = np.asarray(m, dtype=float)
    inside = np.zeros(xs.shape, dtype=bool)
    boundary = np.zeros(xs.shape, dtype=bool)
    eps_sq = BOUNDARY_EPS * BOUNDARY_EPS
    vertices = polygon.vertices
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        dx = x2 - x1
        dy = y2 - y1
        seg = dx * dx + dy * dy
        if seg == 0.0:
            ex = x1 - xs
            ey = y1 - ys
        else:
            t = np.clip(((xs - x1) * dx + (ys - y1) * dy) / seg, 0.0, 1.0)
            ex = x1 + t * dx - xs
            ey = y1 + t * dy - ys
        boundary |= ex * ex + ey * ey <= eps_sq
        if dy != 0.0:
            crosses = (y1 > ys) != (y2 > ys)
            x_cross = x1 + (ys - y1) * dx / dy
            inside ^= crosses & (xs < x_cross)
    return inside | boundary


def select_lasso(
    dataset: Dataset,
    polygon: Polygon,
    *,
    sel_id: str | None = None,
    label: str | None = None,
) -> SelectionSet:
    """All genes whose (a, m) point falls inside the lasso, any classification."""
    mask = points_in_polygon(dataset.a_values, dataset.m_values, polygon)
    members = frozenset(name for name, keep in zip(dataset.names, mask) if keep)
    sel_id = sel_id or _new_id()
    return SelectionSet(
        id=sel_id,
        label=label or f"lasso {sel_id}",
        dataset_id=dataset.id,
        members=members,
        origin=LassoOrigin(polygon=polygon),
    )


def select_box(
    dataset: Dataset,
    box: Box,
    *,
    sel_id: str | None = None,
    label: str | None = None,
) -> SelectionSet:
    """All genes with a_min <= a <= a_max and m_min <= m <= m_max."""
    a = dataset.a_values
    m = dataset.m_values
    mask = (a >= box.a_min) & (a <= box.a_max) & (m >= box.m_min) & (m <= box.m_max)
    members = frozenset(name for name, keep in zip(dataset.names, mask) if keep)
    sel_id = sel_id or _new_id()
    return SelectionSet(
        id=sel_id,
        label=label or f"box {sel_id}",
        dataset_id=dataset.id,
        members=members,
        origin=BoxOrigin(box=box),
    )


def search_names(dataset: Dataset, query: str) -> list[str]:
    """Case-insensitive substring match, ordered by match position then name."""
    if not query:
        return []
    needle = query.lower()
    matches = []
    for name in dataset.names:
        position = name.lower().find(needle)
        if position >= 0:
            matches.append((position, name))
    matches.sort()
    return [name for _, name in matches]


def select_search(
    dataset: Dataset,
    query: str,
    pick: str | None = None,
    *,
    sel_id: str | None = None,
    label: str | None = None,
) -> SelectionSet:
    """Promote a search to a selection: all matches, or a single picked gene."""
    if pick is not None:
        if pick not in dataset.name_index:
            raise UnknownGene(f"gene {pick!r} is not in dataset {dataset.id!r}", name=pick)
        members = frozenset({pick})
    else:
        members = frozenset(search_names(dataset, query))
    sel_id = sel_id or _new_id()
    return SelectionSet(
        id=sel_id,
        label=label or f"search {query!r}",
        dataset_id=dataset.id,
        members=members,
        origin=SearchOrigin(query=query, pick=pick),
    )


def combine(
    sets: Sequence[SelectionSet],
    op: CombineOp,
    *,
    sel_id: str | None = None,
    label: str | None = None,
) -> SelectionSet:
    """Keep all (union), keep multiples (in >= 2 inputs), keep singles (in exactly 1)."""
    if not sets:
        raise ValueError("combine requires at least one input selection")
    op = CombineOp(op)
    dataset_id = sets[0].dataset_id
    for s in sets[1:]:
        if s.dataset_id != dataset_id:
            raise MixedDatasets(
                f"selections reference different datasets: {dataset_id!r} and {s.dataset_id!r}"
            )
    counts: Counter[str] = Counter()
    for s in sets:
        counts.update(s.members)
    if op is CombineOp.KEEP_ALL:
        members = frozenset(counts)
    elif op is CombineOp.KEEP_MULTIPLES:
        members = frozenset(name for name, c in counts.items() if c >= 2)
    else:
        members = frozenset(name for name, c in counts.items() if c == 1)
    sel_id = sel_id or _new_id()
    return SelectionSet(
        id=sel_id,
        label=label or f"{op.value} of {len(sets)} selections",
        dataset_id=dataset_id,
        members=members,
        origin=CombineOrigin(op=op, inputs=tuple(s.id for s in sets)),
    )
