"""Top-K significance and M/A range filters over datasets and selections.

Both filters accept the whole dataset (``genes=None``) or any gene subset,
so a filter can refine a previous selection or the tracked set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Iterable

import numpy as np

from .errors import CorruptBundle, UnknownGene
from .ingest import Dataset
from .selection import Origin, SelectionSet, _new_id


class RangeMode(str, Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


class TopKDirection(str, Enum):
    # "most_significant" ranks by ascending p; the literal "largest p-value"
    # reading is available as "least_significant".
    MOST_SIGNIFICANT = "most_significant"
    LEAST_SIGNIFICANT = "least_significant"


@dataclass(frozen=True)
class TopKFilter:
    """Keep the first k genes ranked by p (ties broken by name); missing p excluded."""

    kind: ClassVar[str] = "top_k"
    k: int
    direction: TopKDirection = TopKDirection.MOST_SIGNIFICANT

    def __post_init__(self):
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "direction", TopKDirection(self.direction))
        if self.k < 0:
            raise ValueError(f"top-k count must be non-negative, got {self.k}")


@dataclass(frozen=True)
class RangeFilter:
    """Keep genes inside (or outside) the inclusive M/A rectangle."""

    kind: ClassVar[str] = "range"
    m_min: float
    m_max: float
    a_min: float
    a_max: float
    mode: RangeMode = RangeMode.INSIDE

    def __post_init__(self):
        for name in ("m_min", "m_max", "a_min", "a_max"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "mode", RangeMode(self.mode))
        if self.m_min > self.m_max or self.a_min > self.a_max:
            raise ValueError(
                f"range bounds out of order: m=[{self.m_min}, {self.m_max}], "
                f"a=[{self.a_min}, {self.a_max}]"
            )


FilterSpec = TopKFilter | RangeFilter


@dataclass(frozen=True)
class FilterOrigin(Origin):
    kind: ClassVar[str] = "filter"
    spec: FilterSpec
    source: str | None = None

    def describe(self) -> dict:
        out = {"kind": self.kind, "spec": spec_to_json(self.spec)}
        if self.source is not None:
            out["source"] = self.source
        return out


def spec_to_json(spec: FilterSpec) -> dict:
    if isinstance(spec, TopKFilter):
        return {"kind": "top_k", "k": spec.k, "direction": spec.direction.value}
    return {
        "kind": "range",
        "m_min": spec.m_min,
        "m_max": spec.m_max,
        "a_min": spec.a_min,
        "a_max": spec.a_max,
        "mode": spec.mode.value,
    }


def spec_from_json(data: dict, path: str = "spec") -> FilterSpec:
    try:
        kind = data["kind"]
        if kind == "top_k":
            return TopKFilter(
                k=data["k"],
                direction=TopKDirection(data.get("direction", "most_significant")),
            )
        if kind == "range":
            return RangeFilter(
                m_min=data["m_min"],
                m_max=data["m_max"],
                a_min=data["a_min"],
                a_max=data["a_max"],
                mode=RangeMode(data.get("mode", "inside")),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptBundle(f"invalid filter spec: {exc}", path=path) from None
    raise CorruptBundle(f"unknown filter kind {kind!r}", path=path)


def _subset_indices(dataset: Dataset, genes: Iterable[str] | None) -> np.ndarray:
    if genes is None:
        return np.arange(len(dataset))
    index = dataset.name_index
    positions = []
    for name in genes:
        try:
            positions.append(index[name])
        except KeyError:
            raise UnknownGene(
                f"gene {name!r} is not in dataset {dataset.id!r}", name=name
            ) from None
    return np.asarray(sorted(positions), dtype=int)


def filter_top_k(
    dataset: Dataset,
    genes: Iterable[str] | None,
    k: int,
    direction: TopKDirection = TopKDirection.MOST_SIGNIFICANT,
    *,
    sel_id: str | None = None,
    label: str | None = None,
    source: str | None = None,
) -> SelectionSet:
    """Rank by p within the input set and keep the first min(k, available)."""
    spec = TopKFilter(k=k, direction=direction)
    return apply_filter(dataset, genes, spec, sel_id=sel_id, label=label, source=source)


def filter_range(
    dataset: Dataset,
    genes: Iterable[str] | None,
    spec: RangeFilter,
    *,
    sel_id: str | None = None,
    label: str | None = None,
    source: str | None = None,
) -> SelectionSet:
    """Inside keeps genes within the rectangle; outside keeps the exact complement."""
    return apply_filter(dataset, genes, spec, sel_id=sel_id, label=label, source=source)


def apply_filter(
    dataset: Dataset,
    genes: Iterable[str] | None,
    spec: FilterSpec,
    *,
    sel_id: str | None = None,
    label: str | None = None,
    source: str | None = None,
) -> SelectionSet:
    indices = _subset_indices(dataset, genes)
    names = dataset.names_array[indices]
    if isinstance(spec, TopKFilter):
        p = dataset.p_values[indices]
        present = ~np.isnan(p)
        p = p[present]
        ranked_names = names[present]
        key = p if spec.direction is TopKDirection.MOST_SIGNIFICANT else -p
        order = np.lexsort((ranked_names, key))
        members = frozenset(str(n) for n in ranked_names[order[: spec.k]])
    elif isinstance(spec, RangeFilter):
        m = dataset.m_values[indices]
        a = dataset.a_values[indices]
        inside = (
            (m >= spec.m_min) & (m <= spec.m_max) & (a >= spec.a_min) & (a <= spec.a_max)
        )
        mask = inside if spec.mode is RangeMode.INSIDE else ~inside
        members = frozenset(str(n) for n in names[mask])
    else:
        raise TypeError(f"unsupported filter spec: {spec!r}")
    sel_id = sel_id or _new_id()
    return SelectionSet(
        id=sel_id,
        label=label or f"{spec.kind} {sel_id}",
        dataset_id=dataset.id,
        members=members,
        origin=FilterOrigin(spec=spec, source=source),
    )
