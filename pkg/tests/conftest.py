from __future__ import annotations

import random

import numpy as np
import pytest

from maplot.core import MAPoint
from maplot.ingest import Dataset, GeneRecord


def make_dataset(
    rows: list[tuple[str, float, float, float | None]], dataset_id: str = "ds-test"
) -> Dataset:
    """Build a Dataset from (name, m, a, p) tuples."""
    records = [GeneRecord(name, MAPoint(m, a), p) for name, m, a, p in rows]
    return Dataset(dataset_id, records)


def random_dataset(rng: random.Random, n: int, dataset_id: str = "ds-rand") -> Dataset:
    """Random genes with occasional missing p-values and p ties."""
    rows = []
    for i in range(n):
        p: float | None
        roll = rng.random()
        if roll < 0.15:
            p = None
        elif roll < 0.3:
            p = rng.choice([0.01, 0.05, 0.5])  # deliberate ties
        else:
            p = rng.random()
        rows.append((f"G{i:04d}", rng.uniform(-6.0, 6.0), rng.uniform(0.0, 16.0), p))
    return make_dataset(rows, dataset_id)


@pytest.fixture
def tiny_dataset() -> Dataset:
    return make_dataset(
        [
            ("BRCA1", 2.0, 5.0, 0.001),
            ("BRCA2", -1.5, 4.0, 0.02),
            ("TP53", 0.5, 8.0, 0.4),
            ("EGFR", 3.0, 2.0, None),
            ("MYC", -0.2, 6.0, 0.05),
            ("KRAS", 0.0, 3.0, 0.0001),
        ]
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)


@pytest.fixture
def np_rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
