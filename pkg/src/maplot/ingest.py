"""CSV ingestion: schema detection, validation, and the immutable Dataset.

Two header schemas are accepted (case-insensitive, with synonyms):

* raw intensities: ``name, intensity_r, intensity_g, pvalue``
* precomputed statistics: ``name, m, a, pvalue``

Synonyms: ``gene``/``gene_name`` for ``name``, ``log2foldchange`` for ``m``,
``avg_expr``/``basemean_log2`` for ``a``, ``padj``/``p`` for ``pvalue``. An
empty p-value cell or the literals NA/NaN (any case) mean "missing". Extra
columns are ignored with a warning in the ingest report.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from .core import MAPoint, compute_ma, validate_alpha
from .errors import (
    DatasetTooLarge,
    DuplicateGeneName,
    MalformedRow,
    PValueOutOfRange,
    NonPositiveIntensity,
    SchemaError,
    UnknownGene,
)

RAW_COLUMNS = ("name", "intensity_r", "intensity_g", "pvalue")
PRECOMPUTED_COLUMNS = ("name", "m", "a", "pvalue")

HEADER_SYNONYMS = {
    "gene": "name",
    "gene_name": "name",
    "log2foldchange": "m",
    "avg_expr": "a",
    "basemean_log2": "a",
    "padj": "pvalue",
    "p": "pvalue",
}

MISSING_P_TOKENS = frozenset({"", "na", "nan"})

DEFAULT_MAX_ROWS = 1_000_000


@dataclass(frozen=True)
class RawIntensities:
    """Original per-condition intensities, kept for provenance."""

    r: float
    g: float


@dataclass(frozen=True)
class GeneRecord:
    """One gene: unique name, plot coordinates, p-value (None = missing)."""

    name: str
    point: MAPoint
    p: float | None
    raw: RawIntensities | None = None

    @property
    def m(self) -> float:
        return self.point.m

    @property
    def a(self) -> float:
        return self.point.a


class Dataset:
    """Immutable ordered collection of GeneRecords with a unique-name index.

    Safe to share across sessions and threads; numeric column views are
    materialized lazily and cached.
    """

    def __init__(self, dataset_id: str, records: Iterable[GeneRecord], pseudocount: float = 0.0):
        self.id = dataset_id
        self.records: tuple[GeneRecord, ...] = tuple(records)
        self.pseudocount = pseudocount
        index: dict[str, int] = {}
        for position, record in enumerate(self.records):
            if record.name in index:
                raise DuplicateGeneName(
                    f"duplicate gene name {record.name!r}", name=record.name
                )
            index[record.name] = position
        self.name_index: Mapping[str, int] = MappingProxyType(index)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[GeneRecord]:
        return iter(self.records)

    def __contains__(self, name: object) -> bool:
        return name in self.name_index

    def record(self, name: str) -> GeneRecord:
        try:
            return self.records[self.name_index[name]]
        except KeyError:
            raise UnknownGene(f"gene {name!r} is not in dataset {self.id!r}", name=name) from None

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(record.name for record in self.records)

    @cached_property
    def names_array(self) -> np.ndarray:
        # Fixed-width unicode so the array is usable as a numpy sort key.
        return np.array(self.names, dtype=np.str_) if self.records else np.empty(0, dtype="U1")

    @cached_property
    def m_values(self) -> np.ndarray:
        return np.fromiter((r.point.m for r in self.records), dtype=float, count=len(self.records))

    @cached_property
    def a_values(self) -> np.ndarray:
        return np.fromiter((r.point.a for r in self.records), dtype=float, count=len(self.records))

    @cached_property
    def p_values(self) -> np.ndarray:
        """p per gene, with NaN standing in for missing values."""
        return np.fromiter(
            (math.nan if r.p is None else r.p for r in self.records),
            dtype=float,
            count=len(self.records),
        )


@dataclass
class IngestReport:
    """What ingestion did: detected schema, row count, non-fatal warnings."""

    schema: str
    rows: int
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class IngestResult:
    dataset: Dataset
    report: IngestReport


@dataclass(frozen=True)
class DatasetSummary:
    """Counts per classification at one alpha plus M/A extrema (None when empty)."""

    gene_count: int
    up: int
    down: int
    not_significant: int
    missing_p: int
    m_min: float | None
    m_max: float | None
    a_min: float | None
    a_max: float | None


def parse_csv(
    data: bytes | str,
    *,
    pseudocount: float = 0.0,
    max_rows: int = DEFAULT_MAX_ROWS,
    dataset_id: str = "dataset",
) -> IngestResult:
    """Parse UTF-8, comma-delimited text with one header row into a Dataset.

    Rows are preserved in file order. All errors carry the 1-based line number
    of the offending row (the header is line 1).
    """
    if isinstance(data, (bytes, bytearray, memoryview)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"input is not valid UTF-8 text: {exc}") from None
    else:
        text = data

    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty input: missing header row") from None

    positions: dict[str, int] = {}
    for i, cell in enumerate(header):
        column = cell.strip().lower()
        column = HEADER_SYNONYMS.get(column, column)
        if column in positions:
            raise SchemaError(
                f"column {column!r} appears more than once after synonym mapping",
                column=column,
            )
        positions[column] = i

    has_raw = all(c in positions for c in RAW_COLUMNS)
    has_precomputed = all(c in positions for c in PRECOMPUTED_COLUMNS)
    if not has_raw and not has_precomputed:
        raise SchemaError(
            "header matches neither the raw schema (name, intensity_r, intensity_g, pvalue) "
            "nor the precomputed schema (name, m, a, pvalue)",
            header=[cell.strip() for cell in header],
        )

    warnings: list[str] = []
    schema = "raw" if has_raw else "precomputed"
    if has_raw and has_precomputed:
        warnings.append(
            "both raw-intensity and precomputed columns present; "
            "using raw intensities and ignoring m/a"
        )
    used = set(RAW_COLUMNS if schema == "raw" else PRECOMPUTED_COLUMNS)
    ignored = [
        header[i].strip()
        for column, i in positions.items()
        if column not in used
    ]
    if ignored:
        warnings.append("ignored columns: " + ", ".join(sorted(ignored)))

    expected_fields = len(header)
    name_col = positions["name"]
    p_col = positions["pvalue"]
    records: list[GeneRecord] = []
    seen: set[str] = set()

    while True:
        line = reader.line_num + 1
        try:
            row = next(reader)
        except StopIteration:
            break
        if not row:
            continue
        if len(records) >= max_rows:
            raise DatasetTooLarge(
                f"dataset exceeds the configured maximum of {max_rows} rows",
                max_rows=max_rows,
            )
        if len(row) != expected_fields:
            raise MalformedRow(
                f"expected {expected_fields} fields, got {len(row)}", line=line
            )
        name = row[name_col].strip()
        if not name:
            raise MalformedRow("empty gene name", line=line)
        if name in seen:
            raise DuplicateGeneName(
                f"duplicate gene name {name!r}", name=name, line=line
            )
        p = _parse_pvalue(row[p_col], line)
        if schema == "raw":
            r = _parse_number(row[positions["intensity_r"]], "intensity_r", line)
            g = _parse_number(row[positions["intensity_g"]], "intensity_g", line)
            try:
                point = compute_ma(r, g, pseudocount=pseudocount)
            except NonPositiveIntensity as exc:
                raise NonPositiveIntensity(exc.message, line=line) from None
            record = GeneRecord(name, point, p, raw=RawIntensities(r, g))
        else:
            m = _parse_number(row[positions["m"]], "m", line, require_finite=True)
            a = _parse_number(row[positions["a"]], "a", line, require_finite=True)
            record = GeneRecord(name, MAPoint(m, a), p)
        seen.add(name)
        records.append(record)

    dataset = Dataset(dataset_id, records, pseudocount=pseudocount)
    return IngestResult(dataset, IngestReport(schema, len(records), warnings))


def _parse_number(cell: str, column: str, line: int, require_finite: bool = False) -> float:
    token = cell.strip()
    try:
        value = float(token)
    except ValueError:
        raise MalformedRow(
            f"non-numeric value {cell!r} in column {column!r}", line=line, column=column
        ) from None
    if require_finite and not math.isfinite(value):
        raise MalformedRow(
            f"non-finite value {cell!r} in column {column!r}", line=line, column=column
        )
    return value


def _parse_pvalue(cell: str, line: int) -> float | None:
    token = cell.strip()
    if token.lower() in MISSING_P_TOKENS:
        return None
    try:
        value = float(token)
    except ValueError:
        raise MalformedRow(
            f"non-numeric value {cell!r} in column 'pvalue'", line=line, column="pvalue"
        ) from None
    if not (0.0 <= value <= 1.0):
        raise PValueOutOfRange(
            f"p-value must be in [0, 1], got {value}", line=line, value=value
        )
    return value


def dataset_summary(dataset: Dataset, alpha: float) -> DatasetSummary:
    """Gene count, per-classification counts at alpha, and M/A extrema."""
    alpha = validate_alpha(alpha)
    n = len(dataset)
    if n == 0:
        return DatasetSummary(0, 0, 0, 0, 0, None, None, None, None)
    p = dataset.p_values
    m = dataset.m_values
    a = dataset.a_values
    missing = np.isnan(p)
    significant = ~missing & (p < alpha)
    up = int(np.count_nonzero(significant & (m > 0.0)))
    down = int(np.count_nonzero(significant & (m < 0.0)))
    missing_count = int(np.count_nonzero(missing))
    return DatasetSummary(
        gene_count=n,
        up=up,
        down=down,
        not_significant=n - up - down - missing_count,
        missing_p=missing_count,
        m_min=float(m.min()),
        m_max=float(m.max()),
        a_min=float(a.min()),
        a_max=float(a.max()),
    )
