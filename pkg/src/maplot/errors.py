"""Shared error types for the MA-plot workbench.

Every error carries a stable machine-readable ``code`` (its class name) so the
HTTP layer can surface engine failures verbatim, plus an optional structured
``detail`` payload (line numbers, offending names, bundle paths).
"""

from __future__ import annotations

from typing import Any


class EngineError(Exception):
    """Base class for all workbench errors."""

    code = "EngineError"

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail = {key: value for key, value in detail.items() if value is not None}


class NonPositiveIntensity(EngineError):
    """Raw intensity (after any pseudocount adjustment) is not a positive finite number."""

    code = "NonPositiveIntensity"


class AlphaOutOfRange(EngineError):
    """Significance level outside the half-open interval (0, 1]."""

    code = "AlphaOutOfRange"


class PValueOutOfRange(EngineError):
    """p-value present but outside [0, 1]."""

    code = "PValueOutOfRange"


class SchemaError(EngineError):
    """CSV header matches neither the raw-intensity nor the precomputed schema."""

    code = "SchemaError"


class MalformedRow(EngineError):
    """A CSV data row could not be parsed (wrong arity, non-numeric field, empty name)."""

    code = "MalformedRow"


class DuplicateGeneName(EngineError):
    """A gene name occurs more than once; names are the selection key and must be unique."""

    code = "DuplicateGeneName"


class DatasetTooLarge(EngineError):
    """Row count exceeds the configured maximum."""

    code = "DatasetTooLarge"


class DegeneratePolygon(EngineError):
    """Lasso polygon is unusable: fewer than 3 vertices, non-finite coordinates, or zero area."""

    code = "DegeneratePolygon"


class MixedDatasets(EngineError):
    """Selections from different datasets cannot be combined."""

    code = "MixedDatasets"


class UnknownDataset(EngineError):
    code = "UnknownDataset"


class UnknownSession(EngineError):
    code = "UnknownSession"


class UnknownSelection(EngineError):
    code = "UnknownSelection"


class UnknownGene(EngineError):
    code = "UnknownGene"


class NotesTooLarge(EngineError):
    """Session notes exceed the configured byte limit."""

    code = "NotesTooLarge"


class UnsupportedVersion(EngineError):
    """Session bundle declares a format version this build cannot read."""

    code = "UnsupportedVersion"


class CorruptBundle(EngineError):
    """Session bundle is structurally invalid; ``detail['path']`` points at the first offender."""

    code = "CorruptBundle"


# Raised by the HTTP layer rather than the engine, but kept here so every
# wire-visible code lives in one registry.


class BadRequest(EngineError):
    code = "BadRequest"


class PayloadTooLarge(EngineError):
    code = "PayloadTooLarge"
