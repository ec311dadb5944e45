"""In-memory registries mapping ids to datasets and sessions.

Ids are counter-based ("ds-1", "s-1", ...) so that the same operation
sequence against two registries yields the same ids; this is what makes
results over HTTP directly comparable with results from engine calls.
"""

from __future__ import annotations

import threading

from .errors import BadRequest, UnknownDataset, UnknownSession
from .ingest import Dataset
from .session import Session


class DatasetRegistry:
    def __init__(self):
        self._lock = threading.Lock()
        self._items: dict[str, Dataset] = {}
        self._counter = 0

    def reserve_id(self) -> str:
        with self._lock:
            self._counter += 1
            return f"ds-{self._counter}"

    def put(self, dataset: Dataset) -> Dataset:
        with self._lock:
            self._items[dataset.id] = dataset
            return dataset

    def put_imported(self, dataset: Dataset) -> Dataset:
        """Register a dataset from a bundle; identical re-imports are reused."""
        with self._lock:
            existing = self._items.get(dataset.id)
            if existing is None:
                self._items[dataset.id] = dataset
                return dataset
            if existing.records == dataset.records:
                return existing
            raise BadRequest(
                f"dataset id {dataset.id!r} is already registered with different content",
                dataset_id=dataset.id,
            )

    def get(self, dataset_id: str) -> Dataset:
        with self._lock:
            try:
                return self._items[dataset_id]
            except KeyError:
                raise UnknownDataset(
                    f"dataset {dataset_id!r} does not exist", dataset_id=dataset_id
                ) from None

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._items)


class SessionRegistry:
    def __init__(self):
        self._lock = threading.Lock()
        self._items: dict[str, Session] = {}
        self._counter = 0

    def create(self, dataset: Dataset, alpha: float, max_notes_bytes: int) -> Session:
        with self._lock:
            self._counter += 1
            session = Session(
                dataset,
                alpha,
                session_id=f"s-{self._counter}",
                max_notes_bytes=max_notes_bytes,
            )
            self._items[session.id] = session
            return session

    def put_imported(self, session: Session) -> Session:
        """Register a bundle-restored session; an existing same-id session is replaced."""
        with self._lock:
            self._items[session.id] = session
            return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            try:
                return self._items[session_id]
            except KeyError:
                raise UnknownSession(
                    f"session {session_id!r} does not exist", session_id=session_id
                ) from None

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._items)
