"""Per-analysis session state: alpha, named selections, tracked set, notes.

A session is the mutable half of the workbench. It owns a deterministic
selection-id counter and an append-only event log; replaying the log against
the same dataset reproduces the same state (timestamps aside), which is what
makes the select/filter/track loop auditable.

Sessions are single-writer: every mutating method takes the session lock, so
concurrent HTTP requests against one session serialize cleanly. Distinct
sessions share nothing but immutable datasets.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Mapping, Sequence

from . import filters as filters_mod
from . import selection as selection_mod
from .core import validate_alpha
from .errors import NotesTooLarge, UnknownSelection
from .ingest import Dataset
from .selection import Box, CombineOp, Polygon, SelectionSet

MAX_NOTES_BYTES = 1 << 20  # 1 MiB

# Filters may take the current tracked set as their input instead of a stored
# selection.
TRACKED_SOURCE = "tracked"

_SEL_ID_RE = re.compile(r"^sel-(\d+)$")


@dataclass(frozen=True)
class SessionEvent:
    ts: str
    action: str
    data: dict


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class Session:
    """Mutable analysis state bound to one immutable dataset."""

    def __init__(
        self,
        dataset: Dataset,
        alpha: float,
        session_id: str = "session",
        max_notes_bytes: int = MAX_NOTES_BYTES,
    ):
        alpha = validate_alpha(alpha)
        self.id = session_id
        self.dataset = dataset
        self.max_notes_bytes = max_notes_bytes
        self._alpha = alpha
        self._selections: dict[str, SelectionSet] = {}
        self._tracked: set[str] = set()
        self._notes = ""
        self._events: list[SessionEvent] = []
        self._sel_counter = 0
        self._lock = threading.RLock()
        self._log("create", {"alpha": alpha})

    # -- read surface ------------------------------------------------------

    @property
    def dataset_id(self) -> str:
        return self.dataset.id

    @property
    def alpha(self) -> float:
        return self._alpha

    @property
    def notes(self) -> str:
        return self._notes

    @property
    def tracked(self) -> frozenset[str]:
        return frozenset(self._tracked)

    @property
    def selections(self) -> Mapping[str, SelectionSet]:
        with self._lock:
            return dict(self._selections)

    @property
    def event_log(self) -> tuple[SessionEvent, ...]:
        with self._lock:
            return tuple(self._events)

    def selection(self, selection_id: str) -> SelectionSet:
        with self._lock:
            try:
                return self._selections[selection_id]
            except KeyError:
                raise UnknownSelection(
                    f"selection {selection_id!r} does not exist in session {self.id!r}",
                    selection_id=selection_id,
                ) from None

    def snapshot(self) -> dict:
        """Comparable plain-data view of the state, timestamps excluded."""
        with self._lock:
            return {
                "id": self.id,
                "dataset_id": self.dataset.id,
                "alpha": self._alpha,
                "selections": [
                    {
                        "id": s.id,
                        "label": s.label,
                        "origin": s.origin.describe(),
                        "members": sorted(s.members),
                    }
                    for s in self._selections.values()
                ],
                "tracked": sorted(self._tracked),
                "notes": self._notes,
            }

    # -- mutations ---------------------------------------------------------

    def set_alpha(self, alpha: float) -> None:
        """Update the significance level; selections, tracked set, notes untouched.

        Classifications are always computed on read, so nothing else changes.
        """
        alpha = validate_alpha(alpha)
        with self._lock:
            self._alpha = alpha
            self._log("set_alpha", {"alpha": alpha})

    def select_lasso(
        self, vertices: Iterable[tuple[float, float]], label: str | None = None
    ) -> SelectionSet:
        polygon = Polygon(tuple((a, m) for a, m in vertices))
        with self._lock:
            sel_id = self._next_sel_id()
            sel = selection_mod.select_lasso(
                self.dataset, polygon, sel_id=sel_id, label=label
            )
            self._selections[sel_id] = sel
            self._log(
                "select_lasso",
                {
                    "id": sel_id,
                    "label": sel.label,
                    "vertices": [[a, m] for a, m in polygon.vertices],
                },
            )
            return sel

    def select_box(self, box: Box, label: str | None = None) -> SelectionSet:
        with self._lock:
            sel_id = self._next_sel_id()
            sel = selection_mod.select_box(self.dataset, box, sel_id=sel_id, label=label)
            self._selections[sel_id] = sel
            self._log(
                "select_box",
                {
                    "id": sel_id,
                    "label": sel.label,
                    "a_min": box.a_min,
                    "a_max": box.a_max,
                    "m_min": box.m_min,
                    "m_max": box.m_max,
                },
            )
            return sel

    def select_search(
        self, query: str, pick: str | None = None, label: str | None = None
    ) -> SelectionSet:
        with self._lock:
            sel_id = self._next_sel_id()
            sel = selection_mod.select_search(
                self.dataset, query, pick, sel_id=sel_id, label=label
            )
            self._selections[sel_id] = sel
            data = {"id": sel_id, "label": sel.label, "query": query}
            if pick is not None:
                data["pick"] = pick
            self._log("select_search", data)
            return sel

    def combine_selections(
        self, op: CombineOp, input_ids: Sequence[str], label: str | None = None
    ) -> SelectionSet:
        with self._lock:
            inputs = [self.selection(i) for i in input_ids]
            sel_id = self._next_sel_id()
            sel = selection_mod.combine(inputs, op, sel_id=sel_id, label=label)
            self._selections[sel_id] = sel
            self._log(
                "combine",
                {
                    "id": sel_id,
                    "label": sel.label,
                    "op": CombineOp(op).value,
                    "inputs": list(input_ids),
                },
            )
            return sel

    def apply_filter(
        self,
        spec: filters_mod.FilterSpec,
        source: str | None = None,
        label: str | None = None,
    ) -> SelectionSet:
        """Filter the whole dataset (source=None), a stored selection (its id),
        or the current tracked set (source="tracked")."""
        with self._lock:
            genes = self._resolve_source(source)
            sel_id = self._next_sel_id()
            sel = filters_mod.apply_filter(
                self.dataset, genes, spec, sel_id=sel_id, label=label, source=source
            )
            self._selections[sel_id] = sel
            data = {
                "id": sel_id,
                "label": sel.label,
                "spec": filters_mod.spec_to_json(spec),
            }
            if source is not None:
                data["source"] = source
            self._log("filter", data)
            return sel

    def track(self, selection_id: str) -> None:
        """Replace the tracked set with a selection's members."""
        with self._lock:
            sel = self.selection(selection_id)
            self._tracked = set(sel.members)
            self._log("track", {"selection": selection_id})

    def expand_tracked(self, selection_id: str) -> None:
        """Union a selection's members into the tracked set."""
        with self._lock:
            sel = self.selection(selection_id)
            self._tracked |= sel.members
            self._log("expand_tracked", {"selection": selection_id})

    def set_notes(self, text: str) -> None:
        if len(text.encode("utf-8")) > self.max_notes_bytes:
            raise NotesTooLarge(
                f"notes exceed {self.max_notes_bytes} bytes", limit=self.max_notes_bytes
            )
        with self._lock:
            self._notes = text
            self._log("set_notes", {"notes": text})

    # -- replay / restore ----------------------------------------------------

    @classmethod
    def replay(
        cls,
        dataset: Dataset,
        events: Sequence[SessionEvent],
        session_id: str = "session",
    ) -> Session:
        """Re-run an event log against the same dataset.

        The result matches the original session snapshot (timestamps are
        regenerated). Assumes a well-formed log starting with a create event.
        """
        session: Session | None = None
        for event in events:
            data = event.data
            if event.action == "create":
                session = cls(dataset, data["alpha"], session_id=session_id)
                continue
            if session is None:
                raise ValueError("event log does not start with a create event")
            if event.action == "set_alpha":
                session.set_alpha(data["alpha"])
            elif event.action == "select_lasso":
                session.select_lasso(data["vertices"], label=data.get("label"))
            elif event.action == "select_box":
                session.select_box(
                    Box(data["a_min"], data["a_max"], data["m_min"], data["m_max"]),
                    label=data.get("label"),
                )
            elif event.action == "select_search":
                session.select_search(
                    data["query"], data.get("pick"), label=data.get("label")
                )
            elif event.action == "combine":
                session.combine_selections(
                    CombineOp(data["op"]), data["inputs"], label=data.get("label")
                )
            elif event.action == "filter":
                session.apply_filter(
                    filters_mod.spec_from_json(data["spec"]),
                    source=data.get("source"),
                    label=data.get("label"),
                )
            elif event.action == "track":
                session.track(data["selection"])
            elif event.action == "expand_tracked":
                session.expand_tracked(data["selection"])
            elif event.action == "set_notes":
                session.set_notes(data["notes"])
            else:
                raise ValueError(f"unknown event action {event.action!r}")
        if session is None:
            raise ValueError("empty event log")
        return session

    @classmethod
    def restore(
        cls,
        dataset: Dataset,
        *,
        session_id: str,
        alpha: float,
        selections: Sequence[SelectionSet],
        tracked: Iterable[str],
        notes: str,
        events: Sequence[SessionEvent],
        max_notes_bytes: int = MAX_NOTES_BYTES,
    ) -> Session:
        """Rebuild a session verbatim (used by bundle import; inputs pre-validated)."""
        session = cls(dataset, alpha, session_id=session_id, max_notes_bytes=max_notes_bytes)
        with session._lock:
            session._events.clear()
            for sel in selections:
                session._selections[sel.id] = sel
                match = _SEL_ID_RE.match(sel.id)
                if match:
                    session._sel_counter = max(session._sel_counter, int(match.group(1)))
            session._tracked = set(tracked)
            session._notes = notes
            session._events.extend(events)
        return session

    # -- internals -----------------------------------------------------------

    def _resolve_source(self, source: str | None) -> list[str] | None:
        if source is None:
            return None
        if source == TRACKED_SOURCE:
            return sorted(self._tracked)
        return sorted(self.selection(source).members)

    def _next_sel_id(self) -> str:
        self._sel_counter += 1
        return f"sel-{self._sel_counter}"

    def _log(self, action: str, data: dict) -> None:
        self._events.append(SessionEvent(_now(), action, data))
