"""Serializers: selected-gene CSV, versioned JSON session bundle, static SVG plot.

The bundle is the self-describing save file for a whole analysis: dataset
records, alpha, selections with their origins, tracked set, notes, and the
event log. ``import_session(export_session(s))`` reconstructs an equal
session, and exporting again yields byte-identical output.

Numbers are serialized in their shortest exact round-trip form (Python repr),
so CSV and bundle round-trips preserve every value bit-for-bit.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable
from xml.sax.saxutils import escape, quoteattr

from .core import (
    DEFAULT_SHADE_DEPTH,
    MAPoint,
    classify,
    shade,
    validate_alpha,
    validate_pvalue,
)
from .errors import CorruptBundle, DegeneratePolygon, EngineError, UnknownGene, UnsupportedVersion
from .filters import FilterOrigin, spec_from_json
from .ingest import Dataset, GeneRecord, RawIntensities
from .selection import (
    Box,
    BoxOrigin,
    CombineOp,
    CombineOrigin,
    LassoOrigin,
    Origin,
    Polygon,
    SearchOrigin,
    SelectionSet,
)
from .session import Session, SessionEvent

BUNDLE_FORMAT = "ma-plot-session"
BUNDLE_VERSION = 1

SVG_NS = "http://www.w3.org/2000/svg"
TRACK_COLOR = "#16a34a"


def export_csv(dataset: Dataset, genes: Iterable[str] | None = None) -> bytes:
    """CSV with header ``name,m,a,pvalue``; rows in dataset order.

    ``genes=None`` exports the whole dataset. Missing p becomes an empty
    field. Output re-ingests through parse_csv (precomputed schema).
    """
    if genes is None:
        wanted = None
    else:
        wanted = set(genes)
        for name in sorted(wanted):
            if name not in dataset.name_index:
                raise UnknownGene(
                    f"gene {name!r} is not in dataset {dataset.id!r}", name=name
                )
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["name", "m", "a", "pvalue"])
    for record in dataset.records:
        if wanted is not None and record.name not in wanted:
            continue
        writer.writerow(
            [
                record.name,
                repr(record.m),
                repr(record.a),
                "" if record.p is None else repr(record.p),
            ]
        )
    return buffer.getvalue().encode("utf-8")


# -- session bundle ----------------------------------------------------------


def export_session(session: Session) -> bytes:
    """Serialize the session and its dataset into one canonical JSON document."""
    dataset = session.dataset
    records = []
    for record in dataset.records:
        entry: dict = {"name": record.name, "m": record.m, "a": record.a, "p": record.p}
        if record.raw is not None:
            entry["r"] = record.raw.r
            entry["g"] = record.raw.g
        records.append(entry)
    snapshot = session.snapshot()
    bundle = {
        "format": BUNDLE_FORMAT,
        "format_version": BUNDLE_VERSION,
        "dataset": {
            "id": dataset.id,
            "pseudocount": dataset.pseudocount,
            "records": records,
        },
        "session": {
            "id": session.id,
            "alpha": snapshot["alpha"],
            "selections": snapshot["selections"],
            "tracked": snapshot["tracked"],
            "notes": snapshot["notes"],
            "event_log": [
                {"ts": e.ts, "action": e.action, "data": e.data} for e in session.event_log
            ],
        },
    }
    return json.dumps(bundle, ensure_ascii=False, sort_keys=True, indent=2).encode("utf-8")


def import_session(data: bytes | str) -> Session:
    """Inverse of export_session; validates structure before rebuilding state."""
    if isinstance(data, (bytes, bytearray, memoryview)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorruptBundle(f"bundle is not UTF-8: {exc}", path="$") from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise CorruptBundle(f"bundle is not valid JSON: {exc}", path="$") from None

    root = _expect(doc, dict, "$")
    fmt = _expect(root.get("format"), str, "$.format")
    if fmt != BUNDLE_FORMAT:
        raise CorruptBundle(f"unexpected format {fmt!r}", path="$.format")
    version = root.get("format_version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise CorruptBundle("format_version must be an integer", path="$.format_version")
    if version != BUNDLE_VERSION:
        raise UnsupportedVersion(
            f"bundle format version {version} is not supported (expected {BUNDLE_VERSION})",
            version=version,
        )

    dataset = _load_dataset(_expect(root.get("dataset"), dict, "$.dataset"))
    sess = _expect(root.get("session"), dict, "$.session")
    session_id = _expect(sess.get("id"), str, "$.session.id")
    alpha = _number(sess.get("alpha"), "$.session.alpha")
    try:
        validate_alpha(alpha)
    except EngineError as exc:
        raise CorruptBundle(exc.message, path="$.session.alpha") from None

    selections = []
    raw_selections = _expect(sess.get("selections"), list, "$.session.selections")
    for i, raw_sel in enumerate(raw_selections):
        selections.append(_load_selection(raw_sel, dataset, f"$.session.selections[{i}]"))

    tracked = _expect(sess.get("tracked"), list, "$.session.tracked")
    for i, name in enumerate(tracked):
        if not isinstance(name, str) or name not in dataset.name_index:
            raise CorruptBundle(
                f"tracked gene {name!r} is not in the dataset",
                path=f"$.session.tracked[{i}]",
            )

    notes = _expect(sess.get("notes"), str, "$.session.notes")
    events = []
    raw_events = _expect(sess.get("event_log"), list, "$.session.event_log")
    for i, raw_event in enumerate(raw_events):
        path = f"$.session.event_log[{i}]"
        entry = _expect(raw_event, dict, path)
        events.append(
            SessionEvent(
                ts=_expect(entry.get("ts"), str, path + ".ts"),
                action=_expect(entry.get("action"), str, path + ".action"),
                data=_expect(entry.get("data"), dict, path + ".data"),
            )
        )

    return Session.restore(
        dataset,
        session_id=session_id,
        alpha=alpha,
        selections=selections,
        tracked=tracked,
        notes=notes,
        events=events,
    )


def _expect(value, expected_type, path):
    if not isinstance(value, expected_type) or (
        expected_type is not bool and isinstance(value, bool)
    ):
        raise CorruptBundle(
            f"expected {expected_type.__name__} at {path}, got {type(value).__name__}",
            path=path,
        )
    return value


def _number(value, path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CorruptBundle(f"expected number at {path}", path=path)
    return float(value)


def _load_dataset(raw: dict) -> Dataset:
    dataset_id = _expect(raw.get("id"), str, "$.dataset.id")
    pseudocount = _number(raw.get("pseudocount", 0.0), "$.dataset.pseudocount")
    records = []
    raw_records = _expect(raw.get("records"), list, "$.dataset.records")
    for i, entry in enumerate(raw_records):
        path = f"$.dataset.records[{i}]"
        entry = _expect(entry, dict, path)
        name = _expect(entry.get("name"), str, path + ".name")
        m = _number(entry.get("m"), path + ".m")
        a = _number(entry.get("a"), path + ".a")
        p = entry.get("p")
        if p is not None:
            p = _number(p, path + ".p")
            try:
                validate_pvalue(p)
            except EngineError as exc:
                raise CorruptBundle(exc.message, path=path + ".p") from None
        raw_pair = None
        if "r" in entry or "g" in entry:
            raw_pair = RawIntensities(
                _number(entry.get("r"), path + ".r"), _number(entry.get("g"), path + ".g")
            )
        records.append(GeneRecord(name, MAPoint(m, a), p, raw=raw_pair))
    try:
        return Dataset(dataset_id, records, pseudocount=pseudocount)
    except EngineError as exc:
        raise CorruptBundle(exc.message, path="$.dataset.records") from None


def _load_selection(raw, dataset: Dataset, path: str) -> SelectionSet:
    entry = _expect(raw, dict, path)
    sel_id = _expect(entry.get("id"), str, path + ".id")
    label = _expect(entry.get("label"), str, path + ".label")
    members = _expect(entry.get("members"), list, path + ".members")
    for i, name in enumerate(members):
        if not isinstance(name, str) or name not in dataset.name_index:
            raise CorruptBundle(
                f"selection member {name!r} is not in the dataset",
                path=f"{path}.members[{i}]",
            )
    origin = _origin_from_json(
        _expect(entry.get("origin"), dict, path + ".origin"), path + ".origin"
    )
    return SelectionSet(
        id=sel_id,
        label=label,
        dataset_id=dataset.id,
        members=frozenset(members),
        origin=origin,
    )


def _origin_from_json(raw: dict, path: str) -> Origin:
    kind = raw.get("kind")
    try:
        if kind == "lasso":
            vertices = tuple((_number(a, path), _number(m, path)) for a, m in raw["vertices"])
            return LassoOrigin(polygon=Polygon(vertices))
        if kind == "box":
            return BoxOrigin(
                box=Box(raw["a_min"], raw["a_max"], raw["m_min"], raw["m_max"])
            )
        if kind == "search":
            return SearchOrigin(query=raw["query"], pick=raw.get("pick"))
        if kind == "combine":
            return CombineOrigin(
                op=CombineOp(raw["op"]), inputs=tuple(raw["inputs"])
            )
        if kind == "filter":
            return FilterOrigin(
                spec=spec_from_json(raw["spec"], path + ".spec"), source=raw.get("source")
            )
    except CorruptBundle:
        raise
    except (KeyError, TypeError, ValueError, DegeneratePolygon) as exc:
        message = exc.message if isinstance(exc, EngineError) else str(exc)
        raise CorruptBundle(f"invalid {kind!r} origin: {message}", path=path) from None
    raise CorruptBundle(f"unknown origin kind {kind!r}", path=path)


# -- SVG rendering -------------------------------------------------------------


def render_svg(
    dataset: Dataset,
    session: Session,
    viewport: tuple[tuple[float, float], tuple[float, float]] | None = None,
    *,
    width: int = 900,
    height: int = 600,
    shade_depth: float = DEFAULT_SHADE_DEPTH,
) -> bytes:
    """Deterministic SVG scatter: A on x, M on y, M=0 reference line.

    ``viewport`` is ((a_min, a_max), (m_min, m_max)); omitted, it is derived
    from the data extent with 5% padding. Genes within the viewport (bounds
    inclusive) become circles filled by their shade; tracked genes get a green
    stroke and are drawn on top.
    """
    alpha = session.alpha
    tracked = session.tracked
    (a_lo, a_hi), (m_lo, m_hi) = _resolve_viewport(dataset, viewport)

    margin_left, margin_right, margin_top, margin_bottom = 60.0, 20.0, 20.0, 48.0
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom

    def sx(a: float) -> float:
        return margin_left + (a - a_lo) / (a_hi - a_lo) * plot_w

    def sy(m: float) -> float:
        return margin_top + (m_hi - m) / (m_hi - m_lo) * plot_h

    parts = [
        f'<svg xmlns="{SVG_NS}" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]

    # Axes and ticks.
    x_axis_y = margin_top + plot_h
    parts.append(
        f'<line x1="{margin_left:.2f}" y1="{x_axis_y:.2f}" x2="{margin_left + plot_w:.2f}" '
        f'y2="{x_axis_y:.2f}" stroke="#333333" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{margin_left:.2f}" y1="{margin_top:.2f}" x2="{margin_left:.2f}" '
        f'y2="{x_axis_y:.2f}" stroke="#333333" stroke-width="1"/>'
    )
    for i in range(5):
        a_tick = a_lo + (a_hi - a_lo) * i / 4
        x = sx(a_tick)
        parts.append(
            f'<line x1="{x:.2f}" y1="{x_axis_y:.2f}" x2="{x:.2f}" '
            f'y2="{x_axis_y + 5:.2f}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{x_axis_y + 18:.2f}" text-anchor="middle" '
            f'font-size="11" fill="#333333">{_tick_label(a_tick)}</text>'
        )
        m_tick = m_lo + (m_hi - m_lo) * i / 4
        y = sy(m_tick)
        parts.append(
            f'<line x1="{margin_left - 5:.2f}" y1="{y:.2f}" x2="{margin_left:.2f}" '
            f'y2="{y:.2f}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{margin_left - 8:.2f}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="11" fill="#333333">{_tick_label(m_tick)}</text>'
        )
    parts.append(
        f'<text x="{margin_left + plot_w / 2:.2f}" y="{height - 8:.2f}" '
        f'text-anchor="middle" font-size="13" fill="#333333">A</text>'
    )
    parts.append(
        f'<text x="16" y="{margin_top + plot_h / 2:.2f}" text-anchor="middle" '
        f'font-size="13" fill="#333333" transform="rotate(-90 16 {margin_top + plot_h / 2:.2f})">M</text>'
    )

    # Reference line at M = 0 when visible.
    if m_lo <= 0.0 <= m_hi:
        y0 = sy(0.0)
        parts.append(
            f'<line x1="{margin_left:.2f}" y1="{y0:.2f}" x2="{margin_left + plot_w:.2f}" '
            f'y2="{y0:.2f}" stroke="#888888" stroke-width="1" stroke-dasharray="4 3" '
            'class="m-zero"/>'
        )

    untracked_parts: list[str] = []
    tracked_parts: list[str] = []
    for record in dataset.records:
        a = record.a
        m = record.m
        if not (a_lo <= a <= a_hi and m_lo <= m <= m_hi):
            continue
        color = shade(
            classify(record.point, record.p, alpha), record.p, alpha, shade_depth
        ).hex()
        name_attr = quoteattr(record.name)
        if record.name in tracked:
            tracked_parts.append(
                f'<circle class="gene tracked" data-name={name_attr} cx="{sx(a):.2f}" '
                f'cy="{sy(m):.2f}" r="3" fill="{color}" stroke="{TRACK_COLOR}" stroke-width="1.5"/>'
            )
        else:
            untracked_parts.append(
                f'<circle class="gene" data-name={name_attr} cx="{sx(a):.2f}" '
                f'cy="{sy(m):.2f}" r="3" fill="{color}" stroke="none"/>'
            )
    parts.extend(untracked_parts)
    parts.extend(tracked_parts)
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def _tick_label(value: float) -> str:
    return escape(f"{value:.4g}")


def _resolve_viewport(dataset, viewport):
    if viewport is not None:
        (a_lo, a_hi), (m_lo, m_hi) = viewport
        a_lo, a_hi = float(a_lo), float(a_hi)
        m_lo, m_hi = float(m_lo), float(m_hi)
        if a_lo > a_hi or m_lo > m_hi:
            raise ValueError("viewport bounds out of order")
    elif len(dataset) == 0:
        return (0.0, 1.0), (-1.0, 1.0)
    else:
        a = dataset.a_values
        m = dataset.m_values
        a_lo, a_hi = float(a.min()), float(a.max())
        m_lo, m_hi = float(m.min()), float(m.max())
        a_pad = 0.05 * (a_hi - a_lo)
        m_pad = 0.05 * (m_hi - m_lo)
        a_lo, a_hi = a_lo - a_pad, a_hi + a_pad
        m_lo, m_hi = m_lo - m_pad, m_hi + m_pad
    # Degenerate spans still need a drawable scale.
    if a_lo == a_hi:
        a_lo, a_hi = a_lo - 0.5, a_hi + 0.5
    if m_lo == m_hi:
        m_lo, m_hi = m_lo - 0.5, m_hi + 0.5
    return (a_lo, a_hi), (m_lo, m_hi)
