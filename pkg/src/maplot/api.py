"""JSON-over-HTTP surface for the workbench engine.

Every engine error surfaces as ``{"error": {"code", "message", "detail"}}``
with a stable code equal to the engine error name; unknown routes and methods
get their own codes. Classification and shade are computed server-side so
clients never re-implement the math.
"""

from __future__ import annotations

import os
import tempfile
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from .config import ServiceConfig
from .core import classify, shade, validate_alpha
from .errors import BadRequest, EngineError, PayloadTooLarge
from .export import export_csv, export_session, import_session, render_svg
from .filters import RangeFilter, RangeMode, TopKDirection, TopKFilter
from .ingest import Dataset, GeneRecord, dataset_summary, parse_csv
from .registry import DatasetRegistry, SessionRegistry
from .selection import Box, CombineOp, SelectionSet, search_names
from .session import Session, TRACKED_SOURCE

# HTTP status per error code. Every EngineError subclass must appear here.
ERROR_STATUS: dict[str, int] = {
    "NonPositiveIntensity": 400,
    "AlphaOutOfRange": 400,
    "PValueOutOfRange": 400,
    "SchemaError": 400,
    "MalformedRow": 400,
    "DuplicateGeneName": 400,
    "DatasetTooLarge": 413,
    "DegeneratePolygon": 400,
    "MixedDatasets": 400,
    "UnknownDataset": 404,
    "UnknownSession": 404,
    "UnknownSelection": 404,
    "UnknownGene": 404,
    "NotesTooLarge": 413,
    "UnsupportedVersion": 400,
    "CorruptBundle": 400,
    "BadRequest": 400,
    "PayloadTooLarge": 413,
    "NotFound": 404,
    "MethodNotAllowed": 405,
}

_HTTP_STATUS_CODES = {404: "NotFound", 405: "MethodNotAllowed", 413: "PayloadTooLarge"}


class CreateSessionBody(BaseModel):
    dataset_id: str
    alpha: float = 0.05


class AlphaBody(BaseModel):
    alpha: float


class BoxBody(BaseModel):
    a_min: float
    a_max: float
    m_min: float
    m_max: float


class SelectionBody(BaseModel):
    kind: Literal["lasso", "box", "search"]
    vertices: list[tuple[float, float]] | None = None
    box: BoxBody | None = None
    query: str | None = None
    pick: str | None = None
    label: str | None = None


class CombineBody(BaseModel):
    op: Literal["keep_all", "keep_multiples", "keep_singles"]
    inputs: list[str] = Field(min_length=1)
    label: str | None = None


class TopKSpecBody(BaseModel):
    kind: Literal["top_k"]
    k: int = Field(ge=0)
    direction: Literal["most_significant", "least_significant"] = "most_significant"


class RangeSpecBody(BaseModel):
    kind: Literal["range"]
    m_min: float
    m_max: float
    a_min: float
    a_max: float
    mode: Literal["inside", "outside"] = "inside"


class FilterBody(BaseModel):
    spec: TopKSpecBody | RangeSpecBody = Field(discriminator="kind")
    source: str | None = None
    label: str | None = None


class TrackBody(BaseModel):
    selection_id: str


class NotesBody(BaseModel):
    notes: str


def point_payload(record: GeneRecord, alpha: float, shade_depth: float) -> dict:
    classification = classify(record.point, record.p, alpha)
    color = shade(classification, record.p, alpha, shade_depth)
    return {
        "name": record.name,
        "a": record.a,
        "m": record.m,
        "p": record.p,
        "classification": classification.value,
        "shade": {"base": color.base.value, "intensity": color.intensity},
        "color": color.hex(),
    }


def selection_payload(selection: SelectionSet) -> dict:
    return {
        "id": selection.id,
        "label": selection.label,
        "dataset_id": selection.dataset_id,
        "origin": selection.origin.describe(),
        "members": list(selection.sorted_members),
        "size": len(selection),
    }


def session_summary(session: Session) -> dict:
    snapshot = session.snapshot()
    return {
        "id": snapshot["id"],
        "dataset_id": snapshot["dataset_id"],
        "alpha": snapshot["alpha"],
        "selections": [
            {
                "id": sel["id"],
                "label": sel["label"],
                "origin": sel["origin"],
                "size": len(sel["members"]),
            }
            for sel in snapshot["selections"]
        ],
        "tracked": snapshot["tracked"],
        "notes": snapshot["notes"],
    }


def summary_payload(dataset: Dataset, alpha: float) -> dict:
    summary = dataset_summary(dataset, alpha)
    return {
        "dataset_id": dataset.id,
        "alpha": alpha,
        "gene_count": summary.gene_count,
        "counts": {
            "up": summary.up,
            "down": summary.down,
            "not_significant": summary.not_significant,
            "missing_p": summary.missing_p,
        },
        "m_min": summary.m_min,
        "m_max": summary.m_max,
        "a_min": summary.a_min,
        "a_max": summary.a_max,
    }


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    cfg = config or ServiceConfig()
    app = FastAPI(title="MA-plot workbench", version="0.1.0")
    datasets = DatasetRegistry()
    sessions = SessionRegistry()
    app.state.config = cfg
    app.state.datasets = datasets
    app.state.sessions = sessions

    # -- error shaping ------------------------------------------------------

    @app.exception_handler(EngineError)
    async def handle_engine_error(request: Request, exc: EngineError):
        status = ERROR_STATUS.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": exc.message, "detail": exc.detail}},
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        detail = [
            {"loc": [str(part) for part in err.get("loc", ())], "msg": str(err.get("msg", ""))}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "BadRequest",
                    "message": "request body or parameters failed validation",
                    "detail": {"errors": detail},
                }
            },
        )

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_error(request: Request, exc: StarletteHTTPException):
        code = _HTTP_STATUS_CODES.get(exc.status_code, "BadRequest")
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": {"code": code, "message": str(exc.detail), "detail": {}}},
        )

    # -- helpers ------------------------------------------------------------

    def persist(session: Session) -> None:
        if not cfg.persist_dir:
            return
        os.makedirs(cfg.persist_dir, exist_ok=True)
        data = export_session(session)
        fd, tmp_path = tempfile.mkstemp(dir=cfg.persist_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
            os.replace(tmp_path, os.path.join(cfg.persist_dir, f"{session.id}.json"))
        finally:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)

    async def read_body(request: Request) -> bytes:
        body = await request.body()
        if len(body) > cfg.max_upload_bytes:
            raise PayloadTooLarge(
                f"request body exceeds {cfg.max_upload_bytes} bytes",
                limit=cfg.max_upload_bytes,
            )
        return body

    # -- routes -------------------------------------------------------------

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/datasets", status_code=201)
    async def upload_dataset(request: Request):
        body = await read_body(request)
        result = parse_csv(
            body,
            pseudocount=cfg.pseudocount,
            max_rows=cfg.max_rows,
            dataset_id=datasets.reserve_id(),
        )
        datasets.put(result.dataset)
        return {
            "dataset_id": result.dataset.id,
            "report": {
                "schema": result.report.schema,
                "rows": result.report.rows,
                "warnings": result.report.warnings,
            },
        }

    @app.get("/api/datasets/{dataset_id}/summary")
    def get_summary(dataset_id: str, alpha: float = 0.05):
        return summary_payload(datasets.get(dataset_id), validate_alpha(alpha))

    @app.get("/api/datasets/{dataset_id}/points")
    def get_points(
        dataset_id: str, alpha: float = 0.05, page: int = 1, page_size: int | None = None
    ):
        dataset = datasets.get(dataset_id)
        alpha = validate_alpha(alpha)
        if page < 1:
            raise BadRequest(f"page must be >= 1, got {page}")
        size = cfg.page_size if page_size is None else page_size
        if size < 1:
            raise BadRequest(f"page_size must be >= 1, got {size}")
        size = min(size, cfg.page_size)
        start = (page - 1) * size
        chunk = dataset.records[start : start + size]
        return {
            "total": len(dataset),
            "page": page,
            "page_size": size,
            "points": [point_payload(r, alpha, cfg.shade_depth) for r in chunk],
        }

    @app.get("/api/datasets/{dataset_id}/search")
    def search(dataset_id: str, q: str = "", limit: int = 50):
        dataset = datasets.get(dataset_id)
        if limit < 1:
            raise BadRequest(f"limit must be >= 1, got {limit}")
        matches = search_names(dataset, q)
        return {"query": q, "total": len(matches), "matches": matches[:limit]}

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        dataset = datasets.get(body.dataset_id)
        session = sessions.create(dataset, body.alpha, cfg.max_notes_bytes)
        persist(session)
        return session_summary(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        return session_summary(sessions.get(session_id))

    @app.post("/api/sessions/{session_id}/alpha")
    def set_alpha(session_id: str, body: AlphaBody):
        session = sessions.get(session_id)
        session.set_alpha(body.alpha)
        persist(session)
        return session_summary(session)

    @app.post("/api/sessions/{session_id}/selections", status_code=201)
    def create_selection(session_id: str, body: SelectionBody):
        session = sessions.get(session_id)
        if body.kind == "lasso":
            if body.vertices is None:
                raise BadRequest("lasso selection requires 'vertices'")
            selection = session.select_lasso(body.vertices, label=body.label)
        elif body.kind == "box":
            if body.box is None:
                raise BadRequest("box selection requires 'box'")
            try:
                box = Box(body.box.a_min, body.box.a_max, body.box.m_min, body.box.m_max)
            except ValueError as exc:
                raise BadRequest(str(exc)) from None
            selection = session.select_box(box, label=body.label)
        else:
            if body.query is None:
                raise BadRequest("search selection requires 'query'")
            selection = session.select_search(body.query, body.pick, label=body.label)
        persist(session)
        return {"selection": selection_payload(selection), "session": session_summary(session)}

    @app.get("/api/sessions/{session_id}/selections/{selection_id}")
    def get_selection(session_id: str, selection_id: str):
        return selection_payload(sessions.get(session_id).selection(selection_id))

    @app.post("/api/sessions/{session_id}/combine", status_code=201)
    def combine_selections(session_id: str, body: CombineBody):
        session = sessions.get(session_id)
        selection = session.combine_selections(
            CombineOp(body.op), body.inputs, label=body.label
        )
        persist(session)
        return {"selection": selection_payload(selection), "session": session_summary(session)}

    @app.post("/api/sessions/{session_id}/filter", status_code=201)
    def apply_filter(session_id: str, body: FilterBody):
        session = sessions.get(session_id)
        if isinstance(body.spec, TopKSpecBody):
            spec = TopKFilter(k=body.spec.k, direction=TopKDirection(body.spec.direction))
        else:
            try:
                spec = RangeFilter(
                    m_min=body.spec.m_min,
                    m_max=body.spec.m_max,
                    a_min=body.spec.a_min,
                    a_max=body.spec.a_max,
                    mode=RangeMode(body.spec.mode),
                )
            except ValueError as exc:
                raise BadRequest(str(exc)) from None
        selection = session.apply_filter(spec, source=body.source, label=body.label)
        persist(session)
        return {"selection": selection_payload(selection), "session": session_summary(session)}

    @app.post("/api/sessions/{session_id}/track")
    def track(session_id: str, body: TrackBody):
        session = sessions.get(session_id)
        session.track(body.selection_id)
        persist(session)
        return session_summary(session)

    @app.post("/api/sessions/{session_id}/track/expand")
    def expand_tracked(session_id: str, body: TrackBody):
        session = sessions.get(session_id)
        session.expand_tracked(body.selection_id)
        persist(session)
        return session_summary(session)

    @app.get("/api/sessions/{session_id}/notes")
    def get_notes(session_id: str):
        return {"notes": sessions.get(session_id).notes}

    @app.put("/api/sessions/{session_id}/notes")
    def put_notes(session_id: str, body: NotesBody):
        session = sessions.get(session_id)
        session.set_notes(body.notes)
        persist(session)
        return session_summary(session)

    @app.get("/api/sessions/{session_id}/export/csv")
    def export_csv_route(session_id: str, source: str = "all", genes: str | None = None):
        session = sessions.get(session_id)
        if genes is not None:
            names: list[str] | None = [g for g in genes.split(",") if g]
        elif source == "all":
            names = None
        elif source == TRACKED_SOURCE:
            names = sorted(session.tracked)
        else:
            names = sorted(session.selection(source).members)
        data = export_csv(session.dataset, names)
        return Response(
            content=data,
            media_type="text/csv; charset=utf-8",
            headers={"Content-Disposition": 'attachment; filename="genes.csv"'},
        )

    @app.get("/api/sessions/{session_id}/export/session")
    def export_session_route(session_id: str):
        data = export_session(sessions.get(session_id))
        return Response(
            content=data,
            media_type="application/json; charset=utf-8",
            headers={"Content-Disposition": 'attachment; filename="session.json"'},
        )

    @app.get("/api/sessions/{session_id}/export/svg")
    def export_svg_route(
        session_id: str,
        a_min: float | None = None,
        a_max: float | None = None,
        m_min: float | None = None,
        m_max: float | None = None,
        width: int = 900,
        height: int = 600,
    ):
        session = sessions.get(session_id)
        bounds = (a_min, a_max, m_min, m_max)
        if any(b is not None for b in bounds) and any(b is None for b in bounds):
            raise BadRequest("viewport requires all of a_min, a_max, m_min, m_max")
        if not (100 <= width <= 4000 and 100 <= height <= 4000):
            raise BadRequest("width and height must be within [100, 4000]")
        viewport = None
        if a_min is not None:
            if a_min > a_max or m_min > m_max:
                raise BadRequest("viewport bounds out of order")
            viewport = ((a_min, a_max), (m_min, m_max))
        data = render_svg(
            session.dataset,
            session,
            viewport,
            width=width,
            height=height,
            shade_depth=cfg.shade_depth,
        )
        return Response(
            content=data,
            media_type="image/svg+xml",
            headers={"Content-Disposition": 'attachment; filename="ma-plot.svg"'},
        )

    @app.post("/api/sessions/import", status_code=201)
    async def import_session_route(request: Request):
        body = await read_body(request)
        session = import_session(body)
        session.max_notes_bytes = cfg.max_notes_bytes
        datasets.put_imported(session.dataset)
        sessions.put_imported(session)
        persist(session)
        return session_summary(session)

    if cfg.static_dir and os.path.isdir(cfg.static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=cfg.static_dir, html=True), name="ui")

    return app
