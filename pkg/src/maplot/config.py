"""Service configuration, settable via flags or MAPLOT_* environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import DEFAULT_SHADE_DEPTH
from .ingest import DEFAULT_MAX_ROWS
from .session import MAX_NOTES_BYTES

DEFAULT_PAGE_SIZE = 50_000
DEFAULT_MAX_UPLOAD_BYTES = 100 * 1024 * 1024


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    max_rows: int = DEFAULT_MAX_ROWS
    pseudocount: float = 0.0
    shade_depth: float = DEFAULT_SHADE_DEPTH
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES
    max_notes_bytes: int = MAX_NOTES_BYTES
    page_size: int = DEFAULT_PAGE_SIZE
    persist_dir: str | None = None
    static_dir: str | None = None

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "ServiceConfig":
        env = dict(os.environ if env is None else env)
        cfg = cls()
        cfg.host = env.get("MAPLOT_HOST", cfg.host)
        cfg.port = int(env.get("MAPLOT_PORT", cfg.port))
        cfg.max_rows = int(env.get("MAPLOT_MAX_ROWS", cfg.max_rows))
        cfg.pseudocount = float(env.get("MAPLOT_PSEUDOCOUNT", cfg.pseudocount))
        cfg.shade_depth = float(env.get("MAPLOT_SHADE_DEPTH", cfg.shade_depth))
        cfg.max_upload_bytes = int(env.get("MAPLOT_MAX_UPLOAD_BYTES", cfg.max_upload_bytes))
        cfg.persist_dir = env.get("MAPLOT_PERSIST_DIR", cfg.persist_dir)
        cfg.static_dir = env.get("MAPLOT_STATIC_DIR", cfg.static_dir)
        return cfg
