"""Command-line entry point: `maplot-server` or `python -m maplot.server`."""

from __future__ import annotations

import argparse

from .config import ServiceConfig
from .api import create_app


def build_parser() -> argparse.ArgumentParser:
    defaults = ServiceConfig.from_env()
    parser = argparse.ArgumentParser(
        prog="maplot-server",
        description="Serve the MA-plot workbench engine (and optionally its web UI) over HTTP.",
    )
    parser.add_argument("--host", default=defaults.host)
    parser.add_argument("--port", type=int, default=defaults.port)
    parser.add_argument(
        "--max-rows",
        type=int,
        default=defaults.max_rows,
        help="maximum dataset row count accepted on upload",
    )
    parser.add_argument(
        "--pseudocount",
        type=float,
        default=defaults.pseudocount,
        help="constant added to raw intensities before the log transform (0 disables)",
    )
    parser.add_argument(
        "--shade-depth",
        type=float,
        default=defaults.shade_depth,
        help="decades of p-value below alpha over which red/blue darken to full",
    )
    parser.add_argument(
        "--max-upload-bytes", type=int, default=defaults.max_upload_bytes
    )
    parser.add_argument(
        "--persist-dir",
        default=defaults.persist_dir,
        help="write a session bundle to this directory after every mutation",
    )
    parser.add_argument(
        "--static-dir",
        default=defaults.static_dir,
        help="serve this directory (the built web UI) at /",
    )
    return parser


def main(argv: list[str] | None = None) -> None:
    args = build_parser().parse_args(argv)
    config = ServiceConfig(
        host=args.host,
        port=args.port,
        max_rows=args.max_rows,
        pseudocount=args.pseudocount,
        shade_depth=args.shade_depth,
        max_upload_bytes=args.max_upload_bytes,
        persist_dir=args.persist_dir,
        static_dir=args.static_dir,
    )
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")


if __name__ == "__main__":
    main()
