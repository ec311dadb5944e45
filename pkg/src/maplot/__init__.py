"""Interactive MA-plot workbench: engine and HTTP service.

The engine is a set of pure modules (core statistics, CSV ingestion,
selection geometry and algebra, filters, session state, exporters) that the
HTTP layer in :mod:`maplot.api` exposes for the browser UI and scripted
clients.
"""

from .core import (
    Classification,
    ColorBase,
    MAPoint,
    ShadedColor,
    classify,
    compute_ma,
    shade,
)
from .ingest import (
    Dataset,
    DatasetSummary,
    GeneRecord,
    IngestReport,
    IngestResult,
    RawIntensities,
    dataset_summary,
    parse_csv,
)
from .selection import (
    Box,
    CombineOp,
    Polygon,
    SelectionSet,
    combine,
    point_in_polygon,
    points_in_polygon,
    search_names,
    select_box,
    select_lasso,
    select_search,
)
from .filters import (
    RangeFilter,
    RangeMode,
    TopKDirection,
    TopKFilter,
    apply_filter,
    filter_range,
    filter_top_k,
)
from .session import Session, SessionEvent
from .export import export_csv, export_session, import_session, render_svg
from .config import ServiceConfig
from .api import create_app

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ColorBase",
    "MAPoint",
    "ShadedColor",
    "classify",
    "compute_ma",
    "shade",
    "Dataset",
    "DatasetSummary",
    "GeneRecord",
    "IngestReport",
    "IngestResult",
    "RawIntensities",
    "dataset_summary",
    "parse_csv",
    "Box",
    "CombineOp",
    "Polygon",
    "SelectionSet",
    "combine",
    "point_in_polygon",
    "points_in_polygon",
    "search_names",
    "select_box",
    "select_lasso",
    "select_search",
    "RangeFilter",
    "RangeMode",
    "TopKDirection",
    "TopKFilter",
    "apply_filter",
    "filter_range",
    "filter_top_k",
    "Session",
    "SessionEvent",
    "export_csv",
    "export_session",
    "import_session",
    "render_svg",
    "ServiceConfig",
    "create_app",
    "__version__",
]
