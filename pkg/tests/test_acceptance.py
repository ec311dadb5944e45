"""Acceptance suite for the MA-plot workbench engine.

One test per release criterion, each run at its stated scale and tolerance
and finishing with an explicit PASS line (visible with ``pytest -s`` or in
captured output). Run with::

    pytest tests/test_acceptance.py -v
"""

from __future__ import annotations

import itertools
import math
import random
import time
import xml.etree.ElementTree as ET

import numpy as np
from fastapi.testclient import TestClient

from maplot.api import ERROR_STATUS, create_app, session_summary
from maplot.config import ServiceConfig
from maplot.core import Classification, MAPoint, classify, compute_ma, shade
from maplot.errors import DegeneratePolygon
from maplot.export import export_csv, export_session, import_session, render_svg
from maplot.filters import RangeFilter, RangeMode, TopKFilter, filter_range, filter_top_k
from maplot.ingest import parse_csv
from maplot.registry import DatasetRegistry, SessionRegistry
from maplot.selection import (
    Box,
    CombineOp,
    Polygon,
    SearchOrigin,
    SelectionSet,
    combine,
    point_in_polygon,
    select_box,
    select_lasso,
)
from maplot.session import Session

from conftest import make_dataset, random_dataset
from error_fixtures import error_reachability_cases
from oracles import combine_by_counts, contains_winding, min_edge_distance, random_simple_polygon

SVG_NS = "{http://www.w3.org/2000/svg}"


def _passed(label: str) -> None:
    print(f"PASS: {label}")


# ---------------------------------------------------------------------------
# Criterion 1: MA formulas on 1e5 randomized intensity pairs, 1e-12 tolerance,
# under 5 seconds.
# ---------------------------------------------------------------------------


def test_ma_formulas_randomized():
    n = 100_000
    started = time.perf_counter()
    rng = np.random.default_rng(8241)
    # Log-uniform sampling covers the whole [1e-6, 1e9] square instead of
    # piling up near 1e9.
    r = 10.0 ** rng.uniform(-6.0, 9.0, size=n)
    g = 10.0 ** rng.uniform(-6.0, 9.0, size=n)
    # Reference values via a different log implementation (natural log).
    expected_m = np.log(r) / math.log(2.0) - np.log(g) / math.log(2.0)
    expected_a = 0.5 * (np.log(r) / math.log(2.0) + np.log(g) / math.log(2.0))
    tol = 1e-12
    for i in range(n):
        point = compute_ma(r[i], g[i])
        assert abs(point.m - expected_m[i]) <= tol * max(1.0, abs(expected_m[i]))
        assert abs(point.a - expected_a[i]) <= tol * max(1.0, abs(expected_a[i]))
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"took {elapsed:.2f}s"
    _passed(f"MA formulas: {n} random pairs within 1e-12 in {elapsed:.2f}s")


# ---------------------------------------------------------------------------
# Criterion 2: classification totality on the exhaustive grid plus alpha
# monotonicity on randomized datasets.
# ---------------------------------------------------------------------------


def test_classification_grid_and_monotonicity():
    grid_points = 0
    for alpha in (0.01, 0.05, 0.1):
        p_values = [None, 0.0, alpha / 2, alpha, 1.0]
        for m, p in itertools.product([-2.0, -1.0, 0.0, 1.0, 2.0], p_values):
            result = classify(MAPoint(m, 0.0), p, alpha)
            if p is None:
                expected = Classification.MISSING_P
            elif p < alpha and m > 0:
                expected = Classification.UP
            elif p < alpha and m < 0:
                expected = Classification.DOWN
            else:
                expected = Classification.NOT_SIGNIFICANT
            assert result is expected, (m, p, alpha, result)
            assert result in set(Classification)
            grid_points += 1
    assert grid_points == 75

    rng = random.Random(5150)
    colored = {Classification.UP, Classification.DOWN}
    for _ in range(200):
        dataset = random_dataset(rng, 50)
        a1, a2 = sorted((rng.uniform(1e-6, 1.0), rng.uniform(1e-6, 1.0)))
        at_a1 = {
            r.name for r in dataset if classify(r.point, r.p, a1) in colored
        }
        at_a2 = {
            r.name for r in dataset if classify(r.point, r.p, a2) in colored
        }
        assert at_a1 <= at_a2
    _passed("classification: exhaustive 75-cell grid and alpha monotonicity (200 datasets)")


# ---------------------------------------------------------------------------
# Criterion 3: combine operators match the occurrence-count oracle on 1e4
# random instances; two-set identities hold exactly.
# ---------------------------------------------------------------------------


def _selection(sel_id: str, members: set[str]) -> SelectionSet:
    return SelectionSet(
        id=sel_id,
        label=sel_id,
        dataset_id="d",
        members=frozenset(members),
        origin=SearchOrigin(query=sel_id),
    )


def test_selection_algebra_against_oracle():
    rng = random.Random(31415)
    universe = [f"g{i}" for i in range(64)]
    ops = list(CombineOp)
    for trial in range(10_000):
        n_sets = rng.randint(1, 6)
        member_sets = [
            set(rng.sample(universe, rng.randint(0, 64))) for _ in range(n_sets)
        ]
        selections = [_selection(f"S{i}", s) for i, s in enumerate(member_sets)]
        op = ops[trial % len(ops)]
        expected = combine_by_counts(member_sets, op.value)
        assert set(combine(selections, op).members) == expected

    for _ in range(500):
        a = set(rng.sample(universe, rng.randint(0, 64)))
        b = set(rng.sample(universe, rng.randint(0, 64)))
        sa, sb = _selection("A", a), _selection("B", b)
        assert set(combine([sa, sb], CombineOp.KEEP_ALL).members) == a | b
        assert set(combine([sa, sb], CombineOp.KEEP_MULTIPLES).members) == a & b
        assert set(combine([sa, sb], CombineOp.KEEP_SINGLES).members) == a ^ b
    _passed("selection algebra: 10000 oracle instances + 500 two-set identity checks")


# ---------------------------------------------------------------------------
# Criterion 4: geometry against the winding-number oracle (1e4 pairs) and
# box/lasso-rectangle equivalence (1e3 boxes).
# ---------------------------------------------------------------------------


def test_geometry_against_winding_oracle():
    rng = random.Random(2718)
    checked = 0
    while checked < 10_000:
        vertices = random_simple_polygon(rng, rng.randint(3, 12))
        try:
            polygon = Polygon(tuple(vertices))
        except DegeneratePolygon:
            continue
        point = (rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0))
        if min_edge_distance(point, vertices) <= 1e-9:
            continue
        assert point_in_polygon(point, polygon) == contains_winding(point, vertices), (
            point,
            vertices,
        )
        checked += 1

    dataset = random_dataset(random.Random(99), 400)
    boxes_checked = 0
    while boxes_checked < 1000:
        a1, a2 = sorted(rng.uniform(-2, 18) for _ in range(2))
        m1, m2 = sorted(rng.uniform(-8, 8) for _ in range(2))
        if a1 == a2 or m1 == m2:
            continue
        box = Box(a1, a2, m1, m2)
        rectangle = box.as_polygon()
        near_edge = {
            r.name
            for r in dataset
            if min_edge_distance((r.a, r.m), rectangle.vertices) <= 1e-9
        }
        by_box = select_box(dataset, box).members - near_edge
        by_lasso = select_lasso(dataset, rectangle).members - near_edge
        assert by_box == by_lasso
        boxes_checked += 1
    _passed("geometry: 10000 winding-oracle pairs + 1000 box/lasso equivalences")


# ---------------------------------------------------------------------------
# Criterion 5: filter properties on randomized data, including ties and
# missing p-values.
# ---------------------------------------------------------------------------


def test_filter_properties_randomized():
    rng = random.Random(1618)
    for _ in range(1000):
        dataset = random_dataset(rng, rng.randint(0, 60))
        names = frozenset(dataset.names)
        m1, m2 = sorted(rng.uniform(-7, 7) for _ in range(2))
        a1, a2 = sorted(rng.uniform(-1, 17) for _ in range(2))
        inside = filter_range(
            dataset, None, RangeFilter(m1, m2, a1, a2, RangeMode.INSIDE)
        ).members
        outside = filter_range(
            dataset, None, RangeFilter(m1, m2, a1, a2, RangeMode.OUTSIDE)
        ).members
        assert inside | outside == names
        assert inside & outside == frozenset()

    for _ in range(300):
        dataset = random_dataset(rng, rng.randint(0, 80))
        present = sorted((r.p, r.name) for r in dataset if r.p is not None)
        k1 = rng.randint(0, 90)
        k2 = rng.randint(k1, 95)
        top1 = filter_top_k(dataset, None, k1).members
        top2 = filter_top_k(dataset, None, k2).members
        assert len(top1) == min(k1, len(present))
        assert top1 <= top2
        inside_p = [r.p for r in dataset if r.name in top1]
        outside_p = [r.p for r in dataset if r.name not in top1 and r.p is not None]
        if inside_p and outside_p:
            assert max(inside_p) <= min(outside_p)
    _passed("filters: 1000 inside/outside partitions + 300 top-k dominance/nesting/size checks")


# ---------------------------------------------------------------------------
# Criterion 6: round-trips. CSV export -> ingest equality and session bundle
# double round-trip byte equality on 100 randomized sessions.
# ---------------------------------------------------------------------------


def _random_names(rng: random.Random, n: int) -> list[str]:
    pool = ["BRCA", "TP", "EGFR", "MYC", "KRAS", "βGEN", "géne", "白血病"]
    names = {f"{rng.choice(pool)}{i}" for i in range(n)}
    return sorted(names)


def _random_session(rng: random.Random, index: int) -> Session:
    names = _random_names(rng, rng.randint(20, 60))
    rows = []
    for name in names:
        p = None if rng.random() < 0.2 else rng.random()
        rows.append((name, rng.uniform(-6, 6), rng.uniform(0, 16), p))
    dataset = make_dataset(rows, dataset_id=f"ds-rt-{index}")
    session = Session(dataset, rng.choice([0.01, 0.05, 0.1]), session_id=f"s-rt-{index}")
    for _ in range(rng.randint(1, 8)):
        op = rng.randrange(6)
        if op == 0:
            center_a, center_m = rng.uniform(0, 16), rng.uniform(-6, 6)
            session.select_lasso(
                [
                    (center_a - 2, center_m - 1),
                    (center_a + 1, center_m - 2),
                    (center_a + 2, center_m + 1),
                    (center_a - 1, center_m + 2),
                ]
            )
        elif op == 1:
            a1, a2 = sorted(rng.uniform(0, 16) for _ in range(2))
            m1, m2 = sorted(rng.uniform(-6, 6) for _ in range(2))
            session.select_box(Box(a1, a2, m1, m2))
        elif op == 2:
            session.select_search(rng.choice(["BR", "é", "1", "白"]))
        elif op == 3:
            session.apply_filter(TopKFilter(k=rng.randint(0, 30)))
        elif op == 4 and session.selections:
            ids = rng.sample(
                list(session.selections), k=min(rng.randint(1, 3), len(session.selections))
            )
            session.combine_selections(rng.choice(list(CombineOp)), ids)
        elif session.selections:
            sel_id = rng.choice(list(session.selections))
            (session.track if rng.random() < 0.5 else session.expand_tracked)(sel_id)
    session.set_notes(rng.choice(["", "plain", "notes αβ→δ ✓", "多行\nnotes"]))
    return session


def test_round_trips_randomized_sessions():
    rng = random.Random(6022)
    for index in range(100):
        session = _random_session(rng, index)
        dataset = session.dataset

        reparsed = parse_csv(export_csv(dataset), dataset_id=dataset.id).dataset
        assert reparsed.names == dataset.names
        for original, back in zip(dataset, reparsed):
            assert (back.name, back.m, back.a, back.p) == (
                original.name,
                original.m,
                original.a,
                original.p,
            )

        first = export_session(session)
        second = export_session(import_session(first))
        third = export_session(import_session(second))
        assert first == second == third
        restored = import_session(first)
        assert restored.snapshot() == session.snapshot()
    _passed("round-trips: 100 randomized sessions, CSV equality + byte-identical bundles")


# ---------------------------------------------------------------------------
# Criterion 7: SVG on a seeded 1000-gene fixture: determinism, marker counts,
# tracked outlines, classification-faithful fills.
# ---------------------------------------------------------------------------


def _svg_fixture() -> Session:
    rng = random.Random(777)
    rows = []
    for i in range(1000):
        p = None if i % 25 == 0 else rng.random() ** 3
        rows.append((f"g{i:04d}", rng.uniform(-5, 5), rng.uniform(0, 14), p))
    dataset = make_dataset(rows, dataset_id="ds-svg")
    session = Session(dataset, 0.05, session_id="s-svg")
    tracked = session.select_box(Box(4.0, 8.0, -1.0, 1.0))
    session.track(tracked.id)
    return session


def test_svg_rendering_contract():
    session = _svg_fixture()
    dataset = session.dataset

    first = render_svg(dataset, session)
    second = render_svg(dataset, session)
    assert first == second

    root = ET.fromstring(first.decode())
    circles = list(root.iter(f"{SVG_NS}circle"))
    assert len(circles) == 1000

    viewport = ((2.0, 10.0), (-2.0, 2.0))
    clipped = ET.fromstring(render_svg(dataset, session, viewport).decode())
    in_view = sum(1 for r in dataset if 2.0 <= r.a <= 10.0 and -2.0 <= r.m <= 2.0)
    assert len(list(clipped.iter(f"{SVG_NS}circle"))) == in_view

    outlined = {
        el.get("data-name") for el in circles if el.get("stroke") == "#16a34a"
    }
    assert outlined == set(session.tracked)

    for el in circles:
        record = dataset.record(el.get("data-name"))
        expected = shade(
            classify(record.point, record.p, session.alpha), record.p, session.alpha
        ).hex()
        assert el.get("fill") == expected
    _passed("SVG: byte-deterministic, 1000 markers, viewport counts, outlines, faithful fills")


# ---------------------------------------------------------------------------
# Criterion 8: API transparency on 50 randomized operation sequences plus
# exhaustive error-code fixtures.
# ---------------------------------------------------------------------------


def _make_ops(rng: random.Random) -> list[dict]:
    ops: list[dict] = []
    for _ in range(rng.randint(4, 10)):
        kind = rng.choice(
            ["alpha", "lasso", "box", "search", "combine", "top_k", "range", "track", "expand", "notes"]
        )
        if kind == "alpha":
            ops.append({"kind": "alpha", "alpha": rng.choice([0.01, 0.05, 0.1, 0.2])})
        elif kind == "lasso":
            ca, cm = rng.uniform(0, 16), rng.uniform(-6, 6)
            ops.append(
                {
                    "kind": "lasso",
                    "vertices": [
                        [ca - 2, cm - 1],
                        [ca + 1, cm - 2],
                        [ca + 2, cm + 1],
                        [ca - 1, cm + 2],
                    ],
                }
            )
        elif kind == "box":
            a1, a2 = sorted(rng.uniform(0, 16) for _ in range(2))
            m1, m2 = sorted(rng.uniform(-6, 6) for _ in range(2))
            ops.append({"kind": "box", "a_min": a1, "a_max": a2, "m_min": m1, "m_max": m2})
        elif kind == "search":
            ops.append({"kind": "search", "query": rng.choice(["G0", "G01", "2", "G024"])})
        elif kind == "combine":
            ops.append({"kind": "combine", "op": rng.choice(list(CombineOp)).value, "count": rng.randint(1, 3)})
        elif kind == "top_k":
            ops.append({"kind": "top_k", "k": rng.randint(0, 25)})
        elif kind == "range":
            a1, a2 = sorted(rng.uniform(0, 16) for _ in range(2))
            m1, m2 = sorted(rng.uniform(-6, 6) for _ in range(2))
            ops.append(
                {
                    "kind": "range",
                    "a_min": a1,
                    "a_max": a2,
                    "m_min": m1,
                    "m_max": m2,
                    "mode": rng.choice(["inside", "outside"]),
                }
            )
        elif kind in ("track", "expand"):
            ops.append({"kind": kind})
        else:
            ops.append({"kind": "notes", "notes": rng.choice(["", "mark αβ", "cycle ✓"])})
    return ops


def _apply_ops_http(client: TestClient, csv_payload: bytes, ops: list[dict]) -> dict:
    dataset_id = client.post("/api/datasets", content=csv_payload).json()["dataset_id"]
    session_id = client.post(
        "/api/sessions", json={"dataset_id": dataset_id, "alpha": 0.05}
    ).json()["id"]
    results = []
    selection_ids: list[str] = []
    for op in ops:
        if op["kind"] == "alpha":
            body = client.post(f"/api/sessions/{session_id}/alpha", json={"alpha": op["alpha"]})
            results.append(("alpha", body.json()["alpha"]))
        elif op["kind"] == "lasso":
            body = client.post(
                f"/api/sessions/{session_id}/selections",
                json={"kind": "lasso", "vertices": op["vertices"]},
            ).json()
            selection_ids.append(body["selection"]["id"])
            results.append(("sel", body["selection"]["id"], body["selection"]["members"]))
        elif op["kind"] == "box":
            body = client.post(
                f"/api/sessions/{session_id}/selections",
                json={
                    "kind": "box",
                    "box": {k: op[k] for k in ("a_min", "a_max", "m_min", "m_max")},
                },
            ).json()
            selection_ids.append(body["selection"]["id"])
            results.append(("sel", body["selection"]["id"], body["selection"]["members"]))
        elif op["kind"] == "search":
            body = client.post(
                f"/api/sessions/{session_id}/selections",
                json={"kind": "search", "query": op["query"]},
            ).json()
            selection_ids.append(body["selection"]["id"])
            results.append(("sel", body["selection"]["id"], body["selection"]["members"]))
        elif op["kind"] == "combine":
            if not selection_ids:
                continue
            inputs = selection_ids[-op["count"] :]
            body = client.post(
                f"/api/sessions/{session_id}/combine",
                json={"op": op["op"], "inputs": inputs},
            ).json()
            selection_ids.append(body["selection"]["id"])
            results.append(("sel", body["selection"]["id"], body["selection"]["members"]))
        elif op["kind"] == "top_k":
            body = client.post(
                f"/api/sessions/{session_id}/filter",
                json={"spec": {"kind": "top_k", "k": op["k"]}},
            ).json()
            selection_ids.append(body["selection"]["id"])
            results.append(("sel", body["selection"]["id"], body["selection"]["members"]))
        elif op["kind"] == "range":
            body = client.post(
                f"/api/sessions/{session_id}/filter",
                json={
                    "spec": {
                        "kind": "range",
                        "m_min": op["m_min"],
                        "m_max": op["m_max"],
                        "a_min": op["a_min"],
                        "a_max": op["a_max"],
                        "mode": op["mode"],
                    }
                },
            ).json()
            selection_ids.append(body["selection"]["id"])
            results.append(("sel", body["selection"]["id"], body["selection"]["members"]))
        elif op["kind"] in ("track", "expand"):
            if not selection_ids:
                continue
            action = "track" if op["kind"] == "track" else "track/expand"
            body = client.post(
                f"/api/sessions/{session_id}/{action}",
                json={"selection_id": selection_ids[-1]},
            ).json()
            results.append(("tracked", body["tracked"]))
        else:
            body = client.put(
                f"/api/sessions/{session_id}/notes", json={"notes": op["notes"]}
            ).json()
            results.append(("notes", body["notes"]))
    final_summary = client.get(f"/api/sessions/{session_id}").json()
    csv_out = client.get(f"/api/sessions/{session_id}/export/csv").content
    svg_out = client.get(f"/api/sessions/{session_id}/export/svg").content
    points = client.get(
        f"/api/datasets/{dataset_id}/points", params={"alpha": final_summary["alpha"]}
    ).json()["points"]
    return {
        "results": results,
        "summary": final_summary,
        "csv": csv_out,
        "svg": svg_out,
        "points": points,
    }


def _apply_ops_engine(csv_payload: bytes, ops: list[dict], config: ServiceConfig) -> dict:
    from maplot.api import point_payload

    datasets = DatasetRegistry()
    sessions = SessionRegistry()
    result = parse_csv(
        csv_payload,
        pseudocount=config.pseudocount,
        max_rows=config.max_rows,
        dataset_id=datasets.reserve_id(),
    )
    dataset = datasets.put(result.dataset)
    session = sessions.create(dataset, 0.05, config.max_notes_bytes)
    results = []
    selection_ids: list[str] = []

    def record_selection(selection: SelectionSet):
        selection_ids.append(selection.id)
        results.append(("sel", selection.id, list(selection.sorted_members)))

    for op in ops:
        if op["kind"] == "alpha":
            session.set_alpha(op["alpha"])
            results.append(("alpha", session.alpha))
        elif op["kind"] == "lasso":
            record_selection(session.select_lasso(op["vertices"]))
        elif op["kind"] == "box":
            record_selection(
                session.select_box(Box(op["a_min"], op["a_max"], op["m_min"], op["m_max"]))
            )
        elif op["kind"] == "search":
            record_selection(session.select_search(op["query"]))
        elif op["kind"] == "combine":
            if not selection_ids:
                continue
            record_selection(
                session.combine_selections(CombineOp(op["op"]), selection_ids[-op["count"] :])
            )
        elif op["kind"] == "top_k":
            record_selection(session.apply_filter(TopKFilter(k=op["k"])))
        elif op["kind"] == "range":
            record_selection(
                session.apply_filter(
                    RangeFilter(
                        m_min=op["m_min"],
                        m_max=op["m_max"],
                        a_min=op["a_min"],
                        a_max=op["a_max"],
                        mode=RangeMode(op["mode"]),
                    )
                )
            )
        elif op["kind"] in ("track", "expand"):
            if not selection_ids:
                continue
            if op["kind"] == "track":
                session.track(selection_ids[-1])
            else:
                session.expand_tracked(selection_ids[-1])
            results.append(("tracked", sorted(session.tracked)))
        else:
            session.set_notes(op["notes"])
            results.append(("notes", session.notes))
    return {
        "results": results,
        "summary": session_summary(session),
        "csv": export_csv(dataset),
        "svg": render_svg(dataset, session, shade_depth=config.shade_depth),
        "points": [point_payload(r, session.alpha, config.shade_depth) for r in dataset],
    }


def test_api_transparency_and_error_codes():
    rng = random.Random(424242)
    config = ServiceConfig()
    for trial in range(50):
        n = rng.randint(10, 80)
        lines = ["name,m,a,pvalue"]
        for i in range(n):
            p = "" if rng.random() < 0.15 else repr(rng.random())
            lines.append(f"G{i:03d},{rng.uniform(-6, 6)!r},{rng.uniform(0, 16)!r},{p}")
        csv_payload = ("\n".join(lines) + "\n").encode()
        ops = _make_ops(rng)

        client = TestClient(create_app(config), raise_server_exceptions=False)
        via_http = _apply_ops_http(client, csv_payload, ops)
        via_engine = _apply_ops_engine(csv_payload, ops, config)

        assert via_http["results"] == via_engine["results"], f"trial {trial}"
        assert via_http["summary"] == via_engine["summary"], f"trial {trial}"
        assert via_http["csv"] == via_engine["csv"], f"trial {trial}"
        assert via_http["svg"] == via_engine["svg"], f"trial {trial}"
        assert via_http["points"] == via_engine["points"], f"trial {trial}"

    cases = error_reachability_cases()
    for expected, response in cases:
        assert response.json()["error"]["code"] == expected
        assert response.status_code == ERROR_STATUS[expected]
    covered = {code for code, _ in cases}
    assert covered == set(ERROR_STATUS) - {"MixedDatasets", "EngineError"}
    _passed("API transparency: 50 op sequences identical over HTTP and engine; all error codes reachable")


# ---------------------------------------------------------------------------
# Criterion 9: desk-scale performance on a 100,000-gene dataset.
# ---------------------------------------------------------------------------


def test_desk_scale_performance():
    rng = random.Random(1001)
    lines = ["name,m,a,pvalue"]
    for i in range(100_000):
        p = "" if i % 31 == 0 else repr(rng.random())
        lines.append(f"g{i:06d},{rng.uniform(-8, 8)!r},{rng.uniform(0, 16)!r},{p}")
    payload = ("\n".join(lines) + "\n").encode()

    started = time.perf_counter()
    dataset = parse_csv(payload, dataset_id="ds-perf").dataset
    ingest_s = time.perf_counter() - started
    assert ingest_s < 2.0, f"ingest took {ingest_s:.2f}s"

    octagon = Polygon(
        tuple(
            (8.0 + 6.0 * math.cos(k * math.pi / 4), 6.0 * math.sin(k * math.pi / 4))
            for k in range(8)
        )
    )
    started = time.perf_counter()
    lassoed = select_lasso(dataset, octagon)
    lasso_s = time.perf_counter() - started
    assert lasso_s < 0.2, f"lasso took {lasso_s * 1000:.0f}ms"
    assert lassoed.members

    started = time.perf_counter()
    top = filter_top_k(dataset, None, 500)
    topk_s = time.perf_counter() - started
    assert topk_s < 0.1, f"top-k took {topk_s * 1000:.0f}ms"
    assert len(top.members) == 500

    started = time.perf_counter()
    ranged = filter_range(dataset, None, RangeFilter(-2, 2, 4, 12))
    range_s = time.perf_counter() - started
    assert range_s < 0.1, f"range took {range_s * 1000:.0f}ms"
    assert ranged.members

    session = Session(dataset, 0.05, session_id="s-perf")
    started = time.perf_counter()
    svg = render_svg(dataset, session)
    svg_s = time.perf_counter() - started
    assert svg_s < 1.0, f"render took {svg_s:.2f}s"
    assert svg.count(b"<circle") == 100_000

    _passed(
        "performance (100k genes): "
        f"ingest {ingest_s:.2f}s, lasso {lasso_s * 1000:.0f}ms, "
        f"top-k {topk_s * 1000:.0f}ms, range {range_s * 1000:.0f}ms, svg {svg_s:.2f}s"
    )
