/** App bootstrap: builds the panel grid, wires widgets to the API client, and
 * handles plot gestures (pan/zoom/lasso/box) and hover details.
 */

import { ApiClient, ApiError } from "./api.js";
import { boxDragToRequest, lassoPathToRequest } from "./gestures.js";
import { exportEnabled, GRID_TEMPLATE_AREAS, PANEL_CYCLE } from "./layout.js";
import { Pt } from "./lasso.js";
import { nearestWithin, PICK_RADIUS_PX } from "./picking.js";
import { PlotRenderer } from "./render.js";
import {
  DEFAULT_GEOMETRY,
  dataToScreen,
  panViewport,
  viewportFromExtent,
  viewportIsValid,
  zoomViewport,
} from "./scales.js";
import { Store } from "./store.js";
import { SelectionRequest } from "./types.js";
import { attachAlphaControls, attachSearchBox, debounce, downloadBlob } from "./widgets.js";

const api = new ApiClient("");
const store = new Store();

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function setStatus(message: string): void {
  store.update({ status: message });
}

async function guarded<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    return await work();
  } catch (error) {
    if (error instanceof DOMException && error.name === "AbortError") {
      return undefined; // superseded gesture
    }
    const message =
      error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    setStatus(`Error — ${message}`);
    return undefined;
  }
}

async function refreshPoints(): Promise<void> {
  const { datasetId, alpha } = store.state;
  if (!datasetId) {
    return;
  }
  const points = await api.getAllPoints(datasetId, alpha);
  const viewport = store.state.viewport ?? viewportFromExtent(points);
  store.update({ points, geneCount: points.length, viewport });
}

function buildPanels(root: HTMLElement): void {
  root.style.gridTemplateAreas = GRID_TEMPLATE_AREAS;
  for (const spec of PANEL_CYCLE) {
    const section = document.createElement("section");
    section.className = "panel";
    section.dataset.panel = spec.id;
    section.style.gridArea = spec.gridArea;
    const heading = document.createElement("h2");
    heading.textContent = spec.title;
    section.appendChild(heading);
    const body = document.createElement("div");
    body.id = `panel-${spec.id}`;
    body.className = "panel-body";
    section.appendChild(body);
    root.appendChild(section);
  }
}

function renderSelectionList(): void {
  const list = el<HTMLUListElement>("selection-list");
  list.replaceChildren(
    ...store.state.selections.map((sel) => {
      const item = document.createElement("li");
      const checkbox = document.createElement("input");
      checkbox.type = "checkbox";
      checkbox.value = sel.id;
      checkbox.className = "sel-check";
      const text = document.createElement("span");
      text.textContent = ` ${sel.label} (${sel.size} genes)`;
      item.appendChild(checkbox);
      item.appendChild(text);
      item.dataset.selectionId = sel.id;
      list.appendChild(item);
      return item;
    }),
  );
  const options = store.state.selections.map((sel) => {
    const option = document.createElement("option");
    option.value = sel.id;
    option.textContent = sel.label;
    return option;
  });
  const sourceSelect = el<HTMLSelectElement>("filter-source");
  const current = sourceSelect.value;
  sourceSelect.replaceChildren(
    new Option("whole dataset", ""),
    new Option("tracked set", "tracked"),
    ...options,
  );
  sourceSelect.value = current;
  const trackSelect = el<HTMLSelectElement>("track-source");
  const currentTrack = trackSelect.value;
  trackSelect.replaceChildren(...options.map((o) => o.cloneNode(true) as HTMLOptionElement));
  if (currentTrack) {
    trackSelect.value = currentTrack;
  }
}

function checkedSelectionIds(): string[] {
  return Array.from(document.querySelectorAll<HTMLInputElement>(".sel-check:checked")).map(
    (box) => box.value,
  );
}

function main(): void {
  buildPanels(el("app"));

  // -- Load panel ----------------------------------------------------------
  const loadBody = el("panel-load");
  loadBody.innerHTML = `
    <input type="file" id="file-input" accept=".csv,text/csv">
    <span id="dataset-info"></span>
    <span id="status" role="status"></span>`;
  const fileInput = el<HTMLInputElement>("file-input");
  fileInput.addEventListener("change", () =>
    guarded(async () => {
      const file = fileInput.files?.[0];
      if (!file) {
        return;
      }
      const upload = await api.uploadDataset(file);
      const session = await api.createSession(upload.dataset_id, store.state.alpha);
      store.update({ datasetId: upload.dataset_id, viewport: null });
      store.applySession(session);
      await refreshPoints();
      const warnings = upload.report.warnings.length
        ? ` (warnings: ${upload.report.warnings.join("; ")})`
        : "";
      el("dataset-info").textContent = `${upload.report.rows} genes, ${upload.report.schema} schema${warnings}`;
      setStatus("Dataset loaded.");
    }),
  );

  // -- Display panel -------------------------------------------------------
  const displayBody = el("panel-display");
  displayBody.innerHTML = `
    <div class="plot-toolbar">
      <label>significance α:</label>
      <span id="alpha-presets"></span>
      <input type="range" id="alpha-slider">
      <input type="text" id="alpha-exact" size="8" value="0.05">
      <span class="spacer"></span>
      <button type="button" data-mode="pan" class="mode active">pan/zoom</button>
      <button type="button" data-mode="lasso" class="mode">lasso</button>
      <button type="button" data-mode="box" class="mode">box</button>
      <span id="summary-counts"></span>
    </div>
    <div id="plot-wrap">
      <canvas id="plot-canvas"></canvas>
      <svg id="plot-overlay"></svg>
      <canvas id="gesture-canvas"></canvas>
      <div id="tooltip" hidden></div>
    </div>`;
  const renderer = new PlotRenderer(
    el<HTMLCanvasElement>("plot-canvas"),
    el("plot-overlay") as unknown as SVGSVGElement,
    DEFAULT_GEOMETRY,
  );
  const gestureCanvas = el<HTMLCanvasElement>("gesture-canvas");
  gestureCanvas.width = DEFAULT_GEOMETRY.width;
  gestureCanvas.height = DEFAULT_GEOMETRY.height;

  attachAlphaControls(
    el("alpha-presets"),
    el<HTMLInputElement>("alpha-slider"),
    el<HTMLInputElement>("alpha-exact"),
    (alpha) =>
      guarded(async () => {
        const { sessionId } = store.state;
        if (sessionId) {
          store.applySession(await api.setAlpha(sessionId, alpha));
        } else {
          store.update({ alpha });
        }
        await refreshPoints();
      }),
  );

  for (const button of displayBody.querySelectorAll<HTMLButtonElement>("button.mode")) {
    button.addEventListener("click", () => {
      displayBody
        .querySelectorAll("button.mode")
        .forEach((b) => b.classList.toggle("active", b === button));
      store.update({ mode: button.dataset.mode as "pan" | "lasso" | "box" });
    });
  }

  // -- gestures ------------------------------------------------------------
  let dragStart: Pt | null = null;
  let lassoPath: Pt[] = [];
  const gctx = gestureCanvas.getContext("2d");

  const localPoint = (event: MouseEvent): Pt => {
    const rect = gestureCanvas.getBoundingClientRect();
    return { x: event.clientX - rect.left, y: event.clientY - rect.top };
  };

  const drawGesture = () => {
    if (!gctx) {
      return;
    }
    gctx.clearRect(0, 0, gestureCanvas.width, gestureCanvas.height);
    gctx.strokeStyle = "#0369a1";
    gctx.setLineDash([5, 3]);
    if (store.state.mode === "lasso" && lassoPath.length > 1) {
      gctx.beginPath();
      gctx.moveTo(lassoPath[0].x, lassoPath[0].y);
      for (const pt of lassoPath) {
        gctx.lineTo(pt.x, pt.y);
      }
      gctx.stroke();
    } else if (store.state.mode === "box" && dragStart && lassoPath.length) {
      const end = lassoPath[lassoPath.length - 1];
      gctx.strokeRect(
        Math.min(dragStart.x, end.x),
        Math.min(dragStart.y, end.y),
        Math.abs(end.x - dragStart.x),
        Math.abs(end.y - dragStart.y),
      );
    }
  };

  const submitSelection = (request: SelectionRequest | null) =>
    guarded(async () => {
      if (!request) {
        setStatus("Gesture too small — discarded.");
        return;
      }
      const { sessionId } = store.state;
      if (!sessionId) {
        setStatus("Load a dataset first.");
        return;
      }
      const result = await api.createSelection(sessionId, request);
      store.applySession(result.session);
      setStatus(`Selection ${result.selection.label}: ${result.selection.size} genes.`);
    });

  gestureCanvas.addEventListener("mousedown", (event) => {
    dragStart = localPoint(event);
    lassoPath = [dragStart];
  });
  gestureCanvas.addEventListener("mousemove", (event) => {
    const point = localPoint(event);
    if (dragStart) {
      if (store.state.mode === "pan") {
        const vp = store.state.viewport;
        if (vp) {
          store.update({
            viewport: panViewport(vp, renderer.geom, point.x - dragStart.x, point.y - dragStart.y),
          });
          dragStart = point;
        }
      } else {
        lassoPath.push(point);
        drawGesture();
      }
      return;
    }
    // hover details
    const vp = store.state.viewport;
    if (!vp) {
      return;
    }
    const markers = store.state.points.map((p) => ({
      name: p.name,
      ...dataToScreen(vp, renderer.geom, p.a, p.m),
    }));
    const hit = nearestWithin(markers, point, PICK_RADIUS_PX);
    const tooltip = el("tooltip");
    if (!hit) {
      tooltip.hidden = true;
      store.update({ hover: null });
      return;
    }
    const gene = store.state.points.find((p) => p.name === hit.name);
    if (!gene) {
      return;
    }
    tooltip.hidden = false;
    tooltip.style.left = `${hit.x + 10}px`;
    tooltip.style.top = `${hit.y + 10}px`;
    tooltip.textContent = `${gene.name}  M=${gene.m.toPrecision(4)}  A=${gene.a.toPrecision(4)}  P=${
      gene.p === null ? "missing" : gene.p.toPrecision(4)
    }`;
    store.update({ hover: gene.name });
  });
  gestureCanvas.addEventListener("mouseup", () => {
    const vp = store.state.viewport;
    if (!dragStart || !vp) {
      dragStart = null;
      return;
    }
    const mode = store.state.mode;
    const start = dragStart;
    const path = lassoPath;
    dragStart = null;
    lassoPath = [];
    gctx?.clearRect(0, 0, gestureCanvas.width, gestureCanvas.height);
    if (mode === "lasso") {
      void submitSelection(lassoPathToRequest(path, vp, renderer.geom));
    } else if (mode === "box") {
      const end = path[path.length - 1];
      void submitSelection(boxDragToRequest({ start, end }, vp, renderer.geom));
    }
  });
  gestureCanvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    const vp = store.state.viewport;
    if (!vp) {
      return;
    }
    const point = localPoint(event);
    const factor = event.deltaY < 0 ? 1.15 : 1 / 1.15;
    const next = zoomViewport(vp, renderer.geom, factor, point.x, point.y);
    if (viewportIsValid(next)) {
      store.update({ viewport: next });
    }
  });

  // -- Select panel ---------------------------------------------------------
  const selectBody = el("panel-select");
  selectBody.innerHTML = `
    <input type="text" id="search-input" placeholder="search gene name…" autocomplete="off">
    <ul id="search-results"></ul>
    <ul id="selection-list"></ul>
    <div class="combine-row">
      <button type="button" id="combine-all">Keep all</button>
      <button type="button" id="combine-multiples">Keep multiples</button>
      <button type="button" id="combine-singles">Keep singles</button>
    </div>`;
  attachSearchBox(
    el<HTMLInputElement>("search-input"),
    el("search-results"),
    async (query) => {
      const { datasetId } = store.state;
      if (!datasetId) {
        return [];
      }
      return (await api.search(datasetId, query)).matches;
    },
    (name, query) =>
      guarded(async () => {
        const { sessionId } = store.state;
        if (!sessionId) {
          return;
        }
        const result = await api.createSelection(sessionId, {
          kind: "search",
          query,
          pick: name,
          label: `search ${name}`,
        });
        store.applySession(result.session);
      }),
  );
  const combineUsing = (op: "keep_all" | "keep_multiples" | "keep_singles") =>
    guarded(async () => {
      const { sessionId } = store.state;
      const inputs = checkedSelectionIds();
      if (!sessionId || inputs.length === 0) {
        setStatus("Tick at least one selection to combine.");
        return;
      }
      const result = await api.combine(sessionId, op, inputs);
      store.applySession(result.session);
    });
  el("combine-all").addEventListener("click", () => combineUsing("keep_all"));
  el("combine-multiples").addEventListener("click", () => combineUsing("keep_multiples"));
  el("combine-singles").addEventListener("click", () => combineUsing("keep_singles"));

  // -- Filter panel ----------------------------------------------------------
  const filterBody = el("panel-filter");
  filterBody.innerHTML = `
    <label>source <select id="filter-source"></select></label>
    <fieldset>
      <legend>top-K by significance</legend>
      <input type="number" id="topk-k" min="0" value="50">
      <select id="topk-direction">
        <option value="most_significant">most significant</option>
        <option value="least_significant">largest p-value</option>
      </select>
      <button type="button" id="apply-topk">Apply</button>
    </fieldset>
    <fieldset>
      <legend>M/A range</legend>
      M <input type="number" id="range-m-min" value="-1" step="0.1"> … <input type="number" id="range-m-max" value="1" step="0.1">
      A <input type="number" id="range-a-min" value="0" step="0.1"> … <input type="number" id="range-a-max" value="10" step="0.1">
      <label><input type="checkbox" id="range-outside"> outside range</label>
      <button type="button" id="apply-range">Apply</button>
    </fieldset>`;
  const filterSource = (): string | undefined => {
    const value = el<HTMLSelectElement>("filter-source").value;
    return value === "" ? undefined : value;
  };
  el("apply-topk").addEventListener("click", () =>
    guarded(async () => {
      const { sessionId } = store.state;
      if (!sessionId) {
        return;
      }
      const result = await api.applyFilter(
        sessionId,
        {
          kind: "top_k",
          k: Number(el<HTMLInputElement>("topk-k").value),
          direction: el<HTMLSelectElement>("topk-direction").value as
            | "most_significant"
            | "least_significant",
        },
        filterSource(),
      );
      store.applySession(result.session);
    }),
  );
  el("apply-range").addEventListener("click", () =>
    guarded(async () => {
      const { sessionId } = store.state;
      if (!sessionId) {
        return;
      }
      const result = await api.applyFilter(
        sessionId,
        {
          kind: "range",
          m_min: Number(el<HTMLInputElement>("range-m-min").value),
          m_max: Number(el<HTMLInputElement>("range-m-max").value),
          a_min: Number(el<HTMLInputElement>("range-a-min").value),
          a_max: Number(el<HTMLInputElement>("range-a-max").value),
          mode: el<HTMLInputElement>("range-outside").checked ? "outside" : "inside",
        },
        filterSource(),
      );
      store.applySession(result.session);
    }),
  );

  // -- Track panel -----------------------------------------------------------
  const trackBody = el("panel-track");
  trackBody.innerHTML = `
    <label>selection <select id="track-source"></select></label>
    <button type="button" id="track-replace">Track selected genes</button>
    <button type="button" id="track-expand">Expand tracked set</button>
    <div id="tracked-count">0 tracked</div>
    <ul id="tracked-list"></ul>`;
  const trackUsing = (expand: boolean) =>
    guarded(async () => {
      const { sessionId } = store.state;
      const selectionId = el<HTMLSelectElement>("track-source").value;
      if (!sessionId || !selectionId) {
        setStatus("Pick a selection to track.");
        return;
      }
      const summary = expand
        ? await api.expandTracked(sessionId, selectionId)
        : await api.track(sessionId, selectionId);
      store.applySession(summary);
    });
  el("track-replace").addEventListener("click", () => trackUsing(false));
  el("track-expand").addEventListener("click", () => trackUsing(true));

  // -- Export panel ------------------------------------------------------------
  const exportBody = el("panel-export");
  exportBody.innerHTML = `
    <textarea id="notes" rows="4" placeholder="take notes — saved with the session"></textarea>
    <div class="export-row">
      <label>genes <select id="export-source">
        <option value="">all</option>
        <option value="tracked">tracked</option>
      </select></label>
      <button type="button" id="export-csv">CSV</button>
      <button type="button" id="export-session">Session</button>
      <button type="button" id="export-svg">SVG</button>
      <button type="button" id="export-png">PNG</button>
    </div>`;
  const notesArea = el<HTMLTextAreaElement>("notes");
  notesArea.addEventListener(
    "input",
    debounce(() => {
      const { sessionId } = store.state;
      if (sessionId) {
        void guarded(() => api.putNotes(sessionId, notesArea.value));
      }
    }, 400),
  );
  const exportVia = (what: "csv" | "session" | "svg") =>
    guarded(async () => {
      const { sessionId } = store.state;
      if (!sessionId) {
        return;
      }
      const source = el<HTMLSelectElement>("export-source").value || undefined;
      const anchor = document.createElement("a");
      anchor.href = api.exportUrl(sessionId, what, what === "csv" ? source : undefined);
      anchor.download = "";
      anchor.click();
    });
  el("export-csv").addEventListener("click", () => exportVia("csv"));
  el("export-session").addEventListener("click", () => exportVia("session"));
  el("export-svg").addEventListener("click", () => exportVia("svg"));
  el("export-png").addEventListener("click", () =>
    guarded(async () => {
      downloadBlob(await renderer.toPng(), "ma-plot.png");
    }),
  );

  // -- reactions -------------------------------------------------------------
  store.subscribe((state) => {
    el("status").textContent = state.status;
    const enabled = exportEnabled(state);
    for (const id of ["export-csv", "export-session", "export-svg", "export-png"]) {
      el<HTMLButtonElement>(id).disabled = !enabled;
    }
    el("tracked-count").textContent = `${state.tracked.size} tracked`;
    const trackedList = el<HTMLUListElement>("tracked-list");
    trackedList.replaceChildren(
      ...Array.from(state.tracked)
        .sort()
        .slice(0, 200)
        .map((name) => {
          const item = document.createElement("li");
          item.textContent = name;
          return item;
        }),
    );
    if (state.viewport) {
      renderer.draw(state.points, state.viewport, state.tracked);
    }
    renderSelectionList();
    const counts = state.points.reduce(
      (acc, p) => {
        acc[p.classification] += 1;
        return acc;
      },
      { up: 0, down: 0, not_significant: 0, missing_p: 0 },
    );
    el("summary-counts").textContent = state.points.length
      ? `↑${counts.up} ↓${counts.down} · ${counts.not_significant} ns · ${counts.missing_p} missing`
      : "";
  });
  store.update({});
}

document.addEventListener("DOMContentLoaded", main);
