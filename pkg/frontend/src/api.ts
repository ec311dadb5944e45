/** Typed client over the workbench HTTP API.
 *
 * Mutating calls on a session are serialized (at most one in flight) and a
 * new gesture selection aborts a still-pending previous one.
 */

import {
  CombineOpName,
  DatasetSummary,
  FilterSpecBody,
  MutationResult,
  PointsPage,
  SearchResult,
  SelectionDetail,
  SelectionRequest,
  SessionSummary,
  UploadResult,
  ApiPoint,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
    readonly detail: unknown = undefined,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<never> {
  let code = `Http${response.status}`;
  let message = response.statusText;
  let detail: unknown;
  try {
    const body = (await response.json()) as {
      error?: { code?: string; message?: string; detail?: unknown };
    };
    if (body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      detail = body.error.detail;
    }
  } catch {
    // non-JSON error body; keep the HTTP status text
  }
  throw new ApiError(code, message, response.status, detail);
}

export class ApiClient {
  private mutationChain: Promise<unknown> = Promise.resolve();
  private gestureAbort: AbortController | null = null;

  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      await parseError(response);
    }
    return (await response.json()) as T;
  }

  private async requestRaw(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      await parseError(response);
    }
    return response;
  }

  /** Chain a mutation so only one runs at a time per client. */
  private mutate<T>(run: () => Promise<T>): Promise<T> {
    const next = this.mutationChain.then(run, run);
    this.mutationChain = next.catch(() => undefined);
    return next;
  }

  private json(body: unknown, signal?: AbortSignal): RequestInit {
    return {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    };
  }

  uploadDataset(csv: string | Uint8Array | Blob): Promise<UploadResult> {
    return this.mutate(() =>
      this.request<UploadResult>("/api/datasets", {
        method: "POST",
        headers: { "content-type": "text/csv" },
        body: csv as BodyInit,
      }),
    );
  }

  getPointsPage(datasetId: string, alpha: number, page = 1, pageSize?: number): Promise<PointsPage> {
    const params = new URLSearchParams({ alpha: String(alpha), page: String(page) });
    if (pageSize !== undefined) {
      params.set("page_size", String(pageSize));
    }
    return this.request(`/api/datasets/${datasetId}/points?${params}`);
  }

  /** Fetch every page; the server caps page size, so large sets take several requests. */
  async getAllPoints(datasetId: string, alpha: number): Promise<ApiPoint[]> {
    const first = await this.getPointsPage(datasetId, alpha, 1);
    const points = [...first.points];
    let page = 2;
    while (points.length < first.total) {
      const next = await this.getPointsPage(datasetId, alpha, page);
      if (next.points.length === 0) {
        break;
      }
      points.push(...next.points);
      page += 1;
    }
    return points;
  }

  getSummary(datasetId: string, alpha: number): Promise<DatasetSummary> {
    return this.request(`/api/datasets/${datasetId}/summary?alpha=${alpha}`);
  }

  search(datasetId: string, query: string, limit = 12): Promise<SearchResult> {
    const params = new URLSearchParams({ q: query, limit: String(limit) });
    return this.request(`/api/datasets/${datasetId}/search?${params}`);
  }

  createSession(datasetId: string, alpha: number): Promise<SessionSummary> {
    return this.mutate(() =>
      this.request<SessionSummary>("/api/sessions", this.json({ dataset_id: datasetId, alpha })),
    );
  }

  getSession(sessionId: string): Promise<SessionSummary> {
    return this.request(`/api/sessions/${sessionId}`);
  }

  setAlpha(sessionId: string, alpha: number): Promise<SessionSummary> {
    return this.mutate(() =>
      this.request<SessionSummary>(`/api/sessions/${sessionId}/alpha`, this.json({ alpha })),
    );
  }

  /** Post a gesture/search selection; supersedes any still-pending one. */
  createSelection(sessionId: string, body: SelectionRequest): Promise<MutationResult> {
    this.gestureAbort?.abort();
    const controller = new AbortController();
    this.gestureAbort = controller;
    return this.mutate(() =>
      this.request<MutationResult>(
        `/api/sessions/${sessionId}/selections`,
        this.json(body, controller.signal),
      ),
    );
  }

  getSelection(sessionId: string, selectionId: string): Promise<SelectionDetail> {
    return this.request(`/api/sessions/${sessionId}/selections/${selectionId}`);
  }

  combine(
    sessionId: string,
    op: CombineOpName,
    inputs: string[],
    label?: string,
  ): Promise<MutationResult> {
    return this.mutate(() =>
      this.request<MutationResult>(
        `/api/sessions/${sessionId}/combine`,
        this.json({ op, inputs, label }),
      ),
    );
  }

  applyFilter(
    sessionId: string,
    spec: FilterSpecBody,
    source?: string,
    label?: string,
  ): Promise<MutationResult> {
    return this.mutate(() =>
      this.request<MutationResult>(
        `/api/sessions/${sessionId}/filter`,
        this.json({ spec, source, label }),
      ),
    );
  }

  track(sessionId: string, selectionId: string): Promise<SessionSummary> {
    return this.mutate(() =>
      this.request<SessionSummary>(
        `/api/sessions/${sessionId}/track`,
        this.json({ selection_id: selectionId }),
      ),
    );
  }

  expandTracked(sessionId: string, selectionId: string): Promise<SessionSummary> {
    return this.mutate(() =>
      this.request<SessionSummary>(
        `/api/sessions/${sessionId}/track/expand`,
        this.json({ selection_id: selectionId }),
      ),
    );
  }

  getNotes(sessionId: string): Promise<{ notes: string }> {
    return this.request(`/api/sessions/${sessionId}/notes`);
  }

  putNotes(sessionId: string, notes: string): Promise<SessionSummary> {
    return this.mutate(() =>
      this.request<SessionSummary>(`/api/sessions/${sessionId}/notes`, {
        method: "PUT",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ notes }),
      }),
    );
  }

  importSession(bundle: string | Uint8Array | Blob): Promise<SessionSummary> {
    return this.mutate(() =>
      this.request<SessionSummary>("/api/sessions/import", {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: bundle as BodyInit,
      }),
    );
  }

  async fetchExport(sessionId: string, what: "csv" | "session" | "svg"): Promise<Blob> {
    const response = await this.requestRaw(`/api/sessions/${sessionId}/export/${what}`);
    return response.blob();
  }

  exportUrl(sessionId: string, what: "csv" | "session" | "svg", source?: string): string {
    const suffix = source ? `?source=${encodeURIComponent(source)}` : "";
    return `${this.base}/api/sessions/${sessionId}/export/${what}${suffix}`;
  }
}
