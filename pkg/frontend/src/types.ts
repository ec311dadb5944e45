/** Wire types mirroring the workbench HTTP API. */

export type ClassificationName = "up" | "down" | "not_significant" | "missing_p";

export interface ApiPoint {
  name: string;
  a: number;
  m: number;
  p: number | null;
  classification: ClassificationName;
  shade: { base: "red" | "blue" | "grey" | "yellow"; intensity: number };
  color: string;
}

export interface PointsPage {
  total: number;
  page: number;
  page_size: number;
  points: ApiPoint[];
}

export interface IngestReport {
  schema: "raw" | "precomputed";
  rows: number;
  warnings: string[];
}

export interface UploadResult {
  dataset_id: string;
  report: IngestReport;
}

export interface SelectionInfo {
  id: string;
  label: string;
  origin: { kind: string; [key: string]: unknown };
  size: number;
}

export interface SessionSummary {
  id: string;
  dataset_id: string;
  alpha: number;
  selections: SelectionInfo[];
  tracked: string[];
  notes: string;
}

export interface SelectionDetail extends SelectionInfo {
  dataset_id: string;
  members: string[];
}

export interface MutationResult {
  selection: SelectionDetail;
  session: SessionSummary;
}

export interface DatasetSummary {
  dataset_id: string;
  alpha: number;
  gene_count: number;
  counts: { up: number; down: number; not_significant: number; missing_p: number };
  m_min: number | null;
  m_max: number | null;
  a_min: number | null;
  a_max: number | null;
}

export interface SearchResult {
  query: string;
  total: number;
  matches: string[];
}

export type CombineOpName = "keep_all" | "keep_multiples" | "keep_singles";

export type FilterSpecBody =
  | { kind: "top_k"; k: number; direction?: "most_significant" | "least_significant" }
  | {
      kind: "range";
      m_min: number;
      m_max: number;
      a_min: number;
      a_max: number;
      mode?: "inside" | "outside";
    };

export type SelectionRequest =
  | { kind: "lasso"; vertices: [number, number][]; label?: string }
  | {
      kind: "box";
      box: { a_min: number; a_max: number; m_min: number; m_max: number };
      label?: string;
    }
  | { kind: "search"; query: string; pick?: string; label?: string };
