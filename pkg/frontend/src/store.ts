/** Minimal observable state container for the app. */

import { Viewport } from "./scales.js";
import { ApiPoint, SelectionInfo } from "./types.js";

export interface AppState {
  datasetId: string | null;
  sessionId: string | null;
  alpha: number;
  geneCount: number;
  points: ApiPoint[];
  selections: SelectionInfo[];
  tracked: Set<string>;
  notes: string;
  viewport: Viewport | null;
  mode: "pan" | "lasso" | "box";
  hover: string | null;
  status: string;
}

export function initialState(): AppState {
  return {
    datasetId: null,
    sessionId: null,
    alpha: 0.05,
    geneCount: 0,
    points: [],
    selections: [],
    tracked: new Set(),
    notes: "",
    viewport: null,
    mode: "pan",
    hover: null,
    status: "Load a CSV file to begin.",
  };
}

type Listener = (state: AppState) => void;

export class Store {
  private listeners: Listener[] = [];
  state: AppState = initialState();

  update(partial: Partial<AppState>): void {
    Object.assign(this.state, partial);
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  /** Fold a session summary from any mutating response into the state. */
  applySession(summary: {
    id: string;
    alpha: number;
    selections: SelectionInfo[];
    tracked: string[];
    notes: string;
  }): void {
    this.update({
      sessionId: summary.id,
      alpha: summary.alpha,
      selections: summary.selections,
      tracked: new Set(summary.tracked),
      notes: summary.notes,
    });
  }
}
