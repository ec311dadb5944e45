/** Widget arrangement: load top-left, export bottom-right, and the
 * display/select/filter/track panels placed so repeated analysis passes cycle
 * counter-clockwise between them.
 */

export type PanelId = "load" | "display" | "select" | "filter" | "track" | "export";

export interface PanelSpec {
  id: PanelId;
  title: string;
  gridArea: string;
}

/** Order of the cycle as the analyst's eye travels it: load first, then
 * around the display->select->filter->track loop, exiting at export. */
export const PANEL_CYCLE: readonly PanelSpec[] = [
  { id: "load", title: "Load data", gridArea: "load" },
  { id: "display", title: "MA plot", gridArea: "display" },
  { id: "select", title: "Select", gridArea: "select" },
  { id: "filter", title: "Filter", gridArea: "filter" },
  { id: "track", title: "Track", gridArea: "track" },
  { id: "export", title: "Export & notes", gridArea: "export" },
] as const;

/** CSS grid template: plot spans the upper-left, the select/filter row runs
 * beneath it (right-to-left flow back toward the plot), track sits on the
 * right column flowing down into export at the bottom-right corner. */
export const GRID_TEMPLATE_AREAS = [
  '"load load track"',
  '"display display track"',
  '"select filter export"',
].join(" ");

export const ALPHA_PRESETS = [0.01, 0.05, 0.1] as const;

/** Export controls stay disabled until a dataset (and hence session) exists. */
export function exportEnabled(state: { sessionId: string | null }): boolean {
  return state.sessionId !== null;
}
