import { describe, expect, it } from "vitest";

import { ALPHA_PRESETS, exportEnabled, GRID_TEMPLATE_AREAS, PANEL_CYCLE } from "../src/layout.js";

describe("panel cycle", () => {
  it("starts with load and ends with export", () => {
    expect(PANEL_CYCLE[0].id).toBe("load");
    expect(PANEL_CYCLE[PANEL_CYCLE.length - 1].id).toBe("export");
  });

  it("orders the analysis loop display -> select -> filter -> track", () => {
    const ids = PANEL_CYCLE.map((p) => p.id);
    expect(ids).toEqual(["load", "display", "select", "filter", "track", "export"]);
  });

  it("pins load to the top-left and export to the bottom-right of the grid", () => {
    const rows = GRID_TEMPLATE_AREAS.split('" "').map((row) =>
      row.replaceAll('"', "").trim().split(/\s+/),
    );
    expect(rows[0][0]).toBe("load");
    const lastRow = rows[rows.length - 1];
    expect(lastRow[lastRow.length - 1]).toBe("export");
    // Every panel appears somewhere in the grid.
    const cells = new Set(rows.flat());
    for (const panel of PANEL_CYCLE) {
      expect(cells.has(panel.gridArea)).toBe(true);
    }
  });

  it("keeps the select/filter/track loop adjacent to the plot", () => {
    const rows = GRID_TEMPLATE_AREAS.split('" "').map((row) =>
      row.replaceAll('"', "").trim().split(/\s+/),
    );
    // The plot (display) occupies the row above select/filter; track shares a
    // row with the plot, forming the counter-clockwise circuit.
    expect(rows[1]).toContain("display");
    expect(rows[1]).toContain("track");
    expect(rows[2].slice(0, 2)).toEqual(["select", "filter"]);
  });
});

describe("alpha presets", () => {
  it("offers the standard thresholds", () => {
    expect([...ALPHA_PRESETS]).toEqual([0.01, 0.05, 0.1]);
  });
});

describe("export gating", () => {
  it("is disabled until a session exists", () => {
    expect(exportEnabled({ sessionId: null })).toBe(false);
    expect(exportEnabled({ sessionId: "s-1" })).toBe(true);
  });
});
