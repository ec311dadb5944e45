/** Conversion from screen gestures to selection requests in data coordinates.
 * Degenerate gestures (zero-area box, sub-3-vertex lasso) return null and are
 * discarded by the caller with a notice.
 */

import { MAX_LASSO_VERTICES, Pt, simplifyPath } from "./lasso.js";
import { PlotGeometry, screenToData, Viewport } from "./scales.js";
import { SelectionRequest } from "./types.js";

export interface BoxDrag {
  start: Pt;
  end: Pt;
}

export function boxDragToRequest(
  drag: BoxDrag,
  vp: Viewport,
  geom: PlotGeometry,
): SelectionRequest | null {
  if (drag.start.x === drag.end.x || drag.start.y === drag.end.y) {
    return null;
  }
  const p1 = screenToData(vp, geom, drag.start.x, drag.start.y);
  const p2 = screenToData(vp, geom, drag.end.x, drag.end.y);
  return {
    kind: "box",
    box: {
      a_min: Math.min(p1.a, p2.a),
      a_max: Math.max(p1.a, p2.a),
      m_min: Math.min(p1.m, p2.m),
      m_max: Math.max(p1.m, p2.m),
    },
  };
}

export function lassoPathToRequest(
  path: Pt[],
  vp: Viewport,
  geom: PlotGeometry,
  maxVertices: number = MAX_LASSO_VERTICES,
): SelectionRequest | null {
  const simplified = simplifyPath(path, maxVertices);
  if (simplified.length < 3) {
    return null;
  }
  const vertices = simplified.map((pt) => {
    const d = screenToData(vp, geom, pt.x, pt.y);
    return [d.a, d.m] as [number, number];
  });
  return { kind: "lasso", vertices };
}
