/** Free-hand lasso path handling: duplicate/collinear point removal and a
 * hard vertex cap so posted gestures stay small without visible fidelity loss.
 */

export interface Pt {
  x: number;
  y: number;
}

export const MAX_LASSO_VERTICES = 256;

function cross(o: Pt, p: Pt, q: Pt): number {
  return (p.x - o.x) * (q.y - o.y) - (q.x - o.x) * (p.y - o.y);
}

/** Drop consecutive duplicates and interior points collinear with their
 * neighbours (within `epsilon` of zero triangle area), then decimate evenly
 * down to `maxVertices` if the path is still too long. */
export function simplifyPath(
  path: Pt[],
  maxVertices: number = MAX_LASSO_VERTICES,
  epsilon = 1e-9,
): Pt[] {
  const deduped: Pt[] = [];
  for (const pt of path) {
    const last = deduped[deduped.length - 1];
    if (!last || last.x !== pt.x || last.y !== pt.y) {
      deduped.push(pt);
    }
  }
  const kept: Pt[] = [];
  for (const pt of deduped) {
    while (
      kept.length >= 2 &&
      Math.abs(cross(kept[kept.length - 2], kept[kept.length - 1], pt)) <= epsilon
    ) {
      kept.pop();
    }
    kept.push(pt);
  }
  if (kept.length <= maxVertices) {
    return kept;
  }
  const decimated: Pt[] = [];
  for (let i = 0; i < maxVertices; i++) {
    const index = Math.round((i * (kept.length - 1)) / (maxVertices - 1));
    decimated.push(kept[index]);
  }
  return decimated;
}

/** A lasso is unusable when, after simplification, it has no area to enclose. */
export function isDegeneratePath(path: Pt[]): boolean {
  return simplifyPath(path).length < 3;
}
