/** Hover hit-testing: nearest marker within the pick radius, ties by name. */

import { Pt } from "./lasso.js";

export const PICK_RADIUS_PX = 6;

export interface ScreenMarker {
  name: string;
  x: number;
  y: number;
}

export function nearestWithin(
  markers: Iterable<ScreenMarker>,
  cursor: Pt,
  radius: number = PICK_RADIUS_PX,
): ScreenMarker | null {
  const limit = radius * radius;
  let best: ScreenMarker | null = null;
  let bestDist = Infinity;
  for (const marker of markers) {
    const dx = marker.x - cursor.x;
    const dy = marker.y - cursor.y;
    const dist = dx * dx + dy * dy;
    if (dist > limit) {
      continue;
    }
    if (dist < bestDist || (dist === bestDist && best !== null && marker.name < best.name)) {
      best = marker;
      bestDist = dist;
    }
  }
  return best;
}
