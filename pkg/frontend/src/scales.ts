/** Coordinate transforms between data space (a, m) and screen pixels.
 *
 * These are pure rendering transforms; all statistics (M, A, classification,
 * shade) come from the server untouched.
 */

export interface Viewport {
  aMin: number;
  aMax: number;
  mMin: number;
  mMax: number;
}

export interface PlotGeometry {
  width: number;
  height: number;
  marginLeft: number;
  marginRight: number;
  marginTop: number;
  marginBottom: number;
}

export const DEFAULT_GEOMETRY: PlotGeometry = {
  width: 800,
  height: 560,
  marginLeft: 52,
  marginRight: 16,
  marginTop: 12,
  marginBottom: 40,
};

export interface PlotArea {
  x0: number;
  y0: number;
  width: number;
  height: number;
}

export function plotArea(geom: PlotGeometry): PlotArea {
  return {
    x0: geom.marginLeft,
    y0: geom.marginTop,
    width: geom.width - geom.marginLeft - geom.marginRight,
    height: geom.height - geom.marginTop - geom.marginBottom,
  };
}

export function dataToScreen(
  vp: Viewport,
  geom: PlotGeometry,
  a: number,
  m: number,
): { x: number; y: number } {
  const area = plotArea(geom);
  return {
    x: area.x0 + ((a - vp.aMin) / (vp.aMax - vp.aMin)) * area.width,
    y: area.y0 + ((vp.mMax - m) / (vp.mMax - vp.mMin)) * area.height,
  };
}

export function screenToData(
  vp: Viewport,
  geom: PlotGeometry,
  x: number,
  y: number,
): { a: number; m: number } {
  const area = plotArea(geom);
  return {
    a: vp.aMin + ((x - area.x0) / area.width) * (vp.aMax - vp.aMin),
    m: vp.mMax - ((y - area.y0) / area.height) * (vp.mMax - vp.mMin),
  };
}

/** Shift the viewport by a drag of (dxPx, dyPx) screen pixels. */
export function panViewport(vp: Viewport, geom: PlotGeometry, dxPx: number, dyPx: number): Viewport {
  const area = plotArea(geom);
  const da = (-dxPx / area.width) * (vp.aMax - vp.aMin);
  const dm = (dyPx / area.height) * (vp.mMax - vp.mMin);
  return { aMin: vp.aMin + da, aMax: vp.aMax + da, mMin: vp.mMin + dm, mMax: vp.mMax + dm };
}

/** Zoom by `factor` (> 1 zooms in) keeping the data point under the cursor fixed. */
export function zoomViewport(
  vp: Viewport,
  geom: PlotGeometry,
  factor: number,
  cursorX: number,
  cursorY: number,
): Viewport {
  const anchor = screenToData(vp, geom, cursorX, cursorY);
  const aSpan = (vp.aMax - vp.aMin) / factor;
  const mSpan = (vp.mMax - vp.mMin) / factor;
  const aFrac = (anchor.a - vp.aMin) / (vp.aMax - vp.aMin);
  const mFrac = (anchor.m - vp.mMin) / (vp.mMax - vp.mMin);
  return {
    aMin: anchor.a - aFrac * aSpan,
    aMax: anchor.a + (1 - aFrac) * aSpan,
    mMin: anchor.m - mFrac * mSpan,
    mMax: anchor.m + (1 - mFrac) * mSpan,
  };
}

/** Fit a viewport around the data with fractional padding on each side. */
export function viewportFromExtent(
  points: { a: number; m: number }[],
  pad = 0.05,
): Viewport {
  if (points.length === 0) {
    return { aMin: 0, aMax: 1, mMin: -1, mMax: 1 };
  }
  let aMin = Infinity;
  let aMax = -Infinity;
  let mMin = Infinity;
  let mMax = -Infinity;
  for (const pt of points) {
    if (pt.a < aMin) aMin = pt.a;
    if (pt.a > aMax) aMax = pt.a;
    if (pt.m < mMin) mMin = pt.m;
    if (pt.m > mMax) mMax = pt.m;
  }
  const aPad = (aMax - aMin) * pad || 0.5;
  const mPad = (mMax - mMin) * pad || 0.5;
  return { aMin: aMin - aPad, aMax: aMax + aPad, mMin: mMin - mPad, mMax: mMax + mPad };
}

export function viewportIsValid(vp: Viewport): boolean {
  return (
    Number.isFinite(vp.aMin) &&
    Number.isFinite(vp.aMax) &&
    Number.isFinite(vp.mMin) &&
    Number.isFinite(vp.mMax) &&
    vp.aMax > vp.aMin &&
    vp.mMax > vp.mMin
  );
}
