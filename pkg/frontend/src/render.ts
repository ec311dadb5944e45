/** Plot rendering: immediate-mode canvas for the point cloud, an SVG overlay
 * for axes, the M=0 reference line, and tracked-gene outlines. Fill colors are
 * used exactly as the server shipped them.
 */

import { dataToScreen, PlotGeometry, plotArea, Viewport } from "./scales.js";
import { ApiPoint } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
export const TRACK_STROKE = "#16a34a";
export const MARKER_RADIUS = 2.5;

function tickValues(lo: number, hi: number, count = 5): number[] {
  const ticks: number[] = [];
  for (let i = 0; i < count; i++) {
    ticks.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return ticks;
}

function formatTick(value: number): string {
  return Number.parseFloat(value.toPrecision(4)).toString();
}

export class PlotRenderer {
  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly overlay: SVGSVGElement,
    public geom: PlotGeometry,
  ) {
    canvas.width = geom.width;
    canvas.height = geom.height;
    overlay.setAttribute("width", String(geom.width));
    overlay.setAttribute("height", String(geom.height));
  }

  draw(points: ApiPoint[], vp: Viewport, tracked: Set<string>): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) {
      throw new Error("canvas 2d context unavailable");
    }
    const area = plotArea(this.geom);
    ctx.clearRect(0, 0, this.geom.width, this.geom.height);
    ctx.save();
    ctx.beginPath();
    ctx.rect(area.x0, area.y0, area.width, area.height);
    ctx.clip();
    const r = MARKER_RADIUS;
    const tau = Math.PI * 2;
    for (const pt of points) {
      if (pt.a < vp.aMin || pt.a > vp.aMax || pt.m < vp.mMin || pt.m > vp.mMax) {
        continue;
      }
      const { x, y } = dataToScreen(vp, this.geom, pt.a, pt.m);
      ctx.fillStyle = pt.color;
      ctx.beginPath();
      ctx.arc(x, y, r, 0, tau);
      ctx.fill();
    }
    ctx.restore();
    this.drawOverlay(points, vp, tracked);
  }

  /** Axes, ticks, M=0 line, and tracked outlines (drawn above the canvas). */
  private drawOverlay(points: ApiPoint[], vp: Viewport, tracked: Set<string>): void {
    const area = plotArea(this.geom);
    const svg = this.overlay;
    while (svg.firstChild) {
      svg.removeChild(svg.firstChild);
    }
    const line = (x1: number, y1: number, x2: number, y2: number, stroke: string, dash = "") => {
      const el = document.createElementNS(SVG_NS, "line");
      el.setAttribute("x1", x1.toFixed(1));
      el.setAttribute("y1", y1.toFixed(1));
      el.setAttribute("x2", x2.toFixed(1));
      el.setAttribute("y2", y2.toFixed(1));
      el.setAttribute("stroke", stroke);
      if (dash) {
        el.setAttribute("stroke-dasharray", dash);
      }
      svg.appendChild(el);
    };
    const text = (x: number, y: number, content: string, anchor: string) => {
      const el = document.createElementNS(SVG_NS, "text");
      el.setAttribute("x", x.toFixed(1));
      el.setAttribute("y", y.toFixed(1));
      el.setAttribute("text-anchor", anchor);
      el.setAttribute("class", "axis-label");
      el.textContent = content;
      svg.appendChild(el);
    };

    const bottom = area.y0 + area.height;
    line(area.x0, bottom, area.x0 + area.width, bottom, "#333");
    line(area.x0, area.y0, area.x0, bottom, "#333");
    for (const a of tickValues(vp.aMin, vp.aMax)) {
      const { x } = dataToScreen(vp, this.geom, a, vp.mMin);
      line(x, bottom, x, bottom + 4, "#333");
      text(x, bottom + 16, formatTick(a), "middle");
    }
    for (const m of tickValues(vp.mMin, vp.mMax)) {
      const { y } = dataToScreen(vp, this.geom, vp.aMin, m);
      line(area.x0 - 4, y, area.x0, y, "#333");
      text(area.x0 - 7, y + 3.5, formatTick(m), "end");
    }
    text(area.x0 + area.width / 2, this.geom.height - 6, "A", "middle");
    text(12, area.y0 + area.height / 2, "M", "middle");

    if (vp.mMin <= 0 && 0 <= vp.mMax) {
      const { y } = dataToScreen(vp, this.geom, vp.aMin, 0);
      line(area.x0, y, area.x0 + area.width, y, "#888", "4 3");
    }

    if (tracked.size > 0) {
      for (const pt of points) {
        if (!tracked.has(pt.name)) {
          continue;
        }
        if (pt.a < vp.aMin || pt.a > vp.aMax || pt.m < vp.mMin || pt.m > vp.mMax) {
          continue;
        }
        const { x, y } = dataToScreen(vp, this.geom, pt.a, pt.m);
        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("cx", x.toFixed(1));
        circle.setAttribute("cy", y.toFixed(1));
        circle.setAttribute("r", String(MARKER_RADIUS + 1));
        circle.setAttribute("fill", "none");
        circle.setAttribute("stroke", TRACK_STROKE);
        circle.setAttribute("stroke-width", "1.6");
        circle.setAttribute("data-name", pt.name);
        svg.appendChild(circle);
      }
    }
  }

  /** Composite canvas + overlay into a PNG blob (client-side rasterization). */
  async toPng(): Promise<Blob> {
    const merged = document.createElement("canvas");
    merged.width = this.geom.width;
    merged.height = this.geom.height;
    const ctx = merged.getContext("2d");
    if (!ctx) {
      throw new Error("canvas 2d context unavailable");
    }
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(0, 0, merged.width, merged.height);
    ctx.drawImage(this.canvas, 0, 0);
    const svgText = new XMLSerializer().serializeToString(this.overlay);
    const image = new Image();
    const url = URL.createObjectURL(new Blob([svgText], { type: "image/svg+xml" }));
    try {
      await new Promise<void>((resolve, reject) => {
        image.onload = () => resolve();
        image.onerror = () => reject(new Error("overlay rasterization failed"));
        image.src = url;
      });
      ctx.drawImage(image, 0, 0);
    } finally {
      URL.revokeObjectURL(url);
    }
    return new Promise((resolve, reject) => {
      merged.toBlob((blob) => (blob ? resolve(blob) : reject(new Error("PNG encode failed"))), "image/png");
    });
  }
}
