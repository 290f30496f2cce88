/**
 * Minimal deterministic SVG plotting: log/linear axes, gap-aware polylines,
 * per-series markers. No timestamps, no randomness -- identical input gives
 * identical bytes.
 */

import { Series } from "./series.js";

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  logY: boolean;
  series: Series[];
}

const PANEL_W = 320;
const PANEL_H = 240;
const MARGIN = { left: 58, right: 12, top: 28, bottom: 40 };

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
];

type Scale = (v: number) => number;

function linearScale(lo: number, hi: number, a: number, b: number): Scale {
  const span = hi - lo || 1;
  return (v) => a + ((v - lo) / span) * (b - a);
}

function logScale(lo: number, hi: number, a: number, b: number): Scale {
  const l0 = Math.log10(lo);
  const span = Math.log10(hi) - l0 || 1;
  return (v) => a + ((Math.log10(v) - l0) / span) * (b - a);
}

function ticksLinear(lo: number, hi: number, count = 5): number[] {
  const step = (hi - lo) / (count - 1) || 1;
  return Array.from({ length: count }, (_, i) => lo + i * step);
}

function ticksLog(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    out.push(10 ** e);
  }
  return out;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 10000 || abs < 0.01) return v.toExponential(0).replace("+", "");
  return Number(v.toPrecision(3)).toString();
}

/** Marker path centred on (x, y); shape index cycles per series. */
function marker(shape: number, x: number, y: number, r = 3): string {
  switch (shape % 6) {
    case 0:
      return `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="${r}"/>`;
    case 1:
      return `<rect x="${(x - r).toFixed(1)}" y="${(y - r).toFixed(1)}" width="${2 * r}" height="${2 * r}"/>`;
    case 2:
      return `<path d="M${x.toFixed(1)} ${(y - r).toFixed(1)} L${(x + r).toFixed(1)} ${(y + r).toFixed(1)} L${(x - r).toFixed(1)} ${(y + r).toFixed(1)} Z"/>`;
    case 3:
      return `<path d="M${x.toFixed(1)} ${(y - r).toFixed(1)} L${(x + r).toFixed(1)} ${y.toFixed(1)} L${x.toFixed(1)} ${(y + r).toFixed(1)} L${(x - r).toFixed(1)} ${y.toFixed(1)} Z"/>`;
    case 4:
      return `<path d="M${(x - r).toFixed(1)} ${(y - r).toFixed(1)} L${(x + r).toFixed(1)} ${(y + r).toFixed(1)} M${(x - r).toFixed(1)} ${(y + r).toFixed(1)} L${(x + r).toFixed(1)} ${(y - r).toFixed(1)}" stroke-width="1.5" fill="none"/>`;
    default:
      return `<path d="M${x.toFixed(1)} ${(y - r).toFixed(1)} L${x.toFixed(1)} ${(y + r).toFixed(1)} M${(x - r).toFixed(1)} ${y.toFixed(1)} L${(x + r).toFixed(1)} ${y.toFixed(1)}" stroke-width="1.5" fill="none"/>`;
  }
}

/** Polyline split at null points: every gap restarts the path (no bridge). */
export function gapPath(points: { px: number | null; py: number | null }[]): string {
  let d = "";
  let pen = false;
  for (const { px, py } of points) {
    if (px === null || py === null) {
      pen = false;
      continue;
    }
    d += `${pen ? "L" : "M"}${px.toFixed(1)} ${py.toFixed(1)} `;
    pen = true;
  }
  return d.trim();
}

export function renderPanel(spec: PanelSpec, ox: number, oy: number): string {
  const x0 = ox + MARGIN.left;
  const x1 = ox + PANEL_W - MARGIN.right;
  const y0 = oy + PANEL_H - MARGIN.bottom;
  const y1 = oy + MARGIN.top;

  const xs = spec.series.flatMap((s) => s.points.map((p) => p.x));
  const ys = spec.series.flatMap((s) =>
    s.points.filter((p) => p.y !== null && (!spec.logY || (p.y as number) > 0)).map((p) => p.y as number),
  );
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  let yLo = ys.length ? Math.min(...ys) : spec.logY ? 1 : 0;
  let yHi = ys.length ? Math.max(...ys) : 1;
  if (spec.logY) {
    yLo = 10 ** Math.floor(Math.log10(yLo));
    yHi = 10 ** Math.ceil(Math.log10(yHi) || 1);
    if (yLo === yHi) yHi = yLo * 10;
  } else if (yLo === yHi) {
    yLo -= 0.5;
    yHi += 0.5;
  }
  const sx = linearScale(xLo, xHi, x0, x1);
  const sy = spec.logY ? logScale(yLo, yHi, y0, y1) : linearScale(yLo, yHi, y0, y1);

  const parts: string[] = [];
  parts.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#444" stroke-width="0.8"/>`,
  );
  parts.push(
    `<text x="${ox + PANEL_W / 2}" y="${oy + 16}" text-anchor="middle" font-size="11" font-weight="bold">${spec.title}</text>`,
  );
  for (const t of ticksLinear(xLo, xHi)) {
    const px = sx(t);
    parts.push(`<line x1="${px.toFixed(1)}" y1="${y0}" x2="${px.toFixed(1)}" y2="${y0 + 4}" stroke="#444" stroke-width="0.8"/>`);
    parts.push(
      `<text x="${px.toFixed(1)}" y="${y0 + 15}" text-anchor="middle" font-size="9">${fmt(t)}</text>`,
    );
  }
  const yTicks = spec.logY ? ticksLog(yLo, yHi) : ticksLinear(yLo, yHi);
  for (const t of yTicks) {
    const py = sy(t);
    if (py < y1 - 0.5 || py > y0 + 0.5) continue;
    parts.push(`<line x1="${x0 - 4}" y1="${py.toFixed(1)}" x2="${x0}" y2="${py.toFixed(1)}" stroke="#444" stroke-width="0.8"/>`);
    parts.push(
      `<text x="${x0 - 6}" y="${(py + 3).toFixed(1)}" text-anchor="end" font-size="9">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${oy + PANEL_H - 8}" text-anchor="middle" font-size="10">${spec.xLabel}</text>`,
  );
  parts.push(
    `<text x="${ox + 14}" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="10" transform="rotate(-90 ${ox + 14} ${(y0 + y1) / 2})">${spec.yLabel}</text>`,
  );

  spec.series.forEach((series, i) => {
    const colour = PALETTE[i % PALETTE.length];
    const projected = series.points.map(({ x, y }) => ({
      px: y === null || (spec.logY && y <= 0) ? null : sx(x),
      py: y === null || (spec.logY && y <= 0) ? null : sy(y),
    }));
    const path = gapPath(projected);
    if (path) {
      parts.push(`<path d="${path}" fill="none" stroke="${colour}" stroke-width="1.2"/>`);
    }
    parts.push(`<g fill="${colour}" stroke="${colour}">`);
    for (const p of projected) {
      if (p.px !== null && p.py !== null) parts.push(marker(i, p.px, p.py));
    }
    parts.push("</g>");
  });
  return parts.join("\n");
}

export function renderFigure(
  panels: PanelSpec[],
  columns: number,
  legend: { key: string }[],
): string {
  const rows = Math.ceil(panels.length / columns);
  const legendH = 22;
  const width = columns * PANEL_W;
  const height = rows * PANEL_H + legendH;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
  panels.forEach((panel, i) => {
    const ox = (i % columns) * PANEL_W;
    const oy = Math.floor(i / columns) * PANEL_H;
    parts.push(renderPanel(panel, ox, oy));
  });
  let lx = 12;
  const ly = rows * PANEL_H + 14;
  legend.forEach((entry, i) => {
    const colour = PALETTE[i % PALETTE.length];
    parts.push(`<g fill="${colour}" stroke="${colour}">${marker(i, lx, ly - 3)}</g>`);
    parts.push(`<text x="${lx + 8}" y="${ly}" font-size="10">${entry.key}</text>`);
    lx += 12 + entry.key.length * 6 + 18;
  });
  parts.push("</svg>");
  return parts.join("\n");
}
