/**
 * Hand-rolled SVG renderers: speedup-vs-threads line charts for the
 * throughput workloads, and log-scale raw-time bars for the
 * snapshot-only workload where the O(1)-vs-linear gap lives.
 */

import type { ImplSeries, TestAggregate } from './aggregate.js';

const WIDTH = 680;
const HEIGHT = 420;
const MARGIN = { top: 48, right: 160, bottom: 56, left: 72 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const IMPL_COLORS: Record<string, string> = {
  braun: '#2563eb',
  coarse: '#dc2626',
  skiplist: '#059669',
};
const FALLBACK_COLORS = ['#9333ea', '#ca8a04', '#0891b2', '#4b5563'];

function colorFor(impl: string, index: number): string {
  return IMPL_COLORS[impl] ?? FALLBACK_COLORS[index % FALLBACK_COLORS.length];
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function svgOpen(title: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
    `<text x="${WIDTH / 2}" y="28" text-anchor="middle" font-size="18">` +
    `${escapeXml(title)}</text>\n`
  );
}

function legend(series: ImplSeries[]): string {
  const x = MARGIN.left + PLOT_W + 16;
  let out = '';
  series.forEach((s, i) => {
    const y = MARGIN.top + 12 + i * 22;
    out +=
      `<rect x="${x}" y="${y - 10}" width="14" height="14" ` +
      `fill="${colorFor(s.impl, i)}"/>\n` +
      `<text x="${x + 20}" y="${y + 2}" font-size="13">` +
      `${escapeXml(s.impl)}</text>\n`;
  });
  return out;
}

function axisLine(x1: number, y1: number, x2: number, y2: number): string {
  return `<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" stroke="#111" stroke-width="1"/>\n`;
}

/** Speedup vs threads; thread counts placed on a log2 axis. */
export function renderSpeedupChart(agg: TestAggregate): string {
  const series = agg.series.filter((s) =>
    s.points.some((p) => p.speedup !== undefined),
  );
  const threadValues = [
    ...new Set(series.flatMap((s) => s.points.map((p) => p.threads))),
  ].sort((a, b) => a - b);
  const speedups = series.flatMap((s) =>
    s.points.map((p) => p.speedup ?? 1),
  );
  const maxY = Math.max(1.5, ...speedups) * 1.1;
  const maxLog = Math.log2(Math.max(2, ...threadValues));

  const xPos = (threads: number): number =>
    MARGIN.left + (Math.log2(threads) / maxLog) * PLOT_W;
  const yPos = (speedup: number): number =>
    MARGIN.top + PLOT_H - (speedup / maxY) * PLOT_H;

  let body = svgOpen(`${agg.test}: speedup vs threads`);
  body += axisLine(MARGIN.left, MARGIN.top, MARGIN.left, MARGIN.top + PLOT_H);
  body += axisLine(MARGIN.left, MARGIN.top + PLOT_H,
    MARGIN.left + PLOT_W, MARGIN.top + PLOT_H);

  for (const t of threadValues) {
    const x = xPos(t);
    body +=
      `<text x="${x}" y="${MARGIN.top + PLOT_H + 20}" text-anchor="middle" ` +
      `font-size="12">${t}</text>\n`;
  }
  body +=
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 12}" ` +
    `text-anchor="middle" font-size="13">threads</text>\n`;

  const yTicks = 5;
  for (let i = 0; i <= yTicks; i++) {
    const value = (maxY / yTicks) * i;
    const y = yPos(value);
    body +=
      `<line x1="${MARGIN.left - 4}" y1="${y}" x2="${MARGIN.left + PLOT_W}" ` +
      `y2="${y}" stroke="#ddd" stroke-width="0.5"/>\n` +
      `<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end" ` +
      `font-size="12">${value.toFixed(1)}</text>\n`;
  }
  // the speedup-one reference line every series is anchored to
  body +=
    `<line x1="${MARGIN.left}" y1="${yPos(1)}" x2="${MARGIN.left + PLOT_W}" ` +
    `y2="${yPos(1)}" stroke="#999" stroke-dasharray="4 3"/>\n`;

  series.forEach((s, i) => {
    const color = colorFor(s.impl, i);
    const pts = s.points
      .filter((p) => p.speedup !== undefined)
      .map((p) => `${xPos(p.threads)},${yPos(p.speedup as number)}`);
    if (pts.length > 1) {
      body += `<polyline points="${pts.join(' ')}" fill="none" stroke="${color}" stroke-width="2"/>\n`;
    }
    for (const p of s.points) {
      if (p.speedup === undefined) continue;
      body +=
        `<circle cx="${xPos(p.threads)}" cy="${yPos(p.speedup)}" r="3.5" ` +
        `fill="${color}"/>\n`;
    }
  });
  body += legend(series);
  return body + '</svg>\n';
}

/** Raw mean times on a log scale, one bar per (impl, threads). */
export function renderLogTimeChart(agg: TestAggregate): string {
  const series = agg.series;
  const bars: { impl: string; threads: number; nanos: number; color: string }[] = [];
  series.forEach((s, i) => {
    for (const p of s.points) {
      bars.push({
        impl: s.impl,
        threads: p.threads,
        nanos: p.meanNanos,
        color: colorFor(s.impl, i),
      });
    }
  });
  const values = bars.map((b) => Math.max(b.nanos, 1));
  const logMax = Math.ceil(Math.log10(Math.max(...values, 10)));
  const logMin = Math.floor(Math.log10(Math.min(...values, 10 ** logMax)));
  const span = Math.max(logMax - logMin, 1);

  const yPos = (nanos: number): number => {
    const l = (Math.log10(Math.max(nanos, 1)) - logMin) / span;
    return MARGIN.top + PLOT_H - l * PLOT_H;
  };

  let body = svgOpen(`${agg.test}: mean time (log scale)`);
  body += axisLine(MARGIN.left, MARGIN.top, MARGIN.left, MARGIN.top + PLOT_H);
  body += axisLine(MARGIN.left, MARGIN.top + PLOT_H,
    MARGIN.left + PLOT_W, MARGIN.top + PLOT_H);

  for (let decade = logMin; decade <= logMax; decade++) {
    const y = yPos(10 ** decade);
    body +=
      `<line x1="${MARGIN.left - 4}" y1="${y}" x2="${MARGIN.left + PLOT_W}" ` +
      `y2="${y}" stroke="#ddd" stroke-width="0.5"/>\n` +
      `<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end" ` +
      `font-size="12">1e${decade}</text>\n`;
  }
  body +=
    `<text x="18" y="${MARGIN.top + PLOT_H / 2}" font-size="13" ` +
    `transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})" ` +
    `text-anchor="middle">nanoseconds</text>\n`;

  const slot = PLOT_W / Math.max(bars.length, 1);
  const barWidth = Math.min(slot * 0.7, 48);
  bars.forEach((bar, i) => {
    const x = MARGIN.left + slot * i + (slot - barWidth) / 2;
    const y = yPos(bar.nanos);
    const h = MARGIN.top + PLOT_H - y;
    body +=
      `<rect x="${x}" y="${y}" width="${barWidth}" height="${Math.max(h, 1)}" ` +
      `fill="${bar.color}"/>\n` +
      `<text x="${x + barWidth / 2}" y="${MARGIN.top + PLOT_H + 20}" ` +
      `text-anchor="middle" font-size="11">` +
      `${escapeXml(bar.impl)}/${bar.threads}t</text>\n`;
  });
  body += legend(series);
  return body + '</svg>\n';
}

export function renderChart(agg: TestAggregate): string {
  return agg.test === 'snap-only'
    ? renderLogTimeChart(agg)
    : renderSpeedupChart(agg);
}
