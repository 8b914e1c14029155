/**
 * Aggregation of per-iteration rows into per-(test, impl, threads) means
 * and per-(test, impl) speedup series anchored at the 1-thread mean.
 */

import type { BenchRow } from './csv.js';

export interface SeriesPoint {
  threads: number;
  meanNanos: number;
  stddevNanos: number;
  iterations: number;
  /** mean(threads=1) / mean(threads); undefined without a 1-thread row */
  speedup?: number;
}

export interface ImplSeries {
  impl: string;
  points: SeriesPoint[];
}

export interface TestAggregate {
  test: string;
  series: ImplSeries[];
}

function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

function stddev(values: number[]): number {
  if (values.length < 2) {
    return 0;
  }
  const m = mean(values);
  const variance =
    values.reduce((acc, v) => acc + (v - m) * (v - m), 0) / (values.length - 1);
  return Math.sqrt(variance);
}

export function aggregate(rows: BenchRow[]): TestAggregate[] {
  const byTest = new Map<string, Map<string, Map<number, number[]>>>();
  for (const row of rows) {
    let impls = byTest.get(row.test);
    if (!impls) {
      impls = new Map();
      byTest.set(row.test, impls);
    }
    let threads = impls.get(row.impl);
    if (!threads) {
      threads = new Map();
      impls.set(row.impl, threads);
    }
    let samples = threads.get(row.threads);
    if (!samples) {
      samples = [];
      threads.set(row.threads, samples);
    }
    samples.push(row.nanos);
  }

  const out: TestAggregate[] = [];
  for (const [test, impls] of [...byTest.entries()].sort()) {
    const series: ImplSeries[] = [];
    for (const [impl, threads] of [...impls.entries()].sort()) {
      const points: SeriesPoint[] = [...threads.entries()]
        .sort((a, b) => a[0] - b[0])
        .map(([t, samples]) => ({
          threads: t,
          meanNanos: mean(samples),
          stddevNanos: stddev(samples),
          iterations: samples.length,
        }));
      const base = points.find((p) => p.threads === 1);
      if (base) {
        for (const p of points) {
          p.speedup = base.meanNanos / p.meanNanos;
        }
      }
      series.push({ impl, points });
    }
    out.push({ test, series });
  }
  return out;
}

/** One stdout line per aggregated mean; 9 significant digits. */
export function formatMeans(aggregates: TestAggregate[]): string[] {
  const lines: string[] = [];
  for (const agg of aggregates) {
    for (const series of agg.series) {
      for (const p of series.points) {
        const speedup =
          p.speedup === undefined ? 'n/a' : p.speedup.toPrecision(9);
        lines.push(
          `mean test=${agg.test} impl=${series.impl} threads=${p.threads} ` +
            `nanos=${p.meanNanos.toPrecision(9)} speedup=${speedup}`,
        );
      }
    }
  }
  return lines;
}
