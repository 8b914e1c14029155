#!/usr/bin/env node
/**
 * plotgen <csv> --out <dir>
 *
 * Reads benchmark CSV, prints aggregated means to stdout, and writes one
 * SVG chart per test found in the file. Exit codes: 0 on success (even
 * with zero data rows), 1 on malformed CSV or I/O failure, 2 on usage.
 */

import * as fs from 'node:fs';
import * as path from 'node:path';
import { pathToFileURL } from 'node:url';

import { aggregate, formatMeans } from './aggregate.js';
import { renderChart } from './chart.js';
import { CsvError, parseBenchCsv } from './csv.js';

export interface CliOptions {
  csvPath: string;
  outDir: string;
}

export function parseArgs(argv: string[]): CliOptions {
  let csvPath: string | undefined;
  let outDir: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === '--out') {
      outDir = argv[++i];
      if (outDir === undefined) {
        throw new UsageError('--out requires a directory');
      }
    } else if (arg === '--help' || arg === '-h') {
      throw new UsageError('');
    } else if (arg.startsWith('--')) {
      throw new UsageError(`unknown option ${arg}`);
    } else if (csvPath === undefined) {
      csvPath = arg;
    } else {
      throw new UsageError(`unexpected argument ${arg}`);
    }
  }
  if (csvPath === undefined) {
    throw new UsageError('missing csv path');
  }
  return { csvPath, outDir: outDir ?? '.' };
}

export class UsageError extends Error {}

export const USAGE = 'usage: plotgen <csv> --out <dir>';

export function run(options: CliOptions,
                    log: (line: string) => void = console.log): string[] {
  const content = fs.readFileSync(options.csvPath, 'utf-8');
  const rows = parseBenchCsv(content);
  const aggregates = aggregate(rows);
  for (const line of formatMeans(aggregates)) {
    log(line);
  }
  fs.mkdirSync(options.outDir, { recursive: true });
  const written: string[] = [];
  for (const agg of aggregates) {
    const file = path.join(options.outDir, `${agg.test}.svg`);
    fs.writeFileSync(file, renderChart(agg), 'utf-8');
    log(`wrote ${file}`);
    written.push(file);
  }
  return written;
}

export function main(argv: string[]): number {
  let options: CliOptions;
  try {
    options = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      if (err.message) {
        console.error(`error: ${err.message}`);
      }
      console.error(USAGE);
      return 2;
    }
    throw err;
  }
  try {
    run(options);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`error: ${options.csvPath}: ${err.message}`);
      return 1;
    }
    if (err instanceof Error && 'code' in err) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const isDirectRun = (() => {
  if (process.argv[1] === undefined) {
    return false;
  }
  try {
    // bin shims are symlinks; the module URL always uses the real path
    return import.meta.url === pathToFileURL(fs.realpathSync(process.argv[1])).href;
  } catch {
    return false;
  }
})();
if (isDirectRun) {
  process.exit(main(process.argv.slice(2)));
}
