import * as fs from 'node:fs';
import * as os from 'node:os';
import * as path from 'node:path';
import { fileURLToPath } from 'node:url';

import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { CSV_HEADER } from '../src/csv.js';
import { main, parseArgs, run, UsageError } from '../src/main.js';

const here = path.dirname(fileURLToPath(import.meta.url));
const fixturePath = path.join(here, '..', 'fixtures', 'bench_fixture.csv');

let tmpDir: string;

beforeEach(() => {
  tmpDir = fs.mkdtempSync(path.join(os.tmpdir(), 'plotgen-'));
});

afterEach(() => {
  fs.rmSync(tmpDir, { recursive: true, force: true });
  vi.restoreAllMocks();
});

describe('parseArgs', () => {
  it('reads positional csv and --out', () => {
    expect(parseArgs(['bench.csv', '--out', 'charts'])).toEqual({
      csvPath: 'bench.csv',
      outDir: 'charts',
    });
  });

  it('rejects missing csv path', () => {
    expect(() => parseArgs(['--out', 'x'])).toThrowError(UsageError);
  });

  it('rejects unknown options', () => {
    expect(() => parseArgs(['a.csv', '--frobnicate'])).toThrowError(UsageError);
  });
});

describe('run', () => {
  it('writes one chart per test in the fixture', () => {
    const lines: string[] = [];
    const written = run({ csvPath: fixturePath, outDir: tmpDir },
      (l) => lines.push(l));
    expect(written).toHaveLength(5);
    for (const test of ['insert', 'removemin', 'sum', 'snap-insert', 'snap-only']) {
      const file = path.join(tmpDir, `${test}.svg`);
      expect(fs.existsSync(file), file).toBe(true);
      expect(fs.readFileSync(file, 'utf-8')).toContain('<svg');
    }
  });

  it('prints means matching an independent recomputation to 6 digits', () => {
    const lines: string[] = [];
    run({ csvPath: fixturePath, outDir: tmpDir }, (l) => lines.push(l));
    const meanLines = lines.filter((l) => l.startsWith('mean '));
    expect(meanLines.length).toBe(36);

    const sums = new Map<string, { total: number; count: number }>();
    const raw = fs.readFileSync(fixturePath, 'utf-8').trim().split('\n');
    for (const line of raw.slice(1)) {
      const f = line.split(',');
      const key = `${f[1]}|${f[0]}|${f[2]}`;
      const entry = sums.get(key) ?? { total: 0, count: 0 };
      entry.total += Number(f[6]);
      entry.count += 1;
      sums.set(key, entry);
    }
    for (const line of meanLines) {
      const m = line.match(/^mean test=(\S+) impl=(\S+) threads=(\d+) nanos=(\S+)/)!;
      const entry = sums.get(`${m[1]}|${m[2]}|${m[3]}`)!;
      const expected = entry.total / entry.count;
      expect(Number(Number(m[4]).toPrecision(6))).toBe(
        Number(expected.toPrecision(6)),
      );
    }
  });
});

describe('main', () => {
  it('returns 0 and writes nothing for a header-only csv', () => {
    const csv = path.join(tmpDir, 'empty.csv');
    fs.writeFileSync(csv, `${CSV_HEADER}\n`);
    const log = vi.spyOn(console, 'log').mockImplementation(() => {});
    const code = main([csv, '--out', path.join(tmpDir, 'charts')]);
    expect(code).toBe(0);
    const outDir = path.join(tmpDir, 'charts');
    const entries = fs.existsSync(outDir) ? fs.readdirSync(outDir) : [];
    expect(entries.filter((e) => e.endsWith('.svg'))).toHaveLength(0);
    log.mockRestore();
  });

  it('reports malformed csv with a line number and exits 1', () => {
    const csv = path.join(tmpDir, 'bad.csv');
    fs.writeFileSync(csv, `${CSV_HEADER}\nbraun,insert,1,64\n`);
    const errors: string[] = [];
    vi.spyOn(console, 'error').mockImplementation((m) => errors.push(String(m)));
    const code = main([csv, '--out', tmpDir]);
    expect(code).toBe(1);
    expect(errors.join('\n')).toContain('line 2');
  });

  it('exits 2 on usage errors', () => {
    vi.spyOn(console, 'error').mockImplementation(() => {});
    expect(main([])).toBe(2);
  });

  it('exits 1 when the csv is missing', () => {
    vi.spyOn(console, 'error').mockImplementation(() => {});
    expect(main([path.join(tmpDir, 'nope.csv'), '--out', tmpDir])).toBe(1);
  });

  it('renders the fixture end to end', () => {
    const log = vi.spyOn(console, 'log').mockImplementation(() => {});
    const code = main([fixturePath, '--out', path.join(tmpDir, 'charts')]);
    expect(code).toBe(0);
    expect(fs.readdirSync(path.join(tmpDir, 'charts'))).toHaveLength(5);
    log.mockRestore();
  });
});
