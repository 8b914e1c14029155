import * as fs from 'node:fs';
import * as path from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import { CSV_HEADER, CsvError, parseBenchCsv } from '../src/csv.js';

const here = path.dirname(fileURLToPath(import.meta.url));
const fixture = fs.readFileSync(
  path.join(here, '..', 'fixtures', 'bench_fixture.csv'),
  'utf-8',
);

describe('parseBenchCsv', () => {
  it('parses the fixture', () => {
    const rows = parseBenchCsv(fixture);
    expect(rows).toHaveLength(108);
    expect(rows[0]).toEqual({
      impl: 'braun',
      test: 'insert',
      threads: 1,
      initSize: 65536,
      totalOps: 1344,
      iter: 0,
      nanos: 120000,
    });
  });

  it('accepts a header-only file as zero rows', () => {
    expect(parseBenchCsv(`${CSV_HEADER}\n`)).toEqual([]);
  });

  it('rejects a bad header with line 1', () => {
    expect(() => parseBenchCsv('impl,test\nx,y\n')).toThrowError(CsvError);
    try {
      parseBenchCsv('impl,test\n');
    } catch (err) {
      expect((err as CsvError).line).toBe(1);
    }
  });

  it('rejects a short row with its line number', () => {
    const content = `${CSV_HEADER}\nbraun,insert,1,64,32,0,100\nbraun,insert,1\n`;
    try {
      parseBenchCsv(content);
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(CsvError);
      expect((err as CsvError).line).toBe(3);
      expect((err as CsvError).message).toContain('line 3');
    }
  });

  it('rejects non-numeric fields with their line number', () => {
    const content = `${CSV_HEADER}\nbraun,insert,one,64,32,0,100\n`;
    try {
      parseBenchCsv(content);
      expect.unreachable();
    } catch (err) {
      expect((err as CsvError).line).toBe(2);
      expect((err as CsvError).message).toContain('threads');
    }
  });

  it('rejects an empty file', () => {
    expect(() => parseBenchCsv('')).toThrowError(CsvError);
  });
});
