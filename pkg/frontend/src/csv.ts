/**
 * Parser for the benchmark CSV schema:
 *   impl,test,threads,init_size,total_ops,iter,nanos
 * One row per timed iteration. Errors carry the 1-based line number.
 */

export interface BenchRow {
  impl: string;
  test: string;
  threads: number;
  initSize: number;
  totalOps: number;
  iter: number;
  nanos: number;
}

export const CSV_HEADER = 'impl,test,threads,init_size,total_ops,iter,nanos';

export class CsvError extends Error {
  readonly line: number;

  constructor(line: number, message: string) {
    super(`line ${line}: ${message}`);
    this.line = line;
    this.name = 'CsvError';
  }
}

function parseCount(field: string, name: string, line: number): number {
  const value = Number(field);
  if (!Number.isFinite(value) || field.trim() === '') {
    throw new CsvError(line, `${name} is not a number: ${JSON.stringify(field)}`);
  }
  return value;
}

export function parseBenchCsv(content: string): BenchRow[] {
  const lines = content.split('\n');
  if (lines.length > 0 && lines[lines.length - 1] === '') {
    lines.pop(); // trailing newline
  }
  if (lines.length === 0) {
    throw new CsvError(1, 'empty file, expected header');
  }
  if (lines[0].trim() !== CSV_HEADER) {
    throw new CsvError(1, `bad header, expected ${JSON.stringify(CSV_HEADER)}`);
  }
  const rows: BenchRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    const raw = lines[i];
    if (raw.trim() === '') {
      continue;
    }
    const fields = raw.split(',');
    if (fields.length !== 7) {
      throw new CsvError(lineNo, `expected 7 fields, got ${fields.length}`);
    }
    rows.push({
      impl: fields[0],
      test: fields[1],
      threads: parseCount(fields[2], 'threads', lineNo),
      initSize: parseCount(fields[3], 'init_size', lineNo),
      totalOps: parseCount(fields[4], 'total_ops', lineNo),
      iter: parseCount(fields[5], 'iter', lineNo),
      nanos: parseCount(fields[6], 'nanos', lineNo),
    });
  }
  return rows;
}
