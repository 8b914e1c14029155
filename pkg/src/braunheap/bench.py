"""Benchmark harness: five workloads over the queue implementations.

Workloads: ``insert`` / ``removemin`` split the op budget across
threads; ``sum`` has every thread independently total the whole queue
via iteration; ``snap-insert`` has each thread take a snapshot then insert
its share; ``snap-only`` has each thread take one snapshot. Iterations
are timed from the first worker's start to the last worker's end
(workers self-timestamp behind a start barrier, so spawn and join costs
stay outside the window). Between iterations the structure is restored
to its initial multiset and snapshots are dropped, outside the window.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .baselines import CoarseLockHeap, LockedSkipListQueue
from .concurrent import ConcurrentBraunHeap
from .rng import CounterRng

IMPLS = {
    "braun": ConcurrentBraunHeap,
    "coarse": CoarseLockHeap,
    "skiplist": LockedSkipListQueue,
}

TESTS = ("insert", "removemin", "sum", "snap-insert", "snap-only")

CSV_HEADER = ("impl", "test", "threads", "init_size", "total_ops", "iter", "nanos")


class BenchError(Exception):
    """Configuration or verification failure."""


@dataclass
class BenchConfig:
    impl: str = "braun"
    test: str = "insert"
    threads: tuple = (1,)
    init_size: int = 1 << 16
    total_ops: int = 1344
    warmup_iters: int = 3
    measure_iters: int = 5
    seed: int = 0
    verify: bool = False

    def validate(self) -> None:
        if self.impl not in IMPLS:
            raise BenchError(f"unknown impl: {self.impl!r}")
        if self.test not in TESTS:
            raise BenchError(f"unknown test: {self.test!r}")
        for t in self.threads:
            if t < 1:
                raise BenchError("thread counts must be >= 1")
            if self.total_ops % t:
                raise BenchError(
                    f"total ops {self.total_ops} not divisible by {t} threads")


@dataclass
class BenchRecord:
    impl: str
    test: str
    threads: int
    init_size: int
    total_ops: int
    times_ns: list = field(default_factory=list)
    mean_ns: float = 0.0
    stddev_ns: float = 0.0
    speedup: Optional[float] = None

    def finalize(self) -> None:
        self.mean_ns = statistics.fmean(self.times_ns)
        self.stddev_ns = statistics.stdev(self.times_ns) if len(self.times_ns) > 1 else 0.0


def _initial_values(config: BenchConfig) -> list:
    rng = CounterRng(config.seed, stream=0)
    return [rng.randint(0, (1 << 31) - 1) for _ in range(config.init_size)]


def _workload_values(config: BenchConfig, nthreads: int) -> list:
    per = config.total_ops // nthreads
    out = []
    for tid in range(nthreads):
        rng = CounterRng(config.seed, stream=1000 + tid)
        out.append([rng.randint(0, (1 << 31) - 1) for _ in range(per)])
    return out


def _run_iteration(heap, test: str, nthreads: int, per_thread_values: list,
                   ops_per_thread: int):
    """One timed parallel section; returns (span_ns, per-thread outputs)."""
    barrier = threading.Barrier(nthreads)
    starts = [0] * nthreads
    ends = [0] * nthreads
    outs: list = [None] * nthreads
    errors: list = []

    def worker(idx: int) -> None:
        try:
            values = per_thread_values[idx]
            out: Any = None
            barrier.wait()
            t0 = time.perf_counter_ns()
            if test == "insert":
                for v in values:
                    heap.insert(v)
            elif test == "removemin":
                out = [heap.remove_min() for _ in range(ops_per_thread)]
            elif test == "sum":
                acc = 0
                for v in heap.iterate():
                    acc += v
                out = acc
            elif test == "snap-insert":
                snap = heap.snapshot()
                for v in values:
                    heap.insert(v)
                out = snap
            else:  # snap-only
                out = heap.snapshot()
            t1 = time.perf_counter_ns()
            starts[idx], ends[idx], outs[idx] = t0, t1, out
        except Exception as exc:
            errors.append(exc)
            try:
                barrier.abort()
            except Exception:
                pass

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(nthreads)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]
    return max(ends) - min(starts), outs


def _verify_structure(heap, expected_multiset) -> None:
    from collections import Counter

    from . import verification

    observed = Counter(heap.iterate())
    if observed != expected_multiset:
        raise BenchError("verification failed: content mismatch after iteration")
    if isinstance(heap, ConcurrentBraunHeap):
        report = verification.structure_report(heap)
        if not report.ok():
            raise BenchError(
                f"verification failed: braun={report.is_braun} heap={report.is_heap}")
    elif isinstance(heap, CoarseLockHeap):
        items = heap._items
        for i in range(1, len(items)):
            if items[i] < items[(i - 1) // 2]:
                raise BenchError("verification failed: array heap order broken")
    elif isinstance(heap, LockedSkipListQueue):
        values = list(heap.iterate())
        if values != sorted(values, key=heap._key):
            raise BenchError("verification failed: skiplist chain not sorted")


def run_bench(config: BenchConfig) -> list:
    """Run the configured workload once per thread count; collect records."""
    from collections import Counter

    config.validate()
    impl_cls = IMPLS[config.impl]
    initial = _initial_values(config)
    initial_counter = Counter(initial)
    oracle_sum = sum(initial)
    records = []
    for nthreads in config.threads:
        per_thread_values = _workload_values(config, nthreads)
        ops_per_thread = config.total_ops // nthreads
        heap = impl_cls.from_values(initial)
        record = BenchRecord(config.impl, config.test, nthreads,
                             config.init_size, config.total_ops)
        for iteration in range(config.warmup_iters + config.measure_iters):
            span, outs = _run_iteration(heap, config.test, nthreads,
                                        per_thread_values, ops_per_thread)
            measured = iteration >= config.warmup_iters
            if measured:
                record.times_ns.append(span)
            if config.test == "sum":
                if any(o != oracle_sum for o in outs):
                    raise BenchError(
                        "sum mismatch: thread sums "
                        f"{sorted(set(outs))} vs oracle {oracle_sum}")
            if config.verify and measured:
                expected = Counter(initial_counter)
                if config.test in ("insert", "snap-insert"):
                    for values in per_thread_values:
                        expected.update(values)
                elif config.test == "removemin":
                    for out in outs:
                        expected.subtract(v for v in out if v is not None)
                        expected = +expected
                _verify_structure(heap, expected)
            # restore the initial multiset, outside any timed window
            if config.test == "removemin":
                for out in outs:
                    for v in out:
                        if v is not None:
                            heap.insert(v)
            elif config.test in ("snap-insert", "snap-only"):
                for out in outs:
                    if out is not None:
                        out.release()
                if config.test == "snap-insert":
                    heap = impl_cls.from_values(initial)
            elif config.test == "insert":
                heap = impl_cls.from_values(initial)
        record.finalize()
        records.append(record)
    base = next((r for r in records if r.threads == 1), None)
    if base is not None:
        for record in records:
            record.speedup = base.mean_ns / record.mean_ns
    return records


def emit_csv(records: Iterable[BenchRecord], path: str, append: bool = False) -> None:
    """Write one row per timed iteration; UTF-8, LF line endings."""
    mode = "a" if append else "w"
    with open(path, mode, newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if not append or fh.tell() == 0:
            writer.writerow(CSV_HEADER)
        for record in records:
            for i, nanos in enumerate(record.times_ns):
                writer.writerow((record.impl, record.test, record.threads,
                                 record.init_size, record.total_ops, i, nanos))


def _parse_threads(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad thread list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braunheap-bench",
        description="Benchmark the concurrent Braun heap against baselines.")
    parser.add_argument("--impl", choices=sorted(IMPLS), default="braun")
    parser.add_argument("--test", choices=TESTS, default="insert")
    parser.add_argument("--threads", type=_parse_threads, default=(1,),
                        metavar="N[,N...]", help="comma-separated thread counts")
    parser.add_argument("--init-size", type=int, default=1 << 16)
    parser.add_argument("--ops", type=int, default=1344)
    parser.add_argument("--warmup", type=int, default=3)
    parser.add_argument("--iters", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", metavar="CSV", help="write per-iteration rows here")
    parser.add_argument("--append", action="store_true",
                        help="append to --out instead of truncating")
    parser.add_argument("--verify", action="store_true",
                        help="check structure and content after each iteration")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = BenchConfig(impl=args.impl, test=args.test, threads=args.threads,
                         init_size=args.init_size, total_ops=args.ops,
                         warmup_iters=args.warmup, measure_iters=args.iters,
                         seed=args.seed, verify=args.verify)
    try:
        config.validate()
    except BenchError as exc:
        parser.error(str(exc))
    try:
        records = run_bench(config)
    except BenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for r in records:
        speedup = f"{r.speedup:.3f}" if r.speedup is not None else "n/a"
        print(f"impl={r.impl} test={r.test} threads={r.threads} "
              f"init_size={r.init_size} ops={r.total_ops} "
              f"mean_ns={r.mean_ns:.0f} stddev_ns={r.stddev_ns:.0f} "
              f"speedup={speedup}")
    if args.out:
        try:
            emit_csv(records, args.out, append=args.append)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
