"""Structure checkers, oracle queue, and concurrency stress harness.

The checkers are executable forms of the three correctness properties:
Braun shape (per node, size(right) <= size(left) <= size(right)+1),
heap order (parent <= children), and snapshot isolation (mutating one
of two structure-sharing heaps never changes the multiset seen through
the other). Checkers require quiescent, exclusive access; they take no
locks.
"""

from __future__ import annotations

import bisect
import hashlib
import sys
import threading
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .rng import CounterRng

_MASK64 = (1 << 64) - 1


def _root_of(tree):
    """Accept a heap object or a bare node; return the root node."""
    if tree is None or hasattr(tree, "value"):
        return tree
    for attr in ("root", "_root"):
        if hasattr(tree, attr):
            return getattr(tree, attr)
    raise TypeError(f"not a heap or node: {tree!r}")


def _scan(root, lt):
    """One bottom-up pass: (size, depth, is_braun, is_heap).

    Iterative with O(depth) frames; the hot loop for per-op checking.
    """
    if root is None:
        return 0, 0, True, True
    is_braun = True
    is_heap = True
    # frame: [node, phase, left_size, left_depth]
    stack = [[root, 0, 0, 0]]
    size = depth = 0
    while stack:
        frame = stack[-1]
        node = frame[0]
        phase = frame[1]
        if phase == 0:
            frame[1] = 1
            left = node.left
            if left is not None:
                if lt(left.value, node.value):
                    is_heap = False
                stack.append([left, 0, 0, 0])
            else:
                size = depth = 0
        elif phase == 1:
            frame[2] = size
            frame[3] = depth
            frame[1] = 2
            right = node.right
            if right is not None:
                if lt(right.value, node.value):
                    is_heap = False
                stack.append([right, 0, 0, 0])
            else:
                size = depth = 0
        else:
            left_size, left_depth = frame[2], frame[3]
            if not (size <= left_size <= size + 1):
                is_braun = False
            size = left_size + size + 1
            depth = 1 + (left_depth if left_depth > depth else depth)
            stack.pop()
    return size, depth, is_braun, is_heap


def _default_lt(a, b):
    return a < b


def check_braun(tree, key: Optional[Callable] = None) -> bool:
    """True iff every node's subtree sizes satisfy the Braun inequality."""
    lt = _default_lt if key is None else (lambda a, b: key(a) < key(b))
    return _scan(_root_of(tree), lt)[2]


def check_heap(tree, key: Optional[Callable] = None) -> bool:
    """True iff each node's value <= each child's value."""
    lt = _default_lt if key is None else (lambda a, b: key(a) < key(b))
    return _scan(_root_of(tree), lt)[3]


@dataclass
class StructReport:
    """Quiescent structural summary of one tree (plus sharing stats)."""
    is_braun: bool
    is_heap: bool
    size: int
    depth: int
    shared_nodes: int
    snap_count_total: int

    def ok(self) -> bool:
        return self.is_braun and self.is_heap


def _reachable(root) -> dict:
    nodes = {}
    stack = [root] if root is not None else []
    while stack:
        node = stack.pop()
        if id(node) in nodes:
            continue
        nodes[id(node)] = node
        if node.left is not None:
            stack.append(node.left)
        if node.right is not None:
            stack.append(node.right)
    return nodes


def structure_report(tree, *others, key: Optional[Callable] = None) -> StructReport:
    """Report on ``tree``; sharing and count totals span all arguments.

    size/depth describe the first tree; is_braun/is_heap must hold for
    every argument; shared_nodes counts nodes reachable from two or more
    of the given heaps.
    """
    lt = _default_lt if key is None else (lambda a, b: key(a) < key(b))
    roots = [_root_of(t) for t in (tree, *others)]
    size, depth, is_braun, is_heap = _scan(roots[0], lt)
    for other in roots[1:]:
        _, _, braun2, heap2 = _scan(other, lt)
        is_braun = is_braun and braun2
        is_heap = is_heap and heap2
    seen_in: Counter = Counter()
    union: dict = {}
    for root in roots:
        reach = _reachable(root)
        union.update(reach)
        seen_in.update(reach.keys())
    shared = sum(1 for n in seen_in.values() if n >= 2)
    snap_total = sum(getattr(n, "snap_count", 0) for n in union.values())
    return StructReport(is_braun, is_heap, size, depth, shared, snap_total)


def collect_values(tree) -> list:
    """Raw preorder value walk; requires quiescence (takes no locks)."""
    root = _root_of(tree)
    out = []
    stack = [root] if root is not None else []
    while stack:
        node = stack.pop()
        out.append(node.value)
        if node.right is not None:
            stack.append(node.right)
        if node.left is not None:
            stack.append(node.left)
    return out


def _hash64(value) -> int:
    digest = hashlib.blake2b(repr(value).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def multiset_digest(values: Iterable) -> int:
    """Order-insensitive content hash: 64-bit sum of per-element hashes."""
    total = 0
    for v in values:
        total = (total + _hash64(v)) & _MASK64
    return total


def check_isolation(a, b, mutate: Callable[[Any], None]) -> bool:
    """True iff running ``mutate`` against ``a`` leaves ``b``'s multiset unchanged."""
    before = multiset_digest(b.iterate())
    mutate(a)
    after = multiset_digest(b.iterate())
    return before == after


class OracleQueue:
    """Sorted-list priority queue; the behavioral ground truth."""

    def __init__(self, key: Optional[Callable] = None) -> None:
        self._items: list = []
        self._key = key

    def insert(self, value) -> None:
        bisect.insort(self._items, value, key=self._key)

    def get_min(self):
        return self._items[0] if self._items else None

    def remove_min(self):
        return self._items.pop(0) if self._items else None

    def values(self) -> list:
        return list(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def is_empty(self) -> bool:
        return not self._items


@dataclass
class OpTrace:
    """Recorded stress run: per-thread (kind, input, output, t0, t1) events."""
    initial: Counter
    per_thread: list
    final: Counter
    live_snapshots: list = field(default_factory=list)
    heap: Any = None


def check_conservation(trace: OpTrace, final: Optional[Counter] = None) -> bool:
    """inserted + initial == removed + final, with exact multiplicities."""
    final = trace.final if final is None else final
    inserted: Counter = Counter()
    removed: Counter = Counter()
    for events in trace.per_thread:
        for kind, value, result, _t0, _t1 in events:
            if kind == "insert":
                inserted[value] += 1
            elif kind == "remove_min" and result is not None:
                removed[result] += 1
    available = trace.initial + inserted
    if any(removed[v] > available[v] for v in removed):
        return False
    return available == removed + final


_STRESS_KINDS = ("insert", "remove_min", "get_min", "snapshot", "release", "iterate")


def run_stress(threads: int, ops_per_thread: int, mix: dict, seed: int,
               initial: Iterable = (), key: Optional[Callable] = None,
               debug: bool = False, phases: int = 1,
               heap_factory: Optional[Callable] = None,
               value_range: tuple = (0, (1 << 16) - 1),
               join_timeout: float = 300.0) -> OpTrace:
    """Drive one shared heap from ``threads`` workers and record the trace.

    ``mix`` maps op kind to probability weight (kinds: insert,
    remove_min, get_min, snapshot, release, iterate). Inputs are a pure
    function of (seed, thread index); interleavings of course are not.
    ``phases`` > 1 inserts quiescent barriers at which the main thread
    verifies the heap content against the trace so far.
    """
    from .concurrent import ConcurrentBraunHeap

    initial = list(initial)
    if heap_factory is None:
        heap = ConcurrentBraunHeap.from_values(initial, key=key, debug=debug)
    else:
        heap = heap_factory(initial)
    kinds = [k for k in _STRESS_KINDS if mix.get(k, 0) > 0]
    weights = [mix[k] for k in kinds]
    total_w = float(sum(weights))
    cumulative = []
    acc = 0.0
    for w in weights:
        acc += w / total_w
        cumulative.append(acc)

    per_thread: list = [[] for _ in range(threads)]
    snapshots_per_thread: list = [[] for _ in range(threads)]
    errors: list = []
    phase_sizes = [ops_per_thread // phases] * phases
    phase_sizes[-1] += ops_per_thread - sum(phase_sizes)
    barrier = threading.Barrier(threads + 1)

    def worker(tid: int) -> None:
        rng = CounterRng(seed, stream=tid)
        events = per_thread[tid]
        snaps = snapshots_per_thread[tid]
        lo, hi = value_range
        try:
            for count in phase_sizes:
                barrier.wait()
                for _ in range(count):
                    r = rng.random()
                    idx = 0
                    while cumulative[idx] < r and idx < len(kinds) - 1:
                        idx += 1
                    kind = kinds[idx]
                    value = None
                    t0 = time.perf_counter_ns()
                    if kind == "insert":
                        value = rng.randint(lo, hi)
                        heap.insert(value)
                        result = None
                    elif kind == "remove_min":
                        result = heap.remove_min()
                    elif kind == "get_min":
                        result = heap.get_min()
                    elif kind == "snapshot":
                        snap = heap.snapshot()
                        if len(snaps) >= 4:
                            snaps.pop(0).release()
                        snaps.append(snap)
                        result = len(snap)
                    elif kind == "release":
                        if snaps:
                            snaps.pop(rng.next_u64() % len(snaps)).release()
                        result = None
                    else:  # iterate
                        result = sum(1 for _ in heap.iterate())
                    t1 = time.perf_counter_ns()
                    events.append((kind, value, result, t0, t1))
                barrier.wait()
        except Exception as exc:  # surface worker failures to the caller
            errors.append(exc)
            try:
                barrier.abort()
            except Exception:
                pass

    # Aggressive-but-not-pathological preemption; the hand-over-hand lock
    # waits already force a switch at every contention point.
    old_interval = sys.getswitchinterval()
    sys.setswitchinterval(1e-4)
    workers = [threading.Thread(target=worker, args=(i,), daemon=True)
               for i in range(threads)]
    trace = OpTrace(initial=Counter(initial), per_thread=per_thread,
                    final=Counter(), heap=heap)
    try:
        for w in workers:
            w.start()
        try:
            for _phase in range(phases):
                barrier.wait()   # release workers into the phase
                barrier.wait()   # workers quiescent again
                observed = Counter(collect_values(heap))
                so_far = OpTrace(Counter(initial), per_thread, Counter())
                if not check_conservation(so_far, final=observed):
                    raise AssertionError("conservation violated at phase boundary")
        except threading.BrokenBarrierError:
            pass  # a worker failed; its exception is in `errors`
        except BaseException:
            barrier.abort()  # unblock workers so the join below succeeds
            raise
        finally:
            for w in workers:
                w.join(timeout=join_timeout)
            if any(w.is_alive() for w in workers):
                raise RuntimeError("stress worker failed to finish (possible deadlock)")
    finally:
        sys.setswitchinterval(old_interval)
    if errors:
        raise errors[0]
    trace.final = Counter(collect_values(heap))
    trace.live_snapshots = [s for snaps in snapshots_per_thread for s in snaps]
    return trace
