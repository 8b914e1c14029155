"""Comparison queues: coarse-locked array heap and a locked skiplist.

Both expose the same surface as the concurrent Braun heap (insert,
get_min, remove_min, snapshot, release, iterate, len, is_empty,
from_values) so the benchmark harness can drive any of them. Their
snapshots cost Θ(n) by construction — that contrast is the point.
"""

from __future__ import annotations

import heapq
import random
import threading
from typing import Any, Callable, Iterator, Optional


class CoarseLockHeap:
    """Array-backed binary heap; every operation under one mutex.

    Without a key function the storage is the raw value list driven by
    ``heapq``; with one, entries are (key, tiebreak, value) triples. A
    snapshot copies the whole backing array under the lock.
    """

    def __init__(self, key: Optional[Callable] = None, debug: bool = False) -> None:
        self._lock = threading.Lock()
        self._key = key
        self._items: list = []
        self._seq = 0
        self._debug = debug
        self._in_critical = 0
        self.max_critical = 0  # debug: peak op bodies inside the lock
        self.snapshot_node_visits = 0

    @classmethod
    def from_values(cls, values, key: Optional[Callable] = None,
                    debug: bool = False) -> "CoarseLockHeap":
        heap = cls(key=key, debug=debug)
        if key is None:
            heap._items = list(values)
        else:
            heap._items = [(key(v), i, v) for i, v in enumerate(values)]
            heap._seq = len(heap._items)
        heapq.heapify(heap._items)
        return heap

    def _enter(self) -> None:
        if self._debug:
            self._in_critical += 1
            if self._in_critical > self.max_critical:
                self.max_critical = self._in_critical

    def _exit(self) -> None:
        if self._debug:
            self._in_critical -= 1

    def _wrap(self, value):
        if self._key is None:
            return value
        self._seq += 1
        return (self._key(value), self._seq, value)

    def insert(self, value: Any) -> None:
        with self._lock:
            self._enter()
            heapq.heappush(self._items, self._wrap(value))
            self._exit()

    def get_min(self) -> Any | None:
        with self._lock:
            self._enter()
            if self._items:
                top = self._items[0]
                out = top if self._key is None else top[2]
            else:
                out = None
            self._exit()
            return out

    def remove_min(self) -> Any | None:
        with self._lock:
            self._enter()
            if self._items:
                top = heapq.heappop(self._items)
                out = top if self._key is None else top[2]
            else:
                out = None
            self._exit()
            return out

    def snapshot(self) -> "CoarseLockHeap":
        """Full copy of the backing array; Θ(n)."""
        with self._lock:
            self._enter()
            snap = CoarseLockHeap(key=self._key, debug=self._debug)
            snap._items = list(self._items)
            snap._seq = self._seq
            if self._debug:
                self.snapshot_node_visits += len(self._items)
            self._exit()
            return snap

    def release(self) -> None:
        """Snapshots own their storage; nothing to give back."""

    release_snapshot = release

    def iterate(self) -> Iterator[Any]:
        snap = self.snapshot()
        if self._key is None:
            yield from snap._items
        else:
            for _k, _seq, value in snap._items:
                yield value

    __iter__ = iterate

    def __len__(self) -> int:
        with self._lock:
            return len(self._items)

    def is_empty(self) -> bool:
        return len(self) == 0


class _SkipNode:
    __slots__ = ("value", "forward")

    def __init__(self, value: Any, level: int) -> None:
        self.value = value
        self.forward: list = [None] * level


class LockedSkipListQueue:
    """Sorted skiplist multiset under one mutex; min removal pops the head.

    Snapshots rebuild a fresh skiplist by successive inserts from the
    source's sorted level-0 chain — Θ(n log n), deliberately naive.
    """

    MAX_LEVEL = 24

    def __init__(self, key: Optional[Callable] = None, debug: bool = False,
                 seed: int = 0xC0FFEE) -> None:
        self._lock = threading.Lock()
        self._key = key
        self._head = _SkipNode(None, self.MAX_LEVEL)
        self._level = 1
        self._len = 0
        self._rng = random.Random(seed)
        self._debug = debug

    @classmethod
    def from_values(cls, values, key: Optional[Callable] = None,
                    debug: bool = False) -> "LockedSkipListQueue":
        queue = cls(key=key, debug=debug)
        for v in values:
            queue.insert(v)
        return queue

    def _lt(self, a, b) -> bool:
        if self._key is None:
            return a < b
        return self._key(a) < self._key(b)

    def _random_level(self) -> int:
        level = 1
        while level < self.MAX_LEVEL and self._rng.random() < 0.5:
            level += 1
        return level

    def insert(self, value: Any) -> None:
        with self._lock:
            update = [self._head] * self.MAX_LEVEL
            node = self._head
            for lvl in range(self._level - 1, -1, -1):
                nxt = node.forward[lvl]
                while nxt is not None and self._lt(nxt.value, value):
                    node = nxt
                    nxt = node.forward[lvl]
                update[lvl] = node
            level = self._random_level()
            if level > self._level:
                self._level = level
            new = _SkipNode(value, level)
            for lvl in range(level):
                new.forward[lvl] = update[lvl].forward[lvl]
                update[lvl].forward[lvl] = new
            self._len += 1

    def get_min(self) -> Any | None:
        with self._lock:
            first = self._head.forward[0]
            return first.value if first is not None else None

    def remove_min(self) -> Any | None:
        with self._lock:
            first = self._head.forward[0]
            if first is None:
                return None
            for lvl in range(len(first.forward)):
                self._head.forward[lvl] = first.forward[lvl]
            self._len -= 1
            return first.value

    def _sorted_values(self) -> list:
        out = []
        node = self._head.forward[0]
        while node is not None:
            out.append(node.value)
            node = node.forward[0]
        return out

    def snapshot(self) -> "LockedSkipListQueue":
        """Rebuild from the sorted chain by successive inserts; Θ(n log n)."""
        with self._lock:
            values = self._sorted_values()
        snap = LockedSkipListQueue(key=self._key, debug=self._debug)
        for v in values:
            snap.insert(v)
        return snap

    def release(self) -> None:
        """Snapshots own their storage; nothing to give back."""

    release_snapshot = release

    def iterate(self) -> Iterator[Any]:
        with self._lock:
            values = self._sorted_values()
        yield from values

    __iter__ = iterate

    def __len__(self) -> int:
        with self._lock:
            return self._len

    def is_empty(self) -> bool:
        return len(self) == 0
