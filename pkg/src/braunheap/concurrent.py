"""Thread-safe Braun-tree priority queue with O(1) copy-on-write snapshots.

Locking discipline
------------------
A heap-level reader-writer permit guards the root link; per-node permits
are taken hand-over-hand leafward (a child's permit is acquired before
the parent's is released), so every traversal appears atomic from the
moment the heap permit is acquired. ``remove_min`` keeps the root's
exclusive permit across both of its phases — the pull-up phase briefly
violates the shape and heap order, and the retained permit hides that
from every other operation. The single rootward action (unlinking the
target leaf from its already-released parent) is safe because the heap
permit is still held at that point, so no other thread can be between
the root and the leaf.

Snapshots
---------
Each node carries ``snap_count``, the number of counted snapshot
references to it. Taking a snapshot increments the root's count and
shares the whole tree; O(1) regardless of size. A node with a positive
count is never mutated in place: mutators replace it with a fresh
writable copy whose children become counted references, decrementing
the original — the snapshot is peeled away lazily, one node at a time,
only along paths that are actually written.
"""

from __future__ import annotations

import threading
from typing import Any, Callable, Iterator, Optional

from .locks import RWLock

_tls = threading.local()


def _held_nodes() -> set:
    held = getattr(_tls, "nodes", None)
    if held is None:
        held = _tls.nodes = set()
    return held


class _Node:
    __slots__ = ("value", "left", "right", "snap_count", "lock")

    def __init__(self, value: Any, left: "_Node | None" = None,
                 right: "_Node | None" = None) -> None:
        self.value = value
        self.left = left
        self.right = right
        self.snap_count = 0
        self.lock = RWLock()

    def to_tuple(self):
        return (
            self.value,
            self.left.to_tuple() if self.left else None,
            self.right.to_tuple() if self.right else None,
        )


class _DebugCounters:
    """Allocation and lock-discipline probes, enabled per heap."""

    __slots__ = ("_lock", "nodes_allocated", "peel_copies",
                 "lock_order_violations", "snapshot_node_visits")

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.nodes_allocated = 0
        self.peel_copies = 0
        self.lock_order_violations = 0
        self.snapshot_node_visits = 0

    def bump(self, name: str) -> None:
        with self._lock:
            setattr(self, name, getattr(self, name) + 1)

    def as_dict(self) -> dict:
        return {
            "nodes_allocated": self.nodes_allocated,
            "peel_copies": self.peel_copies,
            "lock_order_violations": self.lock_order_violations,
            "snapshot_node_visits": self.snapshot_node_visits,
        }


_EMPTIED = object()  # pull-up result when the root itself was the leaf


class ConcurrentBraunHeap:
    """Concurrent Braun min-heap storing a multiset of ordered elements.

    Any number of threads may call any public method on the same heap or
    on heaps sharing structure through snapshots. ``key``, when given,
    extracts the comparison key. ``debug=True`` enables the counter and
    lock-order probes exposed via :attr:`counters`.
    """

    __slots__ = ("_root", "_size", "_key", "_heap_lock", "_counters",
                 "_counted", "_disable_cow", "__weakref__")

    def __init__(self, key: Optional[Callable[[Any], Any]] = None,
                 debug: bool = False, _disable_cow: bool = False) -> None:
        self._root: _Node | None = None
        self._size = 0
        self._key = key
        self._heap_lock = RWLock()
        self._counters = _DebugCounters() if debug else None
        self._counted = False  # True while this handle owns a counted root reference
        self._disable_cow = _disable_cow  # test hook: break isolation on purpose

    @classmethod
    def from_values(cls, values, key: Optional[Callable[[Any], Any]] = None,
                    debug: bool = False) -> "ConcurrentBraunHeap":
        """Bulk-build a heap; equivalent multiset to inserting one by one."""
        heap = cls(key=key, debug=debug)
        ordered = sorted(values, key=key)
        heap._root = heap._build(ordered, 0, len(ordered))
        heap._size = len(ordered)
        return heap

    def _build(self, ordered, lo: int, hi: int) -> _Node | None:
        # ordered[lo:hi] ascending; left subtree takes the extra node
        if lo >= hi:
            return None
        rest = hi - lo - 1
        left_n = (rest + 1) // 2
        node = self._new_node(ordered[lo])
        node.left = self._build(ordered, lo + 1, lo + 1 + left_n)
        node.right = self._build(ordered, lo + 1 + left_n, hi)
        return node

    # -- comparison and debug plumbing ---------------------------------

    def _lt(self, a: Any, b: Any) -> bool:
        if self._key is None:
            return a < b
        return self._key(a) < self._key(b)

    @property
    def counters(self) -> dict | None:
        """Debug counters, or None unless constructed with debug=True."""
        return self._counters.as_dict() if self._counters is not None else None

    def _new_node(self, value: Any, left: _Node | None = None,
                  right: _Node | None = None) -> _Node:
        if self._counters is not None:
            self._counters.bump("nodes_allocated")
        return _Node(value, left, right)

    # -- permit helpers -------------------------------------------------
    # Every field access goes through these so the debug recorder can
    # verify the rootward-to-leafward acquisition discipline.

    def _heap_write(self) -> None:
        self._heap_lock.acquire_write()
        if self._counters is not None:
            _tls.heap_permits = getattr(_tls, "heap_permits", 0) + 1

    def _heap_release_write(self) -> None:
        if self._counters is not None:
            _tls.heap_permits = getattr(_tls, "heap_permits", 1) - 1
        self._heap_lock.release_write()

    def _heap_read(self) -> None:
        self._heap_lock.acquire_read()
        if self._counters is not None:
            _tls.heap_permits = getattr(_tls, "heap_permits", 0) + 1

    def _heap_release_read(self) -> None:
        if self._counters is not None:
            _tls.heap_permits = getattr(_tls, "heap_permits", 1) - 1
        self._heap_lock.release_read()

    def _record_acquire(self, node: _Node, parent: _Node | None,
                        fresh: bool, shared: bool) -> None:
        held = _held_nodes()
        if fresh:
            pass  # unpublished copy, trivially safe
        elif parent is not None:
            if id(parent) not in held or (parent.left is not node
                                          and parent.right is not node):
                self._counters.bump("lock_order_violations")
        elif held:
            # chain starts may never begin while other node permits are held
            self._counters.bump("lock_order_violations")
        elif not shared and getattr(_tls, "heap_permits", 0) == 0:
            # a root write permit is only legal under the heap permit
            self._counters.bump("lock_order_violations")
        held.add(id(node))

    def _node_write(self, node: _Node, parent: _Node | None = None,
                    fresh: bool = False) -> None:
        if self._counters is not None:
            self._record_acquire(node, parent, fresh, shared=False)
        node.lock.acquire_write()

    def _node_release_write(self, node: _Node) -> None:
        if self._counters is not None:
            _held_nodes().discard(id(node))
        node.lock.release_write()

    def _node_read(self, node: _Node, parent: _Node | None = None) -> None:
        if self._counters is not None:
            self._record_acquire(node, parent, fresh=False, shared=True)
        node.lock.acquire_read()

    def _node_release_read(self, node: _Node) -> None:
        if self._counters is not None:
            _held_nodes().discard(id(node))
        node.lock.release_read()

    # -- copy-on-write ---------------------------------------------------

    def _unsnap_locked(self, node: _Node) -> _Node:
        """Make ``node`` writable; caller holds its exclusive permit.

        With a zero count the node itself is returned untouched.
        Otherwise a fresh copy is made, the children become counted
        snapshot references, the original's count drops by one, and the
        permit is transferred (the copy is locked before the original is
        released).
        """
        if node.snap_count == 0 or self._disable_cow:
            return node
        left, right = node.left, node.right
        if left is not None:
            self._node_write(left, parent=node)
            left.snap_count += 1
            self._node_release_write(left)
        if right is not None:
            self._node_write(right, parent=node)
            right.snap_count += 1
            self._node_release_write(right)
        node.snap_count -= 1
        copy = self._new_node(node.value, left, right)
        if self._counters is not None:
            self._counters.bump("peel_copies")
        self._node_write(copy, fresh=True)
        self._node_release_write(node)
        return copy

    # -- public operations ------------------------------------------------

    def get_min(self) -> Any | None:
        """Smallest element, or None when empty.

        Takes effect at the acquisition of the heap's shared permit.
        """
        self._heap_read()
        root = self._root
        if root is None:
            self._heap_release_read()
            return None
        self._node_read(root)
        self._heap_release_read()
        value = root.value
        self._node_release_read(root)
        return value

    def insert(self, value: Any) -> None:
        """Add one element; takes effect at the heap permit acquisition.

        Descends hand-over-hand: each visited node keeps the smaller of
        {node value, carried value}, the larger goes into the old right
        subtree which becomes the new left child, and the old left child
        becomes the new right.
        """
        self._heap_write()
        root = self._root
        self._size += 1
        if root is None:
            self._root = self._new_node(value)
            self._heap_release_write()
            return
        self._node_write(root)
        node = self._unsnap_locked(root)
        self._root = node
        self._heap_release_write()
        while True:
            if self._lt(value, node.value):
                node.value, value = value, node.value
            old_left, old_right = node.left, node.right
            if old_right is None:
                node.left = self._new_node(value)
                node.right = old_left
                self._node_release_write(node)
                return
            self._node_write(old_right, parent=node)
            child = self._unsnap_locked(old_right)
            node.left = child
            node.right = old_left
            self._node_release_write(node)
            node = child

    def _pull_up_left_locked(self, root: _Node) -> Any:
        """Phase 1 of remove_min: fetch the Braun-mandated leaf's value.

        Entered with the heap permit held and ``root``'s exclusive permit
        held and already writable. Each visited non-leaf is made writable
        on arrival and written back into its parent's link (the parent's
        permit is already released — the one rootward write, covered by
        the still-held heap and root permits), then its children swap and
        the descent follows the new right subtree. The target leaf is
        never copied: it is unlinked, and a positive snapshot count is
        decremented because the one remaining reference to it is no
        longer a peel candidate. On return the root's permit is still
        held — unless the root itself was the leaf, in which case the
        heap is empty, the permit is released, and ``_EMPTIED`` is
        returned instead of a value.
        """
        node = root
        parent: _Node | None = None
        while True:
            if node.left is None:
                if parent is None:
                    self._root = None
                else:
                    parent.right = None
                if node.snap_count > 0:
                    node.snap_count -= 1
                self._node_release_write(node)
                return _EMPTIED if parent is None else node.value
            node = self._unsnap_locked(node)
            if parent is None:
                self._root = node
            else:
                parent.right = node
            node.left, node.right = node.right, node.left
            child = node.right
            self._node_write(child, parent=node)
            if parent is not None:
                self._node_release_write(node)
            parent = node
            node = child

    def _push_down_locked(self, node: _Node) -> None:
        """Phase 2 of remove_min: sift the replacement value leafward.

        Entered with ``node``'s exclusive permit held and the node
        writable; both subtrees are heaps. Child values are read under
        the children's own exclusive permits before choosing where to
        descend, so a still-descending earlier mutation can never feed a
        stale value into the decision. Releases every permit it takes,
        including the entry permit.
        """
        while True:
            left, right = node.left, node.right
            if right is None:
                if left is not None:
                    self._node_write(left, parent=node)
                    if self._lt(left.value, node.value):
                        leftw = self._unsnap_locked(left)
                        node.left = leftw
                        node.value, leftw.value = leftw.value, node.value
                        self._node_release_write(leftw)
                    else:
                        self._node_release_write(left)
                self._node_release_write(node)
                return
            self._node_write(left, parent=node)
            self._node_write(right, parent=node)
            if self._lt(left.value, right.value):
                chosen, other = left, right
            else:
                chosen, other = right, left
            if not self._lt(chosen.value, node.value):
                self._node_release_write(right)
                self._node_release_write(left)
                self._node_release_write(node)
                return
            chosenw = self._unsnap_locked(chosen)
            if chosen is left:
                node.left = chosenw
            else:
                node.right = chosenw
            node.value, chosenw.value = chosenw.value, node.value
            self._node_release_write(other)
            self._node_release_write(node)
            node = chosenw

    def remove_min(self) -> Any | None:
        """Remove and return the smallest element; None when empty.

        Takes effect at the heap permit acquisition. The root's
        exclusive permit is held continuously from before the pull-up
        phase until the push-down phase moves off the root, so no other
        operation can observe the transient heap-order violation.
        """
        self._heap_write()
        root = self._root
        if root is None:
            self._heap_release_write()
            return None
        self._node_write(root)
        root = self._unsnap_locked(root)
        self._root = root
        self._size -= 1
        old = root.value
        replacement = self._pull_up_left_locked(root)
        self._heap_release_write()
        if replacement is not _EMPTIED:
            root.value = replacement
            self._push_down_locked(root)
        return old

    def snapshot(self) -> "ConcurrentBraunHeap":
        """O(1) consistent copy sharing this heap's structure.

        Takes effect at the heap permit acquisition; touches only the
        root node (its snapshot count is incremented under its exclusive
        permit). Mutations on either heap never show through the other.
        """
        self._heap_write()
        root = self._root
        if root is not None:
            self._node_write(root)
            root.snap_count += 1
            if self._counters is not None:
                self._counters.bump("snapshot_node_visits")
            self._node_release_write(root)
        snap = ConcurrentBraunHeap(key=self._key,
                                   debug=self._counters is not None,
                                   _disable_cow=self._disable_cow)
        snap._root = root
        snap._size = self._size
        snap._counted = root is not None
        self._heap_release_write()
        return snap

    def release(self) -> None:
        """Drop this snapshot handle's counted root reference.

        Counted references created deeper in the tree by earlier peeling
        are deliberately not traversed; a stale positive count only ever
        costs an extra copy later, never correctness. Safe to call on
        heaps that are not snapshots (no-op). Releasing the same counted
        reference twice through different handles is a caller error.
        """
        if not self._counted:  # cheap pre-check; re-read under the permit
            return
        self._heap_write()
        counted, self._counted = self._counted, False
        root = self._root
        if counted and root is not None:
            self._node_write(root)
            if root.snap_count > 0:
                root.snap_count -= 1
            if self._counters is not None:
                assert root.snap_count >= 0, "snapshot count underflow"
            self._node_release_write(root)
        self._heap_release_write()

    release_snapshot = release

    def __del__(self) -> None:
        try:
            self.release()
        except Exception:
            pass

    def iterate(self) -> Iterator[Any]:
        """Yield every element as of now, isolated from later mutation.

        Internally takes (and afterwards releases) a snapshot, then walks
        it depth-first preorder, touching each node under a momentary
        shared permit. Order is structural, not sorted; the multiset
        equals the heap's content at the moment of the call.
        """
        snap = self.snapshot()
        return self._iter_snapshot(snap)

    def _iter_snapshot(self, snap: "ConcurrentBraunHeap") -> Iterator[Any]:
        try:
            yield from self._dfs(snap._root)
        finally:
            snap.release()

    def _dfs(self, node: _Node | None) -> Iterator[Any]:
        if node is None:
            return
        self._node_read(node)
        value, left, right = node.value, node.left, node.right
        self._node_release_read(node)
        yield value
        yield from self._dfs(left)
        yield from self._dfs(right)

    __iter__ = iterate

    def __len__(self) -> int:
        self._heap_read()
        n = self._size
        self._heap_release_read()
        return n

    def is_empty(self) -> bool:
        return len(self) == 0
