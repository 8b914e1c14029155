"""Single-threaded Braun-tree min-heap.

Serves as the behavioral ground truth for the concurrent implementation
and as executable documentation of the shape-maintenance rules:

* every insert and removal swaps the children of each visited node;
* inserts descend into the subtree that becomes the new left child,
  removals descend into the subtree that becomes the new right child.

The tree keeps the Braun shape (for every node, size(right) <=
size(left) <= size(right) + 1) and heap order (parent <= children)
without storing any bookkeeping in the nodes.
"""

from __future__ import annotations

from typing import Any, Callable, Iterator, Optional


class SeqNode:
    __slots__ = ("value", "left", "right")

    def __init__(self, value: Any, left: "SeqNode | None" = None,
                 right: "SeqNode | None" = None) -> None:
        self.value = value
        self.left = left
        self.right = right

    def to_tuple(self):
        """(value, left, right) nested tuples, None for absent children."""
        return (
            self.value,
            self.left.to_tuple() if self.left else None,
            self.right.to_tuple() if self.right else None,
        )


class SequentialBraunHeap:
    """Braun min-heap storing a multiset of totally ordered elements.

    `key`, when given, extracts the comparison key (as in `sorted`).
    Ties are broken arbitrarily; any choice keeps heap order.
    """

    __slots__ = ("root", "size", "_key")

    def __init__(self, key: Optional[Callable[[Any], Any]] = None) -> None:
        self.root: SeqNode | None = None
        self.size = 0  # redundant count; the algorithms never read it
        self._key = key

    def _lt(self, a: Any, b: Any) -> bool:
        if self._key is None:
            return a < b
        return self._key(a) < self._key(b)

    def is_empty(self) -> bool:
        return self.root is None

    def __len__(self) -> int:
        return self.size

    def get_min(self) -> Any | None:
        """Smallest element, or None when empty. No mutation."""
        return self.root.value if self.root is not None else None

    def insert(self, value: Any) -> None:
        """Add one element.

        At each visited node the smaller of {node value, carried value}
        stays, the larger is inserted into the old right subtree, and the
        children are swapped (old right becomes the new left).
        """
        self.size += 1
        if self.root is None:
            self.root = SeqNode(value)
            return
        node = self.root
        while True:
            if self._lt(value, node.value):
                node.value, value = value, node.value
            old_left, old_right = node.left, node.right
            if old_right is None:
                node.left = SeqNode(value)
                node.right = old_left
                return
            node.left = old_right
            node.right = old_left
            node = old_right

    def pull_up_left(self) -> Any | None:
        """Remove the Braun-mandated leaf and return its value.

        Swaps children at every non-leaf and descends into the new right
        subtree; the final leaf on that path is unlinked. Returns None
        when the root itself was that leaf (the heap becomes empty).
        Preserves the Braun shape; never inserts below a node, so heap
        order is preserved too. Requires a non-empty heap.
        """
        node = self.root
        assert node is not None, "pull_up_left requires a non-empty heap"
        self.size -= 1
        if node.left is None:
            self.root = None
            return None
        parent, attr = self, "root"
        while node.left is not None:
            node.left, node.right = node.right, node.left
            parent, attr = node, "right"
            node = node.right
        setattr(parent, attr, None)
        return node.value

    def push_down(self) -> None:
        """Sift the root value leafward until heap order holds again.

        Precondition: both root subtrees are heaps (the root value alone
        may violate heap order). At each step the node takes the minimum
        of {node, children} values and the smaller-valued child takes the
        node's old value. The shape is untouched.
        """
        node = self.root
        assert node is not None, "push_down requires a non-empty heap"
        while True:
            left, right = node.left, node.right
            if right is None:
                # Braun shape: a missing right child means left, if any,
                # is a leaf.
                if left is not None and self._lt(left.value, node.value):
                    node.value, left.value = left.value, node.value
                return
            child = left if self._lt(left.value, right.value) else right
            if not self._lt(child.value, node.value):
                return
            node.value, child.value = child.value, node.value
            node = child

    def remove_min(self) -> Any | None:
        """Remove and return the smallest element; None when empty."""
        if self.root is None:
            return None
        old = self.root.value
        replacement = self.pull_up_left()
        if self.root is not None:
            self.root.value = replacement
            self.push_down()
        return old

    def drain(self) -> Iterator[Any]:
        """Yield all elements in nondecreasing order, emptying the heap."""
        while self.root is not None:
            yield self.remove_min()
