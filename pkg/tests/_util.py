"""Shared test helpers: hand-built trees and op-sequence replay."""

from braunheap.concurrent import ConcurrentBraunHeap, _Node
from braunheap.rng import CounterRng
from braunheap.sequential import SeqNode, SequentialBraunHeap


def seq_node(value, left=None, right=None):
    return SeqNode(value, left, right)


def cnode(value, left=None, right=None):
    return _Node(value, left, right)


def count_nodes(root):
    if root is None:
        return 0
    return 1 + count_nodes(root.left) + count_nodes(root.right)


def seq_heap_from(root):
    heap = SequentialBraunHeap()
    heap.root = root
    heap.size = count_nodes(root)
    return heap


def cheap_from(root, debug=False):
    heap = ConcurrentBraunHeap(debug=debug)
    heap._root = root
    heap._size = count_nodes(root)
    return heap


def random_ops(seed, length, value_hi=(1 << 16) - 1,
               weights=(0.5, 0.25, 0.25)):
    """Deterministic mixed insert/remove_min/get_min sequence."""
    rng = CounterRng(seed)
    w_insert, w_remove, _ = weights
    ops = []
    for _ in range(length):
        r = rng.random()
        if r < w_insert:
            ops.append(("insert", rng.randint(0, value_hi)))
        elif r < w_insert + w_remove:
            ops.append(("remove_min", None))
        else:
            ops.append(("get_min", None))
    return ops


def replay(ops, queue):
    """Apply ops; collect every operation's result (None for insert)."""
    out = []
    for kind, value in ops:
        if kind == "insert":
            out.append(queue.insert(value))
        elif kind == "remove_min":
            out.append(queue.remove_min())
        else:
            out.append(queue.get_min())
    return out
