"""Concurrent Braun-tree priority queue with O(1) copy-on-write snapshots."""

from .baselines import CoarseLockHeap, LockedSkipListQueue
from .concurrent import ConcurrentBraunHeap
from .sequential import SequentialBraunHeap
from .verification import (
    OracleQueue,
    StructReport,
    check_braun,
    check_conservation,
    check_heap,
    check_isolation,
    multiset_digest,
    run_stress,
    structure_report,
)

__all__ = [
    "ConcurrentBraunHeap",
    "SequentialBraunHeap",
    "CoarseLockHeap",
    "LockedSkipListQueue",
    "OracleQueue",
    "StructReport",
    "check_braun",
    "check_heap",
    "check_isolation",
    "check_conservation",
    "multiset_digest",
    "run_stress",
    "structure_report",
]

__version__ = "0.1.0"
