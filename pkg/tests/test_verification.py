"""Checkers validated against fixtures, plus the stress harness."""

from collections import Counter

import pytest

from braunheap import (
    ConcurrentBraunHeap,
    OracleQueue,
    check_braun,
    check_conservation,
    check_heap,
    check_isolation,
    multiset_digest,
    run_stress,
    structure_report,
)
from braunheap.verification import OpTrace, collect_values, _reachable

from _util import cheap_from, cnode, random_ops, replay, seq_heap_from, seq_node


class TestCheckBraun:
    def test_empty(self):
        assert check_braun(None)

    def test_right_only_child_rejected(self):
        assert not check_braun(seq_node(1, None, seq_node(2)))

    def test_left_too_heavy_rejected(self):
        assert not check_braun(seq_node(1, seq_node(2, seq_node(3), seq_node(4)), None))

    def test_accepts_oracle_built_tree(self):
        from braunheap import SequentialBraunHeap

        heap = SequentialBraunHeap()
        for _ in range(3):
            for kind, value in random_ops(11, 1000):
                if kind == "insert":
                    heap.insert(value)
                elif kind == "remove_min":
                    heap.remove_min()
        assert check_braun(heap)


class TestCheckHeap:
    def test_empty(self):
        assert check_heap(None)

    def test_ordered(self):
        assert check_heap(seq_node(1, seq_node(3), seq_node(2)))

    def test_violation_rejected(self):
        assert not check_heap(seq_node(3, seq_node(1), None))

    def test_deep_violation_rejected(self):
        root = seq_node(0, seq_node(5, seq_node(4)), seq_node(1))
        assert not check_heap(root)

    def test_duplicates_allowed(self):
        assert check_heap(seq_node(2, seq_node(2), seq_node(2)))


class TestStructureReport:
    def test_size_depth(self):
        heap = seq_heap_from(seq_node(0, seq_node(2, seq_node(4)), seq_node(1)))
        report = structure_report(heap)
        assert report.size == 4 and report.depth == 3
        assert report.ok()
        assert report.shared_nodes == 0

    def test_shared_nodes_across_heaps(self):
        shared = cnode(5, cnode(7), cnode(6))
        a = cheap_from(cnode(1, shared, cnode(2)))
        b = cheap_from(cnode(0, shared, cnode(3)))
        report = structure_report(a, b)
        assert report.shared_nodes == 3  # the shared subtree

    def test_snap_count_total(self):
        root = cnode(1, cnode(2), cnode(3))
        root.snap_count = 2
        root.left.snap_count = 1
        assert structure_report(cheap_from(root)).snap_count_total == 3

    def test_reachable_handles_dags(self):
        shared = cnode(4)
        root = cnode(1, cnode(2, shared), cnode(3, shared))
        assert len(_reachable(root)) == 4  # shared leaf counted once


class TestDigest:
    def test_order_insensitive(self):
        assert multiset_digest([1, 2, 3]) == multiset_digest([3, 1, 2])

    def test_multiplicity_sensitive(self):
        assert multiset_digest([1, 1, 2]) != multiset_digest([1, 2, 2])
        assert multiset_digest([1]) != multiset_digest([1, 1])

    def test_empty(self):
        assert multiset_digest([]) == 0


class TestIsolationChecker:
    def test_empty_script(self):
        heap = ConcurrentBraunHeap.from_values(range(10))
        snap = heap.snapshot()
        assert check_isolation(heap, snap, lambda h: None)

    def test_thousand_inserts(self):
        heap = ConcurrentBraunHeap.from_values(range(10))
        snap = heap.snapshot()

        def script(h):
            for v in range(1000):
                h.insert(v)

        assert check_isolation(heap, snap, script)

    def test_detects_broken_cow(self):
        heap = ConcurrentBraunHeap(_disable_cow=True)
        for v in range(64):
            heap.insert(v)
        snap = heap.snapshot()

        def script(h):
            for _ in range(32):
                h.remove_min()

        assert not check_isolation(heap, snap, script)


class TestOracleQueue:
    def test_behaves_like_sorted_multiset(self):
        q = OracleQueue()
        assert q.get_min() is None and q.remove_min() is None
        for v in (5, 1, 3, 1):
            q.insert(v)
        assert q.get_min() == 1
        assert [q.remove_min() for _ in range(4)] == [1, 1, 3, 5]
        assert q.is_empty()


class TestConservation:
    def _trace(self, events, initial=(), final=()):
        return OpTrace(initial=Counter(initial),
                       per_thread=[events],
                       final=Counter(final))

    def test_empty_trace(self):
        assert check_conservation(self._trace([]))

    def test_sequential_trace(self):
        ops = random_ops(3, 500)
        oracle = OracleQueue()
        events = []
        for kind, value in ops:
            result = replay([(kind, value)], oracle)[0]
            events.append((kind, value, result, 0, 0))
        trace = self._trace(events, final=oracle.values())
        assert check_conservation(trace)

    def test_forged_duplicate_removal_rejected(self):
        events = [("insert", 5, None, 0, 0),
                  ("remove_min", None, 5, 0, 0),
                  ("remove_min", None, 5, 0, 0)]
        assert not check_conservation(self._trace(events))

    def test_lost_value_rejected(self):
        events = [("insert", 5, None, 0, 0), ("insert", 6, None, 0, 0)]
        trace = self._trace(events, final=[5])
        assert not check_conservation(trace)


class TestRunStress:
    def test_single_thread_replays_against_oracle(self):
        trace = run_stress(threads=1, ops_per_thread=400,
                           mix={"insert": 0.5, "remove_min": 0.3, "get_min": 0.2},
                           seed=42)
        oracle = OracleQueue()
        for kind, value, result, _t0, _t1 in trace.per_thread[0]:
            if kind == "insert":
                oracle.insert(value)
            elif kind == "remove_min":
                assert oracle.remove_min() == result
            else:
                assert oracle.get_min() == result
        assert Counter(oracle.values()) == trace.final

    def test_two_threads_conserve(self):
        trace = run_stress(threads=2, ops_per_thread=1500,
                           mix={"insert": 0.5, "remove_min": 0.5},
                           seed=7, initial=range(100), debug=True)
        assert check_conservation(trace)
        assert trace.heap.counters["lock_order_violations"] == 0

    def test_snapshot_counts_drain_without_peeling(self):
        # no mutating ops, so no peeling: after releasing every handle
        # the count total must return to zero
        trace = run_stress(threads=8, ops_per_thread=300,
                           mix={"snapshot": 0.4, "release": 0.4, "get_min": 0.2},
                           seed=9, initial=range(64))
        for snap in trace.live_snapshots:
            snap.release()
        report = structure_report(trace.heap, *trace.live_snapshots)
        assert report.snap_count_total == 0

    def test_phase_boundary_checks_run(self):
        trace = run_stress(threads=2, ops_per_thread=400,
                           mix={"insert": 0.6, "remove_min": 0.4},
                           seed=21, phases=4)
        assert check_conservation(trace)

    def test_worker_errors_propagate(self):
        class Broken(ConcurrentBraunHeap):
            def insert(self, value):
                raise RuntimeError("boom")

        with pytest.raises(RuntimeError, match="boom"):
            run_stress(threads=2, ops_per_thread=10, mix={"insert": 1.0},
                       seed=0, heap_factory=lambda init: Broken())


def test_collect_values_matches_iterate():
    heap = ConcurrentBraunHeap.from_values(range(100))
    assert sorted(collect_values(heap)) == sorted(heap.iterate())
