"""Reader-writer lock used for the heap-level and per-node permits.

Writer-preference and fairness are deliberately absent; the traversal
discipline in `concurrent` never relies on either. A permit may be
acquired in one call frame and released in another (required for the
hand-over-hand handoff and for the copy-on-write permit transfer), so
this is not a context manager.
"""

from __future__ import annotations

import threading


class RWLock:
    """Shared/exclusive lock. Not reentrant in either mode."""

    __slots__ = ("_cond", "_readers", "_writer")

    def __init__(self) -> None:
        self._cond = threading.Condition(threading.Lock())
        self._readers = 0
        self._writer = False

    def acquire_read(self) -> None:
        with self._cond:
            while self._writer:
                self._cond.wait()
            self._readers += 1

    def release_read(self) -> None:
        with self._cond:
            self._readers -= 1
            if self._readers == 0:
                self._cond.notify_all()

    def acquire_write(self) -> None:
        with self._cond:
            while self._writer or self._readers:
                self._cond.wait()
            self._writer = True

    def release_write(self) -> None:
        with self._cond:
            self._writer = False
            self._cond.notify_all()
