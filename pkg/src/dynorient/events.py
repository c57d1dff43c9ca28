"""Engine event stream: kinds, records, and the recorder/hasher sinks.

Engines emit events in the exact order they mutate state, so replaying a
recorded stream reconstructs the per-pair copy counts.  Recording is opt-in;
hot replays attach the hasher (or nothing) instead of the recorder.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

COPY_ADDED = "copy_added"
COPY_REMOVED = "copy_removed"
COPY_FLIPPED = "copy_flipped"
OUT_DEGREE_CHANGED = "out_degree_changed"
SIMPLE_INSERTED = "simple_inserted"
SIMPLE_DELETED = "simple_deleted"
SIMPLE_REORIENTED = "simple_reoriented"

_KIND_CODES = {
    COPY_ADDED: 1,
    COPY_REMOVED: 2,
    COPY_FLIPPED: 3,
    OUT_DEGREE_CHANGED: 4,
    SIMPLE_INSERTED: 5,
    SIMPLE_DELETED: 6,
    SIMPLE_REORIENTED: 7,
}


class OrientationEvent(NamedTuple):
    """One engine mutation.

    For copy events ``u``/``v`` are tail/head of the copy concerned
    (for a flip: the old orientation).  For degree events ``v`` carries the
    new out-degree.  For simple-edge events ``u < v``.
    """

    kind: str
    u: int
    v: int
    payload: Optional[int] = None


class EventRecorder:
    """Materializes the event stream; test and debugging aid."""

    def __init__(self):
        self.events: list[OrientationEvent] = []

    def emit(self, kind: str, u: int, v: int, payload=None) -> None:
        self.events.append(OrientationEvent(kind, u, v, payload))

    def clear(self) -> None:
        self.events.clear()

    def replay_counts(self) -> dict:
        """Reconstruct per-pair directed copy counts from the stream."""
        counts: dict = {}
        for ev in self.events:
            if ev.kind == COPY_ADDED:
                key = (min(ev.u, ev.v), max(ev.u, ev.v))
                c = counts.setdefault(key, [0, 0])
                c[0 if ev.u < ev.v else 1] += 1
            elif ev.kind == COPY_REMOVED:
                key = (min(ev.u, ev.v), max(ev.u, ev.v))
                c = counts.setdefault(key, [0, 0])
                c[0 if ev.u < ev.v else 1] -= 1
            elif ev.kind == COPY_FLIPPED:
                key = (min(ev.u, ev.v), max(ev.u, ev.v))
                c = counts.setdefault(key, [0, 0])
                if ev.u < ev.v:
                    c[0] -= 1
                    c[1] += 1
                else:
                    c[1] -= 1
                    c[0] += 1
        return {k: tuple(v) for k, v in counts.items() if v != [0, 0]}


class EventHasher:
    """Order-sensitive 64-bit rolling hash of the event stream.

    Cheap enough to leave attached during large replays; two replays are
    event-identical iff their digests match.
    """

    _MASK = (1 << 64) - 1

    def __init__(self):
        self.digest = 0xCBF29CE484222325
        self.count = 0

    def emit(self, kind: str, u: int, v: int, payload=None) -> None:
        h = self.digest
        h = (h ^ _KIND_CODES[kind]) * 0x100000001B3 & self._MASK
        h = (h ^ (u + 1)) * 0x100000001B3 & self._MASK
        h = (h ^ (v + 1)) * 0x100000001B3 & self._MASK
        if payload is not None:
            h = (h ^ (payload + 3)) * 0x100000001B3 & self._MASK
        self.digest = h
        self.count += 1
