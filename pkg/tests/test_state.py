"""Ring mechanics, bucket moves, structural audits, event reconstruction."""

import pytest

from dynorient import (
    CorruptionError,
    EventRecorder,
    OrientationConfig,
    OrientationStack,
)
from dynorient.oracles import audit_state

from conftest import Fuzzer


def _stack32():
    return OrientationStack(OrientationConfig.simple_additive(32))


def _bump_degree(stack, v, aux):
    """Give v out-degree 1 via a fresh helper (tie routes the first arg)."""
    stack.insert(v, next(aux))


def _ring_of_three(stack):
    """Vertex 0 with out-ring [1, 2, 3] in insertion order, no flips.

    Hub degrees (1, 1, 2) keep the additive guard quiet while vertex 0
    climbs to out-degree 3, and the lower-degree tie rule keeps routing
    vertex 0 as the tail.
    """
    aux = iter(range(10, 32))
    for h in (1, 2, 3):
        _bump_degree(stack, h, aux)
    _bump_degree(stack, 4, aux)
    stack.insert(3, 4)  # hub 3 reaches out-degree 2
    for h in (1, 2, 3):
        stack.insert(0, h)
    assert stack.engine.out_deg[0] == 3
    assert stack.engine.last_copy_flips == 0


def test_round_robin_take_basic_order():
    stack = _stack32()
    _ring_of_three(stack)
    engine = stack.engine
    assert engine.round_robin_take(0, 2) == [1, 2]
    # cursor now at 3; a take of two wraps circularly
    assert engine.round_robin_take(0, 2) == [3, 1]
    # ring shorter than the request: each entry visited at most once
    assert engine.round_robin_take(0, 5) == [2, 3, 1]


def test_round_robin_take_single_entry():
    stack = _stack32()
    aux = iter(range(10, 32))
    _bump_degree(stack, 1, aux)
    stack.insert(0, 1)
    assert stack.engine.round_robin_take(0, 5) == [1]


def test_round_robin_take_empty():
    stack = _stack32()
    assert stack.engine.round_robin_take(5, 3) == []


def test_new_entry_visited_before_cursor_completes_its_round():
    stack = _stack32()
    aux = iter(range(10, 32))
    for h in (1, 2):
        _bump_degree(stack, h, aux)
    # vertex 3 needs out-degree 2 so the third edge still routes out of 0
    _bump_degree(stack, 3, aux)
    _bump_degree(stack, 4, aux)
    stack.insert(3, 4)
    assert stack.engine.out_deg[3] == 2

    stack.insert(0, 1)
    stack.insert(0, 2)
    engine = stack.engine
    assert engine.round_robin_take(0, 1) == [1]  # cursor parked at 2
    stack.insert(0, 3)  # enters the ring immediately before the cursor
    assert engine.out_deg[0] == 3
    # the full round from the cursor reaches the newcomer last, and before
    # the cursor returns to where it rested when the entry was added
    assert engine.round_robin_take(0, 3) == [2, 1, 3]


class TestMoveBucket:
    def _entry(self, stack):
        engine = stack.engine
        return next(e for v in range(stack.cfg.capacity)
                    for e in engine.out_entries(v))

    def test_same_bucket_updates_value_only(self):
        stack = OrientationStack(OrientationConfig.fast_additive(16))
        stack.insert(0, 1)
        engine = stack.engine
        eid = self._entry(stack)
        node_before = engine.e_bnode[eid]
        engine.move_bucket(eid, engine.e_perc[eid])
        assert engine.e_bnode[eid] == node_before

    def test_cross_bucket_move_and_sentinel(self):
        stack = OrientationStack(OrientationConfig.fast_additive(16))
        stack.insert(0, 1)
        engine = stack.engine
        eid = self._entry(stack)
        head = engine.e_head[eid]
        engine.move_bucket(eid, 50)
        assert engine.bn_key[engine.e_bnode[eid]] == stack.cfg.bucket_index(50)
        engine.move_bucket(eid, 0)  # degenerate degree: sentinel bucket
        assert engine.bn_key[engine.e_bnode[eid]] == -1
        assert engine.top_bucket[head] >= 0

    def test_geometric_refresh_moves_few_buckets(self):
        # A perceived value growing by at most the bucket base crosses O(1)
        # boundaries, which is what keeps refresh splices constant-time.
        from fractions import Fraction

        cfg = OrientationConfig(capacity=1200, eta=Fraction(16, 5), b=5,
                                gamma=1, theta=1)  # bucket base 1.01
        base = 1 + cfg.slack / 64
        # Degrees large enough that one bucket spans at least one integer;
        # below that, integer steps hop across empty buckets and the splice
        # walk skips them (only nonempty buckets are linked).
        for p in (120, 500, 2500):
            bumped = -((-p * base.numerator) // base.denominator)
            assert cfg.bucket_index(bumped) - cfg.bucket_index(p) <= 2

    def test_detached_entry_is_corruption(self):
        stack = OrientationStack(OrientationConfig.fast_additive(16))
        stack.insert(0, 1)
        engine = stack.engine
        eid = self._entry(stack)
        engine._bucket_detach(engine.e_head[eid], eid)
        with pytest.raises(CorruptionError):
            engine.move_bucket(eid, 3)


def test_full_state_audit_clean_after_fuzz(any_preset_cfg):
    stack = OrientationStack(any_preset_cfg)
    Fuzzer(stack, seed=42).run(350)
    assert audit_state(stack) == []


def test_event_stream_reconstructs_copy_counts():
    rec = EventRecorder()
    cfg = OrientationConfig.fast_multiplicative(24)
    stack = OrientationStack(cfg, recorder=rec)
    Fuzzer(stack, seed=7).run(120)
    counts = rec.replay_counts()
    engine = stack.engine
    live = {(a, b): engine.copy_counts(a, b) for a, b in engine.edges()}
    assert counts == live


def test_insert_and_delete_return_their_events():
    rec = EventRecorder()
    cfg = OrientationConfig.fast_additive(8)
    stack = OrientationStack(cfg, recorder=rec)
    evs = stack.insert(0, 1)
    kinds = [e.kind for e in evs]
    assert kinds.count("copy_added") == cfg.b
    assert kinds[-1] == "simple_inserted"
    evs = stack.delete(0, 1)
    kinds = [e.kind for e in evs]
    assert kinds[0] == "simple_deleted"
    assert kinds.count("copy_removed") == cfg.b
