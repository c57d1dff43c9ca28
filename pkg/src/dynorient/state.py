"""Shared multigraph state and the engine core both orientation engines build on.

The maintained object is an orientation of G^b, the input graph with every
edge duplicated b times.  Copies between the same ordered vertex pair are
interchangeable, so the adjacency stores one *entry* per directed neighbor
pair carrying a copy count; copy-level operations (insert, remove, flip one
copy) act on the counts.  Each entry lives in two intrusive structures:

* the tail's circular *out-ring* (the round-robin order in which the tail
  notifies out-neighbors of its degree), and
* one of the head's *in-buckets*, a doubly-linked chain of buckets sorted by
  key descending, so the head can read off its in-neighbor with the largest
  (exact or perceived) out-degree in O(1).

Everything is flat parallel lists indexed by small integer ids; these are the
hottest loops in the package.
"""

from __future__ import annotations

from .config import OrientationConfig
from . import events as ev
from .errors import (
    CorruptionError,
    DuplicateEdgeError,
    GraphUpdateError,
    MissingEdgeError,
)


class EngineCore:
    """State plus the update drivers shared by the basic and fast engines.

    Subclasses provide ``_insert_copy`` (route one new copy, restoring the
    invariant via a flip chain) and ``_delete_copy`` (remove one copy and run
    the deletion cascade).  The core owns the pair registry, the ring/bucket
    mechanics, event emission, and the per-update counters.
    """

    #: True when in-buckets are keyed by the geometric index of a perceived
    #: degree; False when keyed by the exact out-degree itself.
    fast_mode = False

    def __init__(self, cfg: OrientationConfig):
        n = cfg.capacity
        self.cfg = cfg
        self.n = n
        self.b = cfg.b

        self.out_deg = [0] * n
        self.out_sz = [0] * n          # ring length = distinct out-neighbors
        self.cursor = [-1] * n         # round-robin position (entry id)
        self.top_bucket = [-1] * n     # bucket node with the largest key
        self.bmap = [dict() for _ in range(n)]  # key -> bucket node id

        # Directed adjacency entries (one per ordered pair with copies).
        self.e_tail: list[int] = []
        self.e_head: list[int] = []
        self.e_cnt: list[int] = []
        self.rn_next: list[int] = []   # ring links at the tail
        self.rn_prev: list[int] = []
        self.bk_next: list[int] = []   # sibling links inside a bucket
        self.bk_prev: list[int] = []
        self.e_bnode: list[int] = []   # bucket node holding this entry
        self.e_perc: list[int] = []    # tail out-degree as recorded at the head
        self._e_free: list[int] = []

        # Bucket nodes, chained per head vertex by key descending.
        self.bn_key: list[int] = []
        self.bn_prev: list[int] = []
        self.bn_next: list[int] = []
        self.bn_head: list[int] = []   # first entry in the bucket
        self._bn_free: list[int] = []

        # Pair registry: key = a*n + b with a < b.
        self.pairs: dict[int, int] = {}
        self.p_a: list[int] = []
        self.p_b: list[int] = []
        self.p_eab: list[int] = []     # entry id for a->b copies, -1 if none
        self.p_eba: list[int] = []
        self._p_free: list[int] = []

        self.m_simple = 0

        # Listeners (all optional; see rounding/density modules).
        self.rounding = None
        self.degree_listener = None
        self.recorder = None

        # Per-update and cumulative instrumentation.
        self.updates = 0
        self.last_copy_flips = 0
        self.last_chain = 0
        self.last_suppressed = 0
        self.last_scan = 0
        self.total_copy_flips = 0
        self.total_suppressed = 0
        self.audit_hooks = False

    # ------------------------------------------------------------------
    # Public update surface.
    # ------------------------------------------------------------------

    def insert(self, u: int, v: int) -> list:
        """Insert simple edge {u, v}: b copies, each routed to the endpoint
        with the smaller current out-degree (ties toward u), with the
        invariant restored by the engine's flip chain after each copy.

        Returns the slice of recorded events when a recorder is attached.
        """
        self._check_pair(u, v)
        a, c = (u, v) if u < v else (v, u)
        key = a * self.n + c
        if key in self.pairs:
            raise DuplicateEdgeError(f"edge ({u}, {v}) already present")
        mark = self._mark()
        pid = self._pair_alloc(a, c)
        self._reset_op_counters()
        out_deg = self.out_deg
        for _ in range(self.b):
            if out_deg[u] <= out_deg[v]:
                self._insert_copy(u, v)
            else:
                self._insert_copy(v, u)
        self.m_simple += 1
        self.updates += 1
        rec = self.recorder
        if rec is not None:
            rec.emit(ev.SIMPLE_INSERTED, a, c)
        if self.rounding is not None:
            eab, eba = self.p_eab[pid], self.p_eba[pid]
            cab = self.e_cnt[eab] if eab >= 0 else 0
            cba = self.e_cnt[eba] if eba >= 0 else 0
            self.rounding.simple_inserted(a, c, cab, cba)
        return self._since(mark)

    def delete(self, u: int, v: int) -> list:
        """Delete simple edge {u, v}: drain its b copies one at a time,
        running the deletion cascade after each removal.

        Each removed copy is taken out of the endpoint with the larger
        current out-degree (ties toward u), falling back to the opposite
        direction when that side has no copies left.
        """
        self._check_pair(u, v)
        a, c = (u, v) if u < v else (v, u)
        key = a * self.n + c
        pid = self.pairs.get(key, -1)
        if pid < 0:
            raise MissingEdgeError(f"edge ({u}, {v}) not present")
        mark = self._mark()
        self._reset_op_counters()
        rec = self.recorder
        if rec is not None:
            rec.emit(ev.SIMPLE_DELETED, a, c)
        if self.rounding is not None:
            self.rounding.simple_deleted(a, c)
        out_deg = self.out_deg
        e_cnt = self.e_cnt
        for _ in range(self.b):
            t = u if out_deg[u] >= out_deg[v] else v
            ent = self._dir_entry(pid, t)
            if ent < 0 or e_cnt[ent] == 0:
                t = v if t == u else u
                ent = self._dir_entry(pid, t)
            if ent < 0:
                raise CorruptionError("pair drained early")
            self._delete_copy(ent)
        if self.p_eab[pid] >= 0 or self.p_eba[pid] >= 0:
            raise CorruptionError("copies survived a simple-edge drain")
        self._pair_free(pid, key)
        self.m_simple -= 1
        self.updates += 1
        return self._since(mark)

    def has_edge(self, u: int, v: int) -> bool:
        a, c = (u, v) if u < v else (v, u)
        return (a * self.n + c) in self.pairs

    def edges(self):
        """Live simple edges as (a, b) with a < b, insertion-ordered."""
        for pid in self.pairs.values():
            yield self.p_a[pid], self.p_b[pid]

    def copy_counts(self, u: int, v: int) -> tuple:
        """(copies u->v, copies v->u) for a live pair."""
        a, c = (u, v) if u < v else (v, u)
        pid = self.pairs.get(a * self.n + c, -1)
        if pid < 0:
            raise MissingEdgeError(f"edge ({u}, {v}) not present")
        eab, eba = self.p_eab[pid], self.p_eba[pid]
        cab = self.e_cnt[eab] if eab >= 0 else 0
        cba = self.e_cnt[eba] if eba >= 0 else 0
        return (cab, cba) if u == a else (cba, cab)

    def max_out_degree(self) -> int:
        """Max out-degree in the oriented multigraph, by scan.  The density
        layer tracks this incrementally; this is the slow audit path."""
        return max(self.out_deg, default=0)

    # ------------------------------------------------------------------
    # Round-robin ring mechanics.
    # ------------------------------------------------------------------

    def round_robin_take(self, u: int, k: int) -> list[int]:
        """Advance u's cursor past min(k, ring size) out-neighbor entries and
        return the head vertices visited, in ring order.

        New out-neighbors enter the ring immediately before the cursor, so
        anything added after the cursor last passed a position is visited
        before the cursor comes back around to that position.
        """
        sz = self.out_sz[u]
        if sz == 0:
            return []
        rn_next = self.rn_next
        e_head = self.e_head
        e = self.cursor[u]
        out = []
        for _ in range(min(k, sz)):
            out.append(e_head[e])
            e = rn_next[e]
        self.cursor[u] = e
        return out

    def _ring_insert(self, eid: int, u: int) -> None:
        cur = self.cursor[u]
        if cur < 0:
            self.rn_next[eid] = eid
            self.rn_prev[eid] = eid
            self.cursor[u] = eid
        else:
            prev = self.rn_prev[cur]
            self.rn_next[prev] = eid
            self.rn_prev[eid] = prev
            self.rn_next[eid] = cur
            self.rn_prev[cur] = eid
        self.out_sz[u] += 1

    def _ring_remove(self, eid: int, u: int) -> None:
        sz = self.out_sz[u]
        if sz == 1:
            self.cursor[u] = -1
        else:
            nxt = self.rn_next[eid]
            prv = self.rn_prev[eid]
            self.rn_next[prv] = nxt
            self.rn_prev[nxt] = prv
            if self.cursor[u] == eid:
                self.cursor[u] = nxt
        self.out_sz[u] = sz - 1

    # ------------------------------------------------------------------
    # In-bucket mechanics.
    # ------------------------------------------------------------------

    def _bucket_key(self, perceived: int) -> int:
        if self.fast_mode:
            return self.cfg.bucket_index(perceived)
        return perceived

    def _bn_alloc(self, key: int) -> int:
        free = self._bn_free
        if free:
            bn = free.pop()
            self.bn_key[bn] = key
            self.bn_head[bn] = -1
        else:
            bn = len(self.bn_key)
            self.bn_key.append(key)
            self.bn_prev.append(-1)
            self.bn_next.append(-1)
            self.bn_head.append(-1)
        return bn

    def _bucket_attach(self, v: int, eid: int, perceived: int) -> None:
        """Place entry eid (an in-neighbor record of v) by its key."""
        self.e_perc[eid] = perceived
        key = self._bucket_key(perceived)
        bn = self.bmap[v].get(key, -1)
        if bn < 0:
            bn = self._bn_alloc(key)
            self.bmap[v][key] = bn
            # Walk the descending chain from the top to the slot for `key`.
            top = self.top_bucket[v]
            if top < 0 or self.bn_key[top] < key:
                self.bn_prev[bn] = -1
                self.bn_next[bn] = top
                if top >= 0:
                    self.bn_prev[top] = bn
                self.top_bucket[v] = bn
            else:
                p = top
                bn_next = self.bn_next
                bn_key = self.bn_key
                while bn_next[p] >= 0 and bn_key[bn_next[p]] > key:
                    p = bn_next[p]
                nxt = bn_next[p]
                bn_next[p] = bn
                self.bn_prev[bn] = p
                self.bn_next[bn] = nxt
                if nxt >= 0:
                    self.bn_prev[nxt] = bn
        head = self.bn_head[bn]
        self.bk_prev[eid] = -1
        self.bk_next[eid] = head
        if head >= 0:
            self.bk_prev[head] = eid
        self.bn_head[bn] = eid
        self.e_bnode[eid] = bn

    def _bucket_detach(self, v: int, eid: int) -> None:
        bn = self.e_bnode[eid]
        if bn < 0:
            raise CorruptionError("entry not present in any bucket")
        nxt = self.bk_next[eid]
        prv = self.bk_prev[eid]
        if prv >= 0:
            self.bk_next[prv] = nxt
        else:
            self.bn_head[bn] = nxt
        if nxt >= 0:
            self.bk_prev[nxt] = prv
        self.e_bnode[eid] = -1
        if self.bn_head[bn] < 0:
            # Bucket emptied: unlink the node from the chain.
            bp = self.bn_prev[bn]
            bq = self.bn_next[bn]
            if bp >= 0:
                self.bn_next[bp] = bq
            else:
                self.top_bucket[v] = bq
            if bq >= 0:
                self.bn_prev[bq] = bp
            del self.bmap[v][self.bn_key[bn]]
            self._bn_free.append(bn)

    def move_bucket(self, eid: int, new_perceived: int) -> None:
        """Re-key an in-neighbor entry after its recorded degree changed.

        Same-bucket moves only store the value.  Cross-bucket moves locate
        the target relative to the entry's current bucket, so the common
        adjacent-bucket move costs O(1) splices.
        """
        bn = self.e_bnode[eid]
        if bn < 0:
            raise CorruptionError("move_bucket on an unattached entry")
        bn_key = self.bn_key
        old_key = bn_key[bn]
        new_key = self._bucket_key(new_perceived)
        if new_key == old_key:
            self.e_perc[eid] = new_perceived
            return
        v = self.e_head[eid]
        target = self.bmap[v].get(new_key, -1)
        if target < 0:
            # Splice a fresh bucket node next to the current one before the
            # detach below can recycle it.
            bn_prev = self.bn_prev
            bn_next = self.bn_next
            if new_key > old_key:
                p = bn
                while bn_prev[p] >= 0 and bn_key[bn_prev[p]] < new_key:
                    p = bn_prev[p]
                above, below = bn_prev[p], p
            else:
                p = bn
                while bn_next[p] >= 0 and bn_key[bn_next[p]] > new_key:
                    p = bn_next[p]
                above, below = p, bn_next[p]
            target = self._bn_alloc(new_key)
            self.bmap[v][new_key] = target
            self.bn_prev[target] = above
            self.bn_next[target] = below
            if above >= 0:
                self.bn_next[above] = target
            else:
                self.top_bucket[v] = target
            if below >= 0:
                self.bn_prev[below] = target
        self._bucket_detach(v, eid)
        head = self.bn_head[target]
        self.bk_prev[eid] = -1
        self.bk_next[eid] = head
        if head >= 0:
            self.bk_prev[head] = eid
        self.bn_head[target] = eid
        self.e_bnode[eid] = target
        self.e_perc[eid] = new_perceived

    def first_in_entry(self, v: int) -> int:
        """Entry id of v's in-neighbor with the largest bucket key, or -1."""
        top = self.top_bucket[v]
        return self.bn_head[top] if top >= 0 else -1

    def in_entries(self, v: int):
        """All in-neighbor entries of v, bucket order (key descending)."""
        bn = self.top_bucket[v]
        while bn >= 0:
            e = self.bn_head[bn]
            while e >= 0:
                yield e
                e = self.bk_next[e]
            bn = self.bn_next[bn]

    def out_entries(self, u: int):
        """All out-neighbor entries of u in ring order from the cursor."""
        e = self.cursor[u]
        for _ in range(self.out_sz[u]):
            yield e
            e = self.rn_next[e]

    # ------------------------------------------------------------------
    # Copy-level primitives (entry/count manipulation plus events).
    # ------------------------------------------------------------------

    def _dir_entry(self, pid: int, tail: int) -> int:
        return self.p_eab[pid] if tail == self.p_a[pid] else self.p_eba[pid]

    def _set_dir_entry(self, pid: int, tail: int, eid: int) -> None:
        if tail == self.p_a[pid]:
            self.p_eab[pid] = eid
        else:
            self.p_eba[pid] = eid

    def _add_copy(self, t: int, h: int, flip_half: bool) -> int:
        """Add one copy t->h.  Returns the entry now holding it."""
        n = self.n
        a, c = (t, h) if t < h else (h, t)
        pid = self.pairs[a * n + c]
        eid = self._dir_entry(pid, t)
        dt = self.out_deg[t]
        if eid < 0:
            free = self._e_free
            if free:
                eid = free.pop()
                self.e_tail[eid] = t
                self.e_head[eid] = h
                self.e_cnt[eid] = 1
            else:
                eid = len(self.e_tail)
                self.e_tail.append(t)
                self.e_head.append(h)
                self.e_cnt.append(1)
                self.rn_next.append(-1)
                self.rn_prev.append(-1)
                self.bk_next.append(-1)
                self.bk_prev.append(-1)
                self.e_bnode.append(-1)
                self.e_perc.append(0)
            self._set_dir_entry(pid, t, eid)
            self._ring_insert(eid, t)
            self._bucket_attach(h, eid, dt)
        else:
            self.e_cnt[eid] += 1
            # A copy joining an existing group refreshes its recorded degree.
            if self.e_perc[eid] != dt:
                self.move_bucket(eid, dt)
        if not flip_half:
            rec = self.recorder
            if rec is not None:
                rec.emit(ev.COPY_ADDED, t, h)
        if self.rounding is not None:
            self._notify_counts(pid)
        return eid

    def _remove_copy(self, eid: int, flip_half: bool) -> None:
        """Remove one copy held by entry eid."""
        t = self.e_tail[eid]
        h = self.e_head[eid]
        a, c = (t, h) if t < h else (h, t)
        pid = self.pairs[a * self.n + c]
        cnt = self.e_cnt[eid]
        if cnt == 1:
            self._ring_remove(eid, t)
            self._bucket_detach(h, eid)
            self._set_dir_entry(pid, t, -1)
            self.e_cnt[eid] = 0
            self._e_free.append(eid)
        else:
            self.e_cnt[eid] = cnt - 1
        if not flip_half:
            rec = self.recorder
            if rec is not None:
                rec.emit(ev.COPY_REMOVED, t, h)
        if self.rounding is not None:
            self._notify_counts(pid)

    def _flip_copy(self, eid: int) -> None:
        """Reverse one copy held by entry eid (t->h becomes h->t)."""
        t = self.e_tail[eid]
        h = self.e_head[eid]
        self._remove_copy(eid, flip_half=True)
        self._add_copy(h, t, flip_half=True)
        rec = self.recorder
        if rec is not None:
            rec.emit(ev.COPY_FLIPPED, t, h)
        self.last_copy_flips += 1
        self.total_copy_flips += 1
        if self.audit_hooks:
            self._audit_critical_ineq(t, h)

    def _notify_counts(self, pid: int) -> None:
        eab, eba = self.p_eab[pid], self.p_eba[pid]
        cab = self.e_cnt[eab] if eab >= 0 else 0
        cba = self.e_cnt[eba] if eba >= 0 else 0
        self.rounding.counts_changed(self.p_a[pid], self.p_b[pid], cab, cba)

    def _degree_change(self, u: int, d: int) -> None:
        self.out_deg[u] = d
        dl = self.degree_listener
        if dl is not None:
            dl.degree_changed(u, d)
        rec = self.recorder
        if rec is not None:
            rec.emit(ev.OUT_DEGREE_CHANGED, u, u, d)

    # ------------------------------------------------------------------
    # Pair registry plumbing.
    # ------------------------------------------------------------------

    def _pair_alloc(self, a: int, b: int) -> int:
        free = self._p_free
        if free:
            pid = free.pop()
            self.p_a[pid] = a
            self.p_b[pid] = b
            self.p_eab[pid] = -1
            self.p_eba[pid] = -1
        else:
            pid = len(self.p_a)
            self.p_a.append(a)
            self.p_b.append(b)
            self.p_eab.append(-1)
            self.p_eba.append(-1)
        self.pairs[a * self.n + b] = pid
        return pid

    def _pair_free(self, pid: int, key: int) -> None:
        del self.pairs[key]
        self._p_free.append(pid)

    def _check_pair(self, u: int, v: int) -> None:
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise GraphUpdateError(
                f"vertex ids must lie in [0, {n}); got ({u}, {v})")
        if u == v:
            raise GraphUpdateError("self-loops are not supported")

    def _reset_op_counters(self) -> None:
        self.last_copy_flips = 0
        self.last_chain = 0
        self.last_suppressed = 0
        self.last_scan = 0

    def _mark(self) -> int:
        rec = self.recorder
        return len(rec.events) if rec is not None and hasattr(rec, "events") else 0

    def _since(self, mark: int) -> list:
        rec = self.recorder
        if rec is not None and hasattr(rec, "events"):
            return rec.events[mark:]
        return []

    # ------------------------------------------------------------------
    # Engine-specific operations.
    # ------------------------------------------------------------------

    def _insert_copy(self, t: int, h: int) -> None:
        raise NotImplementedError

    def _delete_copy(self, ent: int) -> None:
        raise NotImplementedError

    # ------------------------------------------------------------------
    # Audits.
    # ------------------------------------------------------------------

    def invariant_violations(self, limit: int = 0) -> list[str]:
        """Terminal invariant over every directed copy group:
        d+(tail) <= (1 + eta/b) * d+(head) + 2*theta, exact arithmetic."""
        bad = []
        cfg = self.cfg
        out_deg = self.out_deg
        for pid in self.pairs.values():
            for eid in (self.p_eab[pid], self.p_eba[pid]):
                if eid < 0:
                    continue
                t, h = self.e_tail[eid], self.e_head[eid]
                if not cfg.invariant_ok(out_deg[t], out_deg[h]):
                    bad.append(
                        f"invariant violated on {t}->{h}: "
                        f"d+({t})={out_deg[t]}, d+({h})={out_deg[h]}")
                    if limit and len(bad) >= limit:
                        return bad
        return bad

    def structural_violations(self) -> list[str]:
        """Recompute every structural invariant of the state from scratch."""
        bad = []
        n = self.n
        # Degrees from the pair registry.
        deg = [0] * n
        seen_entries = set()
        for pid in self.pairs.values():
            a, b = self.p_a[pid], self.p_b[pid]
            total = 0
            for eid, tail in ((self.p_eab[pid], a), (self.p_eba[pid], b)):
                if eid < 0:
                    continue
                seen_entries.add(eid)
                cnt = self.e_cnt[eid]
                if cnt <= 0:
                    bad.append(f"entry {eid} live with count {cnt}")
                if self.e_tail[eid] != tail:
                    bad.append(f"entry {eid} tail mismatch")
                deg[tail] += cnt
                total += cnt
            if total != self.b:
                bad.append(f"pair ({a},{b}) holds {total} copies, not b={self.b}")
        for u in range(n):
            if deg[u] != self.out_deg[u]:
                bad.append(f"out_deg[{u}]={self.out_deg[u]} but copies say {deg[u]}")
        # Ring integrity.
        ring_seen = set()
        for u in range(n):
            sz = self.out_sz[u]
            cur = self.cursor[u]
            if sz == 0:
                if cur != -1:
                    bad.append(f"vertex {u}: empty ring with a cursor")
                continue
            if cur < 0:
                bad.append(f"vertex {u}: ring of {sz} without cursor")
                continue
            e = cur
            count = 0
            ok = True
            while count < sz:
                if self.e_tail[e] != u or e not in seen_entries:
                    bad.append(f"vertex {u}: foreign entry {e} in ring")
                    ok = False
                    break
                if e in ring_seen:
                    bad.append(f"entry {e} linked into two rings")
                    ok = False
                    break
                ring_seen.add(e)
                if self.rn_prev[self.rn_next[e]] != e:
                    bad.append(f"vertex {u}: broken ring links at entry {e}")
                    ok = False
                    break
                e = self.rn_next[e]
                count += 1
            if ok and e != cur:
                bad.append(f"vertex {u}: ring does not close after {sz} steps")
        if len(ring_seen) != len(seen_entries):
            bad.append("some live entries are missing from rings")
        # Bucket integrity.
        bucket_seen = set()
        for v in range(n):
            bn = self.top_bucket[v]
            prev_key = None
            prev_bn = -1
            while bn >= 0:
                key = self.bn_key[bn]
                if prev_key is not None and key >= prev_key:
                    bad.append(f"vertex {v}: bucket keys not descending")
                if self.bmap[v].get(key) != bn:
                    bad.append(f"vertex {v}: bucket map mismatch at key {key}")
                if self.bn_prev[bn] != prev_bn:
                    bad.append(f"vertex {v}: bucket chain backlink broken")
                e = self.bn_head[bn]
                if e < 0:
                    bad.append(f"vertex {v}: empty bucket {key} kept alive")
                prev_e = -1
                while e >= 0:
                    if e in bucket_seen:
                        bad.append(f"entry {e} present in two buckets")
                        break
                    bucket_seen.add(e)
                    if self.e_head[e] != v:
                        bad.append(f"vertex {v}: foreign entry {e} in bucket")
                    if self.e_bnode[e] != bn:
                        bad.append(f"entry {e} bucket backlink broken")
                    if self.bk_prev[e] != prev_e:
                        bad.append(f"entry {e} sibling backlink broken")
                    expected = self._bucket_key(self.e_perc[e])
                    if expected != key:
                        bad.append(
                            f"entry {e} in bucket {key}, expected {expected}")
                    prev_e = e
                    e = self.bk_next[e]
                prev_key = key
                prev_bn = bn
                bn = self.bn_next[bn]
            if len(self.bmap[v]) != self._chain_len(v):
                bad.append(f"vertex {v}: bucket map size mismatch")
        if len(bucket_seen) != len(seen_entries):
            bad.append("some live entries are missing from buckets")
        # Recorded degrees: exact in basic mode, exact whenever the ring is
        # narrower than the round-robin width in fast mode.
        rr = self.cfg.rr_width
        for eid in seen_entries:
            t = self.e_tail[eid]
            if not self.fast_mode or self.out_sz[t] <= rr:
                if self.e_perc[eid] != self.out_deg[t]:
                    bad.append(
                        f"entry {eid}: recorded degree {self.e_perc[eid]} "
                        f"!= exact {self.out_deg[t]}")
        return bad

    def _chain_len(self, v: int) -> int:
        cnt = 0
        bn = self.top_bucket[v]
        while bn >= 0:
            cnt += 1
            bn = self.bn_next[bn]
        return cnt

    def _audit_critical_ineq(self, t: int, h: int) -> None:
        """After any reorientation of a copy t->h:
        d+(t) > (1 + slack/4)(d+(h) - 1) + theta(1 - slack/128)."""
        if self.last_suppressed:
            return
        s = self.cfg.slack
        lhs = self.out_deg[t]
        rhs = (1 + s / 4) * (self.out_deg[h] - 1) \
            + self.cfg.theta * (1 - s / 128)
        if not lhs > rhs:
            raise CorruptionError(
                f"critical inequality failed on flip {t}->{h}: "
                f"{lhs} <= {rhs}")
