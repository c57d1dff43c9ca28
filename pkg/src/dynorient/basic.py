"""Exact-degree orientation engine.

Maintains the local invariant d+(u) <= (1 + eta/b) * d+(v) + 2*theta over
every directed copy u->v by greedy flip chains.  Insertion routes the new
copy and, while the chain head would violate the invariant against its
minimum-degree out-neighbor, flips that edge and carries the +1 pulse
onward; deletion symmetrically walks toward the maximum-degree in-neighbor
read off the bucket heads.

In-buckets here are keyed by the exact out-degree of the in-neighbor, so
every degree change re-files the vertex in all of its out-neighbors'
bucket lists.

A flip only happens when it strictly advances the chain (insert: toward a
smaller degree, delete: toward a larger one).  The guards already imply
this whenever every non-isolated vertex holds its steady-state share of
copies; the explicit check suppresses flip ping-pong in the brief
low-degree windows while an edge's b copies are being placed or drained,
where no orientation can satisfy the multiplicative invariant at all.
Suppressions are counted on the engine.
"""

from __future__ import annotations

from . import events as ev
from .state import EngineCore


class BasicEngine(EngineCore):

    fast_mode = False

    def _insert_copy(self, t: int, h: int) -> None:
        cfg = self.cfg
        g_lhs = cfg._g_lhs
        g_rhs = cfg._g_rhs
        g_add = cfg._g_add
        out_deg = self.out_deg
        e_head = self.e_head
        rn_next = self.rn_next
        rec = self.recorder
        flip_half = False
        chain = 0
        while True:
            self._add_copy(t, h, flip_half)
            dt = out_deg[t]
            # x <- argmin d+ over N+(t); first hit in ring order wins ties.
            sz = self.out_sz[t]
            best = -1
            best_d = 0
            e = self.cursor[t]
            for _ in range(sz):
                d = out_deg[e_head[e]]
                if best < 0 or d < best_d:
                    best = e
                    best_d = d
                e = rn_next[e]
            self.last_scan += sz
            if best >= 0 and (dt + 1) * g_lhs > g_rhs * best_d + g_add:
                if best_d < dt:
                    x = e_head[best]
                    self._remove_copy(best, flip_half=True)
                    if rec is not None:
                        rec.emit(ev.COPY_FLIPPED, t, x)
                    self.last_copy_flips += 1
                    self.total_copy_flips += 1
                    chain += 1
                    if self.audit_hooks:
                        self._audit_critical_ineq(t, x)
                    t, h = x, t
                    flip_half = True
                    continue
                self.last_suppressed += 1
                self.total_suppressed += 1
            # No violation: commit the increment and re-file t in every
            # out-neighbor's bucket list.
            self._degree_change(t, dt + 1)
            e = self.cursor[t]
            for _ in range(self.out_sz[t]):
                self.move_bucket(e, dt + 1)
                e = rn_next[e]
            break
        if chain > self.last_chain:
            self.last_chain = chain

    def _delete_copy(self, ent: int) -> None:
        cfg = self.cfg
        g_lhs = cfg._g_lhs
        g_rhs = cfg._g_rhs
        g_add = cfg._g_add
        out_deg = self.out_deg
        u = self.e_tail[ent]
        self._remove_copy(ent, flip_half=False)
        rn_next = self.rn_next
        chain = 0
        while True:
            x_ent = self.first_in_entry(u)
            if x_ent >= 0:
                du = out_deg[u]
                dx = self.e_perc[x_ent]  # exact in this engine
                if dx * g_lhs > g_rhs * (du - 1) + g_add:
                    x = self.e_tail[x_ent]
                    if out_deg[x] > du:
                        self._flip_copy(x_ent)
                        chain += 1
                        u = x
                        continue
                    self.last_suppressed += 1
                    self.total_suppressed += 1
            d = out_deg[u] - 1
            self._degree_change(u, d)
            e = self.cursor[u]
            for _ in range(self.out_sz[u]):
                self.move_bucket(e, d)
                e = rn_next[e]
            break
        if chain > self.last_chain:
            self.last_chain = chain
