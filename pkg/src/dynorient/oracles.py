"""Exact ground truth at desk scale for everything the engines approximate.

* ``exact_density``: maximum over nonempty S of |E[S]|/|S|, by binary search
  over candidate rationals with an integral max-flow feasibility network
  (source -> edge nodes -> endpoints -> sink).  Feasibility of p/q is tested
  with capacities scaled by q, so every comparison is exact.  Distinct
  subgraph densities differ by more than 1/(n(n-1)); once the search
  interval is narrower than that, the answer is the unique rational with
  denominator <= n inside it, and the min cut just below it yields a
  witness set of exactly that density.
* ``exact_min_max_outdegree``: least k admitting an orientation with all
  out-degrees <= k, same network with integer capacities; the integral flow
  is the witness orientation.  Picard-Queyranne duality makes this
  ceil(exact_density), which the acceptance suite cross-checks.
* ``exact_density_enum`` / ``exact_arboricity``: full subset enumeration
  with an O(2^n) shared edge-count table; cross-checks the flow oracle and
  anchors the arboricity-based bounds.
* ``audit_state``: recomputes every layer's invariants from scratch.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .errors import OracleLimitError

FLOW_LIMIT_DEFAULT = 60
ENUM_LIMIT = 20


class _Dinic:
    """Integral max-flow on a small static network."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        adj = self.adj
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for e in adj[u]:
                    if e[1] > 0 and level[e[0]] < 0:
                        level[e[0]] = level[u] + 1
                        queue.append(e[0])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(adj[u]):
                    e = adj[u][it[u]]
                    v = e[0]
                    if e[1] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, e[1]))
                        if got:
                            e[1] -= got
                            adj[v][e[2]][1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if not pushed:
                    break
                flow += pushed

    def source_side(self, s: int) -> set:
        """Vertices reachable from s in the residual network."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                if e[1] > 0 and e[0] not in seen:
                    seen.add(e[0])
                    queue.append(e[0])
        return seen


def _orientation_network(n: int, edges, p: int, q: int) -> _Dinic:
    # source 0, edge nodes 1..m, vertices m+1..m+n, sink m+n+1.
    m = len(edges)
    net = _Dinic(m + n + 2)
    t = m + n + 1
    for i, (u, v) in enumerate(edges):
        net.add_edge(0, 1 + i, q)
        net.add_edge(1 + i, 1 + m + u, 2 * q)
        net.add_edge(1 + i, 1 + m + v, 2 * q)
    for v in range(n):
        net.add_edge(1 + m + v, t, p)
    return net


def _density_feasible(n: int, edges, g: Fraction):
    """Does an orientation with every fractional out-degree <= g exist?

    Equivalent to |E[S]| <= g|S| for all S (Hakimi).  Returns (feasible,
    network after max-flow) so callers can read the min cut.
    """
    p, q = g.numerator, g.denominator
    net = _orientation_network(n, edges, p, q)
    full = len(edges) * q
    flow = net.max_flow(0, len(edges) + n + 1)
    return flow == full, net


def exact_density(n: int, edges, limit: int = FLOW_LIMIT_DEFAULT):
    """Maximum subgraph density with a witness set.

    Returns (rho, witness) where rho = max over nonempty S of |E[S]|/|S| as
    an exact Fraction and witness is a vertex list realizing it (empty for
    an edgeless graph).
    """
    if n > limit:
        raise OracleLimitError(
            f"flow density oracle capped at n <= {limit}, got {n}")
    edges = list(edges)
    m = len(edges)
    if m == 0:
        return Fraction(0), []
    lo = Fraction(0)             # infeasible (any edge forces density > 0)
    hi = Fraction(m)             # feasible
    gap = Fraction(1, n * n)     # below the spacing of distinct densities
    while hi - lo > gap:
        mid = (lo + hi) / 2
        feasible, _ = _density_feasible(n, edges, mid)
        if feasible:
            hi = mid
        else:
            lo = mid
    # rho is the unique candidate p/q, q <= n, inside (lo, hi].
    rho = None
    for q in range(1, n + 1):
        p = (hi.numerator * q) // hi.denominator
        cand = Fraction(p, q)
        if cand > lo and (rho is None or cand > rho):
            rho = cand
    if rho is None:
        raise AssertionError("density search interval lost its candidate")
    feasible, _ = _density_feasible(n, edges, rho)
    if not feasible:
        raise AssertionError(f"candidate density {rho} is not feasible")
    # Min cut just below rho: its source side is a densest subgraph.
    probe = rho - Fraction(1, 2 * n * n)
    feasible, net = _density_feasible(n, edges, probe)
    if feasible:
        raise AssertionError(f"density {rho} not tight from below")
    side = net.source_side(0)
    witness = sorted(v for v in range(n) if (1 + m + v) in side)
    got = subgraph_density(witness, edges)
    if got != rho:
        raise AssertionError(f"witness density {got} != computed rho {rho}")
    return rho, witness


def subgraph_density(vertices, edges) -> Fraction:
    """|E[S]|/|S| for a vertex list S (0 for empty S)."""
    s = set(vertices)
    if not s:
        return Fraction(0)
    inside = sum(1 for u, v in edges if u in s and v in s)
    return Fraction(inside, len(s))


def exact_min_max_outdegree(n: int, edges, limit: int = FLOW_LIMIT_DEFAULT):
    """Smallest k orientable with all out-degrees <= k, plus a witness.

    Returns (k, orientation) with orientation a list of (tail, head) pairs
    covering every edge.
    """
    if n > limit:
        raise OracleLimitError(
            f"flow orientation oracle capped at n <= {limit}, got {n}")
    edges = list(edges)
    m = len(edges)
    if m == 0:
        return 0, []
    lo, hi = 0, m  # lo infeasible once lo=0 with m>0; hi always feasible
    while hi - lo > 1:
        mid = (lo + hi) // 2
        feasible, _ = _density_feasible(n, edges, Fraction(mid))
        if feasible:
            hi = mid
        else:
            lo = mid
    k = hi
    _, net = _density_feasible(n, edges, Fraction(k))
    orientation = []
    for i, (u, v) in enumerate(edges):
        # The edge node's unit went to exactly one endpoint: that endpoint
        # pays sink capacity, i.e. it is the tail.
        tail = None
        for arc in net.adj[1 + i]:
            if arc[0] == 1 + m + u and arc[1] < 2:
                tail = u
                break
            if arc[0] == 1 + m + v and arc[1] < 2:
                tail = v
                break
        if tail is None:
            raise AssertionError("orientation witness extraction failed")
        orientation.append((tail, v if tail == u else u))
    counts = [0] * n
    for tail, _ in orientation:
        counts[tail] += 1
    if max(counts) > k:
        raise AssertionError("witness orientation exceeds k")
    return k, orientation


def _subset_edge_counts(n: int, edges) -> list[int]:
    """count[S] = number of edges inside vertex-bitmask S, for all S."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    count = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        count[s] = count[rest] + (adj[low] & rest).bit_count()
    return count


def exact_density_enum(n: int, edges):
    """Subset-enumeration density oracle (n <= 20); cross-checks the flow."""
    if n > ENUM_LIMIT:
        raise OracleLimitError(
            f"enumeration oracle capped at n <= {ENUM_LIMIT}, got {n}")
    edges = list(edges)
    if not edges:
        return Fraction(0)
    count = _subset_edge_counts(n, edges)
    best = Fraction(0)
    for s in range(1, 1 << n):
        c = count[s]
        if c:
            d = Fraction(c, s.bit_count())
            if d > best:
                best = d
    return best


def exact_arboricity(n: int, edges) -> int:
    """max over subgraphs H (|V(H)| >= 2) of ceil(|E(H)|/(|V(H)|-1))."""
    if n > ENUM_LIMIT:
        raise OracleLimitError(
            f"enumeration oracle capped at n <= {ENUM_LIMIT}, got {n}")
    edges = list(edges)
    if not edges:
        return 0
    count = _subset_edge_counts(n, edges)
    best = 0
    for s in range(1, 1 << n):
        k = s.bit_count()
        if k >= 2:
            c = count[s]
            if c:
                a = -(-c // (k - 1))
                if a > best:
                    best = a
    return best


def audit_state(stack) -> list[str]:
    """Recompute every layer's invariants from scratch.

    Violations are returned as data (expected empty), never raised.
    """
    engine = stack.engine
    bad = []
    bad += engine.structural_violations()
    bad += engine.invariant_violations()
    bad += stack.rounding.violations(engine)
    bad += stack.tracker.violations(engine)
    for app in stack.attached_apps():
        bad += app.violations(engine)
    return bad
