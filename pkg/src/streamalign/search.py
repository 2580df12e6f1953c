"""Shortest-path search over the product-net state space.

:func:`astar_inc` resumes search from the open and closed sets left behind
by the previous event of the same case: extension never rewires the explored
region, so cost-so-far values stay valid and only the estimates toward the
new goal place need refreshing.  ``eager`` refresh recomputes every open
estimate up front; ``lazy`` refresh marks open states outdated and refreshes
one state at a time when it is popped, skipping its goal test and expansion
for that pop.

The returned goal marking is deliberately left in the open set: the next
extension may grow cheaper continuations through it.

:func:`dijkstra_oracle` is an independent uniform-cost sweep used as a test
oracle; it shares nothing with the A* machinery except the net semantics.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from math import inf

from .alignment import PrefixAlignment, move_cost, reconstruct, verify_prefix_alignment
from .heuristic import estimate
from .petri import Marking, StateSpaceTooLarge, enumerate_state_space, fire
from .spn import SyncProductNet


class SearchExhausted(RuntimeError):
    """Open set ran dry before any goal marking was reached."""


EAGER = "eager"
LAZY = "lazy"


class OpenSet:
    """Priority structure over markings with lazy invalidation.

    Keys order by f ascending, then larger cost-so-far, then the canonical
    marking order, which makes every pop deterministic.  Decrease-key pushes
    a fresh entry and abandons the old one.
    """

    def __init__(self):
        self._heap: list[tuple] = []
        self._live: dict[Marking, tuple] = {}

    def __len__(self) -> int:
        return len(self._live)

    def __contains__(self, marking: Marking) -> bool:
        return marking in self._live

    def markings(self) -> list[Marking]:
        return sorted(self._live, key=lambda m: m.items)

    def key_of(self, marking: Marking) -> tuple:
        return self._live[marking]

    def push(self, marking: Marking, f, g: int) -> None:
        self._live[marking] = (f, g)
        heapq.heappush(self._heap, (f, -g, marking.items, marking))

    def pop(self) -> tuple[Marking, object, int]:
        while self._heap:
            f, neg_g, _, marking = heapq.heappop(self._heap)
            current = self._live.get(marking)
            if current is not None and current == (f, -neg_g):
                del self._live[marking]
                return marking, f, -neg_g
        raise IndexError("pop from an empty open set")


@dataclass
class SearchMetrics:
    queued: int = 0
    visited: int = 0
    lps_solved: int = 0
    heuristic_recomputations: int = 0
    reopened: int = 0
    wall_time: float = 0.0
    h_regressions: list[tuple[Marking, object, object]] = field(default_factory=list)
    expansions: list[Marking] = field(default_factory=list)

    def add_counters(self, other: "SearchMetrics") -> None:
        """Accumulate the numeric counters; per-call lists are not kept."""
        self.queued += other.queued
        self.visited += other.visited
        self.lps_solved += other.lps_solved
        self.heuristic_recomputations += other.heuristic_recomputations
        self.reopened += other.reopened
        self.wall_time += other.wall_time


class SearchCache:
    """Reusable A* state of one case: open, closed, g, predecessors.

    Also keeps the last computed estimate per marking and the set of open
    markings whose estimate predates the latest extension (lazy refresh).
    """

    def __init__(self, root: Marking):
        self.root = root
        self.open = OpenSet()
        self.closed: set[Marking] = set()
        self.g: dict[Marking, int] = {root: 0}
        self.p: dict[Marking, tuple] = {root: (None, None)}
        self.h: dict[Marking, object] = {}
        self.stale: set[Marking] = set()
        self.totals = SearchMetrics()
        self._seed_pending = True
        self.open.push(root, 0, 0)

    @classmethod
    def fresh(cls, spn: SyncProductNet, start: Marking | None = None) -> "SearchCache":
        return cls(start if start is not None else spn.initial)

    def invariants_ok(self) -> bool:
        open_markings = set(self.open.markings())
        if open_markings & self.closed:
            return False
        for m in open_markings | self.closed:
            if m not in self.g:
                return False
            if m != self.root and m not in self.p:
                return False
        if self.g.get(self.root) != 0:
            return False
        # predecessor chains must be acyclic and end at the root sentinel
        for m in open_markings | self.closed:
            seen = set()
            cur = m
            while True:
                if cur in seen:
                    return False
                seen.add(cur)
                t, prev = self.p[cur]
                if t is None:
                    break
                cur = prev
        return True


@dataclass
class SearchOutcome:
    alignment: PrefixAlignment
    cache: SearchCache
    metrics: SearchMetrics


def _astar(
    spn: SyncProductNet,
    cache: SearchCache,
    h_mode: str,
    refresh: str,
    record_expansions: bool = False,
) -> SearchOutcome:
    started = time.perf_counter()
    metrics = SearchMetrics()
    if cache._seed_pending:
        metrics.queued += 1
        cache._seed_pending = False

    def fresh_h(marking: Marking):
        value = estimate(spn, marking, h_mode)
        if h_mode != "zero":
            metrics.lps_solved += 1
        return inf if value.infeasible else value.value

    def refresh_h(marking: Marking, log_regression: bool = True):
        old = cache.h.get(marking)
        value = fresh_h(marking)
        if old is not None:
            metrics.heuristic_recomputations += 1
            if log_regression and value < old:
                metrics.h_regressions.append((marking, old, value))
        cache.h[marking] = value
        return value

    if refresh == EAGER:
        for m in cache.open.markings():
            hv = refresh_h(m)
            cache.open.push(m, cache.g[m] + hv, cache.g[m])
        cache.stale.clear()
    elif refresh == LAZY:
        cache.stale.update(cache.open.markings())
    else:
        raise ValueError(f"unknown refresh policy {refresh!r}")

    transition_ids = spn.transition_ids()
    moves = [spn.move(t) for t in transition_ids]
    presets = [spn.preset(t) for t in transition_ids]
    costs = [move_cost(mv) for mv in moves]

    while len(cache.open):
        marking, f, _ = cache.open.pop()

        if marking in cache.stale:
            hv = refresh_h(marking)
            cache.stale.discard(marking)
            cache.open.push(marking, cache.g[marking] + hv, cache.g[marking])
            continue

        if spn.is_goal(marking):
            cache.open.push(marking, f, cache.g[marking])  # stays in open
            alignment = reconstruct(cache.p, marking, cache.root)
            assert alignment.total_cost == cache.g[marking]
            metrics.wall_time = time.perf_counter() - started
            cache.totals.add_counters(metrics)
            return SearchOutcome(alignment, cache, metrics)

        cache.closed.add(marking)
        metrics.visited += 1
        if record_expansions:
            metrics.expansions.append(marking)
        g_here = cache.g[marking]

        for idx, pre in enumerate(presets):
            enabled_here = True
            for p in pre:
                if marking.get(p) <= 0:
                    enabled_here = False
                    break
            if not enabled_here:
                continue
            successor = fire(spn, marking, transition_ids[idx])
            new_g = g_here + costs[idx]
            old_g = cache.g.get(successor)
            if successor in cache.closed:
                if new_g >= old_g:
                    continue
                # A strictly cheaper path to an already-closed marking can
                # only appear when an outdated estimate mis-ordered earlier
                # pops (estimates may shrink under extension).  Reopen it so
                # the cheaper cost propagates; with up-to-date estimates this
                # branch is unreachable.
                cache.closed.discard(successor)
                cache.g[successor] = new_g
                cache.p[successor] = (moves[idx], marking)
                hv = refresh_h(successor, log_regression=False)
                cache.open.push(successor, new_g + hv, new_g)
                metrics.reopened += 1
                metrics.queued += 1
                continue
            if old_g is not None and new_g >= old_g:
                continue  # already in open at least as cheaply
            cache.g[successor] = new_g
            cache.p[successor] = (moves[idx], marking)
            if successor in cache.stale:
                hv = cache.h[successor]  # outdated estimate stays until popped
            else:
                hv = cache.h.get(successor)
                if hv is None:
                    hv = fresh_h(successor)
                    cache.h[successor] = hv
            cache.open.push(successor, new_g + hv, new_g)
            if old_g is None:
                metrics.queued += 1

    raise SearchExhausted(
        "open set exhausted before reaching the trace frontier; "
        "the product net always admits the all-log-moves path"
    )


def astar_inc(
    spn: SyncProductNet,
    cache: SearchCache,
    h_mode: str = "ilp",
    refresh: str = LAZY,
    record_expansions: bool = False,
) -> SearchOutcome:
    """Continue the case's search after (at most) one extension.

    The cache must be freshly initialized or be the untouched result of the
    previous call for the same product net.
    """
    outcome = _astar(spn, cache, h_mode, refresh, record_expansions)
    assert verify_prefix_alignment(outcome.alignment, spn.trace, spn.model)
    return outcome


def astar_scratch(
    spn: SyncProductNet,
    h_mode: str = "ilp",
    start: Marking | None = None,
    record_expansions: bool = False,
) -> SearchOutcome:
    """One-shot search from ``start`` (default: the initial marking)."""
    cache = SearchCache.fresh(spn, start)
    return _astar(spn, cache, h_mode, EAGER, record_expansions)


def dijkstra_oracle(
    spn: SyncProductNet, start: Marking, bound: int = 10**6
) -> tuple[int | None, dict[Marking, int]]:
    """Uniform-cost sweep of the whole reachable space from ``start``.

    Returns the cost of the nearest goal marking (None when unreachable,
    which cannot happen for reachable starts) and the full distance map.
    """
    dist: dict[Marking, int] = {start: 0}
    heap: list[tuple[int, tuple, Marking]] = [(0, start.items, start)]
    goal_cost: int | None = None
    transition_ids = spn.transition_ids()
    costs = [move_cost(spn.move(t)) for t in transition_ids]
    presets = [spn.preset(t) for t in transition_ids]
    while heap:
        d, _, marking = heapq.heappop(heap)
        if d > dist.get(marking, d):
            continue
        if goal_cost is None and spn.is_goal(marking):
            goal_cost = d
        for idx, pre in enumerate(presets):
            if any(marking.get(p) <= 0 for p in pre):
                continue
            successor = fire(spn, marking, transition_ids[idx])
            nd = d + costs[idx]
            if nd < dist.get(successor, nd + 1):
                if successor not in dist and len(dist) >= bound:
                    raise StateSpaceTooLarge(f"more than {bound} reachable markings")
                dist[successor] = nd
                heapq.heappush(heap, (nd, successor.items, successor))
    return goal_cost, dist


def distances_to_goal(
    spn: SyncProductNet, bound: int = 10**5
) -> tuple[list[Marking], list[tuple[Marking, str, Marking]], dict[Marking, int]]:
    """Exact remaining cost to the nearest goal for every reachable marking.

    Enumerates the reachable space once, then runs a multi-source
    uniform-cost sweep backwards from all goal markings.  Markings that
    cannot reach a goal (impossible on product nets) would be absent from
    the map.
    """
    markings, edges = enumerate_state_space(spn, spn.initial, bound)
    backward: dict[Marking, list[tuple[int, Marking]]] = {m: [] for m in markings}
    for source, tid, target in edges:
        backward[target].append((move_cost(spn.move(tid)), source))
    dist: dict[Marking, int] = {}
    heap: list[tuple[int, tuple, Marking]] = []
    for m in markings:
        if spn.is_goal(m):
            dist[m] = 0
            heapq.heappush(heap, (0, m.items, m))
    while heap:
        d, _, marking = heapq.heappop(heap)
        if d > dist.get(marking, d):
            continue
        for cost, source in backward[marking]:
            nd = d + cost
            if nd < dist.get(source, nd + 1):
                dist[source] = nd
                heapq.heappush(heap, (nd, source.items, source))
    return markings, edges, dist
