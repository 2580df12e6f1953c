"""Per-case orchestration of the streaming monitor.

The engine keeps one cache entry per case id; every event extends that
case's trace and product net and then continues (``ias``/``iasr``) or
restarts (``occ``/``occ-wN``) the shortest-path search.  State is never
evicted: a stream with unboundedly many cases grows the table without limit,
which the gauges below make observable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .alignment import PrefixAlignment
from .heuristic import MODES
from .occ import OccState, occ_process_event
from .petri import WorkflowNet, validate_wfnet
from .search import EAGER, LAZY, SearchCache, SearchMetrics, astar_inc
from .spn import SyncProductNet, build_spn, extend_spn

ALGORITHMS = ("ias", "iasr", "occ")
_OCC_W = re.compile(r"^occ-w([0-9]+)$")


def parse_algorithm(name: str) -> tuple[str, int | None]:
    """Map an algorithm name to (kind, window): ias, iasr, occ, occ-wN."""
    if name in ("ias", "iasr"):
        return name, None
    if name == "occ":
        return "occ", None
    m = _OCC_W.match(name)
    if m:
        w = int(m.group(1))
        if w < 1:
            raise ValueError(f"occ window must be >= 1, got {name!r}")
        return "occ", w
    raise ValueError(f"unknown algorithm {name!r}")


@dataclass(frozen=True)
class Event:
    case_id: str
    activity: str
    index: int  # arrival position on the stream, 1-based


@dataclass
class EventResult:
    case_id: str
    event_index: int
    activity: str
    alignment: PrefixAlignment
    metrics: SearchMetrics

    @property
    def cost(self) -> int:
        return self.alignment.total_cost

    def to_record(self) -> dict:
        return {
            "case": self.case_id,
            "event_index": self.event_index,
            "cost": self.cost,
            "alignment": self.alignment.to_records(),
            "queued": self.metrics.queued,
            "visited": self.metrics.visited,
            "lps": self.metrics.lps_solved,
        }


@dataclass
class EventError:
    case_id: str
    event_index: int
    message: str

    def to_record(self) -> dict:
        return {
            "case": self.case_id,
            "event_index": self.event_index,
            "error": self.message,
        }


@dataclass
class CaseEntry:
    trace: list[str] = field(default_factory=list)
    spn: SyncProductNet | None = None
    cache: SearchCache | None = None
    occ: OccState | None = None
    alignment: PrefixAlignment | None = None  # kept for output convenience


class CaseTable:
    def __init__(self):
        self.cases: dict[str, CaseEntry] = {}
        self.order: list[str] = []

    def entry(self, case_id: str) -> CaseEntry:
        if case_id not in self.cases:
            self.cases[case_id] = CaseEntry()
            self.order.append(case_id)
        return self.cases[case_id]

    def case_count(self) -> int:
        return len(self.cases)

    def approximate_bytes(self) -> int:
        """Coarse growth gauge over all cached per-case state."""
        total = 0
        for entry in self.cases.values():
            total += 64 * len(entry.trace)
            spn = entry.spn if entry.spn is not None else (
                entry.occ.spn if entry.occ is not None else None
            )
            if spn is not None:
                total += 128 * len(spn.transitions)
            if entry.cache is not None:
                cache = entry.cache
                total += sum(48 + 32 * len(m.items) for m in cache.g)
                total += 48 * (len(cache.closed) + len(cache.open))
            if entry.occ is not None and entry.occ.alignment is not None:
                total += 64 * len(entry.occ.alignment.moves)
        return total


class StreamEngine:
    """Dispatch stream events to per-case incremental alignment searches."""

    def __init__(
        self,
        model: WorkflowNet,
        algorithm: str = "ias",
        heuristic: str = "ilp",
        sink=None,
    ):
        report = validate_wfnet(model)
        if not report.ok:
            raise ValueError(f"model is not a workflow net:\n{report}")
        if heuristic not in MODES:
            raise ValueError(f"unknown heuristic mode {heuristic!r}")
        self.model = model
        self.kind, self.window = parse_algorithm(algorithm)
        self.algorithm = algorithm
        self.heuristic = heuristic
        self.sink = sink
        self.table = CaseTable()

    def process_event(self, event: Event) -> EventResult | EventError:
        outcome = self._handle(event)
        if self.sink is not None:
            self.sink(outcome.to_record())
        return outcome

    def _handle(self, event: Event) -> EventResult | EventError:
        activity = event.activity
        if not isinstance(activity, str) or not activity:
            return EventError(
                event.case_id, event.index, f"rejected event: invalid activity {activity!r}"
            )
        entry = self.table.entry(event.case_id)
        if self.kind == "occ":
            if entry.occ is None:
                entry.occ = OccState(window=self.window)
            alignment, outcome = occ_process_event(
                entry.occ, self.model, activity, self.heuristic
            )
            entry.trace.append(activity)
            entry.alignment = alignment
            return EventResult(event.case_id, event.index, activity, alignment, outcome.metrics)

        if entry.spn is None:
            entry.spn = build_spn(self.model, [activity])
            entry.cache = SearchCache.fresh(entry.spn)
        else:
            extend_spn(entry.spn, activity)
        entry.trace.append(activity)
        refresh = LAZY if self.kind == "ias" else EAGER
        outcome = astar_inc(entry.spn, entry.cache, self.heuristic, refresh)
        entry.cache = outcome.cache
        entry.alignment = outcome.alignment
        return EventResult(
            event.case_id, event.index, activity, outcome.alignment, outcome.metrics
        )

    def run(self, events) -> list[EventResult | EventError]:
        return [self.process_event(e) for e in events]


def replay_log_as_stream(
    log: list[list[str]], order: str = "sequential"
) -> list[Event]:
    """Turn a list of traces into an event stream with case ids 1..n.

    ``sequential`` emits each trace in full before the next one starts;
    ``round_robin`` interleaves one event per live case per round.
    """
    if any(not trace for trace in log):
        raise ValueError("log contains an empty trace")
    events: list[Event] = []
    if order == "sequential":
        idx = 1
        for case_no, trace in enumerate(log, start=1):
            for activity in trace:
                events.append(Event(str(case_no), activity, idx))
                idx += 1
    elif order in ("round_robin", "round-robin"):
        idx = 1
        position = 0
        while True:
            emitted = False
            for case_no, trace in enumerate(log, start=1):
                if position < len(trace):
                    events.append(Event(str(case_no), trace[position], idx))
                    idx += 1
                    emitted = True
            if not emitted:
                break
            position += 1
    else:
        raise ValueError(f"unknown replay order {order!r}")
    return events


def jsonl_sink(handle):
    """Sink writing one canonical JSON record per line."""

    def emit(record: dict) -> None:
        handle.write(json.dumps(record, sort_keys=True) + "\n")

    return emit
