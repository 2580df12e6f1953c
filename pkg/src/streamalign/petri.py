"""Labeled Petri nets, workflow nets and marking semantics.

Transitions carry an activity label; silent transitions are labeled ``None``
(never an empty or reserved string).  Markings are immutable multisets of
place ids, hashable and canonically ordered so they can serve as search
states.  Arc weights are fixed at one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import networkx as nx

SILENT = None  # label of an invisible transition


class NetDefinitionError(ValueError):
    """The net refers to undeclared nodes or is otherwise malformed."""


class UnknownNodeError(KeyError):
    """A place or transition id does not exist in the net."""


class NotEnabledError(RuntimeError):
    """A transition was fired in a marking that does not enable it."""

    def __init__(self, transition: str, missing_place: str, step: int | None = None):
        self.transition = transition
        self.missing_place = missing_place
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(
            f"transition {transition!r} is not enabled{where}: "
            f"place {missing_place!r} holds no token"
        )


def is_silent(label: str | None) -> bool:
    return label is None


class Marking:
    """Immutable multiset of place ids.

    Internally a tuple of (place, count) pairs sorted by place id with zero
    counts dropped, which makes equality, hashing and ordering canonical.
    """

    __slots__ = ("items", "_map", "_hash")

    def __init__(self, counts: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        acc: dict[str, int] = {}
        for place, count in pairs:
            if count < 0:
                raise ValueError(f"negative token count {count} for place {place!r}")
            if count:
                acc[place] = acc.get(place, 0) + count
        self.items: tuple[tuple[str, int], ...] = tuple(sorted(acc.items()))
        self._map = acc
        self._hash = hash(self.items)

    @classmethod
    def of(cls, *places: str) -> "Marking":
        counts: dict[str, int] = {}
        for p in places:
            counts[p] = counts.get(p, 0) + 1
        return cls(counts)

    def get(self, place: str) -> int:
        return self._map.get(place, 0)

    def total(self) -> int:
        return sum(self._map.values())

    def places(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.items)

    def to_dict(self) -> dict[str, int]:
        return dict(self.items)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Marking) and self.items == other.items

    def __lt__(self, other: "Marking") -> bool:
        return self.items < other.items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(p if c == 1 else f"{p}^{c}" for p, c in self.items)
        return f"[{body}]"


class WorkflowNet:
    """A labeled Petri net with designated initial and final markings.

    Construction checks that ids resolve and that places and transitions are
    disjoint; the workflow-net structural properties (unique source/sink,
    every node on a source-to-sink path) are checked by :func:`validate_wfnet`
    and reported as data rather than raised.
    """

    def __init__(
        self,
        places: Iterable[str],
        transitions: Iterable[str],
        arcs: Iterable[tuple[str, str]],
        labels: Mapping[str, str | None],
        initial: Marking,
        final: Marking,
    ):
        self.places: tuple[str, ...] = tuple(sorted(set(places)))
        self.transitions: tuple[str, ...] = tuple(sorted(set(transitions)))
        place_set, trans_set = set(self.places), set(self.transitions)
        if place_set & trans_set:
            raise NetDefinitionError(
                f"ids used both as place and transition: {sorted(place_set & trans_set)}"
            )
        self.arcs: frozenset[tuple[str, str]] = frozenset(arcs)
        for src, tgt in self.arcs:
            ok = (src in place_set and tgt in trans_set) or (
                src in trans_set and tgt in place_set
            )
            if not ok:
                raise NetDefinitionError(f"arc ({src!r}, {tgt!r}) does not connect a declared place and transition")
        self.labels: dict[str, str | None] = dict(labels)
        for t in self.transitions:
            if t not in self.labels:
                raise NetDefinitionError(f"transition {t!r} has no label entry")
            lab = self.labels[t]
            if lab is not None and (not isinstance(lab, str) or not lab):
                raise NetDefinitionError(f"transition {t!r} has an empty or non-text label")
        for node in initial.places() + final.places():
            if node not in place_set:
                raise NetDefinitionError(f"marking refers to unknown place {node!r}")
        self.initial = initial
        self.final = final

        pre: dict[str, list[str]] = {t: [] for t in self.transitions}
        post: dict[str, list[str]] = {t: [] for t in self.transitions}
        p_pre: dict[str, list[str]] = {p: [] for p in self.places}
        p_post: dict[str, list[str]] = {p: [] for p in self.places}
        for src, tgt in sorted(self.arcs):
            if src in place_set:
                pre[tgt].append(src)
                p_post[src].append(tgt)
            else:
                post[src].append(tgt)
                p_pre[tgt].append(src)
        self._pre = {t: tuple(v) for t, v in pre.items()}
        self._post = {t: tuple(v) for t, v in post.items()}
        self._place_pre = {p: tuple(v) for p, v in p_pre.items()}
        self._place_post = {p: tuple(v) for p, v in p_post.items()}

    # transition/place neighborhood accessors shared with the product net
    def transition_ids(self) -> tuple[str, ...]:
        return self.transitions

    def has_transition(self, t: str) -> bool:
        return t in self._pre

    def preset(self, t: str) -> tuple[str, ...]:
        try:
            return self._pre[t]
        except KeyError:
            raise UnknownNodeError(t) from None

    def postset(self, t: str) -> tuple[str, ...]:
        try:
            return self._post[t]
        except KeyError:
            raise UnknownNodeError(t) from None

    def place_preset(self, p: str) -> tuple[str, ...]:
        return self._place_pre[p]

    def place_postset(self, p: str) -> tuple[str, ...]:
        return self._place_post[p]

    def label(self, t: str) -> str | None:
        return self.labels[t]

    def visible_alphabet(self) -> tuple[str, ...]:
        return tuple(sorted({l for l in self.labels.values() if l is not None}))

    def __repr__(self) -> str:
        return (
            f"WorkflowNet(|P|={len(self.places)}, |T|={len(self.transitions)}, "
            f"|F|={len(self.arcs)})"
        )


@dataclass(frozen=True)
class Violation:
    rule: str
    nodes: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def nodes_in_violation(self) -> set[str]:
        return {n for v in self.violations for n in v.nodes}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def validate_wfnet(net: WorkflowNet) -> ValidationReport:
    """Check the workflow-net structural invariants.

    Violations are returned, not raised: unique source place (no incoming
    arcs), unique sink place (no outgoing arcs), source distinct from sink,
    initial/final markings equal to one token on source/sink, and every node
    on a directed path from source to sink (checked as a single strongly
    connected component after adding a sink-to-source arc).
    """
    out: list[Violation] = []
    sources = [p for p in net.places if not net.place_preset(p)]
    sinks = [p for p in net.places if not net.place_postset(p)]

    if len(sources) != 1:
        out.append(
            Violation("unique-source", tuple(sources), f"expected exactly one source place, found {sources}")
        )
    if len(sinks) != 1:
        out.append(
            Violation("unique-sink", tuple(sinks), f"expected exactly one sink place, found {sinks}")
        )
    source = sources[0] if len(sources) == 1 else None
    sink = sinks[0] if len(sinks) == 1 else None
    if source is not None and sink is not None and source == sink:
        out.append(Violation("source-equals-sink", (source,), f"source place equals sink place ({source!r})"))

    if source is not None and net.initial != Marking.of(source):
        out.append(
            Violation("initial-marking", (source,), f"initial marking {net.initial} is not [{source}]")
        )
    if sink is not None and net.final != Marking.of(sink):
        out.append(
            Violation("final-marking", (sink,), f"final marking {net.final} is not [{sink}]")
        )

    if source is not None and sink is not None and source != sink:
        graph = nx.DiGraph()
        graph.add_nodes_from(net.places)
        graph.add_nodes_from(net.transitions)
        graph.add_edges_from(net.arcs)
        graph.add_edge(sink, source)  # short circuit: on-path == one SCC
        component = next(
            c for c in nx.strongly_connected_components(graph) if source in c
        )
        off_path = sorted(set(graph.nodes) - component)
        for node in off_path:
            out.append(
                Violation("not-on-path", (node,), f"node {node!r} is not on a path from {source!r} to {sink!r}")
            )

    return ValidationReport(tuple(out))


def enabled(net, marking: Marking, transition: str) -> bool:
    """True iff every pre-place of the transition holds a token.

    Works for both :class:`WorkflowNet` and the synchronous product net.
    """
    if not net.has_transition(transition):
        raise UnknownNodeError(transition)
    return all(marking.get(p) > 0 for p in net.preset(transition))


def fire(net, marking: Marking, transition: str) -> Marking:
    """Fire an enabled transition and return the successor marking.

    The input marking is left untouched.  Self-loop places (in both the
    pre- and postset) keep their count.
    """
    if not net.has_transition(transition):
        raise UnknownNodeError(transition)
    counts = dict(marking.items)
    for p in net.preset(transition):
        c = counts.get(p, 0)
        if c <= 0:
            raise NotEnabledError(transition, p)
        counts[p] = c - 1
    for p in net.postset(transition):
        counts[p] = counts.get(p, 0) + 1
    return Marking(counts)


def fire_sequence(net, marking: Marking, transitions: Iterable[str]) -> Marking:
    """Left-fold of :func:`fire`; reports the first failing index."""
    current = marking
    for idx, t in enumerate(transitions):
        try:
            current = fire(net, current, t)
        except NotEnabledError as exc:
            raise NotEnabledError(exc.transition, exc.missing_place, step=idx) from None
    return current


def enabled_transitions(net, marking: Marking) -> list[str]:
    """All transitions enabled in the marking, in the net's canonical order."""
    out = []
    for t in net.transition_ids():
        if all(marking.get(p) > 0 for p in net.preset(t)):
            out.append(t)
    return out


class StateSpaceTooLarge(RuntimeError):
    pass


def enumerate_state_space(
    net, start: Marking, bound: int = 10**5
) -> tuple[list[Marking], list[tuple[Marking, str, Marking]]]:
    """Breadth-first enumeration of all markings reachable from ``start``.

    Returns the markings in discovery order and the full edge list.  Raises
    :class:`StateSpaceTooLarge` beyond ``bound`` markings.  Intended for
    tests and oracles on small nets.
    """
    seen: dict[Marking, None] = {start: None}
    frontier = [start]
    edges: list[tuple[Marking, str, Marking]] = []
    while frontier:
        m = frontier.pop(0)
        for t in enabled_transitions(net, m):
            m2 = fire(net, m, t)
            edges.append((m, t, m2))
            if m2 not in seen:
                if len(seen) >= bound:
                    raise StateSpaceTooLarge(f"more than {bound} reachable markings")
                seen[m2] = None
                frontier.append(m2)
    return list(seen), edges
