"""Prefix-alignments: moves, costs, reconstruction and checking.

Costs follow the standard cost function: synchronous moves and silent model
moves are free, log moves and visible model moves cost one.  Costs are exact
integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .petri import Marking, WorkflowNet, fire_sequence, NotEnabledError
from .spn import MoveKind, SpnTransition


def move_cost(t: SpnTransition) -> int:
    if t.kind is MoveKind.SYNC:
        return 0
    if t.kind is MoveKind.MODEL and t.model_label is None:
        return 0
    return 1


@dataclass(frozen=True)
class Move:
    transition: SpnTransition
    cost: int

    @property
    def kind(self) -> MoveKind:
        return self.transition.kind

    def display(self) -> tuple[str, str]:
        return self.transition.display()

    def to_record(self) -> dict:
        return {
            "kind": self.transition.kind.value,
            "activity": self.transition.activity,
            "transition": self.transition.model_transition,
        }


@dataclass(frozen=True)
class PrefixAlignment:
    moves: tuple[Move, ...]
    total_cost: int
    end_marking: Marking

    def __len__(self) -> int:
        return len(self.moves)

    def activities(self) -> list[str]:
        """First-row projection: observed activities of log and sync moves."""
        return [
            m.transition.activity
            for m in self.moves
            if m.kind in (MoveKind.LOG, MoveKind.SYNC)
        ]

    def model_transitions(self) -> list[str]:
        """Second-row projection: model transitions of model and sync moves."""
        return [
            m.transition.model_transition
            for m in self.moves
            if m.kind in (MoveKind.MODEL, MoveKind.SYNC)
        ]

    def concat(self, suffix: "PrefixAlignment") -> "PrefixAlignment":
        return PrefixAlignment(
            self.moves + suffix.moves,
            self.total_cost + suffix.total_cost,
            suffix.end_marking,
        )

    def to_records(self) -> list[dict]:
        return [m.to_record() for m in self.moves]


def make_move(t: SpnTransition) -> Move:
    return Move(t, move_cost(t))


EMPTY_PREDECESSOR: tuple[None, None] = (None, None)


class BrokenPredecessorChain(KeyError):
    pass


def reconstruct(
    predecessors: dict[Marking, tuple[SpnTransition | None, Marking | None]],
    goal: Marking,
    initial: Marking,
) -> PrefixAlignment:
    """Walk the predecessor map back from the goal and emit moves in order.

    The chain must terminate at the initial marking, which maps to the null
    sentinel ``(None, None)``.
    """
    moves: list[Move] = []
    current = goal
    while True:
        if current not in predecessors:
            raise BrokenPredecessorChain(
                f"marking {current} has no predecessor entry"
            )
        transition, previous = predecessors[current]
        if transition is None:
            if current != initial:
                raise BrokenPredecessorChain(
                    f"chain ends at {current}, expected initial {initial}"
                )
            break
        moves.append(make_move(transition))
        current = previous
    moves.reverse()
    return PrefixAlignment(tuple(moves), sum(m.cost for m in moves), goal)


def verify_prefix_alignment(
    alignment: PrefixAlignment, trace: list[str], model: WorkflowNet
) -> bool:
    """Check both projections and per-move consistency; never raises."""
    for move in alignment.moves:
        t = move.transition
        if move.cost != move_cost(t):
            return False
        if t.kind is MoveKind.SYNC:
            if t.model_label is None or t.activity != t.model_label:
                return False
            if t.model_transition is None or t.trace_transition is None:
                return False
        elif t.kind is MoveKind.LOG:
            if t.model_transition is not None or not t.activity:
                return False
        elif t.kind is MoveKind.MODEL:
            if t.model_transition is None or t.activity is not None:
                return False
    if alignment.activities() != list(trace):
        return False
    if alignment.total_cost != sum(m.cost for m in alignment.moves):
        return False
    for t in alignment.model_transitions():
        if not model.has_transition(t):
            return False
    try:
        fire_sequence(model, model.initial, alignment.model_transitions())
    except NotEnabledError:
        return False
    return True


def render_alignment(alignment: PrefixAlignment) -> str:
    """Two-row table with one column per move, log row on top."""
    if not alignment.moves:
        return "| (empty) |"
    tops, bottoms = zip(*(m.display() for m in alignment.moves))
    widths = [max(len(a), len(b)) for a, b in zip(tops, bottoms)]
    def row(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    return "\n".join([row(tops), row(bottoms)])
