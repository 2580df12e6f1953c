"""Underestimates of remaining alignment cost from a product-net marking.

The estimate relaxes the reachability question to token-flow balance: one
non-negative firing count per product-net transition, exact balance on the
trace places (the last trace place must end with the single trace token,
every other trace place empty) and non-negative cumulative flow on the model
places.  The current marking enters each constraint constant, so the value
is marking-dependent and admissible.  Solving over integers (``ilp``) gives
a tighter bound than the rational relaxation (``lp``); ``zero`` turns the
estimate off for uninformed search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .alignment import move_cost
from .petri import Marking
from .simplex import INFEASIBLE, OPTIMAL, Row, solve_ilp, solve_lp
from .spn import SyncProductNet

MODES = ("lp", "ilp", "zero")


@dataclass(frozen=True)
class HeuristicValue:
    value: Fraction | int
    infeasible: bool
    mode: str

    def cost_or_none(self) -> Fraction | int | None:
        return None if self.infeasible else self.value


@dataclass(frozen=True)
class HeuristicProblem:
    """One concrete flow problem: objective, rows and variable naming."""

    variables: tuple[str, ...]
    objective: tuple[int, ...]
    rows: tuple[Row, ...]
    n_trace_rows: int
    n_model_rows: int


class _Template:
    """Marking-independent part of the problem, cached per net version."""

    def __init__(self, spn: SyncProductNet):
        self.version = spn.version
        self.variables = spn.transition_ids()
        index = {t: i for i, t in enumerate(self.variables)}
        self.objective = tuple(move_cost(spn.move(t)) for t in self.variables)
        self.place_set = set(spn.place_ids())
        self.trace_places = spn.trace_places()
        self.model_places = spn.model_places()
        self.goal_place = spn.goal_place
        self.columns: dict[str, list[tuple[int, int]]] = {
            p: [] for p in self.trace_places + self.model_places
        }
        for t in self.variables:
            j = index[t]
            flow: dict[str, int] = {}
            for p in spn.preset(t):
                flow[p] = flow.get(p, 0) - 1
            for p in spn.postset(t):
                flow[p] = flow.get(p, 0) + 1
            for p, c in flow.items():
                if c:
                    self.columns[p].append((j, c))

    def row(self, place: str) -> list[int]:
        coeffs = [0] * len(self.variables)
        for j, c in self.columns[place]:
            coeffs[j] = c
        return coeffs


def _template(spn: SyncProductNet) -> _Template:
    tpl = spn.derived.get("heuristic-template")
    if tpl is None or tpl.version != spn.version:
        tpl = _Template(spn)
        spn.derived["heuristic-template"] = tpl
    return tpl


def build_problem(spn: SyncProductNet, marking: Marking) -> HeuristicProblem:
    """Assemble the flow problem for one marking.

    Trace places contribute equalities ``m(p) + flow(p) = target(p)`` with
    target one on the last trace place and zero elsewhere; model places
    contribute ``m(p) + flow(p) >= 0``.
    """
    tpl = _template(spn)
    for p in marking.places():
        if p not in tpl.place_set:
            raise ValueError(f"marking refers to unknown place {p!r}")
    if sum(marking.get(p) for p in tpl.trace_places) != 1:
        raise ValueError(f"marking {marking} does not hold exactly one trace token")

    rows: list[Row] = []
    for p in tpl.trace_places:
        target = 1 if p == tpl.goal_place else 0
        rows.append((tpl.row(p), "=", target - marking.get(p)))
    for p in tpl.model_places:
        rows.append((tpl.row(p), ">=", -marking.get(p)))
    return HeuristicProblem(
        tpl.variables,
        tpl.objective,
        tuple(rows),
        n_trace_rows=len(tpl.trace_places),
        n_model_rows=len(tpl.model_places),
    )


def estimate(spn: SyncProductNet, marking: Marking, mode: str = "ilp") -> HeuristicValue:
    """Remaining-cost estimate for a marking under the given mode."""
    if mode not in MODES:
        raise ValueError(f"unknown heuristic mode {mode!r}")
    if mode == "zero":
        return HeuristicValue(0, False, mode)
    problem = build_problem(spn, marking)
    solver = solve_lp if mode == "lp" else solve_ilp
    result = solver(list(problem.objective), list(problem.rows))
    if result.status == INFEASIBLE:
        return HeuristicValue(0, True, mode)
    assert result.status == OPTIMAL, "alignment heuristic cannot be unbounded"
    value = result.value
    assert value >= 0
    if mode == "ilp":
        assert value.denominator == 1
        return HeuristicValue(int(value), False, mode)
    return HeuristicValue(value, False, mode)
