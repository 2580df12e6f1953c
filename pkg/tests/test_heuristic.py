import random
from fractions import Fraction

import pytest

from streamalign import (
    Marking,
    WorkflowNet,
    build_problem,
    build_spn,
    distances_to_goal,
    estimate,
    extend_spn,
    move_cost,
)
from tests.conftest import random_net_and_trace


def test_problem_shape_for_unit_trace(n1):
    spn = build_spn(n1, ["a"])
    problem = build_problem(spn, spn.initial)
    assert len(problem.variables) == 6  # 1 log + 4 model + 1 sync
    assert problem.n_trace_rows == 2
    assert problem.n_model_rows == 3
    rels = [rel for _, rel, _ in problem.rows]
    assert rels.count("=") == 2 and rels.count(">=") == 3
    # trace token behind the target: constants demand one unit of net flow
    # out of tp0 (rhs -1) and one unit into tp1 (rhs +1)
    assert [rhs for _, rel, rhs in problem.rows if rel == "="] == [-1, 1]


def test_problem_zero_solution_at_goal(n1):
    spn = build_spn(n1, ["a"])
    goal = Marking.of("tp1", "p2")
    problem = build_problem(spn, goal)
    for coeffs, rel, rhs in problem.rows:
        if rel == "=":
            assert rhs == 0
        else:
            assert rhs <= 0
    assert estimate(spn, goal, "ilp").value == 0


def test_problem_rejects_bad_markings(n1):
    spn = build_spn(n1, ["a"])
    with pytest.raises(ValueError):
        build_problem(spn, Marking.of("nowhere", "tp0"))
    with pytest.raises(ValueError):
        build_problem(spn, Marking.of("p1"))  # no trace token


def test_estimate_examples_match_oracle(n1):
    spn = build_spn(n1, ["a"])
    _, _, dist = distances_to_goal(spn)
    m_sync = Marking.of("tp0", "p1")
    m_behind = Marking.of("tp0", "p2")
    assert dist[m_sync] == 0
    assert dist[m_behind] == 1
    for mode in ("lp", "ilp"):
        assert estimate(spn, m_sync, mode).value == 0
        assert estimate(spn, m_behind, mode).value == 1
    assert estimate(spn, Marking.of("tp1", "p2"), "ilp").value == 0


def test_zero_mode(n1):
    spn = build_spn(n1, ["a", "b"])
    value = estimate(spn, spn.initial, "zero")
    assert value.value == 0 and not value.infeasible


def test_unknown_mode(n1):
    spn = build_spn(n1, ["a"])
    with pytest.raises(ValueError):
        estimate(spn, spn.initial, "magic")


def test_admissible_and_consistent_on_random_nets():
    rng = random.Random(41)
    nets = 0
    while nets < 12:
        net, trace = random_net_and_trace(rng, max_len=3)
        spn = build_spn(net, trace)
        markings, edges, dist = distances_to_goal(spn, bound=3000)
        if len(markings) > 300:
            continue
        nets += 1
        values = {mode: {} for mode in ("lp", "ilp")}
        for mode in ("lp", "ilp"):
            for m in markings:
                values[mode][m] = estimate(spn, m, mode).value
                assert values[mode][m] <= dist[m], (mode, m)
        for m in markings:
            assert values["lp"][m] <= values["ilp"][m] <= dist[m]
        for source, tid, target in edges:
            step = move_cost(spn.move(tid))
            for mode in ("lp", "ilp"):
                assert values[mode][source] <= step + values[mode][target]


def test_lp_can_be_fractional_below_ilp():
    # two half-weight routes let the relaxation split one unit of flow
    net = WorkflowNet(
        ["s", "m", "e"],
        ["u1", "u2", "v"],
        [("s", "u1"), ("u1", "m"), ("s", "u2"), ("u2", "m"), ("m", "v"), ("v", "e")],
        {"u1": "a", "u2": "b", "v": "c"},
        Marking.of("s"),
        Marking.of("e"),
    )
    spn = build_spn(net, ["c", "c"])
    lp = estimate(spn, spn.initial, "lp").value
    ilp = estimate(spn, spn.initial, "ilp").value
    assert lp <= ilp
    assert isinstance(lp, Fraction)


def test_estimates_can_shrink_under_extension():
    # The flow relaxation has no notion of time: a synchronous move added for
    # a later trace position may feed a model token back to an earlier
    # position.  Here h([tp1, p1]) drops from 1 to 0 when the third event
    # arrives, so monotone growth of estimates under extension is NOT an
    # invariant of this heuristic (optimality never depends on it: estimates
    # stay admissible, which the suite above checks).
    net = WorkflowNet(
        ["p1", "p2", "p3"],
        ["ta", "tb", "td"],
        [("p1", "ta"), ("ta", "p2"), ("p2", "tb"), ("tb", "p3"), ("p1", "td"), ("td", "p3")],
        {"ta": "a", "tb": "b", "td": "d"},
        Marking.of("p1"),
        Marking.of("p3"),
    )
    spn = build_spn(net, ["d", "b"])
    lent = Marking.of("tp1", "p1")
    before = {mode: estimate(spn, lent, mode).value for mode in ("lp", "ilp")}
    assert before == {"lp": 1, "ilp": 1}
    extend_spn(spn, "a")
    after = {mode: estimate(spn, lent, mode).value for mode in ("lp", "ilp")}
    assert after == {"lp": 0, "ilp": 0}
    # the drop is sound: true remaining distance is still above the estimate
    _, _, dist = distances_to_goal(spn)
    assert after["ilp"] <= dist[lent]


def test_estimate_is_pure(n1):
    spn = build_spn(n1, ["a", "b"])
    first = estimate(spn, spn.initial, "ilp")
    second = estimate(spn, spn.initial, "ilp")
    assert first == second
