"""Bundled demonstration nets and logs, addressable by name from the CLI."""

from __future__ import annotations

from .generator import PRESETS
from .petri import Marking, WorkflowNet


def ordering_model() -> WorkflowNet:
    """Simplified ordering process: optionally create an account (a, skippable
    by a silent step), then either submit an order (b) or request a quote (c).
    """
    places = ["p1", "p2", "p3"]
    transitions = ["t1", "t2", "t3", "t4"]
    labels = {"t1": "a", "t2": None, "t3": "b", "t4": "c"}
    arcs = [
        ("p1", "t1"),
        ("t1", "p2"),
        ("p1", "t2"),
        ("t2", "p2"),
        ("p2", "t3"),
        ("t3", "p3"),
        ("p2", "t4"),
        ("t4", "p3"),
    ]
    return WorkflowNet(places, transitions, arcs, labels, Marking.of("p1"), Marking.of("p3"))


def trap_model() -> WorkflowNet:
    """Two branches sharing their first two labels; only one offers ``z``.

    Window-limited reverting commits to a branch before ``z`` arrives and
    then cannot leave it, so small windows report spurious deviation costs.
    """
    places = ["ps", "a1", "a2", "b1", "b2", "b3", "po"]
    transitions = ["t_xa", "t_ya", "t_wa", "t_xb", "t_yb", "t_zb", "t_wb"]
    labels = {
        "t_xa": "x",
        "t_ya": "y",
        "t_wa": "w",
        "t_xb": "x",
        "t_yb": "y",
        "t_zb": "z",
        "t_wb": "w",
    }
    arcs = [
        ("ps", "t_xa"),
        ("t_xa", "a1"),
        ("a1", "t_ya"),
        ("t_ya", "a2"),
        ("a2", "t_wa"),
        ("t_wa", "po"),
        ("ps", "t_xb"),
        ("t_xb", "b1"),
        ("b1", "t_yb"),
        ("t_yb", "b2"),
        ("b2", "t_zb"),
        ("t_zb", "b3"),
        ("b3", "t_wb"),
        ("t_wb", "po"),
    ]
    return WorkflowNet(places, transitions, arcs, labels, Marking.of("ps"), Marking.of("po"))


def demo_log() -> list[list[str]]:
    return [["a", "b"], ["a", "b", "c"], ["b"]]


def adversarial_log() -> list[list[str]]:
    """Traces that punish committing to the wrong branch of ``trap``."""
    return [
        ["x", "y", "z"],
        ["x", "y", "z", "w"],
        ["x", "y", "w"],
        ["x", "y", "z"],
        ["z", "x", "y"],
    ]


BUNDLED_MODELS = {
    "n1": ordering_model,
    "trap": trap_model,
    **PRESETS,
}

BUNDLED_LOGS = {
    "bundled-3traces": demo_log,
    "adversarial": adversarial_log,
}
