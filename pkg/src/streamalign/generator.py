"""Synthetic logs: random model executions with controlled noise.

Desk-scale stand-in for real event data.  A trace starts as the visible
labels of a random enabled-transition walk from the initial to the final
marking, then gets noised position-wise: adjacent swaps, drops and random
insertions.  Everything is driven by one seeded generator, so logs are
reproducible.
"""

from __future__ import annotations

import random

from .petri import Marking, WorkflowNet, enabled_transitions, fire


class GenerationError(RuntimeError):
    pass


def random_execution(
    model: WorkflowNet,
    rng: random.Random,
    max_len: int,
    attempts: int = 200,
) -> list[str]:
    """Visible labels of a random complete run with 1..max_len activities."""
    step_cap = 4 * max_len + 16
    for _ in range(attempts):
        marking = model.initial
        visible: list[str] = []
        steps = 0
        while marking != model.final:
            options = enabled_transitions(model, marking)
            if not options or steps > step_cap:
                visible = []
                break
            t = rng.choice(options)
            marking = fire(model, marking, t)
            label = model.label(t)
            if label is not None:
                visible.append(label)
            steps += 1
        if visible and len(visible) <= max_len:
            return visible
    raise GenerationError(
        f"no complete execution with 1..{max_len} visible activities "
        f"found in {attempts} attempts"
    )


def apply_noise(
    trace: list[str],
    rng: random.Random,
    swap_p: float,
    drop_p: float,
    insert_p: float,
    alphabet: tuple[str, ...],
    max_len: int,
) -> list[str]:
    """Per-position noise: one swap pass, one drop pass, one insert pass.

    A trace emptied by dropping falls back to its original first activity,
    keeping the minimum length of one.  The result is truncated to max_len.
    """
    noisy = list(trace)
    for i in range(len(noisy) - 1):
        if rng.random() < swap_p:
            noisy[i], noisy[i + 1] = noisy[i + 1], noisy[i]
    kept = [a for a in noisy if not rng.random() < drop_p]
    if not kept:
        kept = [trace[0]]
    out: list[str] = []
    for a in kept:
        if alphabet and rng.random() < insert_p:
            out.append(rng.choice(alphabet))
        out.append(a)
    if alphabet and rng.random() < insert_p:
        out.append(rng.choice(alphabet))
    return out[:max_len]


def generate_log(
    model: WorkflowNet,
    n_traces: int,
    noise: dict | None = None,
    max_len: int = 8,
    seed: int = 0,
) -> list[list[str]]:
    """Generate a reproducible noisy log of complete model executions."""
    noise = dict(noise or {})
    swap_p = noise.pop("swap_p", 0.0)
    drop_p = noise.pop("drop_p", 0.0)
    insert_p = noise.pop("insert_p", 0.0)
    if noise:
        raise ValueError(f"unknown noise keys {sorted(noise)}")
    for name, p in (("swap_p", swap_p), ("drop_p", drop_p), ("insert_p", insert_p)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must be within [0, 1], got {p}")
    rng = random.Random(seed)
    alphabet = model.visible_alphabet()
    log = []
    for _ in range(n_traces):
        execution = random_execution(model, rng, max_len)
        log.append(apply_noise(execution, rng, swap_p, drop_p, insert_p, alphabet, max_len))
    return log


# -- generator presets: small nets with choices, parallelism, loops and taus --


def choice_loop_model() -> WorkflowNet:
    """register, then approve or reject, check, optionally loop back, archive."""
    places = ["ps", "q1", "q2", "q3", "po"]
    transitions = ["t_reg", "t_ok", "t_no", "t_chk", "t_back", "t_arch"]
    labels = {
        "t_reg": "register",
        "t_ok": "approve",
        "t_no": "reject",
        "t_chk": "check",
        "t_back": None,
        "t_arch": "archive",
    }
    arcs = [
        ("ps", "t_reg"),
        ("t_reg", "q1"),
        ("q1", "t_ok"),
        ("q1", "t_no"),
        ("t_ok", "q2"),
        ("t_no", "q2"),
        ("q2", "t_chk"),
        ("t_chk", "q3"),
        ("q3", "t_back"),
        ("t_back", "q1"),
        ("q3", "t_arch"),
        ("t_arch", "po"),
    ]
    return WorkflowNet(places, transitions, arcs, labels, Marking.of("ps"), Marking.of("po"))


def parallel_tau_model() -> WorkflowNet:
    """A silent fork into a ship branch and a bill-then-pay branch."""
    places = ["ps", "s1", "s2", "b1", "b2", "b3", "po"]
    transitions = ["t_split", "t_ship", "t_bill", "t_pay", "t_join"]
    labels = {
        "t_split": None,
        "t_ship": "ship",
        "t_bill": "bill",
        "t_pay": "pay",
        "t_join": None,
    }
    arcs = [
        ("ps", "t_split"),
        ("t_split", "s1"),
        ("t_split", "b1"),
        ("s1", "t_ship"),
        ("t_ship", "s2"),
        ("b1", "t_bill"),
        ("t_bill", "b2"),
        ("b2", "t_pay"),
        ("t_pay", "b3"),
        ("s2", "t_join"),
        ("b3", "t_join"),
        ("t_join", "po"),
    ]
    return WorkflowNet(places, transitions, arcs, labels, Marking.of("ps"), Marking.of("po"))


PRESETS = {
    "choice-loop": choice_loop_model,
    "parallel-tau": parallel_tau_model,
}
