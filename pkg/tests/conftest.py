import random

import pytest

from streamalign import Marking, WorkflowNet, validate_wfnet
from streamalign.assets import ordering_model, trap_model
from streamalign.generator import choice_loop_model, parallel_tau_model


@pytest.fixture
def n1() -> WorkflowNet:
    """The bundled ordering net: optional a (or silent skip), then b or c."""
    return ordering_model()


@pytest.fixture
def trap() -> WorkflowNet:
    return trap_model()


@pytest.fixture
def preset_models() -> dict[str, WorkflowNet]:
    return {"choice-loop": choice_loop_model(), "parallel-tau": parallel_tau_model()}


def make_random_wfnet(rng: random.Random) -> WorkflowNet | None:
    """Small random chain/choice/skip nets; None when structurally invalid."""
    nplaces = rng.randint(3, 5)
    places = [f"q{i}" for i in range(nplaces)]
    alphabet = ["a", "b", "c", "d"][: rng.randint(2, 4)]
    transitions, labels, arcs = [], {}, []
    tid = 0
    for i in range(nplaces - 1):
        for _ in range(rng.randint(1, 2)):
            t = f"t{tid}"
            tid += 1
            transitions.append(t)
            labels[t] = rng.choice(alphabet + [None]) if rng.random() < 0.9 else None
            arcs += [(places[i], t), (t, places[i + 1])]
    for _ in range(rng.randint(0, 2)):
        i = rng.randint(0, nplaces - 2)
        j = rng.randint(i + 1, nplaces - 1)
        t = f"t{tid}"
        tid += 1
        transitions.append(t)
        labels[t] = rng.choice(alphabet + [None])
        arcs += [(places[i], t), (t, places[j])]
    try:
        net = WorkflowNet(
            places, transitions, arcs, labels, Marking.of(places[0]), Marking.of(places[-1])
        )
    except ValueError:
        return None
    if not validate_wfnet(net).ok or not net.visible_alphabet():
        return None
    return net


def random_net_and_trace(rng: random.Random, max_len: int = 6):
    while True:
        net = make_random_wfnet(rng)
        if net is None:
            continue
        alphabet = list(net.visible_alphabet())
        trace = [rng.choice(alphabet) for _ in range(rng.randint(1, max_len))]
        return net, trace
