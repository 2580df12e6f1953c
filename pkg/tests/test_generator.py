import random

import pytest

from streamalign import StreamEngine, generate_log, replay_log_as_stream, validate_wfnet
from streamalign.generator import (
    GenerationError,
    PRESETS,
    apply_noise,
    choice_loop_model,
    parallel_tau_model,
    random_execution,
)


def test_presets_are_valid_wfnets():
    for name, build in PRESETS.items():
        model = build()
        assert validate_wfnet(model).ok, name
        labels = set(model.labels.values())
        assert None in labels  # every preset carries a silent transition


def test_noise_free_n1_traces_fit_the_model(n1):
    log = generate_log(n1, 40, max_len=8, seed=1)
    allowed = {("a", "b"), ("a", "c"), ("b",), ("c",)}
    assert {tuple(t) for t in log} <= allowed
    engine = StreamEngine(n1, "ias", "ilp")
    results = engine.run(replay_log_as_stream(log))
    assert all(r.cost == 0 for r in results)


def test_noise_free_traces_fit_presets():
    for build in PRESETS.values():
        model = build()
        log = generate_log(model, 20, max_len=8, seed=3)
        engine = StreamEngine(model, "ias", "ilp")
        results = engine.run(replay_log_as_stream(log))
        assert all(r.cost == 0 for r in results)


def test_full_drop_keeps_min_length_one(n1):
    log = generate_log(n1, 20, {"drop_p": 1.0}, max_len=8, seed=5)
    assert all(len(trace) == 1 for trace in log)


def test_seed_determinism(n1):
    noise = {"swap_p": 0.2, "drop_p": 0.1, "insert_p": 0.1}
    first = generate_log(n1, 30, noise, max_len=8, seed=9)
    second = generate_log(n1, 30, noise, max_len=8, seed=9)
    assert first == second
    third = generate_log(n1, 30, noise, max_len=8, seed=10)
    assert first != third


def test_max_len_respected(n1):
    log = generate_log(choice_loop_model(), 50, {"insert_p": 0.5}, max_len=6, seed=11)
    assert all(1 <= len(trace) <= 6 for trace in log)


def test_probability_validation(n1):
    with pytest.raises(ValueError):
        generate_log(n1, 5, {"swap_p": 1.5})
    with pytest.raises(ValueError):
        generate_log(n1, 5, {"bogus": 0.5})


def test_generation_error_when_no_short_execution():
    # the parallel preset needs at least three visible activities
    with pytest.raises(GenerationError):
        random_execution(parallel_tau_model(), random.Random(0), max_len=2)


def test_apply_noise_swap_only():
    rng = random.Random(2)
    out = apply_noise(["a", "b"], rng, 1.0, 0.0, 0.0, ("a", "b"), 8)
    assert out == ["b", "a"]
