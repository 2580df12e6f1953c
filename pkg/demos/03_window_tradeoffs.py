"""Why window-limited reverting misreports deviations.

The `trap` net has two branches that start with the same two activities
``x, y``; only the second branch can continue with ``z``.  A search that
restarts from scratch (or resumes from cached state) happily flips branches
when ``z`` arrives.  A baseline that reverts only the last event is stuck
with its earlier commitment and reports a deviation that does not exist:
a false positive.  Larger windows err less and cost more.
"""

from streamalign import StreamEngine, replay_log_as_stream
from streamalign.assets import adversarial_log, trap_model
from streamalign.metrics import compute_metrics, oracle_costs_by_case

model = trap_model()
log = adversarial_log()
events = replay_log_as_stream(log)
algorithms = ["ias", "iasr", "occ", "occ-w1", "occ-w2", "occ-w5", "occ-w10"]

runs = {}
for algorithm in algorithms:
    engine = StreamEngine(model, algorithm, heuristic="ilp")
    runs[algorithm] = engine.run(events)

print("trace", log[0], "per-event costs:")
for algorithm in ("ias", "occ-w1", "occ-w2"):
    case_one = [r.cost for r in runs[algorithm] if r.case_id == "1"]
    print(f"  {algorithm:<8} {case_one}")
print("(the optimal cost is 0 everywhere: the trace fits the second branch)")

oracle = oracle_costs_by_case(runs["ias"])
print(f"\n{'algorithm':<10} {'traces with fp':>14} {'avg queued':>11} {'avg solved':>11}")
for algorithm in algorithms:
    record, _ = compute_metrics(algorithm, runs[algorithm], oracle)
    print(
        f"{algorithm:<10} {record.traces_with_fp:>14} "
        f"{record.avg_queued_per_trace:>11.1f} {record.avg_solved_lps_per_trace:>11.1f}"
    )
print("\nexact algorithms never report false positives; shrinking the window")
print("trades correctness for speed, and no window size is safe in general.")
