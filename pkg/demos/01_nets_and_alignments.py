"""Workflow nets, the firing rule and prefix-alignments.

The bundled `n1` net models a simplified ordering process: a customer
optionally creates an account (activity ``a``, skippable through a silent
step), then either submits an order (``b``) or requests a quote (``c``).
We fire a few transitions by hand, break the net to see validation speak up,
and align a deviating trace.
"""

from streamalign import (
    Marking,
    WorkflowNet,
    StreamEngine,
    enabled,
    fire,
    fire_sequence,
    render_alignment,
    replay_log_as_stream,
    validate_wfnet,
)
from streamalign.assets import ordering_model

net = ordering_model()
print("net:", net)
print("validation:", validate_wfnet(net))

# the token game: a is enabled initially, b only after a (or the silent skip)
m = net.initial
print("\ninitially", m, "- a enabled?", enabled(net, m, "t1"), "- b enabled?", enabled(net, m, "t3"))
m = fire(net, m, "t1")
print("after a:", m)
print("run a,b end to end:", fire_sequence(net, net.initial, ["t1", "t3"]))

# validation reports violations as data, one line per offence
broken = WorkflowNet(
    net.places, net.transitions, set(net.arcs) - {("t3", "p3")},
    net.labels, net.initial, net.final,
)
print("\nwith the arc (t3, p3) removed:")
print(validate_wfnet(broken))

# aligning <a, b, c>: after a and b the case is fine; c cannot follow b,
# so the cheapest explanation flags exactly one move
engine = StreamEngine(net, algorithm="ias", heuristic="ilp")
results = engine.run(replay_log_as_stream([["a", "b", "c"]]))
print("\nper-event deviation costs:", [r.cost for r in results])
print("final alignment (log row over model row):")
print(render_alignment(results[-1].alignment))
