"""File formats: net documents, event logs and per-event result records.

Nets are single JSON documents with ``places``, ``transitions`` (id plus
label, ``null`` marking a silent transition), ``arcs``, ``initial`` and
``final``.  Logs and streams share one representation: line-delimited JSON
records ``{"case": ..., "activity": ...}`` or CSV with a ``case,activity``
header (extra columns ignored).  Traces are recovered by grouping on the
case id in order of first appearance.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .assets import BUNDLED_LOGS, BUNDLED_MODELS
from .petri import Marking, NetDefinitionError, WorkflowNet


class DataError(ValueError):
    """Unreadable or malformed input data."""


def net_to_dict(net: WorkflowNet) -> dict:
    return {
        "places": list(net.places),
        "transitions": [{"id": t, "label": net.label(t)} for t in net.transitions],
        "arcs": [list(arc) for arc in sorted(net.arcs)],
        "initial": net.initial.to_dict(),
        "final": net.final.to_dict(),
    }


def net_from_dict(doc: dict) -> WorkflowNet:
    try:
        places = doc["places"]
        transitions = [t["id"] for t in doc["transitions"]]
        labels = {t["id"]: t["label"] for t in doc["transitions"]}
        arcs = [tuple(arc) for arc in doc["arcs"]]
        initial = Marking(doc["initial"])
        final = Marking(doc["final"])
    except (KeyError, TypeError) as exc:
        raise DataError(f"malformed net document: {exc!r}") from exc
    try:
        return WorkflowNet(places, transitions, arcs, labels, initial, final)
    except NetDefinitionError as exc:
        raise DataError(str(exc)) from exc


def save_net(net: WorkflowNet, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(net_to_dict(net), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_net(path_or_name: str | Path) -> WorkflowNet:
    name = str(path_or_name)
    if name in BUNDLED_MODELS:
        return BUNDLED_MODELS[name]()
    path = Path(path_or_name)
    if not path.exists():
        raise DataError(f"model {name!r} is neither a file nor a bundled model name")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read net document {name!r}: {exc}") from exc
    return net_from_dict(doc)


def read_stream_records(path: Path) -> list[tuple[str, str]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read log {path}: {exc}") from exc
    records: list[tuple[str, str]] = []
    if path.suffix.lower() == ".csv":
        reader = csv.DictReader(text.splitlines())
        if reader.fieldnames is None or not {"case", "activity"} <= set(reader.fieldnames):
            raise DataError(f"{path}: CSV log needs a 'case,activity' header")
        for row in reader:
            records.append((row["case"], row["activity"]))
    else:
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
                records.append((str(doc["case"]), doc["activity"]))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(f"{path}:{lineno}: malformed stream record: {exc!r}") from exc
    return records


def load_traces(path_or_name: str | Path) -> list[list[str]]:
    """Traces of a log file or bundled log, grouped by case id."""
    name = str(path_or_name)
    if name in BUNDLED_LOGS:
        return BUNDLED_LOGS[name]()
    path = Path(path_or_name)
    if not path.exists():
        raise DataError(f"log {name!r} is neither a file nor a bundled log name")
    grouped: dict[str, list[str]] = {}
    for case, activity in read_stream_records(path):
        grouped.setdefault(case, []).append(activity)
    if not grouped:
        raise DataError(f"log {name!r} contains no events")
    return list(grouped.values())


def save_traces(log: list[list[str]], path: str | Path) -> None:
    """Write traces as a stream file, one case per trace, ids 1..n."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["case", "activity"])
            for case_no, trace in enumerate(log, start=1):
                for activity in trace:
                    writer.writerow([case_no, activity])
    else:
        with path.open("w", encoding="utf-8") as handle:
            for case_no, trace in enumerate(log, start=1):
                for activity in trace:
                    handle.write(
                        json.dumps({"case": str(case_no), "activity": activity}, sort_keys=True)
                        + "\n"
                    )


def write_jsonl(records: list[dict], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, sort_keys=True) + "\n")
