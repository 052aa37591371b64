"""Run reports: inputs, outputs, verdicts, traces and timings in one JSON object."""

from __future__ import annotations

import time
from contextlib import contextmanager

from ..numbers import to_json

BAD_VERDICTS = ("invalid", "violated", "mismatch")


class Report:
    def __init__(self, task: str, inputs: dict):
        self.task = task
        self.inputs = inputs
        self.outputs: dict = {}
        self.verdicts: dict = {}
        self.traces: dict = {}
        self.timings: dict = {}
        self.error = None

    def verdict(self, key: str, value) -> None:
        if value is True:
            value = "valid"
        elif value is False:
            value = "invalid"
        self.verdicts[key] = value

    def tally(self, key: str, oks) -> None:
        """Collapse a sequence of booleans into one verdict plus a count."""
        oks = list(oks)
        self.outputs[f"{key}_count"] = len(oks)
        self.outputs[f"{key}_failures"] = oks.count(False)
        self.verdict(key, all(oks))

    @contextmanager
    def timed(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - t0, 6)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        if any(v in BAD_VERDICTS for v in self.verdicts.values()):
            return "violation"
        return "ok"

    def to_dict(self) -> dict:
        out = {"task": self.task, "inputs": self.inputs, "outputs": self.outputs,
               "verdicts": self.verdicts, "traces": self.traces, "timings": self.timings,
               "status": self.status}
        if self.error is not None:
            out["error"] = self.error
        return to_json(out)


def exit_code(report: dict) -> int:
    return {"ok": 0, "violation": 2}.get(report["status"], 1)
