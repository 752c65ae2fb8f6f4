"""Python access to the coastal underwater evidence search simulator.

`simulate` runs a scenario file and returns a `Run` with the per-step state
table as a numpy array, the event list and the metrics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import _core
from ._core import CuesError, ScenarioError, lawnmower, leg_fk, leg_ik, swept_area, wrap_angle

__all__ = [
    "Run",
    "simulate",
    "validate",
    "read_run_dir",
    "lawnmower",
    "swept_area",
    "leg_fk",
    "leg_ik",
    "wrap_angle",
    "CuesError",
    "ScenarioError",
]


@dataclass
class Run:
    columns: list[str]
    states: np.ndarray
    phases: list[str]
    events: list[dict[str, Any]] = field(default_factory=list)
    metrics: dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return self.states[:, self.columns.index(name)]

    def events_of(self, kind: str) -> list[dict[str, Any]]:
        return [e for e in self.events if e["type"] == kind]


def _decode(raw: dict) -> Run:
    events = [json.loads(line) for line in raw["events_jsonl"].splitlines() if line]
    metrics = json.loads(raw["metrics_json"]) if raw["metrics_json"] else {}
    return Run(list(raw["columns"]), np.asarray(raw["states"]), list(raw["phases"]), events, metrics)


def simulate(scenario: str | Path, seed: int | None = None, duration: float | None = None,
             out: str | Path | None = None, formats: list[str] | None = None) -> Run:
    return _decode(_core.simulate(Path(scenario), seed, duration, None if out is None else Path(out), formats or []))


def validate(scenario: str | Path) -> dict[str, Any]:
    return _core.validate(Path(scenario))


def read_run_dir(run_dir: str | Path) -> Run:
    return _decode(_core.read_run_dir(Path(run_dir)))
