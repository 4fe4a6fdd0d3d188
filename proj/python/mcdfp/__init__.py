"""Python bindings for the mcdfp simulator.

Configs are plain dicts with the same keys as the YAML/JSON config files.
"""

import json

from . import _core
from ._core import (
    CapacityError,
    UsageError,
    allocate_rates,
    cost_matrix,
    enumerate_pure_ne,
    expected_utility,
    is_pure_ne,
    link_success_prob,
    optimal_assignment,
    select_direction,
)

__all__ = [
    "CapacityError",
    "UsageError",
    "allocate_rates",
    "config",
    "cost_matrix",
    "enumerate_pure_ne",
    "expected_utility",
    "is_pure_ne",
    "link_success_prob",
    "optimal_assignment",
    "preset",
    "run_batch",
    "run_replication",
    "select_direction",
]


def preset(name):
    """Return a built-in scenario ("scenario1" or "scenario2") as a config dict."""
    return json.loads(_core.preset_json(name))


def config(overrides=None, **kwargs):
    """Validate a config dict (optionally naming a "preset") and fill in defaults."""
    doc = dict(overrides or {}, **kwargs)
    return json.loads(_core.normalize_config(json.dumps(doc)))


def run_replication(cfg, index=0):
    return _core.run_replication(json.dumps(cfg), index)


def run_batch(cfg, threads=0):
    """Run cfg["replications"] runs; returns {"summary": dict, "runs": [dict, ...]}."""
    out = _core.run_batch(json.dumps(cfg), threads)
    return {"summary": json.loads(out["summary_json"]), "runs": out["runs"]}
