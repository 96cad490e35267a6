"""Approximate market equilibria for production economies by auction."""

import json
import os

from . import _core
from ._core import LoadError, elasticity_epsilon1, inverse_marginal, marginal, solve_lp, wgs_check

__all__ = [
    "LoadError",
    "certify_state",
    "elasticity_epsilon1",
    "inverse_marginal",
    "marginal",
    "oracle",
    "solve",
    "solve_lp",
    "wgs_check",
]


def _text(scenario):
    """Accepts a dict, a JSON string, or a path to a JSON file."""
    if isinstance(scenario, dict):
        return json.dumps(scenario)
    if isinstance(scenario, os.PathLike) or (isinstance(scenario, str) and not scenario.lstrip().startswith("{")):
        with open(scenario, encoding="utf-8") as fh:
            return fh.read()
    return scenario


def solve(scenario, epsilon=None, mode=None, max_rounds=None, trace=False):
    """Solve a scenario and return the report as a dict.

    With trace=True the line-delimited event log is attached under "trace".
    """
    report, text = _core.solve(_text(scenario), epsilon=epsilon, mode=mode, max_rounds=max_rounds, trace=trace)
    out = json.loads(report)
    if trace:
        out["trace"] = text
    return out


def certify_state(scenario, state, epsilon=None):
    """Certify a state dict (as found in a report's "state") against a scenario."""
    if isinstance(state, dict):
        state = json.dumps(state)
    return json.loads(_core.certify_state(_text(scenario), state, epsilon=epsilon))


def oracle(scenario, epsilon=None, delta=None):
    """Brute-force grid search for equilibrium prices (at most 3 goods)."""
    return json.loads(_core.oracle(_text(scenario), epsilon=epsilon, delta=delta))
