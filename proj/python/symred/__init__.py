"""Python interface to the symred symmetry reduction toolkit.

Analyses return the same versioned JSON reports as the command line tool,
decoded into dictionaries.
"""

import json

from . import _symred
from ._symred import AnalysisError, ParseError, SamplingStarvation, builtin_ids, builtin_source

__all__ = [
    "AnalysisError",
    "ParseError",
    "SamplingStarvation",
    "builtin_ids",
    "builtin_source",
    "classify",
    "closure",
    "defect",
    "differentiate",
    "evaluate",
    "kernel",
    "normalize",
    "residual",
    "run",
]


def _params(params):
    return {k: str(v) for k, v in (params or {}).items()}


def run(*args):
    """Runs a command line; returns (exit code, stdout, stderr)."""
    return _symred.run([str(a) for a in args])


def normalize(text):
    return _symred.normalize(text)


def differentiate(text, var):
    return _symred.differentiate(text, var)


def evaluate(text, **values):
    return _symred.evaluate(text, {k: complex(v) for k, v in values.items()})


def classify(workspace, algebra, candidate=None, params=None, seed=None):
    return json.loads(_symred.classify(workspace, algebra, candidate, _params(params), seed))


def defect(workspace, algebra, candidate, params=None, seed=None):
    return json.loads(_symred.defect(workspace, algebra, candidate, _params(params), seed))


def residual(workspace, candidate, system=None, params=None, seed=None):
    return json.loads(_symred.residual(workspace, candidate, system, _params(params), seed))


def kernel(workspace, algebra, candidate, params=None, seed=None):
    return json.loads(_symred.kernel(workspace, algebra, candidate, _params(params), seed))


def closure(workspace, algebra, within=None, params=None):
    return json.loads(_symred.closure(workspace, algebra, within, _params(params)))
