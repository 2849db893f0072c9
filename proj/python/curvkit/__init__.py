"""Exact curvature tensors and curvature-structure checks."""

import json

from . import _core
from ._core import Error, InputError, ParseError, differentiate, normalize

__all__ = [
    "Error",
    "InputError",
    "ParseError",
    "catalog_ids",
    "check",
    "compare",
    "compute",
    "definition",
    "differentiate",
    "normalize",
    "run",
]


def catalog_ids():
    return list(_core.catalog_ids())


def definition(metric):
    """Expanded metric definition of a catalog id or a JSON file path."""
    return json.loads(_core.definition(metric))


def compute(metric, tensors=("ricci",), seed=7):
    """Nonzero components keyed by index label, e.g. {"ricci": {"11": "..."}}."""
    if isinstance(tensors, str):
        tensors = [tensors]
    return json.loads(_core.compute(metric, list(tensors), seed))


def check(metric, suite="", tables_only=False, corrected=False, seed=7, instantiations=5, points=3):
    return json.loads(_core.check(metric, suite, tables_only, corrected, seed, instantiations, points))


def run(metric, check, seed=7):
    """Runs a single check document, e.g. {"recurrent": "R"}."""
    if not isinstance(check, str):
        check = json.dumps(check)
    return json.loads(_core.run(metric, check, seed))


def compare(first, second, seed=7):
    return json.loads(_core.compare(first, second, seed))
