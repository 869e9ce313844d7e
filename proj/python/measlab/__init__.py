"""Finite-measure convergence checks."""

import json as _json

from ._core import (
    BorelSet,
    DomainMismatch,
    FiniteMeasure,
    MeaslabError,
    NotFound,
    ParseError,
    ScalarFn,
    Space,
    Status,
    catalog,
    classify_trend,
    integrate,
    known_checks,
)
from . import _core


def describe(name):
    """Bundled scenario as a dict."""
    return _json.loads(_core.describe(name))


def run(scenario, **options):
    """Runs a scenario given as a dict or JSON text; returns one dict per check.

    Options: tol, n_max, resolution, seed.
    """
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    return _json.loads(_core.run_json(text, **options))


def run_catalog(name, **options):
    return run(_core.describe(name), **options)


def function(recipe, dimension=1):
    return ScalarFn.from_recipe(_json.dumps(recipe), dimension)


def measure(recipe, space):
    return FiniteMeasure.from_recipe(_json.dumps(recipe), space)


__all__ = [
    "BorelSet", "DomainMismatch", "FiniteMeasure", "MeaslabError", "NotFound", "ParseError",
    "ScalarFn", "Space", "Status", "catalog", "classify_trend", "describe", "function",
    "integrate", "known_checks", "measure", "run", "run_catalog",
]
