"""Relational complexity toolkit: permutation groups, witnesses and beautiful subsets."""

import json as _json

from ._core import Group, __version__, parse_group
from . import _core


def _spec(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def action_group(spec):
    return _core.action_group(_spec(spec))


def check_binary(spec, max_len=3, budget_ms=0):
    return _json.loads(_core.check_binary(_spec(spec), max_len, budget_ms))


def find_beautiful(spec, seed=1, budget_ms=0):
    return _json.loads(_core.find_beautiful(_spec(spec), seed, budget_ms))


def verify_case(case_id, budget_ms=None, seed=None):
    return _json.loads(_core.verify_case(case_id, budget_ms, seed))


def run_all(filter="", threads=1):
    return _json.loads(_core.run_all(filter, threads))


def list_catalog():
    return _json.loads(_core.list_catalog())


def replay(report):
    return _core.replay(_json.dumps(report))


__all__ = [
    "Group",
    "action_group",
    "check_binary",
    "find_beautiful",
    "list_catalog",
    "parse_group",
    "replay",
    "run_all",
    "verify_case",
]
