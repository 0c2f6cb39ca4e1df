"""Python access to the picentlab verification toolkit."""

import json

from ._core import (
    PicentError,
    __version__,
    character_degrees,
    class_count,
    fixture_json,
    fixture_names,
    group_order,
    subcommands,
)
from . import _core


def verify_st(p, t, mutate="none"):
    return json.loads(_core.verify_st(p, t, mutate))


def verify_ell(ell, p, mutate="none"):
    return json.loads(_core.verify_ell(ell, p, mutate))


def verify_lemmas(seed=1, instances=200):
    return json.loads(_core.verify_lemmas(seed, instances))


def run(subcommand, **options):
    """Run a CLI subcommand in-process; returns (exit_code, report or None, stderr)."""
    code, out, err = _core.run_cli(subcommand, options)
    return code, (json.loads(out) if out else None), err


__all__ = [
    "PicentError",
    "__version__",
    "character_degrees",
    "class_count",
    "fixture_json",
    "fixture_names",
    "group_order",
    "run",
    "subcommands",
    "verify_ell",
    "verify_lemmas",
    "verify_st",
]
