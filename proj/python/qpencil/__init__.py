"""Rational points on intersections of two quadrics containing a conic.

Instances and reports are exchanged as JSON; exact values are strings.
"""

import json

from ._qpencil import (
    EXIT_EXHAUSTED,
    EXIT_INTERNAL,
    EXIT_INVALID,
    EXIT_MISMATCH,
    EXIT_OBSTRUCTION,
    EXIT_OK,
    QpencilError,
    conic_point,
    hilbert_symbol,
    run,
)
from . import _qpencil


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def validate_instance(instance):
    """Canonical form of an instance (dict or JSON text) as a dict."""
    return json.loads(_qpencil.validate_instance(_text(instance)))


def find_point(instance, height_bound=50, prime_budget=2_000_000):
    """Search result for an instance (dict or JSON text) as a dict."""
    return json.loads(_qpencil.find_point(_text(instance), height_bound, prime_budget))


def replay(report):
    """(ok, mismatches) for a find-point report produced by the CLI."""
    return _qpencil.replay(_text(report))


def generate(n=5, seed=1, kind="planted"):
    """A generated instance as a dict."""
    code, out, err = run(["gen", "--n", str(n), "--seed", str(seed), "--kind", kind])
    if code != EXIT_OK:
        raise QpencilError(err.strip())
    return json.loads(out)


__all__ = [
    "EXIT_EXHAUSTED", "EXIT_INTERNAL", "EXIT_INVALID", "EXIT_MISMATCH", "EXIT_OBSTRUCTION", "EXIT_OK",
    "QpencilError", "conic_point", "find_point", "generate", "hilbert_symbol", "replay", "run",
    "validate_instance",
]
