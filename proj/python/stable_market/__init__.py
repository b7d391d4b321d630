"""Pairwise-stable outcomes for two-sided markets with integer prices.

Instances, outcomes and traces use the same JSON layout as the
``stable-market`` command-line tool. Every function accepts either a JSON
string or an already-decoded dict/list and returns decoded Python objects.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    DomainError,
    GuardError,
    InvalidInstanceError,
    InvariantError,
    ParseError,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "GuardError",
    "InvalidInstanceError",
    "InvariantError",
    "ParseError",
    "audit",
    "generate",
    "max_acceptable_price",
    "min_decrement",
    "oracle",
    "solve",
    "validate",
    "verify",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def solve(instance):
    """Run the solver; returns ``(outcome, trace)``."""
    outcome, trace = _core.solve(_text(instance))
    return json.loads(outcome), json.loads(trace)


def verify(instance, outcome):
    return json.loads(_core.verify(_text(instance), _text(outcome)))


def audit(instance, trace):
    return json.loads(_core.audit(_text(instance), _text(trace)))


def generate(config=None, **fields):
    """Seeded random instance. ``fields`` override keys of ``config``."""
    merged = dict(json.loads(_text(config)) if config is not None else {}, **fields)
    return json.loads(_core.generate(json.dumps(merged)))


def validate(instance):
    return json.loads(_core.validate(_text(instance)))


def oracle(instance):
    """Every stable outcome of a tiny instance."""
    return json.loads(_core.oracle(_text(instance)))


def max_acceptable_price(instance, seller, buyer):
    return _core.max_acceptable_price(_text(instance), seller, buyer)


def min_decrement(instance, seller, buyer, price, target):
    return _core.min_decrement(_text(instance), seller, buyer, price, str(target))
