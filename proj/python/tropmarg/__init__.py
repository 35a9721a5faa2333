"""Exact tropical matrix algebra, marginal sets and key-exchange protocols.

Matrices are nested lists. Entries are ints, or strings for big integers,
rationals ("p/q") and infinities ("inf", "-inf"). Documents such as
transcripts and set files are dicts in the command-line tool's formats.
"""

import json

from . import _core
from ._core import MalformedInput, NotMarginal, SamplerExhausted

__all__ = [
    "MalformedInput",
    "NotMarginal",
    "SamplerExhausted",
    "attack",
    "fixture_names",
    "golden_checks",
    "mat_mul",
    "residual_left",
    "residual_right",
    "run_fixture",
    "run_protocol",
    "sample_marginal",
    "verify_marginal",
]


def residual_right(a, semiring="min-plus"):
    """Extreme X with A X = A."""
    return json.loads(_core.residual_right(json.dumps(a), semiring))


def residual_left(a, semiring="min-plus"):
    """Extreme X with X A = A."""
    return json.loads(_core.residual_left(json.dumps(a), semiring))


def mat_mul(a, b, semiring="min-plus"):
    return json.loads(_core.mat_mul(json.dumps(a), json.dumps(b), semiring))


def sample_marginal(word, matrices, semiring="min-plus", count=3, seed=0, encoding="raw"):
    """Returns (word document, set document).

    word is one of right, left, sandwich, additive (one matrix),
    five-factor (three) or chain (two or more).
    """
    out = json.loads(_core.sample_marginal(word, json.dumps(matrices), semiring, count, seed, encoding))
    return out["word"], out["set"]


def verify_marginal(set_doc, word_doc):
    """One bool per tuple of the set document."""
    return _core.verify_marginal(json.dumps(set_doc), json.dumps(word_doc))


def run_protocol(protocol, params, seed=None):
    """Runs sidelnikov, one-sided, sandwich or multiblock on a params document."""
    if seed is None:
        seed = params.get("seed", 0)
    return json.loads(_core.run_protocol(protocol, json.dumps(params), seed))


def run_fixture(name):
    """Transcript of a worked example; see fixture_names()."""
    return json.loads(_core.run_fixture(name))


def fixture_names():
    return list(_core.fixture_names())


def attack(transcript, degree=2):
    """Decomposition attack report for a transcript document."""
    return json.loads(_core.attack(json.dumps(transcript), degree))


def golden_checks():
    """Worked-example checks, one dict each with group, name, passed, detail."""
    return json.loads(_core.golden_checks())
