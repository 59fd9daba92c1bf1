"""Python front end for the credential performance lab.

Field and curve values are plain Python ints. Keys, credentials and bench
records use the same JSON documents as the ``abc`` command-line tool.
"""

import json

from . import _core
from ._core import (
    AbcError,
    P,
    Point,
    Q,
    bit_length,
    fe_add,
    fe_inv,
    fe_mul,
    fe_sub,
    fixture_attributes,
    mod_pow,
    sc_reduce_wide,
    scalar_mul,
    scalar_mul_counted,
)

__all__ = [
    "AbcError",
    "P",
    "Point",
    "Q",
    "bit_length",
    "fe_add",
    "fe_inv",
    "fe_mul",
    "fe_sub",
    "fixture_attributes",
    "mod_pow",
    "sc_reduce_wide",
    "scalar_mul",
    "scalar_mul_counted",
    "keygen",
    "issue",
    "verify",
    "frame_encode",
    "frame_decode",
    "run_benchmark",
    "summarize",
    "render_report",
]


def keygen(scheme="all", seed=None):
    """Return (issuer_keys, public_keys) as dicts."""
    secret, public = _core.keygen(scheme, seed)
    return json.loads(secret), json.loads(public)


def issue(scheme, issuer_keys, attributes=None, count=10, seed=None):
    """Issue a credential dict; defaults to the first `count` fixture attributes."""
    return json.loads(_core.issue(scheme, json.dumps(issuer_keys), attributes, count, seed))


def verify(public_keys, credential):
    return _core.verify(json.dumps(public_keys), json.dumps(credential))


def frame_encode(msg_type, payload):
    return _core.frame_encode(msg_type, json.dumps(payload))


def frame_decode(data):
    msg_type, payload = _core.frame_decode(data)
    return msg_type, json.loads(payload)


def run_benchmark(config):
    """Run a bench grid in-process; returns {"records": [...], "failed_cells": [...]}."""
    return json.loads(_core.run_benchmark(json.dumps(config)))


def summarize(records):
    return json.loads(_core.summarize(json.dumps(records)))


def render_report(records, fmt="markdown"):
    return _core.render_report(json.dumps(records), fmt)
