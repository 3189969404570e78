"""Exact cluster algebra and q-character computations."""

import json

from . import _clq
from ._clq import ClqError, dimension, fpoly, positive_roots

__all__ = ["ClqError", "atlas", "dimension", "fm", "fpoly", "mutate", "positive_roots", "truncated", "verify"]


def atlas(type, i0=(), ell=1, max_seeds=100000):
    return json.loads(_clq.atlas_json(type, list(i0), ell, max_seeds))


def truncated(type, root, i0=(), route="fpoly"):
    return json.loads(_clq.truncated_json(type, list(root), list(i0), route))


def fm(type, mono):
    return json.loads(_clq.fm_json(type, mono))


def verify(type, samples=1000, seed=1):
    return json.loads(_clq.verify_json(type, samples, seed))


def mutate(type, seq):
    """Seed after mutating the initial seed along seq (1-based directions)."""
    return json.loads(_clq.mutate_json(type, list(seq)))
