"""Conditioned spatial trees, quadrangulations and the Brownian snake."""

import json

from ._condtree import (
    Error,
    count_well_labelled,
    ks_two_sample,
    reroot,
    run_cli,
    sample_snake,
    sample_tree,
    tree_from_quad_json,
)
from . import _condtree

__all__ = [
    "Error",
    "count_well_labelled",
    "ks_two_sample",
    "quad_code",
    "quad_distances",
    "quad_from_tree",
    "reroot",
    "run_cli",
    "sample_quad",
    "sample_snake",
    "sample_tree",
    "tree_from_quad",
    "verify_identity",
]


def verify_identity(identity, n, mu="geometric-half", gamma="uniform3"):
    """Exact check of a re-rooting identity; returns the report as a dict."""
    return json.loads(_condtree.verify_identity_json(identity, n, mu, gamma))


def quad_from_tree(counts, labels):
    """Quadrangulation (as a dict) of a well-labelled tree."""
    return json.loads(_condtree.quad_from_tree_json(counts, labels))


def tree_from_quad(quad):
    return tree_from_quad_json(json.dumps(quad))


def quad_distances(quad):
    return _condtree.quad_distances(json.dumps(quad))


def quad_code(quad):
    return _condtree.quad_code(json.dumps(quad))


def sample_quad(n, seed, stream=0):
    return json.loads(_condtree.sample_quad_json(n, seed, stream))
