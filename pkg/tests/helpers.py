"""Shared fixtures-free helpers for the test suite."""

import numpy as np

from srgwalk.graph import Graph, path, relabel


def random_graph(rng, n, p=None):
    p = rng.uniform(0.2, 0.8) if p is None else p
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


def random_perm(rng, n):
    return rng.permutation(n)


def path3_pair():
    """3-vertex paths; B is A with vertices 1 and 2 swapped, so its centre is vertex 2."""
    a = path(3)
    return a, relabel(a, [0, 2, 1])
