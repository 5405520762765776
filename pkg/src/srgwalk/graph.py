"""Simple undirected graphs, named constructors and strongly-regular detection."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class ParameterError(ValueError):
    """Invalid constructor argument, permutation or family parameters."""


class InfeasibleParametersError(ParameterError):
    """SRG parameters that no graph can have."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Labeled simple graph on vertices ``0..n-1``.

    The adjacency matrix is stored as a read-only boolean array.
    """

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ParameterError(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ParameterError("adjacency must be symmetric")
        if a.diagonal().any():
            raise ParameterError("self-loops are not allowed")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        a = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if i == j:
                raise ParameterError(f"self-loop at vertex {i}")
            a[i, j] = a[j, i] = True
        return cls(a)

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def int_adjacency(self) -> np.ndarray:
        return self.adjacency.astype(np.int64)

    def content_hash(self) -> str:
        """sha256 of the labeled adjacency; identifies the exact input, not its isomorphism class."""
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(np.packbits(self.adjacency).tobytes())
        return h.hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.n, np.packbits(self.adjacency).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={int(self.adjacency.sum()) // 2})"


@dataclass(frozen=True)
class SrgParams:
    """Family parameters (n, k, lambda, mu) of a strongly regular graph."""

    n: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        n, k, lam, mu = self.n, self.k, self.lam, self.mu
        if not (0 <= lam < k < n and mu >= 0):
            raise InfeasibleParametersError(f"need 0 <= lambda < k < n and mu >= 0, got {self.astuple()}")
        if k * (k - lam - 1) != (n - k - 1) * mu:
            raise InfeasibleParametersError(
                f"k(k-lambda-1) != (n-k-1)mu for {self.astuple()}"
            )

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)

    def __str__(self):
        return "({},{},{},{})".format(*self.astuple())


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Move vertex ``i`` to position ``perm[i]``."""
    p = np.asarray(perm, dtype=np.int64)
    if p.shape != (g.n,) or not np.array_equal(np.sort(p), np.arange(g.n)):
        raise ParameterError(f"perm is not a bijection on 0..{g.n - 1}")
    a = np.zeros_like(g.adjacency)
    a[np.ix_(p, p)] = g.adjacency
    return Graph(a)


def detect_srg(g: Graph) -> SrgParams | None:
    """Return the SRG parameters of ``g``, or None.

    Works over the integers: ``g`` qualifies iff it is k-regular and
    A^2 == (k - mu) I + mu J + (lambda - mu) A holds entrywise. Empty and
    complete graphs are rejected since mu or lambda is undefined for them.
    """
    n = g.n
    if n < 2:
        return None
    a = g.int_adjacency()
    deg = a.sum(axis=1)
    k = int(deg[0])
    if not np.all(deg == k) or k == 0 or k == n - 1:
        return None
    a2 = a @ a
    iu = np.triu_indices(n, 1)
    adj_pairs = a[iu] == 1
    lam = int(a2[iu][adj_pairs][0])
    mu = int(a2[iu][~adj_pairs][0])
    expected = (k - mu) * np.eye(n, dtype=np.int64) + mu + (lam - mu) * a
    if not np.array_equal(a2, expected):
        return None
    return SrgParams(n, k, lam, mu)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ParameterError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def rook4x4() -> Graph:
    """Line graph of K_{4,4}: cells of a 4x4 board, adjacent in a shared row or column."""
    cells = [(r, c) for r in range(4) for c in range(4)]
    a = np.array([[u != v and (u[0] == v[0] or u[1] == v[1]) for v in cells] for u in cells])
    return Graph(a)


def shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    cells = [(r, c) for r in range(4) for c in range(4)]
    a = np.array([[((u[0] - v[0]) % 4, (u[1] - v[1]) % 4) in conn for v in cells] for u in cells])
    return Graph(a)


def paley(q: int) -> Graph:
    if not _is_prime(q) or q % 4 != 1:
        raise ParameterError(f"paley needs a prime q = 1 (mod 4), got {q}")
    squares = {(x * x) % q for x in range(1, q)}
    a = np.array([[i != j and (i - j) % q in squares for j in range(q)] for i in range(q)])
    return Graph(a)


_NAMED = {
    "cycle": (cycle, True),
    "path": (path, True),
    "rook4x4": (rook4x4, False),
    "shrikhande": (shrikhande, False),
    "paley": (paley, True),
}

NAMED_GRAPHS = tuple(_NAMED)


def build_named(name: str, param: int | None = None) -> Graph:
    try:
        fn, takes_param = _NAMED[name]
    except KeyError:
        raise ParameterError(f"unknown graph {name!r}; choose from {', '.join(_NAMED)}") from None
    if takes_param:
        if param is None:
            raise ParameterError(f"{name} needs an integer parameter")
        return fn(int(param))
    if param is not None:
        raise ParameterError(f"{name} takes no parameter")
    return fn()
