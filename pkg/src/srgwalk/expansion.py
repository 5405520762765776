"""Short-time expansion of the interacting two-boson walk.

With B = A (+) A, R the double-occupancy projector and P = (I + S)/2,
H = P (u R - B) on the product space, and P commutes with both B and R, so
H^n = P (u R - B)^n. Expanding the word sum and dropping every word that
contains R B R (zero because A has no diagonal) leaves the polynomials in
TERMS. Every word is evaluated in exact integer arithmetic and projected onto
the boson pair basis before the u-dependent weights and (-i t)^n / n! are
applied, so graphs whose projected words agree entrywise as multisets give
bit-identical certificates.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .certificate import delta as cert_delta, GfCertificate
from .evolution import evolve
from .graph import Graph
from .hamiltonians import (
    BOSON,
    TwoParticleBasis,
    h_two_boson,
    kronecker_sum,
    occupancy_projector,
    project,
    swap_matrix,
)

# (sign, power of u, word); a word is read left to right, "B2" = B @ B.
TERMS: tuple[tuple[tuple[int, int, str], ...], ...] = (
    ((1, 0, "I"),),
    ((1, 1, "R"), (-1, 0, "B")),
    ((1, 2, "R"), (1, 0, "B2"), (-1, 1, "R B"), (-1, 1, "B R")),
    (
        (1, 3, "R"),
        (1, 1, "B2 R"),
        (-1, 2, "B R"),
        (-1, 2, "R B"),
        (-1, 0, "B3"),
        (1, 1, "R B2"),
        (1, 1, "B R B"),
    ),
    (
        (1, 4, "R"),
        (1, 2, "B2 R"),
        (-1, 3, "B R"),
        (-1, 1, "B3 R"),
        (1, 2, "R B2 R"),
        (-1, 3, "R B"),
        (-1, 1, "B2 R B"),
        (1, 2, "B R B"),
        (1, 2, "R B2"),
        (1, 0, "B4"),
        (-1, 1, "R B3"),
        (-1, 1, "B R B2"),
    ),
)
MAX_ORDER = len(TERMS) - 1

# the fourth-order pair that separates the (16,6,2,2) graphs
OP4_WORDS = ("B R B2", "B2 R B")
OP6_WORD = "B2 R B3"

DEFAULT_U = 50.0
DEFAULT_T = 0.01
NOISE_REL = 1e-12


class _Words:
    """Integer word matrices on the product space, cached by word."""

    def __init__(self, g: Graph):
        n = g.n
        self.n = n
        self.B = kronecker_sum(g.int_adjacency())
        self.R = occupancy_projector(n)
        self._cache: dict[str, np.ndarray] = {"I": np.eye(n * n, dtype=np.int64)}
        self._bpow = {1: self.B}

    def _b(self, p: int) -> np.ndarray:
        if p not in self._bpow:
            self._bpow[p] = self._b(p - 1) @ self.B
        return self._bpow[p]

    def __call__(self, word: str) -> np.ndarray:
        if word not in self._cache:
            m = None
            for tok in word.split():
                f = self.R if tok == "R" else self._b(int(tok[1:] or 1))
                m = f if m is None else m @ f
            self._cache[word] = m
        return self._cache[word]


@dataclass(frozen=True, eq=False)
class ExpansionTerm:
    order: int
    matrix: np.ndarray  # (I + S)/2 times the order's polynomial, on the N^2 product space
    u: float


def expansion_terms(g: Graph, u: float = DEFAULT_U) -> list[ExpansionTerm]:
    words = _Words(g)
    sym = 0.5 * (np.eye(g.n * g.n, dtype=np.int64) + swap_matrix(g.n))
    out = []
    for order, poly in enumerate(TERMS):
        m = sum(sign * u**p * words(w).astype(float) for sign, p, w in poly)
        out.append(ExpansionTerm(order, sym @ m, float(u)))
    return out


def direct_powers(g: Graph, u: float, max_order: int = MAX_ORDER) -> list[np.ndarray]:
    """H^n for the full product-space Hamiltonian -(I+S)B/2 + uR, by repeated multiplication."""
    n2 = g.n * g.n
    sym = 0.5 * (np.eye(n2) + swap_matrix(g.n))
    h = -sym @ kronecker_sum(g.int_adjacency()) + u * occupancy_projector(g.n)
    out = [np.eye(n2)]
    for _ in range(max_order):
        out.append(out[-1] @ h)
    return out


def projected_terms(g: Graph, u: float = DEFAULT_U, drop: Iterable[str] = ()) -> list[np.ndarray]:
    """Order-n terms on the boson pair basis, optionally without some words."""
    drop = set(drop)
    unknown = drop - {w for poly in TERMS for _, _, w in poly}
    if unknown:
        raise ValueError(f"unknown words {sorted(unknown)}")
    words = _Words(g)
    basis = TwoParticleBasis.build(g.n, BOSON)
    out = []
    for poly in TERMS:
        m = np.zeros((basis.dim, basis.dim))
        for sign, p, w in poly:
            if w not in drop:
                m = m + (sign * u**p) * project(words(w), basis)
        out.append(m)
    return out


def truncated(terms: list[np.ndarray], t: float, order: int) -> np.ndarray:
    return sum((-1j * t) ** n / math.factorial(n) * terms[n] for n in range(order + 1))


def _cert(m: np.ndarray, n: int, t: float, u: float) -> GfCertificate:
    return GfCertificate(np.sort(np.abs(m).ravel()), "boson-series", (t,), u, n)


@dataclass(frozen=True)
class OrderDelta:
    order: int
    delta: float
    scale: float  # L1 norm of the larger of the two certificates

    @property
    def noise_floor(self) -> float:
        return NOISE_REL * self.scale


def per_order_delta(
    g1: Graph,
    g2: Graph,
    u: float = DEFAULT_U,
    t: float = DEFAULT_T,
    max_order: int = MAX_ORDER,
    drop: Iterable[str] = (),
) -> list[OrderDelta]:
    """Delta between the truncated series of two graphs, for truncation orders 0..max_order."""
    if g1.n != g2.n:
        raise ValueError("graphs must have the same vertex count")
    if not 0 <= max_order <= MAX_ORDER:
        raise ValueError(f"max_order must be in 0..{MAX_ORDER}")
    drop = tuple(drop)
    p1 = projected_terms(g1, u, drop)
    p2 = projected_terms(g2, u, drop)
    out = []
    for m in range(max_order + 1):
        c1 = _cert(truncated(p1, t, m), g1.n, t, u)
        c2 = _cert(truncated(p2, t, m), g2.n, t, u)
        scale = max(float(c1.magnitudes.sum()), float(c2.magnitudes.sum()))
        out.append(OrderDelta(m, cert_delta(c1, c2), scale))
    return out


def exact_delta(g1: Graph, g2: Graph, u: float = DEFAULT_U, t: float = DEFAULT_T) -> float:
    """Delta from the full evolution on the same boson basis."""
    m1 = evolve(h_two_boson(g1, u), t).matrix
    m2 = evolve(h_two_boson(g2, u), t).matrix
    return cert_delta(_cert(m1, g1.n, t, u), _cert(m2, g2.n, t, u))


def distinguishing_op4(g: Graph, u: float = DEFAULT_U) -> np.ndarray:
    """(I + S)/2 * u (B R B^2 + B^2 R B) on the product space."""
    words = _Words(g)
    sym = 0.5 * (np.eye(g.n * g.n, dtype=np.int64) + swap_matrix(g.n))
    return sym @ (u * (words(OP4_WORDS[0]) + words(OP4_WORDS[1])))


def distinguishing_op6(g: Graph) -> np.ndarray:
    """(I + S)/2 * B^2 R B^3 on the product space."""
    words = _Words(g)
    sym = 0.5 * (np.eye(g.n * g.n, dtype=np.int64) + swap_matrix(g.n))
    return sym @ words(OP6_WORD)


def operator_certificate(m: np.ndarray, n: int) -> np.ndarray:
    """Sorted magnitudes of a product-space operator on the boson pair basis."""
    return np.sort(np.abs(project(m, TwoParticleBasis.build(n, BOSON))).ravel())


def series_csv(series: list[OrderDelta]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["order", "delta", "scale"])
    for d in series:
        w.writerow([d.order, repr(d.delta), repr(d.scale)])
    return buf.getvalue()
