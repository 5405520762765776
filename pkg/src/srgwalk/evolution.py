"""Time evolution U = exp(-i t H) (hbar = 1), spectra and Green's functions."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hamiltonians import Hamiltonian


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    matrix: np.ndarray
    t: float
    kind: str
    u: float
    n: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def evolve(h: Hamiltonian, t: float) -> EvolutionOperator:
    """U = V diag(exp(-i t eps)) V^T from the eigendecomposition of the real symmetric H."""
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    w, v = h.eigh()
    u = (v * np.exp(-1j * t * w)) @ v.T
    return EvolutionOperator(u, float(t), h.kind, h.u, h.graph.n)


class Level(NamedTuple):
    energy: float
    degeneracy: int


@dataclass(frozen=True)
class SpectrumReport:
    levels: tuple[Level, ...]
    grouping_tol: float

    @property
    def distinct(self) -> int:
        return len(self.levels)

    def to_dict(self) -> dict:
        return {
            "grouping_tol": self.grouping_tol,
            "levels": [{"energy": e, "degeneracy": d} for e, d in self.levels],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def group_levels(eigenvalues, tol: float = 1e-9) -> tuple[Level, ...]:
    """Cluster sorted eigenvalues whose neighbours differ by <= tol * max(1, |eps|)."""
    w = np.sort(np.asarray(eigenvalues, dtype=float))
    levels = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > tol * max(1.0, abs(w[i - 1]), abs(w[i])):
            chunk = w[start:i]
            levels.append(Level(float(chunk.mean()), len(chunk)))
            start = i
    return tuple(levels)


def spectrum(h: Hamiltonian, tol: float = 1e-9) -> SpectrumReport:
    if tol <= 0:
        raise ValueError("tol must be positive")
    w, _ = h.eigh()
    return SpectrumReport(group_levels(w, tol), tol)


def green_functions(u: EvolutionOperator) -> np.ndarray:
    """All <a|U|b> over the walk basis, row-major."""
    return u.matrix.ravel()
