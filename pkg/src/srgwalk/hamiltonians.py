"""One- and two-particle Hubbard walk Hamiltonians on a graph.

Two-particle matrices are built in two independent ways: directly from the
matrix-element formulas on a pair basis, and as operators on the N^2 product
space (swap S, double-occupancy projector R, Kronecker sum B = A (+) A) that
are then projected onto the same pair basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .graph import Graph

BOSON = "boson"
HARDCORE = "hardcore"
FERMION = "fermion"
SINGLE = "single"
STATISTICS = (BOSON, HARDCORE, FERMION)
WALK_KINDS = (SINGLE, BOSON, HARDCORE, FERMION)

_INV_SQRT2 = 1 / math.sqrt(2)


@dataclass(frozen=True, eq=False)
class TwoParticleBasis:
    """Ordered pair states (i, j), lexicographic, i <= j for bosons and i < j otherwise.

    For fermions |ij> = (|ij> - |ji>)/sqrt(2) with i < j fixes the sign gauge.
    """

    n: int
    statistics: str
    states: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, n: int, statistics: str) -> TwoParticleBasis:
        if statistics not in STATISTICS:
            raise ValueError(f"unknown statistics {statistics!r}")
        start = 0 if statistics == BOSON else 1
        states = tuple((i, j) for i in range(n) for j in range(i + start, n))
        return cls(n, statistics, states)

    @classmethod
    def from_states(cls, n: int, statistics: str, states) -> TwoParticleBasis:
        """Custom ordering/orientation; used to exhibit the fermion sign gauge."""
        states = tuple((int(i), int(j)) for i, j in states)
        if len({frozenset(s) for s in states}) != len(states):
            raise ValueError("duplicate pair states")
        if statistics != BOSON and any(i == j for i, j in states):
            raise ValueError(f"{statistics} basis cannot contain doubly occupied states")
        return cls(n, statistics, states)

    @property
    def dim(self) -> int:
        return len(self.states)

    @cached_property
    def left(self) -> np.ndarray:
        return np.array([s[0] for s in self.states], dtype=np.int64)

    @cached_property
    def right(self) -> np.ndarray:
        return np.array([s[1] for s in self.states], dtype=np.int64)

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {s: a for a, s in enumerate(self.states)}

    def __len__(self):
        return self.dim


def basis_dimension(n: int, statistics: str) -> int:
    return n * (n + 1) // 2 if statistics == BOSON else n * (n - 1) // 2


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    matrix: np.ndarray
    kind: str
    graph: Graph
    basis: TwoParticleBasis | None = None
    u: float = 0.0
    _eig: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigh(self) -> tuple[np.ndarray, np.ndarray]:
        """Cached real-symmetric eigendecomposition."""
        if "wv" not in self._eig:
            try:
                self._eig["wv"] = np.linalg.eigh(self.matrix)
            except np.linalg.LinAlgError as e:
                cond = np.linalg.norm(self.matrix, 2)
                raise np.linalg.LinAlgError(
                    f"eigh failed for {self.kind} Hamiltonian of dim {self.dim} (2-norm {cond:.3g}): {e}"
                ) from e
        return self._eig["wv"]


def h_single(g: Graph) -> Hamiltonian:
    return Hamiltonian(-g.int_adjacency().astype(float), SINGLE, g)


def _four_term(a: np.ndarray, basis: TwoParticleBasis):
    """Delta/adjacency pieces shared by the boson and fermion element formulas."""
    i, j = basis.left[:, None], basis.right[:, None]
    k, l = basis.left[None, :], basis.right[None, :]
    ik_jl = (i == k) * a[j, l]
    jl_ik = (j == l) * a[i, k]
    il_jk = (i == l) * a[j, k]
    jk_il = (j == k) * a[i, l]
    return ik_jl, jl_ik, il_jk, jk_il


def _boson_elements(g: Graph, basis: TwoParticleBasis, u: float) -> np.ndarray:
    a = g.int_adjacency()
    ik_jl, jl_ik, il_jk, jk_il = _four_term(a, basis)
    hop = (ik_jl + jl_ik + il_jk + jk_il).astype(float)
    dbl = basis.left == basis.right
    n_dbl = dbl[:, None].astype(int) + dbl[None, :].astype(int)
    scale = np.where(n_dbl == 0, 1.0, np.where(n_dbl == 1, _INV_SQRT2, 0.0))
    h = -scale * hop
    if dbl.any():
        same = (basis.left[:, None] == basis.left[None, :]) & dbl[:, None] & dbl[None, :]
        h += u * same
    return h


def h_two_boson(g: Graph, u: float) -> Hamiltonian:
    if not math.isfinite(u):
        raise ValueError("finite u required; use h_two_hardcore for the U -> infinity limit")
    basis = TwoParticleBasis.build(g.n, BOSON)
    return Hamiltonian(_boson_elements(g, basis, u), BOSON, g, basis, float(u))


def h_two_hardcore(g: Graph) -> Hamiltonian:
    """Exact U -> infinity limit: the boson matrix with doubly occupied states removed."""
    if g.n < 2:
        raise ValueError("hard-core walk needs n >= 2")
    basis = TwoParticleBasis.build(g.n, HARDCORE)
    return Hamiltonian(_boson_elements(g, basis, 0.0), HARDCORE, g, basis, math.inf)


def h_two_fermion(g: Graph, basis: TwoParticleBasis | None = None) -> Hamiltonian:
    if g.n < 2:
        raise ValueError("fermion walk needs n >= 2")
    if basis is None:
        basis = TwoParticleBasis.build(g.n, FERMION)
    a = g.int_adjacency()
    ik_jl, jl_ik, il_jk, jk_il = _four_term(a, basis)
    h = (ik_jl + jl_ik - il_jk - jk_il).astype(float)
    return Hamiltonian(h, FERMION, g, basis, 0.0)


def walk_hamiltonian(g: Graph, kind: str, u: float = 0.0) -> Hamiltonian:
    if kind == SINGLE:
        return h_single(g)
    if kind == BOSON:
        return h_two_boson(g, u)
    if kind == HARDCORE:
        return h_two_hardcore(g)
    if kind == FERMION:
        return h_two_fermion(g)
    raise ValueError(f"unknown walk kind {kind!r}; choose from {', '.join(WALK_KINDS)}")


# --- product-space operator form -------------------------------------------


@dataclass(frozen=True)
class SwapAndOccupancy:
    S: np.ndarray  # |ij> -> |ji>
    R: np.ndarray  # projector onto |ii>
    B: np.ndarray  # A (x) I + I (x) A


def swap_matrix(n: int) -> np.ndarray:
    idx = np.arange(n * n)
    s = np.zeros((n * n, n * n), dtype=np.int64)
    s[idx, (idx % n) * n + idx // n] = 1
    return s


def occupancy_projector(n: int) -> np.ndarray:
    idx = np.arange(n * n)
    return np.diag((idx // n == idx % n).astype(np.int64))


def kronecker_sum(a: np.ndarray) -> np.ndarray:
    eye = np.eye(a.shape[0], dtype=a.dtype)
    return np.kron(a, eye) + np.kron(eye, a)


def swap_and_occupancy(g: Graph) -> SwapAndOccupancy:
    return SwapAndOccupancy(swap_matrix(g.n), occupancy_projector(g.n), kronecker_sum(g.int_adjacency()))


def operator_form_boson(g: Graph, u: float) -> np.ndarray:
    """-1/2 (I + S)(A (+) A) + u R on the N^2 product space."""
    ops = swap_and_occupancy(g)
    eye = np.eye(g.n * g.n, dtype=np.int64)
    return -0.5 * ((eye + ops.S) @ ops.B) + u * ops.R


def operator_form_fermion(g: Graph) -> np.ndarray:
    """1/2 (I - S)(A (+) A) on the N^2 product space."""
    ops = swap_and_occupancy(g)
    eye = np.eye(g.n * g.n, dtype=np.int64)
    return 0.5 * ((eye - ops.S) @ ops.B)


def embedding(basis: TwoParticleBasis) -> np.ndarray:
    """N^2 x dim isometry whose columns are the pair states in the product space."""
    n = basis.n
    sign = -1.0 if basis.statistics == FERMION else 1.0
    p = np.zeros((n * n, basis.dim))
    for col, (i, j) in enumerate(basis.states):
        if i == j:
            p[i * n + i, col] = 1.0
        else:
            p[i * n + j, col] = _INV_SQRT2
            p[j * n + i, col] = sign * _INV_SQRT2
    return p


def project(m: np.ndarray, basis: TwoParticleBasis) -> np.ndarray:
    """<a| m |b> over the pair basis, computed by gathering product-space entries.

    Equals embedding.T @ m @ embedding, but sums the (up to four) contributing
    entries of ``m`` before the single normalisation multiply, so integer
    input matrices give bit-reproducible results.
    """
    n = basis.n
    fwd = basis.left * n + basis.right
    rev = basis.right * n + basis.left
    if basis.statistics == FERMION:
        total = m[np.ix_(fwd, fwd)] - m[np.ix_(fwd, rev)] - m[np.ix_(rev, fwd)] + m[np.ix_(rev, rev)]
    else:
        total = m[np.ix_(fwd, fwd)] + m[np.ix_(fwd, rev)] + m[np.ix_(rev, fwd)] + m[np.ix_(rev, rev)]
    # (1/sqrt2)^2 is not exactly 0.5 in floating point, so pick the factor per case
    dbl = (basis.left == basis.right).astype(int)
    n_dbl = dbl[:, None] + dbl[None, :]
    factor = np.choose(n_dbl, [0.5, 0.5 * _INV_SQRT2, 0.25])
    return total * factor
