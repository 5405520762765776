"""Green's-function certificates and the Delta comparison.

A certificate is the ascending list of |<a|U(t)|b>| over the full walk
basis. Relabeling a graph permutes (and for fermions re-signs) the basis, so
the list is an isomorphism invariant; Delta > threshold therefore proves two
graphs non-isomorphic. Delta <= threshold proves nothing.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .evolution import EvolutionOperator, evolve, green_functions
from .graph import Graph
from .hamiltonians import BOSON, FERMION, HARDCORE, SINGLE, walk_hamiltonian

DEFAULT_T = 1.0
MULTI_TIMES = (0.7, 1.0, 1.3)
THRESHOLD_PER_ENTRY = 1e-8

DISTINGUISHED = "distinguished"
NOT_DISTINGUISHED = "not-distinguished"


class IncomparableCertificatesError(ValueError):
    pass


def gf_count(kind: str, n: int) -> int:
    if kind == SINGLE:
        return n * n
    if kind == BOSON:
        return n * n * (n + 1) ** 2 // 4
    if kind in (HARDCORE, FERMION):
        return n * n * (n - 1) ** 2 // 4
    raise ValueError(f"unknown walk kind {kind!r}")


@dataclass(frozen=True, eq=False)
class GfCertificate:
    magnitudes: np.ndarray
    kind: str
    t: tuple[float, ...]
    u: float
    n: int

    def __post_init__(self):
        m = np.asarray(self.magnitudes, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "magnitudes", m)
        object.__setattr__(self, "t", tuple(float(x) for x in np.atleast_1d(self.t)))

    @property
    def meta(self) -> tuple:
        return (self.kind, self.t, self.u, self.n)

    def __len__(self):
        return len(self.magnitudes)


def certificate(u: EvolutionOperator) -> GfCertificate:
    return GfCertificate(np.sort(np.abs(green_functions(u))), u.kind, (u.t,), u.u, u.n)


def graph_certificate(g: Graph, kind: str, t: float | Sequence[float] = DEFAULT_T, u: float = 0.0) -> GfCertificate:
    """Certificate of ``g``; several times give the concatenation of per-time certificates."""
    times = tuple(float(x) for x in np.atleast_1d(t))
    h = walk_hamiltonian(g, kind, u)
    parts = [certificate(evolve(h, x)) for x in times]
    return GfCertificate(np.concatenate([p.magnitudes for p in parts]), kind, times, h.u, g.n)


def delta(a: GfCertificate, b: GfCertificate) -> float:
    """L1 distance between two sorted magnitude lists."""
    if a.meta != b.meta or len(a) != len(b):
        raise IncomparableCertificatesError(f"cannot compare {a.meta} (len {len(a)}) with {b.meta} (len {len(b)})")
    return float(np.abs(a.magnitudes - b.magnitudes).sum())


def default_threshold(length: int) -> float:
    return THRESHOLD_PER_ENTRY * length


@dataclass(frozen=True)
class ComparisonResult:
    delta: float
    threshold: float
    verdict: str
    pair: tuple = ("A", "B")
    reason: str = ""

    @property
    def distinguished(self) -> bool:
        return self.verdict == DISTINGUISHED

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "delta": None if math.isinf(self.delta) else self.delta,
            "threshold": self.threshold,
            "verdict": self.verdict,
            "reason": self.reason,
        }


def _verdict(d: float, threshold: float) -> str:
    return DISTINGUISHED if d > threshold else NOT_DISTINGUISHED


def compare(
    g1: Graph,
    g2: Graph,
    kind: str = HARDCORE,
    t: float | Sequence[float] = DEFAULT_T,
    u: float = 0.0,
    threshold: float | None = None,
    pair: tuple = ("A", "B"),
) -> ComparisonResult:
    if g1.n != g2.n:
        return ComparisonResult(math.inf, threshold or 0.0, DISTINGUISHED, pair, "different vertex counts")
    c1 = graph_certificate(g1, kind, t, u)
    c2 = graph_certificate(g2, kind, t, u)
    if threshold is None:
        threshold = default_threshold(len(c1))
    d = delta(c1, c2)
    return ComparisonResult(d, threshold, _verdict(d, threshold), pair)


# --- batch all-pairs --------------------------------------------------------


@dataclass(frozen=True)
class PairResult:
    i: int
    j: int
    delta: float
    verdict: str
    reason: str = ""


@dataclass
class BatchReport:
    ids: list[str]
    kind: str
    t: tuple[float, ...]
    u: float
    pairs: list[PairResult]
    min_delta: float
    argmin: tuple[int, int] | None
    threshold: dict[int, float] = field(default_factory=dict)

    @property
    def n_comparisons(self) -> int:
        return len(self.pairs)

    def counts(self) -> dict[str, int]:
        out = {DISTINGUISHED: 0, NOT_DISTINGUISHED: 0}
        for p in self.pairs:
            out[p.verdict] += 1
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "id_i", "id_j", "delta", "verdict", "reason"])
        for p in self.pairs:
            d = "inf" if math.isinf(p.delta) else repr(p.delta)
            w.writerow([p.i, p.j, self.ids[p.i], self.ids[p.j], d, p.verdict, p.reason])
        return buf.getvalue()

    def summary(self) -> dict:
        finite = self.argmin is not None and not math.isinf(self.min_delta)
        return {
            "graphs": len(self.ids),
            "comparisons": self.n_comparisons,
            "kind": self.kind,
            "t": list(self.t),
            "u": None if math.isinf(self.u) else self.u,
            "min_delta": self.min_delta if finite else None,
            "argmin": [self.ids[self.argmin[0]], self.ids[self.argmin[1]]] if finite else None,
            "counts": self.counts(),
            "thresholds": {str(n): th for n, th in sorted(self.threshold.items())},
        }


def _certificate_task(args):
    g, kind, t, u = args
    return graph_certificate(g, kind, t, u)


def batch_certificates(graphs: Sequence[Graph], kind: str, t, u: float, workers: int = 1) -> list[GfCertificate]:
    tasks = [(g, kind, t, u) for g in graphs]
    if workers <= 1 or len(tasks) <= 1:
        return [_certificate_task(x) for x in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(_certificate_task, tasks))


def batch_min_delta(
    graphs: Sequence[Graph],
    kind: str = HARDCORE,
    t: float | Sequence[float] = DEFAULT_T,
    u: float = 0.0,
    threshold: float | None = None,
    workers: int = 1,
    ids: Sequence[str] | None = None,
) -> BatchReport:
    """All C(m, 2) comparisons with a deterministic minimum.

    Certificates are computed once per graph (in parallel when workers > 1)
    and compared in a fixed order, so results do not depend on ``workers``.
    Graphs with different vertex counts are never evolved against each other
    and are reported as distinguished. Ties for the minimum go to the
    lexicographically smallest index pair.
    """
    if len(graphs) < 2:
        raise ValueError("need at least two graphs")
    ids = list(ids) if ids is not None else [str(i) for i in range(len(graphs))]
    certs = batch_certificates(graphs, kind, t, u, workers)
    by_n: dict[int, list[int]] = {}
    for idx, g in enumerate(graphs):
        by_n.setdefault(g.n, []).append(idx)
    thresholds = {
        n: threshold if threshold is not None else default_threshold(len(certs[members[0]]))
        for n, members in by_n.items()
    }

    stack = {n: np.stack([certs[i].magnitudes for i in members]) for n, members in by_n.items()}
    row_of = {idx: pos for members in by_n.values() for pos, idx in enumerate(members)}

    pairs = []
    best, arg = math.inf, None
    m = len(graphs)
    for i in range(m):
        ni = graphs[i].n
        same = np.abs(stack[ni] - stack[ni][row_of[i]]).sum(axis=1)
        for j in range(i + 1, m):
            if graphs[j].n != ni:
                pairs.append(PairResult(i, j, math.inf, DISTINGUISHED, "different vertex counts"))
                continue
            d = float(same[row_of[j]])
            pairs.append(PairResult(i, j, d, _verdict(d, thresholds[ni])))
            if d < best:
                best, arg = d, (i, j)
    return BatchReport(ids, kind, certs[0].t, certs[0].u, pairs, best, arg, thresholds)


def default_workers() -> int:
    return os.cpu_count() or 1
