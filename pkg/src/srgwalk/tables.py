"""Closed-form Green's-function tables for noninteracting two-particle walks on SRGs.

With U_1P = alpha I + beta J + gamma A, every matrix element of the
noninteracting two-boson or two-fermion evolution is a quadratic form in
(alpha, beta, gamma) whose shape depends only on the element class (a, b) and
on a few adjacency entries. The number of elements with each shape is a
polynomial in the family parameters, so two graphs of one family share the
whole multiset of Green's functions (up to sign for fermions).

Values are integer coefficient vectors over the monomials
(alpha^2, beta^2, gamma^2, alpha beta, alpha gamma, beta gamma), optionally
divided by sqrt(2).
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Callable

import numpy as np

from .algebra import AlgebraCoeffs, exp_coefficients, sum_rules
from .evolution import evolve
from .graph import Graph, InfeasibleParametersError, ParameterError, SrgParams, detect_srg
from .hamiltonians import BOSON, FERMION, h_two_boson, h_two_fermion

MONOMIALS = ("a2", "b2", "g2", "ab", "ag", "bg")
BOSON_CLASSES = ((4, 0), (3, 0), (3, 1), (2, 0), (2, 1), (2, 2), (1, 2))
FERMION_CLASSES = ((4, 0), (3, 1), (2, 2))

Coeffs = tuple[int, int, int, int, int, int]


def classify(left: tuple[int, int], right: tuple[int, int]) -> tuple[int, int]:
    """(number of distinct indices, size of the multiset overlap of the two pairs)."""
    i, j = left
    k, l = right
    a = len({i, j, k, l})
    b = max((i == k) + (j == l), (i == l) + (j == k))
    return a, b


def evaluate(coeffs: Coeffs, sqrt2: bool, c: AlgebraCoeffs) -> complex:
    al, be, ga = c.alpha, c.beta, c.gamma
    mono = (al * al, be * be, ga * ga, al * be, al * ga, be * ga)
    v = sum(x * m for x, m in zip(coeffs, mono))
    return v / math.sqrt(2) if sqrt2 else v


def format_value(coeffs: Coeffs, sqrt2: bool = False, signed: bool = False) -> str:
    names = ("α²", "β²", "γ²", "αβ", "αγ", "βγ")
    terms = []
    for x, name in zip(coeffs, names):
        if x == 0:
            continue
        mag = "" if abs(x) == 1 else str(abs(x))
        terms.append(("-" if x < 0 else "+", mag + name))
    if not terms:
        return "0"
    s = " ".join(f"{sg} {t}" for sg, t in terms)
    s = s[2:] if s.startswith("+ ") else "-" + s[2:]
    if sqrt2:
        s = f"({s})/√2"
    return f"±({s})" if signed else s


@dataclass(frozen=True)
class TableRow:
    cls: tuple[int, int]
    coeffs: Coeffs
    count: int
    sqrt2: bool = False
    signed: bool = False

    @property
    def label(self) -> str:
        return format_value(self.coeffs, self.sqrt2, self.signed)

    def value(self, c: AlgebraCoeffs) -> complex:
        return evaluate(self.coeffs, self.sqrt2, c)


@dataclass(frozen=True)
class CountTable:
    statistics: str
    params: SrgParams
    rows: tuple[TableRow, ...]
    subtotals: dict

    @property
    def total(self) -> int:
        n = self.params.n
        m = n * (n + 1) if self.statistics == BOSON else n * (n - 1)
        return m * m // 4

    def rows_in(self, cls) -> list[TableRow]:
        return [r for r in self.rows if r.cls == cls]


def _int(x: Fraction, what: str, p: SrgParams) -> int:
    if x.denominator != 1 or x < 0:
        raise InfeasibleParametersError(f"{what} = {x} is not a nonnegative integer for {p}")
    return int(x)


# Count formulas: each takes (N, k, lambda, mu) as Fractions.
_F = Callable[[Fraction, Fraction, Fraction, Fraction], Fraction]


def _n40a(N, k, l, m):
    return N * (k * k * (m + 1) + k * (l * l - l * (m + 2) + m - 1) - 2 * (N - 1) * m) / 4


def _n40b(N, k, l, m):
    return N * m * (N - k - 1) * (k + l - m)


def _n40c(N, k, l, m):
    return N * (N - k - 1) * (k**3 - 2 * k * k * m + (N - 1) * m * m) / (2 * k)


def _n40d(N, k, l, m):
    return N * (N - k - 1) * (k**3 - k * k * (2 * m + 1) + (N - 1) * m * m) / k


def _n40e(N, k, l, m):
    return N * (k - N + 1) * (k - m) * (k * (2 * k - N + 2) - N * m + m) / k


def _n40f(N, k, l, m):
    inner = k * (-3 * k * N + k * (3 * k + 8) + N * N - 5 * N + 6) - 2 * k * (k + 1) * m + (N - 1) * m * m
    return N * (N - k - 1) * inner / (4 * k)


def _n40_fermion_zero(N, k, l, m):
    return (
        N
        * (
            -6 * k**4
            + 2 * k**3 * (5 * N + 6 * m - 7)
            - 4 * k * k * (N - 1) * (N + 3 * m - 2)
            + k * (N - 1) * ((N - 5) * N - 6 * m * m + 6)
            + 6 * (N - 1) ** 2 * m * m
        )
        / (4 * k)
    )


_N31 = (
    lambda N, k, l, m: k * N * l,
    lambda N, k, l, m: N * (N - 1 - k) * m,
    lambda N, k, l, m: 2 * N * (N - 1 - k) * m,
    lambda N, k, l, m: k * N * (-2 * k + N + l),
    lambda N, k, l, m: 2 * k * N * (-2 * k + N + l),
    lambda N, k, l, m: N * (1 + k - N) * (2 + 2 * k - N - m),
)

# (class, coeffs, sqrt2, count)
_BOSON_ROWS: tuple[tuple[tuple[int, int], Coeffs, bool, _F], ...] = (
    ((4, 0), (0, 2, 2, 0, 0, 4), False, _n40a),
    ((4, 0), (0, 2, 1, 0, 0, 3), False, _n40b),
    ((4, 0), (0, 2, 1, 0, 0, 2), False, _n40c),
    ((4, 0), (0, 2, 0, 0, 0, 2), False, _n40d),
    ((4, 0), (0, 2, 0, 0, 0, 1), False, _n40e),
    ((4, 0), (0, 2, 0, 0, 0, 0), False, _n40f),
    ((3, 0), (0, 2, 2, 0, 0, 4), True, lambda N, k, l, m: k * N * (k - l - 1) + k * N * l),
    ((3, 0), (0, 2, 0, 0, 0, 2), True, lambda N, k, l, m: 2 * k * N * (N - k - 1)),
    ((3, 0), (0, 2, 0, 0, 0, 0), True, lambda N, k, l, m: N * (k - N + 1) * (k - N + 2)),
    ((3, 1), (0, 2, 1, 1, 1, 3), False, _N31[0]),
    ((3, 1), (0, 2, 1, 1, 0, 2), False, _N31[1]),
    ((3, 1), (0, 2, 0, 1, 1, 2), False, _N31[2]),
    ((3, 1), (0, 2, 0, 1, 1, 1), False, _N31[3]),
    ((3, 1), (0, 2, 0, 1, 0, 1), False, _N31[4]),
    ((3, 1), (0, 2, 0, 1, 0, 0), False, _N31[5]),
    ((2, 0), (0, 1, 1, 0, 0, 2), False, lambda N, k, l, m: k * N),
    ((2, 0), (0, 1, 0, 0, 0, 0), False, lambda N, k, l, m: N * (N - k - 1)),
    ((2, 1), (0, 2, 0, 2, 2, 2), True, lambda N, k, l, m: 2 * k * N),
    ((2, 1), (0, 2, 0, 2, 0, 0), True, lambda N, k, l, m: 2 * N * (N - k - 1)),
    ((2, 2), (1, 2, 1, 2, 0, 2), False, lambda N, k, l, m: k * N / 2),
    ((2, 2), (1, 2, 0, 2, 0, 0), False, lambda N, k, l, m: N * (N - k - 1) / 2),
    ((1, 2), (1, 1, 0, 2, 0, 0), False, lambda N, k, l, m: N),
)

_BOSON_SUBTOTALS: dict[tuple[int, int], _F] = {
    (4, 0): lambda N, k, l, m: N * (N - 1) * (N - 2) * (N - 3) / 4,
    (3, 0): lambda N, k, l, m: N * (N - 1) * (N - 2),
    (3, 1): lambda N, k, l, m: N * (N - 1) * (N - 2),
    (2, 0): lambda N, k, l, m: N * (N - 1),
    (2, 1): lambda N, k, l, m: 2 * N * (N - 1),
    (2, 2): lambda N, k, l, m: N * (N - 1) / 2,
    (1, 2): lambda N, k, l, m: N,
}

# Fermion values are magnitudes; a stored sign representative has its first
# nonzero coefficient positive.
_FERMION_ROWS: tuple[tuple[tuple[int, int], Coeffs, bool, _F], ...] = (
    ((4, 0), (0, 0, 0, 0, 0, 0), False, _n40_fermion_zero),
    ((4, 0), (0, 0, 1, 0, 0, 1), True, _n40b),
    ((4, 0), (0, 0, 1, 0, 0, 2), True, _n40c),
    ((4, 0), (0, 0, 0, 0, 0, 1), True, _n40e),
    ((3, 1), (0, 0, -1, 1, 1, -1), True, _N31[0]),
    ((3, 1), (0, 0, -1, 1, 0, -2), True, _N31[1]),
    ((3, 1), (0, 0, 0, 1, 1, 0), True, _N31[2]),
    ((3, 1), (0, 0, 0, 1, 1, 1), True, _N31[3]),
    ((3, 1), (0, 0, 0, 1, 0, -1), True, _N31[4]),
    ((3, 1), (0, 0, 0, 1, 0, 0), True, _N31[5]),
    ((2, 2), (1, 0, -1, 2, 0, -2), False, lambda N, k, l, m: k * N / 2),
    ((2, 2), (1, 0, 0, 2, 0, 0), False, lambda N, k, l, m: N * (N - k - 1) / 2),
)

_FERMION_SUBTOTALS: dict[tuple[int, int], _F] = {
    (4, 0): _BOSON_SUBTOTALS[(4, 0)],
    (3, 1): _BOSON_SUBTOTALS[(3, 1)],
    (2, 2): _BOSON_SUBTOTALS[(2, 2)],
}


def _build(statistics, p: SrgParams, row_defs, subtotal_defs) -> CountTable:
    args = tuple(Fraction(x) for x in p.astuple())
    rows = []
    for cls, coeffs, flag, fn in row_defs:
        count = _int(fn(*args), f"count of {format_value(coeffs)} in class {cls}", p)
        if statistics == BOSON:
            rows.append(TableRow(cls, coeffs, count, sqrt2=flag))
        else:
            rows.append(TableRow(cls, coeffs, count, signed=flag))
    subtotals = {cls: _int(fn(*args), f"subtotal {cls}", p) for cls, fn in subtotal_defs.items()}
    return CountTable(statistics, p, tuple(rows), subtotals)


def boson_table(p: SrgParams) -> CountTable:
    """All 22 Green's-function values of the noninteracting two-boson walk with their counts."""
    return _build(BOSON, p, _BOSON_ROWS, _BOSON_SUBTOTALS)


def fermion_table(p: SrgParams) -> CountTable:
    """Magnitude classes of the noninteracting two-fermion Green's functions with their counts."""
    return _build(FERMION, p, _FERMION_ROWS, _FERMION_SUBTOTALS)


def count_40a(p: SrgParams) -> int:
    """Class-(4,0) elements whose four cross adjacencies are all 1, from the sum rules.

    4 n = sum_i (A^4)_ii - 2 sum_ij (A^2)_ij + sum_ij A_ij
    """
    s = sum_rules(p)
    four_n = s.trace_a4 - 2 * s.sum_a2 + s.sum_a
    if four_n % 4:
        raise InfeasibleParametersError(f"non-integral count_40a for {p}")
    return four_n // 4


def count_40b(p: SrgParams) -> int:
    """Class-(4,0) elements with exactly three of four cross adjacencies, from the sum rules."""
    s = sum_rules(p)
    return s.sum_a3 - s.trace_a3 - s.trace_a4


# --- brute-force oracles ------------------------------------------------------


def brute_count_40a(g: Graph) -> int:
    a = g.int_adjacency()
    n = g.n
    total = 0
    for i, j in combinations(range(n), 2):
        for k, l in combinations(range(n), 2):
            total += a[j, l] * a[i, l] * a[j, k] * a[i, k]
    return int(total)


def brute_count_40b(g: Graph) -> int:
    """Ordered quadruple sum of A_jl A_il A_jk (1 - A_ik) over i != k, i != j, k != l.

    Each (row, column) element with exactly three of its four cross
    adjacencies present is hit once, by the labeling that puts the missing
    one at (i, k).
    """
    a = g.int_adjacency()
    n = g.n
    total = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(n):
                if k == i:
                    continue
                for l in range(n):
                    if l != k:
                        total += a[j, l] * a[i, l] * a[j, k] * (1 - a[i, k])
    return int(total)


def _one_particle(a, x, y) -> tuple[int, int, int]:
    """<x| alpha I + beta J + gamma A |y> as (alpha, beta, gamma) weights."""
    return (int(x == y), 1, int(a[x, y]))


def _product(p, q) -> list[int]:
    return [
        p[0] * q[0],
        p[1] * q[1],
        p[2] * q[2],
        p[0] * q[1] + p[1] * q[0],
        p[0] * q[2] + p[2] * q[0],
        p[1] * q[2] + p[2] * q[1],
    ]


def symbolic_element(a: np.ndarray, left, right, statistics: str) -> tuple[Coeffs, bool]:
    """Coefficient vector of <left| U_1P (x) U_1P |right> on the symmetrised pair states."""
    i, j = left
    k, l = right
    direct = _product(_one_particle(a, i, k), _one_particle(a, j, l))
    cross = _product(_one_particle(a, i, l), _one_particle(a, j, k))
    if statistics == FERMION:
        return tuple(x - y for x, y in zip(direct, cross)), False
    doubles = (i == j) + (k == l)
    if doubles == 0:
        return tuple(x + y for x, y in zip(direct, cross)), False
    if doubles == 1:
        # (1/sqrt2)(x + y) with x == y
        return tuple(x + y for x, y in zip(direct, cross)), True
    return tuple(direct), False


def _canonical_sign(coeffs: Coeffs) -> Coeffs:
    for x in coeffs:
        if x:
            return coeffs if x > 0 else tuple(-y for y in coeffs)
    return coeffs


def enumerate_elements(g: Graph, statistics: str) -> Counter:
    """Exact counts of (class, coeffs, sqrt2) by walking every basis pair; fermion values up to sign."""
    a = g.int_adjacency()
    n = g.n
    if statistics == BOSON:
        states = list(combinations_with_replacement(range(n), 2))
    elif statistics == FERMION:
        states = list(combinations(range(n), 2))
    else:
        raise ValueError(f"no closed-form table for {statistics!r}")
    out: Counter = Counter()
    for left in states:
        for right in states:
            coeffs, s2 = symbolic_element(a, left, right, statistics)
            if statistics == FERMION:
                coeffs = _canonical_sign(coeffs)
            out[(classify(left, right), coeffs, s2)] += 1
    return out


def table_counter(table: CountTable) -> Counter:
    out: Counter = Counter()
    for r in table.rows:
        if r.count:
            coeffs = _canonical_sign(r.coeffs) if table.statistics == FERMION else r.coeffs
            out[(r.cls, coeffs, r.sqrt2)] += r.count
    return out


# --- numeric reconciliation ---------------------------------------------------


@dataclass
class RowCheck:
    cls: tuple[int, int]
    value: str
    coeffs: Coeffs
    expected_value: complex
    expected_count: int
    observed_count: int
    status: str
    # set when rows coincide at this t; observed_count then covers the merged group
    group_expected: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["cls"] = list(self.cls)
        d["coeffs"] = dict(zip(MONOMIALS, self.coeffs))
        d["expected_value"] = [self.expected_value.real, self.expected_value.imag]
        return d


@dataclass
class ReconciliationReport:
    statistics: str
    params: SrgParams
    t: float
    coeffs: AlgebraCoeffs
    rows: list[RowCheck] = field(default_factory=list)
    subtotals: dict = field(default_factory=dict)  # cls -> (formula, table rows sum, observed)
    total_expected: int = 0
    total_observed: int = 0
    collisions: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            all(r.status == "pass" for r in self.rows)
            and all(len(set(v)) == 1 for v in self.subtotals.values())
            and self.total_expected == self.total_observed
        )

    def failures(self) -> list[RowCheck]:
        return [r for r in self.rows if r.status != "pass"]

    def raise_for_failure(self):
        if not self.ok:
            lines = [
                f"class {r.cls} value {r.value}={r.expected_value:.6g}: expected {r.expected_count}, observed {r.observed_count}"
                for r in self.failures()
            ]
            bad_sub = {c: v for c, v in self.subtotals.items() if len(set(v)) != 1}
            raise ReconciliationError("; ".join(lines) or f"subtotal mismatch {bad_sub}")

    def to_dict(self) -> dict:
        return {
            "statistics": self.statistics,
            "family": list(self.params.astuple()),
            "t": self.t,
            "alpha": [complex(self.coeffs.alpha).real, complex(self.coeffs.alpha).imag],
            "beta": [complex(self.coeffs.beta).real, complex(self.coeffs.beta).imag],
            "gamma": [complex(self.coeffs.gamma).real, complex(self.coeffs.gamma).imag],
            "ok": self.ok,
            "rows": [r.to_dict() for r in self.rows],
            "subtotals": {
                f"{c[0]},{c[1]}": dict(zip(("formula", "rows", "observed"), v)) for c, v in self.subtotals.items()
            },
            "total_expected": self.total_expected,
            "total_observed": self.total_observed,
            "collisions": self.collisions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class ReconciliationError(AssertionError):
    pass


def _element_classes(basis) -> np.ndarray:
    """(a, b) of every (row, col) basis pair, as an (dim, dim, 2) int array."""
    i, j = basis.left[:, None], basis.right[:, None]
    k, l = basis.left[None, :], basis.right[None, :]
    quad = np.stack(np.broadcast_arrays(i, j, k, l), axis=-1)
    quad = np.sort(quad, axis=-1)
    a = 1 + (np.diff(quad, axis=-1) != 0).sum(axis=-1)
    b = np.maximum((i == k).astype(int) + (j == l), (i == l).astype(int) + (j == k))
    return np.stack([a, b], axis=-1)


def verify_tables(g: Graph, t: float, statistics: str = BOSON, tol: float = 1e-9) -> ReconciliationReport:
    """Check the closed-form table against the numerically evolved noninteracting walk.

    Within each element class, every table row is evaluated at the family's
    (alpha, beta, gamma) and the numerically evolved Green's functions lying
    within ``tol`` of it are counted. Rows of one class whose values fall
    within 10 * tol of each other are merged and reported as a collision,
    which means ``t`` cannot separate them.

    The fermion Hamiltonian is +A on pair states, so its evolution is built
    from U_1P at -t; magnitudes are compared.
    """
    p = detect_srg(g)
    if p is None:
        raise ParameterError("verify_tables needs a strongly regular graph")
    if statistics == BOSON:
        table = boson_table(p)
        coeffs = exp_coefficients(p, t)
        h = h_two_boson(g, 0.0)
    elif statistics == FERMION:
        table = fermion_table(p)
        coeffs = exp_coefficients(p, -t)
        h = h_two_fermion(g)
    else:
        raise ValueError(f"no closed-form table for {statistics!r}")

    gf = evolve(h, t).matrix
    if statistics == FERMION:
        gf = np.abs(gf)
    classes = _element_classes(h.basis)

    report = ReconciliationReport(statistics, p, float(t), coeffs)
    for cls, subtotal in table.subtotals.items():
        mask = (classes[..., 0] == cls[0]) & (classes[..., 1] == cls[1])
        vals = gf[mask]
        rows = table.rows_in(cls)
        targets = [abs(r.value(coeffs)) if statistics == FERMION else r.value(coeffs) for r in rows]

        # merge rows whose values coincide at this t
        groups: list[list[int]] = []
        for idx, v in enumerate(targets):
            for grp in groups:
                if abs(targets[grp[0]] - v) <= 10 * tol:
                    grp.append(idx)
                    break
            else:
                groups.append([idx])

        observed_sum = 0
        for grp in groups:
            expected = sum(rows[x].count for x in grp)
            observed = int(np.count_nonzero(np.abs(vals - targets[grp[0]]) <= tol))
            observed_sum += observed
            collided = len(grp) > 1
            if collided:
                report.collisions.append(f"class {cls}: " + " == ".join(rows[x].label for x in grp))
            for x in grp:
                r = rows[x]
                report.rows.append(
                    RowCheck(
                        cls,
                        r.label,
                        r.coeffs,
                        complex(r.value(coeffs)),
                        r.count,
                        observed,
                        "pass" if observed == expected else "fail",
                        expected if collided else None,
                    )
                )
        report.subtotals[cls] = (subtotal, sum(r.count for r in rows), int(mask.sum()))
        if observed_sum != mask.sum():
            report.rows.append(
                RowCheck(cls, "<unmatched>", (0,) * 6, complex("nan"), 0, int(mask.sum()) - observed_sum, "fail")
            )
    report.total_expected = table.total
    report.total_observed = int(gf.size)
    return report
