"""The {I, J, A} algebra of a strongly regular graph.

Every polynomial or analytic function of an SRG adjacency matrix A can be
written as alpha I + beta J + gamma A with coefficients fixed by the family
parameters alone, because A^2 = (k - mu) I + mu J + (lambda - mu) A,
J^2 = n J and AJ = JA = kJ.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import Graph, InfeasibleParametersError, SrgParams


@dataclass(frozen=True)
class AlgebraCoeffs:
    alpha: complex
    beta: complex
    gamma: complex

    def astuple(self):
        return (self.alpha, self.beta, self.gamma)

    def matrix(self, g: Graph) -> np.ndarray:
        """alpha I + beta J + gamma A for the given graph."""
        n = g.n
        dtype = np.result_type(*(np.asarray(c) for c in self.astuple()), np.int64)
        m = np.full((n, n), self.beta, dtype=dtype)
        m += self.gamma * g.int_adjacency()
        m[np.diag_indices(n)] += self.alpha
        return m


class SpectrumLevel(NamedTuple):
    eigenvalue: float
    multiplicity: int


def restricted_eigenvalues(p: SrgParams) -> tuple[float, float]:
    """Roots theta >= tau of x^2 - (lambda - mu) x - (k - mu)."""
    b = p.lam - p.mu
    disc = b * b + 4 * (p.k - p.mu)
    if disc < 0:
        raise InfeasibleParametersError(f"complex restricted eigenvalues for {p}")
    r = math.sqrt(disc)
    return (b + r) / 2, (b - r) / 2


def srg_spectrum(p: SrgParams) -> list[SpectrumLevel]:
    """Adjacency spectrum, ascending, with equal eigenvalues merged.

    The multiplicities of theta and tau follow from m_theta + m_tau = n - 1
    and trace(A) = k + m_theta theta + m_tau tau = 0.
    """
    theta, tau = restricted_eigenvalues(p)
    if theta == tau:
        raise InfeasibleParametersError(f"degenerate restricted eigenvalues for {p}")
    m_theta = (-p.k - (p.n - 1) * tau) / (theta - tau)
    m_tau = (p.n - 1) - m_theta
    levels: dict[float, int] = {}
    for ev, m in ((float(p.k), 1.0), (theta, m_theta), (tau, m_tau)):
        mi = round(m)
        if abs(m - mi) > 1e-8 or mi < 0:
            raise InfeasibleParametersError(f"non-integral multiplicity {m} for {p}")
        if mi == 0:
            continue
        key = next((e for e in levels if abs(e - ev) < 1e-12), ev)
        levels[key] = levels.get(key, 0) + mi
    return [SpectrumLevel(e, levels[e]) for e in sorted(levels)]


def power_coefficients(p: SrgParams, m: int) -> AlgebraCoeffs:
    """Exact integer coefficients of A^m.

    A^(m+1) = A (aI + bJ + cA) = c(k-mu) I + (bk + c mu) J + (a + c(lambda-mu)) A.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    a, b, c = 1, 0, 0
    for _ in range(m):
        a, b, c = c * (p.k - p.mu), b * p.k + c * p.mu, a + c * (p.lam - p.mu)
    return AlgebraCoeffs(a, b, c)


def exp_coefficients(p: SrgParams, t: float) -> AlgebraCoeffs:
    """Coefficients of exp(i t A), the one-particle evolution for H = -A.

    On the all-ones vector J acts as n and A as k; on its orthogonal
    complement J vanishes and A has eigenvalues theta and tau. Matching
    exp(i t x) on the three eigenspaces gives

        alpha + n beta + k gamma = e^{itk}
        alpha + theta gamma      = e^{it theta}
        alpha + tau gamma        = e^{it tau}
    """
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    theta, tau = restricted_eigenvalues(p)
    e_k, e_th, e_tau = (cmath.exp(1j * t * x) for x in (p.k, theta, tau))
    if theta - tau > 1e-12:
        gamma = (e_th - e_tau) / (theta - tau)
    else:
        warnings.warn(f"theta == tau for {p}; using the derivative limit for gamma")
        gamma = 1j * t * e_th
    alpha = e_th - gamma * theta
    beta = (e_k - alpha - gamma * p.k) / p.n
    return AlgebraCoeffs(alpha, beta, gamma)


class SumRules(NamedTuple):
    sum_a: int  # sum_ij A_ij
    sum_a2: int  # sum_ij (A^2)_ij
    sum_a3: int  # sum_ij (A^3)_ij
    trace_a3: int  # sum_i (A^3)_ii
    trace_a4: int  # sum_i (A^4)_ii


def sum_rules(p: SrgParams) -> SumRules:
    n, k, lam, mu = p.astuple()
    return SumRules(
        sum_a=k * n,
        sum_a2=n * (k - mu) + k * n * (lam - mu) + n * n * mu,
        sum_a3=n * (k * k + k * (mu * (n + mu - 2) + lam * lam - 2 * lam * mu + lam) + (n - 1) * mu * (lam - mu)),
        trace_a3=k * n * lam,
        trace_a4=k * n * (mu * (k - lam - 1) + k + lam * lam),
    )


def sum_rules_direct(g: Graph) -> SumRules:
    """The same five sums from explicit integer matrix powers."""
    a = g.int_adjacency()
    a2 = a @ a
    a3 = a2 @ a
    return SumRules(
        int(a.sum()), int(a2.sum()), int(a3.sum()), int(np.trace(a3)), int(np.trace(a2 @ a2))
    )
