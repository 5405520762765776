import numpy as np
import pytest

from helpers import random_graph
from srgwalk.evolution import evolve
from srgwalk.graph import Graph, relabel
from srgwalk.hamiltonians import BOSON, TwoParticleBasis, h_two_boson, kronecker_sum, occupancy_projector, project, swap_matrix
from srgwalk.expansion import (
    MAX_ORDER,
    OP4_WORDS,
    TERMS,
    direct_powers,
    distinguishing_op4,
    distinguishing_op6,
    exact_delta,
    expansion_terms,
    operator_certificate,
    per_order_delta,
    projected_terms,
    series_csv,
    truncated,
)


def test_order0_is_symmetriser(rng):
    g = random_graph(rng, 4)
    sym = 0.5 * (np.eye(16) + swap_matrix(4))
    np.testing.assert_array_equal(expansion_terms(g, 3.0)[0].matrix, sym)


def test_terms_match_direct_powers(rng):
    # for n >= 1, H^n = (I+S)/2 (uR - B)^n on the whole product space
    for _ in range(8):
        g = random_graph(rng, int(rng.integers(2, 7)))
        u = float(rng.choice([0.0, 1.0, 50.0]))
        terms = expansion_terms(g, u)
        direct = direct_powers(g, u)
        assert len(terms) == MAX_ORDER + 1
        for n in range(1, MAX_ORDER + 1):
            scale = max(1.0, np.abs(direct[n]).max())
            assert np.abs(terms[n].matrix - direct[n]).max() < 1e-10 * scale
        # on the boson subspace every order agrees, including n = 0
        basis = TwoParticleBasis.build(g.n, BOSON)
        h = h_two_boson(g, u).matrix
        for n, m in enumerate(projected_terms(g, u)):
            ref = np.linalg.matrix_power(h, n)
            assert np.abs(m - ref).max() < 1e-10 * max(1.0, np.abs(ref).max())
            assert np.abs(project(terms[n].matrix, basis) - m).max() < 1e-10 * max(1.0, np.abs(ref).max())


def test_rbr_vanishes(rng):
    for _ in range(5):
        g = random_graph(rng, 6)
        r, b = occupancy_projector(6), kronecker_sum(g.int_adjacency())
        assert not (r @ b @ r).any()
    assert all("R B R" not in w for poly in TERMS for _, _, w in poly)


def _observed_order(g, u, order, t=0.02):
    terms = projected_terms(g, u)
    h = h_two_boson(g, u)
    err = [np.abs(evolve(h, x).matrix - truncated(terms, x, order)).max() for x in (t, t / 2)]
    return np.log2(err[0] / err[1])


@pytest.mark.parametrize("u", [0.0, 2.0, 50.0])
def test_truncation_is_fifth_order(rng, u):
    # halving t divides the error by 2^5 up to an O(t^2) correction from the t^7 term
    g = random_graph(rng, 6)
    t = 0.02 if u < 10 else 0.001
    assert abs(_observed_order(g, u, 4, t) - 5) < 0.01
    assert abs(_observed_order(g, u, 3, t) - 4) < 0.01


def test_isomorphic_pair_zero_every_order(rng):
    g = random_graph(rng, 7)
    for d in per_order_delta(g, relabel(g, rng.permutation(7)), 5.0, 0.05):
        assert d.delta == 0.0


def test_family_pair_fourth_order(rook, shri):
    series = per_order_delta(shri, rook)
    assert [d.order for d in series] == [0, 1, 2, 3, 4]
    for d in series[:4]:
        assert d.delta < d.noise_floor
    assert series[4].delta > series[4].noise_floor
    # the truncated series tracks the full evolution at this t
    assert series[4].delta == pytest.approx(exact_delta(shri, rook), rel=0.05)


def test_dropping_op4_pair(rook, shri):
    assert per_order_delta(shri, rook, drop=OP4_WORDS)[4].delta < 1e-12 * 150
    for word in OP4_WORDS:
        assert per_order_delta(shri, rook, drop=[word])[4].delta < 1e-12 * 150
    with pytest.raises(ValueError):
        per_order_delta(shri, rook, drop=["B9"])


def test_per_order_delta_preconditions(rook, rng):
    with pytest.raises(ValueError):
        per_order_delta(rook, random_graph(rng, 5))
    with pytest.raises(ValueError):
        per_order_delta(rook, rook, max_order=5)


def test_distinguishing_operators(rook, shri, rng):
    edgeless = Graph(np.zeros((4, 4), bool))
    assert not distinguishing_op4(edgeless).any()
    assert not distinguishing_op6(edgeless).any()
    c_r = operator_certificate(distinguishing_op4(rook), 16)
    c_s = operator_certificate(distinguishing_op4(shri), 16)
    assert np.abs(c_r - c_s).sum() > 1.0
    c_p = operator_certificate(distinguishing_op4(relabel(shri, rng.permutation(16))), 16)
    assert np.abs(c_p - c_s).sum() == 0.0
    assert np.abs(operator_certificate(distinguishing_op6(rook), 16) - operator_certificate(distinguishing_op6(shri), 16)).sum() > 1.0


def test_series_csv(rook, shri):
    text = series_csv(per_order_delta(shri, rook, max_order=1))
    lines = text.splitlines()
    assert lines[0] == "order,delta,scale" and len(lines) == 3
