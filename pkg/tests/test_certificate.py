import math

import numpy as np
import pytest

from helpers import path3_pair, random_graph
from srgwalk.certificate import (
    DISTINGUISHED,
    NOT_DISTINGUISHED,
    GfCertificate,
    IncomparableCertificatesError,
    batch_min_delta,
    certificate,
    compare,
    default_threshold,
    delta,
    gf_count,
    graph_certificate,
)
from srgwalk.evolution import evolve
from srgwalk.graph import cycle, paley, relabel
from srgwalk.hamiltonians import h_two_fermion, h_two_hardcore

KINDS = ("single", "boson", "hardcore", "fermion")


def _cert(values, **kw):
    meta = dict(kind="hardcore", t=1.0, u=0.0, n=3) | kw
    return GfCertificate(np.array(values, float), **meta)


def test_delta_arithmetic():
    assert delta(_cert([1, 2, 3]), _cert([1, 2, 5])) == 2
    assert delta(_cert([1, 2, 3]), _cert([1, 2, 3])) == 0


def test_delta_incomparable():
    with pytest.raises(IncomparableCertificatesError):
        delta(_cert([1, 2]), _cert([1, 2, 3]))
    with pytest.raises(IncomparableCertificatesError):
        delta(_cert([1, 2]), _cert([1, 2], t=0.5))
    with pytest.raises(IncomparableCertificatesError):
        delta(_cert([1, 2]), _cert([1, 2], kind="fermion"))


def test_delta_metric_properties(rng):
    for _ in range(100):
        a, b, c = (_cert(np.sort(rng.random(12))) for _ in range(3))
        assert delta(a, b) == pytest.approx(delta(b, a))
        assert delta(a, c) <= delta(a, b) + delta(b, c) + 1e-12


def test_certificate_at_t0(rng):
    g = random_graph(rng, 5)
    c = certificate(evolve(h_two_hardcore(g), 0.0))
    dim = 10
    assert len(c) == dim * dim == gf_count("hardcore", 5)
    assert np.count_nonzero(np.isclose(c.magnitudes, 1.0, atol=1e-14)) == dim
    assert np.count_nonzero(np.abs(c.magnitudes) < 1e-14) == dim * dim - dim
    assert np.all(np.diff(c.magnitudes) >= 0)


def test_gf_count():
    assert gf_count("boson", 16) == 18496
    assert gf_count("fermion", 16) == gf_count("hardcore", 16) == 14400
    assert gf_count("single", 16) == 256
    with pytest.raises(ValueError):
        gf_count("other", 3)


@pytest.mark.parametrize("kind", KINDS)
def test_isomorphism_soundness(rng, kind):
    for _ in range(25):
        g = random_graph(rng, int(rng.integers(3, 9)))
        res = compare(g, relabel(g, rng.permutation(g.n)), kind, 1.0, u=float(rng.uniform(0, 10)))
        assert res.delta < 1e-9 and res.verdict == NOT_DISTINGUISHED


@pytest.mark.parametrize("t", [0.3, 1.0, 2.7])
def test_path3_pair_identical_certificates(t):
    a, b = path3_pair()
    ua, ub = evolve(h_two_fermion(a), t).matrix, evolve(h_two_fermion(b), t).matrix
    assert np.abs(ua - ub).max() > 0.1
    assert delta(certificate(evolve(h_two_fermion(a), t)), certificate(evolve(h_two_fermion(b), t))) < 1e-12


def test_family_pair(rook, shri):
    hc = compare(shri, rook, "hardcore", 1.0)
    assert hc.distinguished and hc.delta > 1e-3
    # reference value for this pair at unit time
    assert hc.delta == pytest.approx(94.273, abs=5e-4)
    for kind in ("single", "boson", "fermion"):
        res = compare(shri, rook, kind, 1.0, u=0.0)
        assert res.delta < 1e-9 and not res.distinguished


def test_default_threshold(rook, shri):
    res = compare(shri, rook, "single", 1.0)
    assert res.threshold == default_threshold(256) == pytest.approx(2.56e-6)
    assert compare(shri, rook, "hardcore", 1.0, threshold=1e6).verdict == NOT_DISTINGUISHED


def test_different_n_not_evolved():
    res = compare(cycle(4), cycle(5), "hardcore")
    assert math.isinf(res.delta) and res.distinguished
    assert res.to_dict()["delta"] is None


def test_multi_time(rook, shri):
    c = graph_certificate(rook, "hardcore", (0.7, 1.0, 1.3))
    assert len(c) == 3 * 14400 and c.t == (0.7, 1.0, 1.3)
    assert compare(shri, rook, "hardcore", (0.7, 1.0, 1.3)).distinguished


def test_batch_counts_and_isomorphic_min(rng):
    g = random_graph(rng, 7)
    rep = batch_min_delta([g, relabel(g, rng.permutation(7)), relabel(g, rng.permutation(7))], "hardcore")
    assert rep.n_comparisons == 3 and rep.min_delta < 1e-9
    graphs = [random_graph(rng, 6) for _ in range(5)]
    assert batch_min_delta(graphs, "single").n_comparisons == 10


def test_batch_family_pair(rook, shri):
    rep = batch_min_delta([shri, rook], "hardcore", ids=["shri", "rook"])
    assert rep.n_comparisons == 1 and rep.min_delta > 1e-3
    assert rep.summary()["argmin"] == ["shri", "rook"]


def test_batch_tie_break_and_mixed_n(rng):
    g = random_graph(rng, 6)
    graphs = [g, paley(13), g, relabel(g, rng.permutation(6)), cycle(5)]
    rep = batch_min_delta(graphs, "boson", u=1.0)
    assert rep.argmin == (0, 2)
    cross = [p for p in rep.pairs if graphs[p.i].n != graphs[p.j].n]
    assert cross and all(math.isinf(p.delta) and p.verdict == DISTINGUISHED for p in cross)
    assert set(rep.threshold) == {5, 6, 13}
    assert "inf" in rep.to_csv()


def test_batch_independent_of_workers(rng):
    graphs = [random_graph(rng, 7) for _ in range(6)]
    one = batch_min_delta(graphs, "hardcore", workers=1)
    many = batch_min_delta(graphs, "hardcore", workers=3)
    assert one.pairs == many.pairs
    assert (one.min_delta, one.argmin) == (many.min_delta, many.argmin)
    assert one.to_csv() == many.to_csv()


def test_batch_needs_two():
    with pytest.raises(ValueError):
        batch_min_delta([cycle(4)])


def test_certificates_bit_identical_across_runs(rook):
    a = graph_certificate(rook, "hardcore").magnitudes
    b = graph_certificate(rook, "hardcore").magnitudes
    assert a.tobytes() == b.tobytes()
