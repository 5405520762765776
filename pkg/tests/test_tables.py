import json
from dataclasses import replace

import numpy as np
import pytest

import srgwalk.tables as tables
from srgwalk.evolution import evolve
from srgwalk.graph import InfeasibleParametersError, ParameterError, SrgParams, cycle, detect_srg, relabel
from srgwalk.hamiltonians import h_two_fermion
from srgwalk.tables import (
    BOSON_CLASSES,
    FERMION_CLASSES,
    ReconciliationError,
    boson_table,
    brute_count_40a,
    brute_count_40b,
    classify,
    count_40a,
    count_40b,
    enumerate_elements,
    fermion_table,
    table_counter,
    verify_tables,
)

FAMILY = SrgParams(16, 6, 2, 2)
SRG_NAMES = ["rook4x4", "shrikhande", "paley13", "paley17"]


def test_classify_examples():
    assert classify((3, 4), (2, 4)) == (3, 1)
    assert classify((1, 1), (1, 1)) == (1, 2)
    assert classify((1, 2), (3, 4)) == (4, 0)
    assert classify((1, 1), (2, 2)) == (2, 0)
    assert classify((1, 1), (1, 2)) == (2, 1)
    assert classify((1, 2), (2, 1)) == (2, 2)
    assert classify((1, 1), (2, 3)) == (3, 0)


def test_boson_table_family_values():
    t = boson_table(FAMILY)
    assert len(t.rows) == 22
    assert t.rows[0].label == "2β² + 2γ² + 4βγ" and t.rows[0].count == 120
    assert [t.subtotals[c] for c in BOSON_CLASSES] == [10920, 3360, 3360, 240, 480, 120, 16]
    assert t.total == 18496 == sum(t.subtotals.values())
    for cls, sub in t.subtotals.items():
        assert sum(r.count for r in t.rows_in(cls)) == sub


def test_fermion_table_family_values():
    t = fermion_table(FAMILY)
    assert t.subtotals[(2, 2)] == 120
    assert t.total == 14400 == sum(t.subtotals.values())
    zero = [r for r in t.rows if r.cls == (4, 0) and not any(r.coeffs)]
    assert len(zero) == 1 and zero[0].count == 3576
    assert set(t.subtotals) == set(FERMION_CLASSES)


def test_tables_reject_infeasible():
    with pytest.raises(InfeasibleParametersError):
        boson_table(SrgParams(16, 6, 2, 3))


@pytest.mark.parametrize("name", SRG_NAMES)
@pytest.mark.parametrize("statistics", ["boson", "fermion"])
def test_table_equals_enumeration(srgs, name, statistics):
    # every closed-form count against symbolic evaluation of every element
    g = srgs[name]
    p = detect_srg(g)
    table = boson_table(p) if statistics == "boson" else fermion_table(p)
    assert table_counter(table) == enumerate_elements(g, statistics)


def test_family_members_share_enumeration(rook, shri):
    for statistics in ("boson", "fermion"):
        assert enumerate_elements(rook, statistics) == enumerate_elements(shri, statistics)


@pytest.mark.parametrize("name", SRG_NAMES)
def test_count_40_closed_forms(srgs, name):
    g = srgs[name]
    p = detect_srg(g)
    assert count_40a(p) == brute_count_40a(g)
    assert count_40b(p) == brute_count_40b(g)


def test_count_40_family_examples(rook, shri):
    assert count_40a(FAMILY) == 120 == brute_count_40a(rook) == brute_count_40a(shri)
    assert count_40b(FAMILY) == 16 * 2 * 9 * 6 == brute_count_40b(rook) == brute_count_40b(shri)


@pytest.mark.parametrize("name", SRG_NAMES)
@pytest.mark.parametrize("statistics", ["boson", "fermion"])
def test_verify_tables(srgs, name, statistics):
    rep = verify_tables(srgs[name], 1.0, statistics)
    assert rep.ok, rep.failures()
    rep.raise_for_failure()
    assert rep.total_observed == rep.total_expected
    for cls, (formula, rows, observed) in rep.subtotals.items():
        assert formula == rows == observed


def test_verify_tables_t0_degenerate(srgs):
    # alpha = 1, beta = gamma = 0: only the identity survives
    rep = verify_tables(srgs["paley13"], 0.0)
    assert rep.ok
    assert rep.coeffs.alpha == 1 and rep.coeffs.beta == 0 and rep.coeffs.gamma == 0
    assert rep.collisions


def test_verify_tables_reports_failure(monkeypatch, rook):
    real = tables.boson_table

    def broken(p):
        t = real(p)
        rows = list(t.rows)
        rows[0] = replace(rows[0], count=rows[0].count + 1)
        return replace(t, rows=tuple(rows))

    monkeypatch.setattr(tables, "boson_table", broken)
    rep = verify_tables(rook, 1.0)
    assert not rep.ok
    bad = rep.failures()[0]
    assert bad.cls == (4, 0) and bad.expected_count == 121 and bad.observed_count == 120
    with pytest.raises(ReconciliationError, match="expected 121, observed 120"):
        rep.raise_for_failure()


def test_verify_tables_needs_srg():
    with pytest.raises(ParameterError):
        verify_tables(cycle(6), 1.0)
    with pytest.raises(ValueError):
        verify_tables(cycle(5), 1.0, "hardcore")


def test_report_json(rook):
    d = json.loads(verify_tables(rook, 1.0, "fermion").to_json())
    assert d["ok"] and d["family"] == [16, 6, 2, 2]
    row = d["rows"][0]
    assert set(row) >= {"cls", "coeffs", "expected_count", "observed_count", "status"}


def test_fermion_sign_gauge(shri, rng):
    perm = rng.permutation(16)
    g2 = relabel(shri, perm)
    u1 = evolve(h_two_fermion(shri), 1.0).matrix
    u2 = evolve(h_two_fermion(g2), 1.0).matrix
    # signed values differ as multisets, magnitudes do not
    assert np.abs(np.sort(u1.real.ravel()) - np.sort(u2.real.ravel())).max() > 1e-3
    np.testing.assert_allclose(np.sort(np.abs(u1).ravel()), np.sort(np.abs(u2).ravel()), atol=1e-12)
    assert verify_tables(g2, 1.0, "fermion").ok
