"""Acceptance criteria 1-10, each at its stated budget and tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Run with ``pytest tests/test_acceptance.py -v``.
"""

import time

import pytest

from bdmodal import harness, tableau
from bdmodal.formula import parse_sequent
from bdmodal.semantics import eval_formula


def _summary(rep):
    return f"{len(rep.records)} checks, {len(rep.failures)} failed"


def test_criterion_1_fixtures(criterion):
    start = time.perf_counter()
    rep = harness.run_fixtures()
    elapsed = time.perf_counter() - start
    ok = rep.passed and len(harness.FIXTURES) == 9 and elapsed < 1.0
    criterion(1, ok, f"fixtures: 9 models, {_summary(rep)}, {elapsed:.2f}s (limit 1s)")
    assert ok, rep.text()


def test_criterion_2_tableau_examples(criterion):
    start = time.perf_counter()
    closed = tableau.prove_text("Ip & Iq |- I(p|q)")
    seq = parse_sequent("[*](p&q) |- [*]p")
    opened = tableau.prove(seq)
    elapsed = time.perf_counter() - start
    verified = False
    if not opened.closed:
        pm = opened.pointed
        verified = (eval_formula(pm.model, pm.point, seq.lhs).sup_t
                    and not eval_formula(pm.model, pm.point, seq.rhs).sup_t)
    ok = closed.closed and verified and elapsed < 5.0
    criterion(2, ok, f"ignorance of disjunction closes, knowledge of a conjunct refuted "
                     f"with a verified model, {elapsed:.2f}s (limit 5s)")
    assert ok


def test_criterion_3_oracle_tableau_agreement(criterion):
    start = time.perf_counter()
    rep = harness.run_agreement(max_size=4, max_worlds=3)
    elapsed = time.perf_counter() - start
    # reported only: witness rules without the reflexive columns
    printed = harness.run_agreement(max_size=4, max_worlds=3, fresh_only=True)
    criterion(3, rep.passed, f"all {len(rep.records)} sequents over [*],I formulas of size <= 4, "
                             f"{len(rep.failures)} disagreements, {elapsed:.1f}s (limit 600s); "
                             f"fresh-label-only rules: {len(printed.failures)} disagreements")
    assert rep.passed, rep.text()


def test_criterion_4_duality(criterion):
    rep = harness.run_duality(trials=10_000, seed=0, max_worlds=4, max_size=8)
    criterion(4, rep.passed, f"10000 seeded trials, {_summary(rep)}")
    assert rep.passed, rep.text()


def test_criterion_5_knowledge_axioms(criterion):
    rep = harness.run_know_axioms(max_worlds=3, equiv_max=4)
    criterion(5, rep.passed, f"frames <= 3 and equivalence frames <= 4, {_summary(rep)}")
    assert rep.passed, rep.text()


@pytest.fixture(scope="module")
def ignorance_report():
    return harness.run_ignorance_axioms(max_worlds=3, ir_samples=100, seed=0)


def _is_ir(record):
    return record.instance.startswith("IR ")


def test_criterion_6_i1_i2(ignorance_report):
    axioms = [r for r in ignorance_report.records if not _is_ir(r)]
    assert axioms and all(r.ok for r in axioms)


@pytest.mark.xfail(strict=True, reason="the IR rule is not sound: p |- p | q is valid but "
                   "p & I(p | q) |- Ip has a three-world countermodel")
def test_criterion_6_ignorance_axioms(ignorance_report, criterion):
    rep = ignorance_report
    axioms = [r for r in rep.records if not _is_ir(r)]
    ir = [r for r in rep.records if _is_ir(r)]
    bad_ir = [r for r in ir if not r.ok]
    criterion(6, rep.passed, f"I1, I2: {len(axioms)} frame checks, "
                             f"{sum(not r.ok for r in axioms)} failed; "
                             f"IR: {len(bad_ir)} of {len(ir)} sampled instances fail")
    assert rep.passed, rep.text()


def test_criterion_7_definability(criterion):
    rep = harness.run_definability(max_worlds=3)
    iso = harness.run_definability(max_worlds=4, modulo_iso=True)
    ok = rep.passed and iso.passed
    criterion(7, ok, f"all frames <= 3: {_summary(rep)}; iso classes <= 4: {_summary(iso)}")
    assert ok, rep.text() + "\n" + iso.text()


def test_criterion_8_separations(criterion):
    rep = harness.run_separations(max_size=6)
    criterion(8, rep.passed, f"bounded searches at size 6, {_summary(rep)}")
    assert rep.passed, rep.text()


def test_criterion_9_no_validities(criterion):
    rep = harness.run_no_validities(n=500, seed=0)
    criterion(9, rep.passed, f"500 seeded formulas on the all-B and all-N models, {_summary(rep)}")
    assert rep.passed, rep.text()


def test_criterion_10_laws(criterion):
    rep = harness.run_laws(max_worlds=3, trials=10_000, seed=0)
    notes = "; ".join(rep.notes)
    criterion(10, rep.passed, f"{_summary(rep)}; {notes}")
    assert rep.passed, rep.text()
