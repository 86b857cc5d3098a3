"""End-to-end reports and the sweep harness on small ranges."""

import json
from fractions import Fraction

import pytest

from smcverify import analyze, analyze_fixture, parse_poly
from smcverify.errors import Unsupported
from smcverify.serialize import dumps
from smcverify.smc import (
    LOCAL_CURVE_TAG,
    NOT_COMPUTED,
    SweepRanges,
    hypothesis_checklist,
    report_to_dict,
    run_case,
    summary_to_dict,
    sweep,
    sweep_cases,
    theorem_eligible,
)
from smcverify.standardform import StandardFormData, nontraceless_condition


def verdicts(rep):
    return {v.pole: v.status for v in rep.pole_verdicts}


class TestAnalyze:
    def test_quintic(self):
        rep = analyze(parse_poly("y^5 - x^3*z^2"))
        assert rep.residue["status"] == "zero"
        assert verdicts(rep)[Fraction(-3, 5)] == "not a pole"
        assert rep.verdict == "SMC-verified (computable part)"
        assert rep.bs["verdict"].a_verdict == "not a root"

    def test_sextic(self):
        rep = analyze(parse_poly("x*y*z*(y^3 - x^2*z)"))
        v = verdicts(rep)
        assert v[Fraction(-1, 2)] == "not a pole"
        assert v[Fraction(-1)] == "matched"
        cand = next(p for p in rep.poles if p.pole == Fraction(-1, 2))
        assert cand.candidate_order == 2 and cand.actual_order == 0

    def test_fixture(self):
        rep = analyze_fixture("two-conics")
        crit = next(p for p in rep.poles if p.pole == Fraction(-3, 4))
        assert crit.actual_order == 1
        cited = next(v for v in rep.pole_verdicts if v.pole == Fraction(-3, 4))
        assert cited.status == "cited" and cited.justification == LOCAL_CURVE_TAG
        with pytest.raises(Unsupported):
            analyze_fixture("nope")

    def test_traceless_conic(self):
        rep = analyze(parse_poly("y^2 + x*z"))
        assert rep.residue["status"] == "not allowed"
        assert verdicts(rep)[Fraction(-3, 2)] == "matched"

    def test_outside_class(self):
        rep = analyze(parse_poly("x^3 + y^3 + z^3"))
        assert rep.classification == "NoDiagonalSymmetry"
        assert rep.standard_form is None and rep.notes == [NOT_COMPUTED]

    def test_deterministic_json(self):
        a = dumps(report_to_dict(analyze(parse_poly("y^5 - x^3*z^2"))), "analyze")
        b = dumps(report_to_dict(analyze(parse_poly("y^5 - x^3*z^2"))), "analyze")
        assert a == b
        body = json.loads(a)
        assert body["schema"] == 1 and body["kind"] == "analyze"
        assert body["data"]["residue"]["expression"]["is_zero"] is True


def test_hypotheses():
    sf = StandardFormData(2, 0, 0, 3, 1, (1,))
    h = hypothesis_checklist(sf)
    assert h["nontraceless"] and h["d_ne_3a_i"] and h["d_ne_3b_q"] and not h["reduced"]
    assert not theorem_eligible(StandardFormData(0, 0, 0, 3, 1, (1,)))  # d = 3 = 3 b_1


def test_run_case_sextic():
    r = run_case(StandardFormData(1, 1, 1, 3, 2, (1,)), derivations=True)
    assert not r.failed
    assert r.checks["residue_vanishes"] and r.checks["compact"] and r.checks["jc_closure"]
    assert r.info["top_order"] == 0


def test_run_case_necessity():
    r = run_case(StandardFormData(0, 0, 0, 2, 1, (1,)))
    assert r.checks["necessity"] and r.info["necessity_legs"]["topological_pole"]
    assert r.checks["residue_vanishes"] is None


def test_small_sweep_parallel_matches_serial():
    ranges = SweepRanges(t_max=4, m_max=2, b_max=2, a_max=1)
    serial = sweep(ranges, workers=1)
    par = sweep(ranges, workers=2)
    assert serial.ok and serial.total == len(sweep_cases(ranges))
    assert serial.cases == par.cases
    d = summary_to_dict(serial, include_cases=True)
    assert d["total"] == serial.total and len(d["cases"]) == serial.total


def test_filters():
    r = SweepRanges(t_max=5, m_max=2, b_max=2, a_max=2)
    every = sweep_cases(r)
    assert len(sweep_cases(r, "theorem")) + len(sweep_cases(r, "necessity")) <= len(every)
    assert all(not nontraceless_condition(s) for s in sweep_cases(r, "necessity"))
    assert all(theorem_eligible(s) for s in sweep_cases(r, "theorem"))
    assert all(s.is_reduced() for s in sweep_cases(r, "reduced"))
    with pytest.raises(ValueError):
        sweep_cases(r, "bogus")
