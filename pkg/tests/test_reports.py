import numpy as np

from weylkit.reports import Check, ScenarioReport


def test_verdict_is_conjunction():
    rep = ScenarioReport("x")
    assert rep.verdict  # empty conjunction
    rep.le("a", 1e-13, 1e-12)
    rep.flag("b", True)
    assert rep.verdict
    rep.le("c", np.nan, 1.0)
    assert not rep.verdict
    assert [c.label for c in rep.failed()] == ["c"]


def test_lines_are_fixed_format():
    rep = ScenarioReport("demo", notes="n")
    rep.add(Check.le("r", 1 / 3, 1e-12, "third"))
    rep.data["value"] = 1 + 2j
    lines = rep.lines()
    assert lines[:3] == ["scenario = demo", "verdict = fail", "checks = 1"]
    assert "check.r.residual = 3.3333333333333331e-01" in lines
    assert "check.r.note = third" in lines
    assert any(line.startswith("data.value = ") for line in lines)
    assert rep.lines() == lines


def test_extend_prefixes_labels():
    a, b = ScenarioReport("a"), ScenarioReport("b")
    b.flag("x", False, "why")
    a.extend(b, "sub.")
    assert a.get("sub.x").note == "why"
    assert not a.passed
