import json

import pytest

import modlie


def test_version():
    assert modlie.__version__


def test_construct_and_load():
    w = modlie.construct("W", p=5, m=1, n=[1])
    assert w["dim"] == 5
    L = modlie.Algebra.from_json(json.dumps(w))
    assert L.dim == 5 and L.p == 5 and L.k == 1
    assert L.jacobi_holds()
    assert L.is_simple()
    assert not L.is_solvable()
    assert L.center_dim() == 0
    e = [0] * 5
    e[0] = 1
    assert len(L.bracket(e, e)) == 5


def test_errors():
    with pytest.raises(ValueError, match="p must be 5"):
        modlie.construct("M", p=7)
    with pytest.raises(ValueError):
        modlie.Algebra.from_json('{"field": {"p": 5}, "dim": 2}')
    with pytest.raises(ValueError):
        modlie.atlas()


def test_atlas_fixture():
    a = modlie.atlas(fixture="W11_bad")
    assert a["r"] == 4
    assert a["optimizer"]["r_final"] == 0
    assert a["Q"]["closed"]


def test_atlas_algebra_object():
    L = modlie.Algebra.from_json(json.dumps(modlie.construct("W", m=1, n=[1])))
    a = modlie.atlas(algebra=L)
    assert a["r"] == 0
    assert a["Q"]["dim"] == 4


def test_grade_guard():
    g = modlie.grade(fixture="sl2")
    assert g["graded"]["note"] == "graded pipeline not applicable; all roots solvable/classical"


def test_grade_w21():
    g = modlie.grade(fixture="W21_std")["graded"]
    assert g["S"]["dim"] == 50 and g["S"]["m"] == 0
    assert g["S"]["restricted"] and g["S"]["simple"]


def test_twosection():
    t = modlie.twosection(fixture="W21_std", alpha=[1, 0], beta=[0, 1])
    assert [x["case"] for x in t["two_sections"]] == [8]


def test_alarm_is_reported():
    with open(__file__.replace("python/tests/test_smoke.py", "tests/data/unclassified.json")) as f:
        text = f.read()
    a = modlie.atlas(algebra=text)
    assert a["alarms"][0]["kind"] == "unclassified_section"


def test_fixture_names():
    assert "W21_std" in modlie.fixture_names()
