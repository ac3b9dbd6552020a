import json

import pytest

import modlie


def test_constructed_algebras_validate(schemas):
    for spec in [("W", 1, [1]), ("H", 2, [1, 1]), ("sl", 3, []), ("K", 3, [1, 1, 1])]:
        a = modlie.construct(spec[0], m=spec[1], n=spec[2])
        schemas["algebra"].validate(a)


def test_bad_algebra_rejected(schemas):
    with pytest.raises(Exception):
        schemas["algebra"].validate({"field": {"p": 5}, "dim": 2})


@pytest.mark.parametrize(
    "args",
    [
        ["atlas", "--fixture", "W11_bad"],
        ["atlas", "--fixture", "M11_nonstandard"],
        ["sections", "--fixture", "H2"],
        ["twosection", "--fixture", "W21_std", "--alpha", "1,0"],
        ["optimize", "--fixture", "W21_switched"],
        ["grade", "--fixture", "W21_std"],
        ["grade", "--fixture", "sl2"],
    ],
)
def test_cli_reports_validate(cli, schemas, args):
    env = json.loads(cli(*args).stdout)
    schemas["report"].validate(env)


def test_construct_and_atlas_roundtrip(cli, schemas, tmp_path):
    out = tmp_path / "w21.json"
    cli("construct", "--type", "W", "--m", "2", "--n", "1,1", "--out", out)
    env = json.loads(out.read_text())
    schemas["report"].validate(env)
    atlas = json.loads(cli("atlas", "--algebra", out, "--timings").stdout)
    schemas["report"].validate(atlas)
    assert "timings" in atlas
    assert atlas["payload"]["r"] == 0


def test_verify_fixtures_validates(cli, schemas, tmp_path):
    env = json.loads(cli("verify-fixtures", "--out", tmp_path).stdout)
    schemas["report"].validate(env)
    assert env["payload"]["failed"] == 0
    assert (tmp_path / "summary.json").exists()


def test_exit_codes(cli):
    assert cli("construct", "--type", "M", "--p", "7", check=False).returncode == 2
    assert cli("atlas", check=False).returncode == 2


def test_payload_determinism(cli):
    a = cli("atlas", "--fixture", "H2", "--seed", "3").stdout
    b = cli("atlas", "--fixture", "H2", "--seed", "3").stdout
    assert a == b
