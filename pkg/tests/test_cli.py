import json

import jsonschema
import pytest

from tetracert.certificates import load_schema
from tetracert.cli import main


def test_decompositions_text(capsys):
    assert main(["decompositions"]) == 0
    out = capsys.readouterr().out
    for vec in ["(1, 0, 1, 1, 2)", "(0, 0, 1, 1, 1)", "(1, 0, 0, 0, 1)", "(0, 0, 0, 0, 1)", "(1, 0, 1, 0, 0)"]:
        assert vec in out


def test_bogus_target_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_seed_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["audit", "--seed", "nope"])
    assert exc.value.code == 2


def test_all_json_to_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["all", "--format", "json", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    jsonschema.validate(report, load_schema())
    assert [c["status"] for c in report["certificates"]] == ["pass"] * 8


def test_text_and_json_agree(capsys):
    main(["hesse"])
    text = capsys.readouterr().out
    main(["hesse", "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    assert ("PASS" in text) == (report["certificates"][0]["status"] == "pass")


def test_failure_exit_code(monkeypatch, capsys):
    import tetracert.cli as cli
    from tetracert.certificates import Certificate

    def failing(seed, names):
        return [Certificate("audit", "x", "fail", {}, 0, [{"name": "boom", "ok": False, "value": 3}])]

    monkeypatch.setattr(cli, "run_all", failing)
    assert main(["audit"]) == 1
    out = capsys.readouterr().out
    assert "first failure: boom" in out
