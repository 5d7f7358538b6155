import json
from fractions import Fraction as F

import pytest

from plhyper.lab import ConfigError, Report, config_from_text, emit_report, load_config
from plhyper.lab.cli import main
from plhyper.timeset import TimeSet

MINIMAL = """
fixture = "example31"
analysis = "sensitivity"
v = [["2/5", "1/2"]]
delta = "1/2"
horizon = 64
"""


def _records(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_minimal_config(tmp_path):
    p = tmp_path / "run.toml"
    p.write_text(MINIMAL)
    cfg = load_config(p)
    assert cfg.analysis == "sensitivity" and cfg.v == ((F(2, 5), F(1, 2)),)
    assert cfg.delta == F(1, 2) and cfg.horizon == 64


@pytest.mark.parametrize(
    "edit, message",
    [
        (('delta = "1/2"', 'delta = "0"'), "delta"),
        (('delta = "1/2"', "delta = 0.5"), "TOML floats"),
        (("horizon = 64", "horizon = 64\ncolour = 3"), "unknown keys"),
        (('v = [["2/5", "1/2"]]', 'v = [["1/2", "2/5"]]'), "lo < hi"),
        (('fixture = "example31"', 'fixture = "nope"'), "fixture"),
    ],
)
def test_config_rejections(edit, message):
    with pytest.raises(ConfigError, match=message):
        config_from_text(MINIMAL.replace(*edit))


def test_decimal_string_is_exact():
    assert config_from_text(MINIMAL.replace('"2/5"', '"0.4"')).v[0][0] == F(2, 5)


def test_parse_error_has_position():
    with pytest.raises(ConfigError, match=r"run.toml:4:1: parse error"):
        config_from_text('analysis = "sensitivity"\n\nv = [[\n', "run.toml")


def test_randomized_analysis_needs_seed():
    with pytest.raises(ConfigError, match="seed"):
        config_from_text('analysis = "shadowing"\nfixture = "example32"\nepsilon = "1/20"')


def test_emit_report_formats():
    reports = [Report("x", {"timeset": TimeSet(64, frozenset(range(3, 65))), "d": F(1, 4), "ok": True})]
    data = emit_report(reports)
    assert data == b'{"kind":"x","timeset":"3-64","d":"1/4","ok":true,"violations":0}\n'
    assert emit_report(reports) == data
    table = emit_report(reports, "table").decode()
    assert table.startswith("== x") and "3-64" in table
    with pytest.raises(TypeError):
        emit_report([Report("x", {"d": 0.25})])
    with pytest.raises(ValueError):
        emit_report(reports, "xml")


def test_cli_sensitivity(tmp_path):
    out = tmp_path / "s.jsonl"
    assert main(["analyze-sensitivity", "--fixture", "example31", "--out", str(out)]) == 0
    (rec,) = _records(out)
    assert rec["timeset"] == "3-64"
    c = rec["classification"]
    assert c["cofinite_from"] == 3 and c["syndetic_bound"] == 3 and c["longest_run"] == 62


def test_cli_config_and_overrides(tmp_path):
    p = tmp_path / "run.toml"
    p.write_text(MINIMAL)
    out = tmp_path / "s.jsonl"
    assert main(["analyze-sensitivity", "--config", str(p), "--horizon", "10", "--out", str(out)]) == 0
    assert _records(out)[0]["timeset"] == "3-10"
    # the config names a different analysis than the verb
    assert main(["analyze-transitivity", "--config", str(p)]) == 1


def test_cli_other_verbs(tmp_path):
    out = tmp_path / "o.jsonl"
    assert main(["analyze-transitivity", "--out", str(out)]) == 0
    assert _records(out)[0]["kind"] == "transitivity"
    assert main(["analyze-product", "--horizon", "12", "--out", str(out)]) == 0
    rec = _records(out)[0]
    assert rec["union_contained"] and rec["within_third_delta_union"]
    assert main(["analyze-hyperspace", "--seed", "1", "--horizon", "16", "--out", str(out)]) == 0
    rec = _records(out)[0]
    assert rec["sensitivity_constant"] == "1/4" and rec["base_separation"] == "1/2"
    assert main(["analyze-shadowing", "--seed", "1", "--trials", "20", "--length", "6", "--out", str(out)]) == 0
    rec = _records(out)[0]
    assert rec["traced"] == rec["trials"] == 20
    assert main(["list-fixtures", "--out", str(out)]) == 0
    assert {r["name"] for r in _records(out)} >= {"example31", "example32"}


def test_cli_lift(tmp_path):
    out = tmp_path / "l.jsonl"
    args = ["lift", "--fixture", "identity", "--delta", "1/5", "--epsilon", "1/10", "--out", str(out)]
    assert main([*args, "--sets", "1/2,401/1000", "--sets", "501/1000"]) == 0
    recs = _records(out)
    assert [r["kind"] for r in recs] == ["lifted-orbit", "lifted-orbit", "assembly"]
    assert all(r["valid"] for r in recs[:2])


def test_cli_errors(capsys):
    assert main(["analyze-hyperspace"]) == 1
    assert "seed" in capsys.readouterr().err
    assert main(["analyze-sensitivity", "--delta", "0"]) == 1
    assert main(["lift", "--delta", "1/100", "--sets", "0", "--sets", "1"]) == 1
    with pytest.raises(SystemExit):
        main(["analyze-sensitivity", "--delta", "abc"])


def test_cli_violation_exit_code(tmp_path, monkeypatch):
    from plhyper.lab import runner

    monkeypatch.setitem(runner._DISPATCH, "sensitivity", lambda cfg: [Report("x", {}, violations=1)])
    assert main(["analyze-sensitivity", "--out", str(tmp_path / "v.jsonl")]) == 2


def test_verify_single_suite(tmp_path):
    out = tmp_path / "v.jsonl"
    assert main(["verify-theorems", "--theorem", "lemma21", "--seed", "3", "--out", str(out)]) == 0
    recs = _records(out)
    assert recs[0]["status"] == "evidence" and recs[-1]["kind"] == "implication-chain"


def test_parse_error_mid_document():
    with pytest.raises(ConfigError, match=r"run.toml:2:\d+: parse error"):
        config_from_text('analysis = "sensitivity"\nhorizon = = 3\n', "run.toml")
