"""Command-line interface: flags, formats, exit codes, config file."""

from __future__ import annotations

import json

from click.testing import CliRunner

from gbsclass.cli import main


def run(*args: str, env: dict | None = None):
    return CliRunner().invoke(main, list(args), env=env)


# ---------------------------------------------------------------------------
# pairs / triples
# ---------------------------------------------------------------------------


def test_pairs_text_output() -> None:
    res = run("pairs", "--dim", "12")
    assert res.exit_code == 0
    assert res.output.startswith(
        "pairs d=12: 6 classes, expected 6, status VERIFIED"
    )
    assert "{0,0;0,6}" in res.output


def test_pairs_rejects_tiny_dimension() -> None:
    assert run("pairs", "--dim", "1").exit_code == 2
    assert run("pairs", "--dim", "0").exit_code == 2


def test_triples_counts() -> None:
    res = run("triples", "--dim", "25")
    assert res.exit_code == 0
    assert "21 classes" in res.output
    res = run("triples", "--dim", "9")
    assert res.exit_code == 0
    assert "9 classes, expected 9, status VERIFIED" in res.output


def test_triples_cap_exit_code() -> None:
    res = run("triples", "--dim", "33")
    assert res.exit_code == 3
    assert "capped" in res.output


def test_triples_json_round_trip() -> None:
    res = run("triples", "--dim", "9", "--format", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["dimension"] == 9
    assert doc["mode"] == "triples"
    assert len(doc["classes"]) == 9
    assert doc["status"] == "VERIFIED"
    assert json.loads(json.dumps(doc)) == doc


def test_triples_csv_layout() -> None:
    res = run("triples", "--dim", "8", "--format", "csv")
    assert res.exit_code == 0
    lines = res.output.strip().split("\n")
    assert lines[0] == "representative,I1,I2_4,I3_2,I3_2_pow2"
    assert len(lines) == 13


def test_witness_flag_adds_traces() -> None:
    res = run("triples", "--dim", "8", "--emit-witnesses")
    assert res.exit_code == 0
    assert "witness:" in res.output
    res = run("pairs", "--dim", "4", "--emit-witnesses")
    assert res.exit_code == 0
    assert "(representative)" in res.output  # the one-element class


def test_repeat_runs_are_byte_identical() -> None:
    first = run("triples", "--dim", "16", "--format", "json")
    second = run("triples", "--dim", "16", "--format", "json")
    assert first.output == second.output


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def test_invariants_probe_values() -> None:
    res = run("invariants", "--dim", "9", "--set", "0,0;0,1;3,0", "--a", "3")
    assert res.exit_code == 0
    assert "I2[3] = 5" in res.output
    res = run("invariants", "--dim", "8", "--set", "0,0;0,1;4,2", "--a", "4")
    assert res.exit_code == 0
    assert "I2[4] = 5" in res.output


def test_invariants_commuting_pair() -> None:
    res = run("invariants", "--dim", "9", "--set", "0,0;0,1")
    assert res.exit_code == 0
    assert "I1 = 0.00" in res.output


def test_invariants_text_layout() -> None:
    res = run("invariants", "--dim", "9", "--set", "0,0;0,1;1,0",
              "--a", "2", "--pow", "3")
    lines = res.output.strip().split("\n")
    assert lines[0] == "set {0,0;0,1;1,0} at d=9"
    assert lines[1] == "I1 = 11.23"
    assert "pow 3:" in lines[-1]


def test_invariants_json() -> None:
    res = run("invariants", "--dim", "9", "--set", "0,0;0,1;1,0",
              "--format", "json")
    doc = json.loads(res.output)
    assert doc["dimension"] == 9
    assert doc["set"] == "0,0;0,1;1,0"
    assert doc["invariants"]["I2"]["3"] == 3
    assert "powered" in doc["invariants"]


def test_invariants_csv() -> None:
    res = run("invariants", "--dim", "8", "--set", "0,0;0,1;4,0",
              "--a", "2", "--pow", "2", "--format", "csv")
    lines = res.output.strip().split("\n")
    assert "I3_2,39" in lines
    assert "pow2_I3_2,125" in lines


def test_invariants_bad_set_is_usage_error() -> None:
    assert run("invariants", "--dim", "9", "--set", "0,0;0,1;0,1").exit_code == 2
    assert run("invariants", "--dim", "9", "--set", "zzz").exit_code == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_prime_power_contexts() -> None:
    res = run("verify", "--prime-power", "3", "2")
    assert res.exit_code == 0
    assert "7/7 checks passed at d=9" in res.output
    res = run("verify", "--prime-power", "2", "3")
    assert res.exit_code == 0
    assert "checks passed at d=8" in res.output


def test_verify_plain_dimension() -> None:
    res = run("verify", "--dim", "7")
    assert res.exit_code == 0
    assert "PASS  self-inverse residue count" in res.output


def test_verify_flag_validation() -> None:
    assert run("verify").exit_code == 2
    assert run("verify", "--dim", "6", "--prime-power", "2", "3").exit_code == 2
    assert run("verify", "--prime-power", "4", "2").exit_code == 2
    assert run("verify", "--prime-power", "3", "0").exit_code == 2


def test_verify_cap() -> None:
    assert run("verify", "--dim", "80").exit_code == 3


# ---------------------------------------------------------------------------
# configuration file
# ---------------------------------------------------------------------------


def test_config_lowers_enum_cap(tmp_path) -> None:
    cfg = tmp_path / "gbs.cfg"
    cfg.write_text("enum_cap = 8\n")
    res = run("triples", "--dim", "9", env={"GBSCLASS_CONFIG": str(cfg)})
    assert res.exit_code == 3
    res = run("triples", "--dim", "8", env={"GBSCLASS_CONFIG": str(cfg)})
    assert res.exit_code == 0


def test_config_sets_default_format(tmp_path) -> None:
    cfg = tmp_path / "gbs.cfg"
    cfg.write_text("format = json\n# comment line\n")
    res = run("pairs", "--dim", "6", env={"GBSCLASS_CONFIG": str(cfg)})
    assert res.exit_code == 0
    assert json.loads(res.output)["mode"] == "pairs"
    # an explicit flag still wins
    res = run("pairs", "--dim", "6", "--format", "text",
              env={"GBSCLASS_CONFIG": str(cfg)})
    assert res.output.startswith("pairs d=6:")


def test_config_custom_probes(tmp_path) -> None:
    cfg = tmp_path / "gbs.cfg"
    cfg.write_text("i3_a = 3\npowers = 3,5\n")
    res = run("invariants", "--dim", "9", "--set", "0,0;0,1;1,0",
              env={"GBSCLASS_CONFIG": str(cfg)})
    assert res.exit_code == 0
    assert "I3[3]" in res.output
    assert "pow 5:" in res.output


def test_config_errors_are_usage_errors(tmp_path) -> None:
    cfg = tmp_path / "gbs.cfg"
    cfg.write_text("mystery_knob = 3\n")
    res = run("pairs", "--dim", "6", env={"GBSCLASS_CONFIG": str(cfg)})
    assert res.exit_code == 2
    assert "bad configuration" in res.output
    cfg.write_text("enum_cap = fast\n")
    assert run("pairs", "--dim", "6",
               env={"GBSCLASS_CONFIG": str(cfg)}).exit_code == 2
