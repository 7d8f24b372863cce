import json
from pathlib import Path

import pytest

from canring import cli
from canring.strata.golden import CORPUS_DIR, corpus_texts

CORPUS = Path(CORPUS_DIR)
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def zero_millis(d):
    if isinstance(d, dict):
        return {k: (0 if k == "millis" else zero_millis(v)) for k, v in d.items()}
    if isinstance(d, list):
        return [zero_millis(v) for v in d]
    return d


def test_corpus_matches_regeneration():
    texts = corpus_texts()
    assert sorted(texts) == sorted(p.name for p in CORPUS.glob("*.ideal"))
    for name, text in texts.items():
        assert (CORPUS / name).read_text() == text, name


def test_gb_and_member(capsys):
    code, d = run_json(capsys, "gb", str(CORPUS / "type_dd.ideal"))
    assert code == 0 and d["complete"] and "x1*x2" in d["generators"]
    code, d = run_json(capsys, "member", str(CORPUS / "type_b.ideal"), "x*y")
    assert code == 0 and d["member"]
    code, d = run_json(capsys, "member", str(CORPUS / "type_b.ideal"), "x0^2")
    assert code == 1 and not d["member"] and d["normal_form"] != "0"


def test_hilbert_verb(capsys):
    code, d = run_json(capsys, "hilbert", str(CORPUS / "type_a.ideal"), "--upto", "5")
    assert code == 0 and d["coefficients"] == [1, 2, 4, 6, 9, 13]
    assert d["invariants"] == {"chi": "3", "K2": "1", "pg": 2, "q": 0}


def test_resolve_verb(capsys):
    code, d = run_json(capsys, "resolve", str(CORPUS / "type_b.ideal"))
    assert code == 0 and d["ranks"] == [1, 9, 16, 9, 1]
    assert d["final_twist"] == 23 and d["canonical_twist"] == 1


def test_ideal_verbs(capsys, tmp_path):
    a = tmp_path / "a.ideal"
    b = tmp_path / "b.ideal"
    a.write_text("ring 101 [1,1,1] x,y,z\nx*y\n")
    b.write_text("ring 101 [1,1,1] x,y,z\nx*z\n")
    code, d = run_json(capsys, "intersect", str(a), str(b))
    assert code == 0 and d["generators"] == ["x*y*z"]
    code, d = run_json(capsys, "eliminate", str(a), "--vars", "x")
    assert code == 0 and d["generators"] == []
    code, d = run_json(capsys, "saturate", str(a), "--by", "x")
    assert code == 0 and d["generators"] == ["y"]
    code, d = run_json(capsys, "gb", str(a), "--elim", "1")
    assert code == 0 and d["generators"] == ["x*y"]


def test_text_format_renders_same_data(capsys):
    code, out, _ = run(capsys, "verify", "type-a", "--seed", "3", "--format", "text")
    assert code == 0 and "PASS" in out and "TypeA" in out


def test_common_flags_before_verb(capsys):
    code, d = run_json(capsys, "--seed", "7", "--prime", "32003", "verify", "type-a")
    assert code == 0 and d["seed"] == 7 and d["prime"] == 32003


def test_env_defaults(capsys, monkeypatch):
    monkeypatch.setenv("CANRING_SEED", "5")
    monkeypatch.setenv("CANRING_PRIME", "10007")
    code, d = run_json(capsys, "verify", "type-dd")
    assert code == 0 and d["seed"] == 5 and d["prime"] == 10007
    code, d = run_json(capsys, "verify", "type-dd", "--seed", "6")
    assert d["seed"] == 6
    monkeypatch.setenv("CANRING_FORMAT", "text")
    code, out, _ = run(capsys, "verify", "type-dd")
    assert code == 0 and not out.lstrip().startswith("{")


def test_check_failure_exit_1(capsys):
    code, d = run_json(capsys, "verify", "type-a", "--drop-z2")
    assert code == 1 and d["status"] == "fail"
    failed = [c["name"] for c in d["checks"] if c["status"] == "fail"]
    assert "(0:0:0:1) not on X, z^2 coefficient 1" in failed


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["verify", "type-zzz"],
    ["gb", "/nonexistent/file.ideal"],
    ["verify", "type-a", "--format", "xml"],
    ["verify", "type-a", "--truncation", "1"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert cli.main(argv) == 2


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring 101 [1,1] x,y\nx*q\n")
    code, _, err = run(capsys, "gb", str(bad))
    assert code == 2 and "parse error" in err
    code, _, err = run(capsys, "member", str(CORPUS / "type_a.ideal"), "x +* y")
    assert code == 2


def test_internal_error_exit_3(capsys, monkeypatch):
    def boom(args):
        raise RuntimeError("boom")
    monkeypatch.setattr(cli, "cmd_resolve", boom)
    code, _, err = run(capsys, "resolve", str(CORPUS / "type_b.ideal"))
    assert code == 3 and "boom" in err


def test_report_empty_config(capsys, tmp_path):
    cfg = tmp_path / "empty.json"
    cfg.write_text("[]")
    code, d = run_json(capsys, "report", str(cfg))
    assert code == 0 and d["entries"] == 0 and d["reports"] == [] and d["status"] == "pass"


def test_report_degenerate_config(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"entries": [
        {"kind": "TypeA", "seed": 1},
        {"kind": "TypeA", "seed": 2, "options": {"drop_z2": True}},
    ]}))
    code, d = run_json(capsys, "report", str(cfg), "--jobs", "2")
    assert code == 1 and d["status"] == "fail"
    assert d["failed_checks"] == ["TypeA:2:(0:0:0:1) not on X, z^2 coefficient 1"]
    assert [r["seed"] for r in d["reports"]] == [1, 2]


def test_report_invalid_json_exit_2(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    assert cli.main(["report", str(cfg)]) == 2


def test_default_report_passes(capsys):
    code, d = run_json(capsys, "report", "--seed", "1")
    assert code == 0 and d["entries"] == len(cli.DEFAULT_CONFIG)


def test_report_schema():
    from canring.strata.checks import verify_stratum
    d = verify_stratum("TypeB", 2).to_dict()
    assert set(d) == {"kind", "seed", "prime", "options", "status", "checks"}
    for c in d["checks"]:
        assert set(c) == {"name", "status", "detail", "millis"}
        assert c["status"] in ("pass", "fail", "info")
        assert isinstance(c["millis"], (int, float)) and c["millis"] >= 0


@pytest.mark.parametrize("name,argv", [
    ("verify_type_a_seed1", ["verify", "type-a", "--seed", "1"]),
    ("verify_type_b_seed1", ["verify", "type-b", "--seed", "1"]),
    ("family_type_b_seed1", ["family", "type-b", "--seed", "1", "--lambdas", "1,2"]),
])
def test_golden_json(capsys, name, argv):
    code, d = run_json(capsys, *argv)
    assert code == 0
    path = GOLDEN / f"{name}.json"
    got = zero_millis(d)
    if not path.exists():
        pytest.skip(f"golden file {path.name} missing")
    assert got == json.loads(path.read_text())
