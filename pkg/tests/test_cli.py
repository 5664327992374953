import json

import pytest

from glrep.cli import EXIT_CHECK, EXIT_CONFIG, EXIT_OK, RunConfig, main


def run(tmp_path, *args):
    return main([*args, "--output-dir", str(tmp_path)])


def test_classify_prints_variant(tmp_path, capsys):
    assert run(tmp_path, "classify", "--two-j1", "2", "--two-j2", "1", "--q", "1/2") == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "AtypA"
    assert json.loads(out[1])["classification"] == "AtypA"


def test_negative_rational_argument(tmp_path, capsys):
    assert run(tmp_path, "classify", "--two-j1", "1", "--two-j2", "0", "--q", "-3/2") == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "AtypD"


@pytest.mark.parametrize("args", [
    ("classify", "--q", "abc"),
    ("classify", "--q", "1/0"),
    ("classify", "--two-j1", "-1"),
    ("build", "--kind", "weird"),
    ("table", "--two-j-max", "7"),
    ("nonsense",),
])
def test_config_errors(tmp_path, args):
    with pytest.raises(SystemExit) as exc:
        code = run(tmp_path, *args)
        raise SystemExit(code)
    assert exc.value.code == EXIT_CONFIG


def test_kac_on_typical_point_fails_check(tmp_path):
    assert run(tmp_path, "build", "--two-j1", "1", "--q", "3/7", "--kind", "kac") == EXIT_CHECK


def test_build_writes_files(tmp_path):
    assert run(tmp_path, "build", "--two-j1", "2", "--two-j2", "1", "--q", "1/2", "--p", "1") == EXIT_OK
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    sub = json.loads((tmp_path / "subspace.json").read_text())
    assert manifest["dim"] == 28 and manifest["classification"] == "AtypA"
    assert sub["verdict"] == "Irreducible"


def test_export_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ("export", "--two-j1", "1", "--two-j2", "1", "--q", "3/7", "--p", "2/5")
    assert run(a, *args) == EXIT_OK
    assert run(b, *args) == EXIT_OK
    names = sorted(f.name for f in a.iterdir())
    assert len(names) == 17  # manifest plus sixteen generators
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()
    e11 = json.loads((a / "E11.json").read_text())
    assert len(e11) == 64 and all(len(r) == 64 for r in e11)


def test_verify_reports_discrepancies_as_warnings(tmp_path):
    code = run(tmp_path, "verify", "--two-j1", "1", "--two-j2", "1", "--q", "3/7", "--p", "2/5",
               "--probe-degree", "2")
    assert code == EXIT_OK
    report = json.loads((tmp_path / "verify_report.json").read_text())
    assert report["ok"] and not report["failures"]
    assert report["warnings"] and all(w.startswith("PAPER-DISCREPANCY") for w in report["warnings"])


def test_relations_check(tmp_path):
    assert run(tmp_path, "relations-check", "--two-j1", "1", "--probe-degree", "2") == EXIT_OK
    report = json.loads((tmp_path / "verify_report.json").read_text())
    assert report["ok"] and report["relations"]


def test_table(tmp_path):
    assert run(tmp_path, "table", "--two-j-max", "1") == EXIT_OK
    data = json.loads((tmp_path / "table.json").read_text())
    assert len(data["rows"]) == 4
    row = data["rows"][0]
    assert row["columns"]["Typical"]["dim"] == 16
    assert row["columns"]["AtypZero"]["dim"] == 1


def test_run_config_defaults():
    cfg = RunConfig()
    assert cfg.params().two_j1 == 0 and cfg.module_kind() == "Irreducible"
