import json
import subprocess
import sys

import pytest

from atgroups import catalog, cli
from atgroups.presentation import load_presentation

D8 = "group d8\np 2\ngens a b\nrel a^4 = b^2 = 1\nrel [a,b] = a^2\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_thm37(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "thm3.7", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    (rec,) = doc["records"]
    assert rec["verdict"] == "pass"
    assert rec["computed"]["order"] == 64 and rec["computed"]["level"] == 4


def test_verify_entry_16(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "thm3.6.16", "--format", "json")
    (rec,) = json.loads(out)["records"]
    assert code == 0 and rec["verdict"] == "pass"
    assert rec["computed"]["order"] == 3**5
    assert rec["expected"]["k_iso_label"] == "M3(1,1,1) x C3"


def test_verify_empty_grid_is_skipped(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "thm3.6.5", "--max-order", "16")
    assert code == 0
    assert out.startswith("SKIPPED")
    assert "2^5" in out and "n=2" in out


def test_verify_over_cap_records(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "thm3.6.5", "--max-order", "64", "--format", "json")
    recs = json.loads(out)["records"]
    assert [r["verdict"] for r in recs] == ["pass", "pass", "skipped"]
    assert "exceeds --max-order 64" in recs[2]["reason"]


def test_verify_iso_cap_failure_has_reason(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "thm3.7", "--iso-cap", "8", "--format", "json")
    (rec,) = json.loads(out)["records"]
    assert code == 1 and rec["verdict"] == "fail"
    assert "iso-cap" in rec["reason"]


def test_verify_unknown_entry(capsys):
    code, _, err = run(capsys, "verify", "--entry", "thm9.9")
    assert code == 2 and "matches no catalog id" in err


def test_verify_glob():
    assert cli.select_ids(["thm3.6.1?"]) == [f"thm3.6.{i}" for i in range(10, 20)]
    assert cli.select_ids(None) == cli.ALL_IDS


def test_canonical_moves_times_to_stderr(capsys):
    code, out, err = run(capsys, "verify", "--entry", "thm3.6.1", "--canonical", "--format", "json")
    assert '"time"' not in out
    assert err.startswith("time thm3.6.1")
    doc = json.loads(out)
    assert "jobs" not in doc["flags"]
    assert list(doc["records"][0]) == ["id", "params", "computed", "expected", "checks", "verdict", "reason"]


def test_analyze_d8(tmp_path, capsys):
    f = tmp_path / "d8.pgp"
    f.write_text(D8)
    code, out, _ = run(capsys, "analyze", str(f), "--format", "json")
    info = json.loads(out)
    assert code == 0
    assert (info["order"], info["level"], info["alpha1"]) == (8, 1, 1)


def test_analyze_abelian(tmp_path, capsys):
    f = tmp_path / "ab.pgp"
    f.write_text("group ab\np 3\ngens a b\nrel a^9 = b^3 = [a,b] = 1\n")
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 0
    assert "level: 0" in out and "alpha2: 0" in out


def test_analyze_thm37(tmp_path, capsys):
    f = tmp_path / "thm37.pgp"
    f.write_text(catalog.build("thm3.7").to_text())
    code, out, _ = run(capsys, "analyze", str(f))
    assert "unique A2-subgroup of order 16, contained in Phi(G)" in out


def test_analyze_omega(tmp_path, capsys):
    from atgroups import lemmas

    G = lemmas.omega_group(2, [[0, 0, 0]] * 3)
    f = tmp_path / "om.pgp"
    f.write_text(G.source.to_text())
    code, out, _ = run(capsys, "analyze", str(f), "--format", "json")
    assert json.loads(out)["omega"]["zero_principal_minors"] == 3


def test_analyze_errors(tmp_path, capsys):
    f = tmp_path / "bad.pgp"
    f.write_text("group g\np 2\ngens a\nrel b = 1\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2 and "unknown generator" in err
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.pgp"))
    assert code == 2
    f.write_text("group g\np 2\ngens a\nrel a^3 = 1\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1 and "NotAPGroup" in err


def test_scan_empty(tmp_path, capsys):
    code, out, _ = run(capsys, "scan", str(tmp_path))
    assert code == 0
    assert "0 files" in out


def test_scan_round_trip(tmp_path, capsys):
    run(capsys, "export", str(tmp_path), "--entry", "thm3.6.[1-6]", "--entry", "thm3.7", "--max-order", "128")
    code, out, _ = run(capsys, "scan", str(tmp_path), "--max-order", "128", "--format", "json")
    recs = json.loads(out)["records"]
    assert recs and all(r["matched"] and not r["matched"].startswith("unmatched") for r in recs)
    assert [r["source"] for r in recs if r["hit"]] == ["thm3_7.pgp"]


def test_export_writes_parseable_files(tmp_path, capsys):
    code, out, _ = run(capsys, "export", str(tmp_path), "--entry", "mp-nm1", "--p", "3", "--max-order", "243")
    assert code == 0
    files = sorted(tmp_path.glob("*.pgp"))
    assert [f.name for f in files] == [
        "mp-nm1_m1_n1_p3.pgp", "mp-nm1_m1_n2_p3.pgp", "mp-nm1_m1_n3_p3.pgp", "mp-nm1_m2_n2_p3.pgp",
    ]
    for f in files:
        assert load_presentation(f).prime == 3


def test_lemmas_command(capsys):
    code, out, _ = run(capsys, "lemmas", "--suite", "2.2", "--suite", "3.5")
    assert code == 0
    assert out.count("PASS") == 2


def test_bad_flag_value():
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "--max-order", "0"])
    assert info.value.code == 2


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "atgroups", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("atgroups ")
