import csv
import io
import json

import pytest

from spheroidal_ga import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_bad_tolerance_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--suite", "jx2", "--tolerance", "-1")
    assert code == 2 and "positive" in err


def test_verify_brackets_report(capsys, tmp_path):
    out = tmp_path / "b.json"
    code, _, _ = run(capsys, "verify", "--suite", "brackets", "--samples", "3", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0 and rep["schema"] == 1 and rep["pass"]
    names = {c["identity_name"]: c for c in rep["reports"][0]["checks"]}
    assert names["[P_a,P_b] = 0"]["pass"]
    assert names["[J_a,J_b] = -i J_{a x b}"]["pass"]
    assert names["[J_a,J_b] = i J_{a x b}"]["asserted"] is False


def test_determinism_and_comparison(capsys, tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.setenv(cli.SEED_ENV, "11")
    assert cli.main(["verify", "--suite", "projection", "--samples", "20", "--out", str(a)]) == 0
    monkeypatch.delenv(cli.SEED_ENV)
    assert cli.main(["verify", "--suite", "projection", "--samples", "20", "--seed", "11",
                     "--out", str(b), "--compare", str(a)]) == 0
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    assert jb["comparison"]["identical"]
    assert cli.dumps(cli.strip_volatile(ja)) == cli.dumps(cli.strip_volatile(jb))
    assert ja["config"]["seed"] == 11
    # a different seed gives a different report
    assert cli.main(["verify", "--suite", "projection", "--samples", "20", "--seed", "12",
                     "--compare", str(a), "--out", str(tmp_path / "c.json")]) == 1


def test_transform_round_trip(capsys, tmp_path):
    src = tmp_path / "pts.csv"
    src.write_text("eta,theta,phi\n0.5,1.0,0.3\n1.2,2.0,4.0\n")
    fwd = tmp_path / "fwd.csv"
    assert cli.main(["transform", "--case", "oblate", "--mu", "1.5", "--in", str(src),
                     "--out", str(fwd)]) == 0
    code, out, _ = run(capsys, "transform", "--inverse", "--in", str(fwd))
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and tuple(rows[0]) == cli.TRANSFORM_COLUMNS
    assert float(rows[1]["eta"]) == pytest.approx(1.2)
    assert float(rows[1]["phi"]) == pytest.approx(4.0)


def test_transform_validation(capsys, tmp_path):
    src = tmp_path / "bad.csv"
    src.write_text("eta,theta\n0.5,1.0\n")
    code, _, err = run(capsys, "transform", "--case", "prolate", "--mu", "1", "--in", str(src))
    assert code == 2 and "phi" in err
    code, _, _ = run(capsys, "transform", "--case", "prolate", "--mu", "1", "--in", str(tmp_path / "none.csv"))
    assert code == 2


def test_project_grid(capsys):
    code, out, _ = run(capsys, "project", "--case", "3", "--nu", "0.5", "--grid", "4")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and tuple(rows[0]) == cli.PROJECT_COLUMNS and len(rows) == 17
    code, _, _ = run(capsys, "project", "--case", "3", "--nu", "0", "--grid", "4")
    assert code == 2


def test_harmonic_table_and_summary(capsys, tmp_path):
    table, summary = tmp_path / "h.csv", tmp_path / "h.json"
    code, _, _ = run(capsys, "harmonic", "--case", "prolate", "--kind", "interior", "--n", "3",
                     "--m", "2", "--grid", "3", "--out", str(table), "--summary", str(summary))
    s = json.loads(summary.read_text())
    assert code == 0 and s["laplace_residual"]["max"] < 1e-5
    assert table.read_text().splitlines()[0] == ",".join(cli.HARMONIC_COLUMNS)
    code, _, _ = run(capsys, "harmonic", "--n", "2", "--m", "3")
    assert code == 2


def test_qm_json(capsys):
    code, out, _ = run(capsys, "qm", "--k", "3")
    d = json.loads(out)
    assert code == 0
    assert {"k", "curl_free", "gradient_poly", "correction_found", "correction"} <= set(d)
    assert d["curl_free"] and d["correction_found"]
    code, _, _ = run(capsys, "qm", "--k", "3", "--scan-max-degree", "1")
    assert code == 2


def test_kernel_scan(capsys):
    code, out, _ = run(capsys, "kernel", "--n", "2", "--grid", "4", "--y", "0.1,0,0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows
    assert max(float(r["residual"]) for r in rows) < 1e-6
    code, _, _ = run(capsys, "kernel", "--n", "2", "--y", "0,0")
    assert code == 2
