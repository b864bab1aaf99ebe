import csv
import json

from qrsmux.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_synth_sum_oracle(capsys):
    rc, out, _ = run(capsys, "synth-sum", "--d", "7", "--oracle")
    assert rc == 0
    assert "PASS" in out and "'C4X': 5" in out


def test_synth_sum_emit_and_lower(capsys, tmp_path):
    doc = tmp_path / "sum5.json"
    rc, out, _ = run(capsys, "synth-sum", "--d", "5", "--emit", str(doc))
    assert rc == 0 and doc.exists()
    parsed = json.loads(doc.read_text())
    assert {r["name"] for r in parsed["registers"]} == {"A", "B", "carry", "checkif"}

    report = tmp_path / "lower.csv"
    rc, out, _ = run(capsys, "lower", "--in", str(doc), "--strategy", "multiplexed",
                     "--report", str(report))
    assert rc == 0
    with open(report) as fh:
        rows = list(csv.DictReader(fh))
    assert set(rows[0]) == {"gate-index", "kind", "arity", "photons", "strategy",
                            "cx", "h", "t", "tdag", "os", "fallback-flag"}
    assert sum(int(r["cx"]) for r in rows) == 59


def test_lower_os_cost_flag(capsys, tmp_path):
    doc = tmp_path / "sum5.json"
    run(capsys, "synth-sum", "--d", "5", "--emit", str(doc))
    report = tmp_path / "lower.csv"
    rc, out, _ = run(capsys, "lower", "--in", str(doc), "--strategy", "multiplexed",
                     "--os-cost", "3", "--report", str(report))
    assert rc == 0
    with open(report) as fh:
        assert sum(int(r["os"]) for r in csv.DictReader(fh)) == 3 * (3 * 3 + 14)


def test_verify_ok_and_mutated(capsys):
    rc, out, _ = run(capsys, "verify", "--d", "5")
    assert rc == 0 and "25/25" in out
    rc, out, _ = run(capsys, "verify", "--d", "5", "--mutate", "20")
    assert rc == 1 and "FAIL" in out


def test_verify_rejects_non_prime(capsys):
    rc, _, err = run(capsys, "verify", "--d", "9")
    assert rc == 2 and "not prime" in err


def test_gf2m_reports(capsys, tmp_path):
    doc = tmp_path / "enc.json"
    report = tmp_path / "enc.csv"
    rc, out, _ = run(capsys, "gf2m", "--m", "2", "--emit", str(doc), "--report", str(report))
    assert rc == 0 and "6 CX" in out
    with open(report) as fh:
        rows = list(csv.DictReader(fh))
    assert [r["gate"] for r in rows] == ["Calpha", "Calpha^2"]
    assert all(r["verified"] == "true" for r in rows)
    assert all(r["cx-count"] == r["formula-count"] for r in rows)


def test_sweep_with_env_out_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QRS_OUT_DIR", str(tmp_path / "out"))
    rc, out, _ = run(capsys, "sweep", "--d-min", "3", "--d-max", "13",
                     "--out", "report.csv", "--svg", "fig.svg", "--series", "ratio")
    assert rc == 0
    assert (tmp_path / "out" / "report.csv").exists()
    assert (tmp_path / "out" / "fig.svg").exists()


def test_sweep_absolute_path_ignores_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QRS_OUT_DIR", str(tmp_path / "elsewhere"))
    target = tmp_path / "direct.csv"
    rc, _, _ = run(capsys, "sweep", "--d-min", "3", "--d-max", "7", "--out", str(target))
    assert rc == 0 and target.exists()


def test_config_selects_convention_and_poly(capsys, tmp_path):
    cfg = tmp_path / "qrs.cfg"
    cfg.write_text("convention.id = inner-collapse-v1\ngf2m.poly.3 = 0b1101\n")
    out_csv = tmp_path / "r.csv"
    rc, _, _ = run(capsys, "--config", str(cfg), "sweep", "--d-min", "7", "--d-max", "7",
                   "--out", str(out_csv))
    assert rc == 0
    with open(out_csv) as fh:
        row = next(csv.DictReader(fh))
    assert row["convention"] == "inner-collapse-v1"

    enc = tmp_path / "enc.json"
    rc, _, _ = run(capsys, "--config", str(cfg), "gf2m", "--m", "3", "--emit", str(enc))
    assert rc == 0
    # the emitted gates carry the overridden modulus (non-default polynomial)
    doc = json.loads(enc.read_text())
    polys = {g.get("poly") for g in doc["gates"] if g["kind"] == "CMulAdd"}
    assert polys == {0b1101}


def test_cli_convention_flag_beats_config(capsys, tmp_path):
    cfg = tmp_path / "qrs.cfg"
    cfg.write_text("convention.id = inner-collapse-v1\n")
    out_csv = tmp_path / "r.csv"
    rc, _, _ = run(capsys, "--config", str(cfg), "sweep", "--d-min", "5", "--d-max", "5",
                   "--out", str(out_csv), "--convention", "default-v1")
    assert rc == 0
    with open(out_csv) as fh:
        assert next(csv.DictReader(fh))["convention"] == "default-v1"
