"""Command line entry points, exercised in process via main(argv)."""

import json

import pytest

from rsclifford.cli import build_parser, main
from rsclifford.spaces import MonogenicBasis, dump_basis


FAST = ["--m", "3", "--k", "1", "--d", "1", "--boundary-order", "12", "--sphere-order", "8"]


def test_verify_algebra_exits_zero(capsys):
    rc = main(["verify", "algebra", *FAST])
    out = capsys.readouterr().out
    assert rc == 0
    assert "[PASS]  calibration/cauchy-normalization" in out
    assert "calibration=" in out
    assert "5/5 checks passed" in out


def test_verify_rejects_bad_m(capsys):
    rc = main(["verify", "algebra", "--m", "9"])
    assert rc == 2
    assert "m" in capsys.readouterr().err


def test_verify_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_env_overrides_defaults(monkeypatch, capsys):
    monkeypatch.setenv("RSCLIFFORD_M", "4")
    rc = main(["verify", "algebra", "--k", "1", "--d", "1"])
    assert rc == 0
    # the anticommutation record runs per m; just confirm the env made it in
    monkeypatch.setenv("RSCLIFFORD_M", "twelve")
    rc = main(["verify", "algebra"])
    assert rc == 2
    assert "bad value for m" in capsys.readouterr().err


def test_flags_beat_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m": 9, "tolerances": {"calibration": 1e-3}}))
    rc = main(["verify", "algebra", "--config", str(cfg), "--m", "3", *FAST[2:]])
    assert rc == 0


def test_config_file_missing(capsys):
    rc = main(["verify", "algebra", "--config", "/nonexistent/cfg.json"])
    assert rc == 2


def test_verify_writes_report_directory(tmp_path, capsys):
    out_dir = tmp_path / "artifacts"
    out_dir.mkdir()
    rc = main(["verify", "algebra", *FAST, "--out", str(out_dir)])
    out = capsys.readouterr().out
    assert rc == 0
    assert (out_dir / "report.json").exists()
    assert (out_dir / "report.csv").exists()
    assert (out_dir / "report_margins.png").exists()
    assert "wrote" in out
    data = json.loads((out_dir / "report.json").read_text())
    assert data["schema"] == "report_v1"
    assert data["summary"]["failed"] == 0


def test_tolerance_flag_can_force_failure(tmp_path):
    # an absurdly tight calibration tolerance flips the exit code
    rc = main(["verify", "algebra", *FAST, "--tol-calibration", "1e-30"])
    assert rc == 1


def test_eval_kernel_exact(capsys):
    rc = main(
        ["eval", "kernel:3:1:1:0", "1/2", "-1/3", "0", "1", "0", "0"]
    )
    out = capsys.readouterr().out.strip()
    assert rc == 0
    assert "/" in out or out[0].isdigit() or out[0] == "-"


def test_eval_basis_and_zonal(capsys):
    rc = main(["eval", "basis:3:1:0", "1", "0", "0"])
    assert rc == 0
    first = capsys.readouterr().out
    assert first.strip()
    rc = main(["eval", "zonal:3:0", "1/2", "0", "0", "0", "1/3", "0"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "1"


def test_eval_bad_fixture(capsys):
    assert main(["eval", "kernel:3:1", "1", "2"]) == 2
    assert "fixture" in capsys.readouterr().err
    assert main(["eval", "basis:3:1:999", "1", "0", "0"]) == 2
    assert main(["eval", "basis:3:1:0", "1", "0"]) == 2
    assert main(["eval", "basis:3:1:0", "1", "0", "x"]) == 2


def test_dump_basis_writes_then_caches(tmp_path, capsys, caplog):
    path = tmp_path / "b.json"
    rc = main(["dump-basis", "--m", "3", "--k", "1", str(path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert path.exists()
    assert "wrote" in out
    with caplog.at_level("INFO"):
        rc = main(["dump-basis", "--m", "3", "--k", "1", str(path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "already holds" in out
    assert any("cache hit" in r.message for r in caplog.records)


def test_dump_basis_rebuilds_on_mismatch(tmp_path, capsys):
    path = tmp_path / "b.json"
    dump_basis(MonogenicBasis.build(3, 0), str(path))
    rc = main(["dump-basis", "--m", "3", "--k", "1", str(path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "wrote" in out


def test_parser_covers_tolerance_flags():
    parser = build_parser()
    args = parser.parse_args(["verify", "all", "--tol-cauchy", "1e-5"])
    assert args.tol_cauchy == 1e-5
    assert args.suite == "all"
