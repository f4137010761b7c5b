import hashlib
import json
import subprocess
import sys

import pytest

from gperiods import cli
from gperiods.pointio import read_meta


def _sha(path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def test_gauss_outputs(tmp_path):
    out = tmp_path / "g"
    rc = cli.main(["gauss", "--n", "10", "--omega", "3", "--out", str(out)])
    assert rc == 0
    assert (out / "points.csv").exists() and (out / "plot.png").exists()
    meta = read_meta(out / "meta.json")
    assert meta["results"]["d"] == 4
    assert meta["subcommand"] == "gauss"
    assert meta["argv"][0] == "gauss"
    lines = (out / "points.csv").read_text().splitlines()
    assert len(lines) == 11


def test_gauss_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert cli.main(["gauss", "--n", "60", "--omega", "7", "--color-mod", "3", "--out", str(out)]) == 0
    assert _sha(a / "points.csv") == _sha(b / "points.csv")
    assert _sha(a / "plot.png") == _sha(b / "plot.png")


def test_usage_error_writes_nothing(tmp_path):
    out = tmp_path / "bad"
    rc = cli.main(["gauss", "--n", "10", "--omega", "5", "--out", str(out)])
    assert rc == 2
    assert not out.exists()


def test_budget_exit_code(tmp_path):
    rc = cli.main(["gauss", "--n", "100", "--omega", "3", "--budget", "50", "--out", str(tmp_path / "x")])
    assert rc == 3


def test_missing_flag_is_usage():
    assert cli.main(["gauss", "--n", "10"]) == 2
    assert cli.main(["nonsense"]) == 2


def test_weyl_json(tmp_path, capsys):
    out = tmp_path / "w"
    rc = cli.main(["weyl", "--n", "7", "--m", "1", "--matrix", "2", "--v", "0,1", "--out", str(out)])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["exact"] == 0
    assert payload["agree"] is True
    assert payload["alpha"] == [2]
    meta = read_meta(out / "meta.json")
    assert meta["results"]["exact"] == 0
    assert not (out / "points.csv").exists()


def test_superchar_formats_filter(tmp_path):
    out = tmp_path / "s"
    rc = cli.main(
        ["superchar", "--n", "15", "--m", "2", "--matrix", "0,1,14,14", "--out", str(out), "--formats", "csv"]
    )
    assert rc == 0
    assert (out / "points.csv").exists()
    assert not (out / "plot.png").exists()
    lines = (out / "points.csv").read_text().splitlines()
    assert len(lines) == 226
    assert lines[0] == "i0,i1,re,im,color"


def test_superchar_singular_matrix_is_usage(tmp_path):
    rc = cli.main(["superchar", "--n", "4", "--m", "2", "--matrix", "2,0,0,1", "--out", str(tmp_path / "x")])
    assert rc == 2


def test_bad_matrix_literal(tmp_path):
    rc = cli.main(["superchar", "--n", "4", "--m", "2", "--matrix", "1,2,3", "--out", str(tmp_path / "x")])
    assert rc == 2


def test_gd_csv(tmp_path):
    out = tmp_path / "gd"
    rc = cli.main(["gd", "--d", "3", "--samples", "12", "--seed", "4", "--out", str(out), "--formats", "csv"])
    assert rc == 0
    lines = (out / "points.csv").read_text().splitlines()
    assert len(lines) == 145  # 12^2 samples + header


def test_rcfp_run(tmp_path):
    out = tmp_path / "r"
    rc = cli.main(
        [
            "rcfp", "--field", "7", "--modulus", "11", "--element", "2,1",
            "--color-mod", "5", "--rescale", "--out", str(out),
        ]
    )
    assert rc == 0
    meta = read_meta(out / "meta.json")
    assert meta["results"]["quotient_order"] == 5
    lines = (out / "points.csv").read_text().splitlines()
    assert len(lines) == 121


def test_rcfp_nonunit_is_usage(tmp_path):
    rc = cli.main(["rcfp", "--field", "7", "--modulus", "25", "--element", "5,0", "--out", str(tmp_path / "x")])
    assert rc == 2


def test_torsion_run(tmp_path):
    out = tmp_path / "t"
    rc = cli.main(["torsion", "--field", "1", "--modulus", "4", "--coordinate", "y", "--out", str(out)])
    assert rc == 0
    lines = (out / "points.csv").read_text().splitlines()
    assert len(lines) == 16


def test_find_element_json(tmp_path, capsys):
    out = tmp_path / "f"
    rc = cli.main(
        ["find-element", "--n", "455", "--m", "2", "--d", "3", "--require-vanishing", "--out", str(out)]
    )
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["order"] == 3
    assert payload["phi_d_vanishes"] is True
    assert payload["matrix"] == [[0, 454], [1, 454]]


def test_find_element_impossible(tmp_path):
    rc = cli.main(["find-element", "--n", "7", "--m", "1", "--d", "5", "--require-vanishing", "--out", str(tmp_path / "x")])
    assert rc == 2


def test_find_element_not_found(tmp_path):
    rc = cli.main(["find-element", "--n", "11", "--m", "1", "--d", "5", "--budget", "0", "--out", str(tmp_path / "x")])
    assert rc == 3


def test_frames_output(tmp_path):
    out = tmp_path / "fr"
    rc = cli.main(["gauss", "--n", "30", "--omega", "7", "--frames", "12", "--size", "64", "--out", str(out)])
    assert rc == 0
    frames = sorted(p.name for p in (out / "frames").glob("frame_*.png"))
    assert frames == ["frame_00001.png", "frame_00002.png", "frame_00003.png"]
    assert (out / "frames" / "meta.json").exists()


def test_workers_env_does_not_change_bytes(tmp_path, monkeypatch):
    outs = []
    for tag, workers in (("w1", "1"), ("w4", "4")):
        monkeypatch.setenv("GPERIODS_WORKERS", workers)
        out = tmp_path / tag
        assert cli.main(["gauss", "--n", "40", "--omega", "3", "--out", str(out)]) == 0
        outs.append(out)
    assert _sha(outs[0] / "points.csv") == _sha(outs[1] / "points.csv")
    assert _sha(outs[0] / "plot.png") == _sha(outs[1] / "plot.png")
    assert read_meta(outs[1] / "meta.json")["workers"] == 4


def test_meta_argv_roundtrip(tmp_path):
    first = tmp_path / "m1"
    assert cli.main(["gauss", "--n", "24", "--omega", "5", "--out", str(first)]) == 0
    argv = read_meta(first / "meta.json")["argv"]
    second = tmp_path / "m2"
    argv = [a.replace(str(first), str(second)) for a in argv]
    assert cli.main(argv) == 0
    assert _sha(first / "points.csv") == _sha(second / "points.csv")


def test_console_script_installed(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "gperiods.cli", "gauss", "--n", "9", "--omega", "2",
         "--out", str(tmp_path / "p")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert (tmp_path / "p" / "points.csv").exists()


def test_invalid_format_is_usage(tmp_path):
    rc = cli.main(["gauss", "--n", "10", "--omega", "3", "--formats", "bmp", "--out", str(tmp_path / "x")])
    assert rc == 2
