import json
import math

import numpy as np
import pytest

from vslice.cli import _set_thread_env, cli
from vslice.harness import read_json, read_vsl
from vslice.invert_svd import svd_index_set

GRID = "64x24x32"
BUMP_FLAGS = ["--phantom", "bump", "--n", "2", "--center", "0.3,-0.2,0.93",
              "--margin", "0.25"]


@pytest.fixture(scope="module")
def artifacts(tmp_path_factory):
    """A phantom description plus its sinogram on a small grid."""
    d = tmp_path_factory.mktemp("cli")
    ph = d / "phantom.json"
    sino = d / "sino.vsl"
    assert cli(["phantom", *BUMP_FLAGS, "--out", str(ph)]) == 0
    assert cli(["forward", "--truth", str(ph), "--grid", GRID, "--out", str(sino)]) == 0
    return d, ph, sino


def test_usage_errors_exit_2(tmp_path, capsys):
    assert cli([]) == 2
    assert cli(["invert", "--method", "nope", "--in", "x.vsl"]) == 2
    assert cli(["invert", "--method", "john", "--in", "x.vsl", "--report", "r.json"]) == 2
    assert cli(["forward", "--phantom", "bump", "--n", "2", "--out", "s.vsl"]) == 2  # no center
    assert cli(["svd-table", "--band", "4"]) == 2  # no n
    assert cli(["selftest", "--criteria", "0,13"]) == 2
    capsys.readouterr()


def test_missing_input_exits_1(tmp_path, capsys):
    assert cli(["invert", "--method", "john", "--in", str(tmp_path / "no.vsl")]) == 1
    err = capsys.readouterr().err
    assert "vslice: error" in err


def test_phantom_description_round_trip(artifacts):
    _, ph, _ = artifacts
    payload = read_json(str(ph))
    assert payload["n"] == 2
    assert payload["phantom"]["kind"] == "bump"
    assert payload["phantom"]["equator_margin"] == 0.25


def test_forward_writes_readable_sinogram(artifacts):
    _, _, sino = artifacts
    data, lam = read_vsl(str(sino))
    assert data.grid.spec.n_angular == 64
    assert math.isnan(lam)
    assert np.all(np.isfinite(data.values))


def test_invert_svd_report(artifacts, tmp_path, capsys):
    _, ph, sino = artifacts
    rep = tmp_path / "report.json"
    rc = cli(["invert", "--method", "svd", "--band", "8", "--in", str(sino),
              "--truth", str(ph), "--report", str(rep)])
    assert rc == 0
    body = read_json(str(rep))
    printed = json.loads(capsys.readouterr().out)
    assert printed["rel_l2_after_scale"] == body["rel_l2_after_scale"]
    assert body["method"] == "svd"
    assert body["rel_l2_after_scale"] < 0.2
    assert 0.9 < body["best_fit_scalar"] < 1.1


def test_invert_john_and_ac_reports(artifacts, tmp_path, capsys):
    _, ph, sino = artifacts
    out = tmp_path / "rec.vsl"
    rc = cli(["invert", "--method", "john", "--resolution", "96", "--in", str(sino),
              "--truth", str(ph), "--out", str(out)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert printed.startswith("wrote ")
    john = json.loads(printed.split("\n", 1)[1])
    assert john["rel_l2_after_scale"] < 0.1
    rec, _ = read_vsl(str(out))
    assert rec.grid.spec == read_vsl(str(sino))[0].grid.spec

    rc = cli(["invert", "--method", "ac", "--resolution", "96", "--in", str(sino),
              "--truth", str(ph)])
    assert rc == 0
    ac = json.loads(capsys.readouterr().out)
    assert ac["rel_l2_after_scale"] < 0.1
    # the continuation constants are self-consistent, unlike the even-route scalar
    assert 0.9 < ac["best_fit_scalar"] < 1.1
    assert john["best_fit_scalar"] < 0


def test_invert_hs_flags(artifacts, capsys):
    _, ph, sino = artifacts
    rc = cli(["invert", "--method", "hs", "--rmax", "6", "--ell", "1",
              "--in", str(sino), "--truth", str(ph)])
    assert rc == 0
    body = json.loads(capsys.readouterr().out)
    assert body["rel_l2_after_scale"] < 0.1
    assert 0.9 < body["best_fit_scalar"] < 1.1


def test_config_mirrors_flags(artifacts, tmp_path, capsys):
    d, ph, sino = artifacts
    cfg = tmp_path / "fwd.json"
    cfg.write_text(json.dumps({
        "phantom": "bump", "n": 2, "center": [0.3, -0.2, 0.93], "margin": 0.25,
        "grid": GRID, "out": str(tmp_path / "from_cfg.vsl"),
    }))
    assert cli(["forward", "--config", str(cfg)]) == 0
    assert (tmp_path / "from_cfg.vsl").read_bytes() == sino.read_bytes()

    # explicit flags win over the config
    assert cli(["forward", "--config", str(cfg), "--out", str(tmp_path / "o2.vsl")]) == 0
    assert (tmp_path / "o2.vsl").read_bytes() == sino.read_bytes()

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"bogus_key": 1}))
    assert cli(["forward", "--config", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bogus_key" in err


def test_svd_table_csv(tmp_path, capsys):
    assert cli(["svd-table", "--n", "2", "--band", "4"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "m,mu,k,c_nu,d_nu,s_nu"
    assert len(lines) - 1 == len(svd_index_set(2, 4))
    first = lines[1].split(",")
    assert first[:3] == ["0", "1", "0"]
    assert math.isclose(float(first[5]), 2.0 * math.sqrt(math.pi), rel_tol=1e-15)

    out = tmp_path / "table.csv"
    assert cli(["svd-table", "--n", "3", "--band", "3", "--out", str(out)]) == 0
    capsys.readouterr()
    assert out.read_text().splitlines()[0] == "m,mu,k,c_nu,d_nu,s_nu"


def test_selftest_subset(capsys):
    assert cli(["selftest", "--criteria", "10"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS")
    assert "harmonic dimension" in out


def test_thread_env(monkeypatch):
    monkeypatch.setenv("VSLICE_THREADS", "3")
    monkeypatch.delenv("OMP_NUM_THREADS", raising=False)
    monkeypatch.delenv("OPENBLAS_NUM_THREADS", raising=False)
    _set_thread_env()
    import os

    assert os.environ["OMP_NUM_THREADS"] == "3"
    assert os.environ["OPENBLAS_NUM_THREADS"] == "3"
