import io
import json
import time

import pytest

from zetadelta.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def cli_cache(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli_cache")
    assert run("compute", "grid", "--t0", "2", "--t1", "300", "--cache-dir", str(root))[0] == 0
    assert run("compute", "delta", "--N", "300", "--cache-dir", str(root))[0] == 0
    return root


def test_bounds_table_text():
    start = time.perf_counter()
    code, text = run("bounds", "table")
    assert code == 0 and time.perf_counter() - start < 1.0
    for frac in ("41/32", "25/16", "59/32", "17/8", "49/32", "29/16"):
        assert frac in text
    assert "Hölder with weights 1/8, 7/8" in text


def test_bounds_single_json():
    code, text = run("bounds", "--k", "1", "--m", "2", "--json")
    d = json.loads(text)
    assert code == 0 and d["growth"] == "41/32" and d["growth_decimal"] == "1.28125"
    assert [s["weight"] for s in d["steps"]] == ["1/8", "7/8"]


def test_bounds_flags_change_database():
    _, default = run("bounds", "--k", "8", "--m", "2", "--json")
    _, other = run("--zeta-exponent", "53/342", "bounds", "--k", "8", "--m", "2", "--json")
    assert json.loads(default)["growth"] != json.loads(other)["growth"]


@pytest.mark.parametrize("k,m", [(0, 1), (9, 1), (1, 4)])
def test_bounds_usage_error(capsys, k, m):
    code, _ = run("bounds", "--k", str(k), "--m", str(m))
    assert code == 2
    assert "--k must be in 1..8" in capsys.readouterr().err


def test_bounds_facts():
    code, text = run("bounds", "facts")
    assert code == 0 and "131/416" in text


def test_compute_idempotent(cli_cache):
    code, first = run("compute", "grid", "--t0", "2", "--t1", "300", "--cache-dir", str(cli_cache))
    code2, second = run("compute", "grid", "--t0", "2", "--t1", "300", "--cache-dir", str(cli_cache))
    assert code == code2 == 0
    assert first.startswith("cache hit") and first == second
    manifest = json.loads((cli_cache / "manifest.json").read_text())
    assert manifest["grid_t2_300_h0.01.bin"]["sha256"] in first


def test_compute_corrupt_cache(tmp_path, capsys):
    assert run("compute", "delta", "--N", "50", "--cache-dir", str(tmp_path))[0] == 0
    path = tmp_path / "divisor_N50.bin"
    data = bytearray(path.read_bytes())
    data[20] ^= 1
    path.write_bytes(bytes(data))
    code, _ = run("compute", "delta", "--N", "50", "--cache-dir", str(tmp_path))
    assert code == 1 and "CacheError" in capsys.readouterr().err


def test_compute_zeta_samples_and_E(cli_cache):
    code, text = run("compute", "zeta", "--t0", "9.98", "--t1", "10.02", "--h", "0.01", "--cache-dir", str(cli_cache))
    lines = text.splitlines()
    assert code == 0 and lines[0] == "t,abs_zeta_sq,method"
    assert lines[1].endswith("euler_maclaurin") and lines[-1].endswith("riemann_siegel")
    code, text = run("compute", "zeta", "--E", "100", "--cache-dir", str(cli_cache))
    T, E, err = map(float, text.splitlines()[1].split(","))
    assert code == 0 and E == pytest.approx(3.46265409, abs=1e-5)


def test_moment_missing_cache(tmp_path, capsys):
    code, _ = run("moment", "--k", "2", "--m", "1", "--T", "1e9", "--cache-dir", str(tmp_path))
    err = capsys.readouterr().err
    assert code == 1 and "zetadelta compute grid --t0 2 --t1 1e+09" in err


def test_moment_report(cli_cache, capsys, tmp_path):
    report = tmp_path / "r.json"
    code, text = run("moment", "--k", "2", "--m", "1", "--T", "50,100,200,300",
                     "--cache-dir", str(cli_cache), "--report", str(report))
    assert code == 0 and len(text.splitlines()) == 5
    r = json.loads(report.read_text())
    assert r["proven_exponent"] == "3/2" and len(r["points"]) == 4


def test_moment_output_deterministic(cli_cache):
    args = ["moment", "--k", "1", "--m", "1", "--T", "20,150,300", "--cache-dir", str(cli_cache)]
    a = run(*args)[1]
    b = run(*args)[1]
    c = run(*args, "--threads", "4")[1]
    assert a == b == c


def test_global_flags_after_subcommand(cli_cache, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(f"cache_dir = {cli_cache}\nh = 0.02\n")
    code, _ = run("moment", "--k", "0", "--m", "1", "--T", "100", "--config", str(cfg))
    assert code == 1  # no h=0.02 grid cached
    code, text = run("moment", "--k", "0", "--m", "0", "--T", "100", "--config", str(cfg), "--h", "0.01")
    assert code == 0 and text.splitlines()[1].startswith("100,0,0,98,")
