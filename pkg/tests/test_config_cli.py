"""Key-value configs and the command line entry points."""

import csv
import json

import numpy as np
import pytest

from mvop.cli import main
from mvop.config import ConfigError, config_n_max, parse_config, weight_from_config


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


HERMITE_CFG = "family = hermite\nalpha = 1.0, 1.0\nn_max = 6\n"


def test_parse_config_basics():
    cfg = parse_config("# comment\nfamily = hermite\n\nAlpha = 1, 0.5\n")
    assert cfg == {"family": "hermite", "alpha": "1, 0.5"}


def test_parse_config_rejects_duplicates():
    with pytest.raises(ConfigError, match="line 3"):
        parse_config("family = scalar\nv = 0,0,1\nfamily = hermite\n")


def test_parse_config_rejects_missing_separator():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("family hermite\n")


def test_weight_from_config_families():
    w = weight_from_config({"family": "scalar", "v": "0, 0, 1"})
    assert w.dim == 1
    w = weight_from_config({"family": "hermite", "alpha": "1, 0.5"})
    assert w.dim == 2
    w = weight_from_config({"family": "pearson", "n": "3"})
    assert w.dim == 3
    w = weight_from_config({"family": "freud", "n": "2", "alpha": "1",
                            "beta": "1", "t": "0.2"})
    assert w.v.coef[2] == pytest.approx(-0.2)
    w = weight_from_config({"family": "custom", "n": "2",
                            "v": "0, 0, 0, 0, 1", "a": "0, 0; 1.5, 0"})
    assert w.A[1, 0] == pytest.approx(1.5)


def test_weight_from_config_names_missing_key():
    with pytest.raises(ConfigError, match="alpha"):
        weight_from_config({"family": "freud", "n": "2", "beta": "1"})
    with pytest.raises(ConfigError, match="family"):
        weight_from_config({"v": "0,0,1"})


def test_weight_from_config_rejects_unknown_family():
    with pytest.raises(ConfigError, match="unknown family"):
        weight_from_config({"family": "jacobi"})


def test_config_n_max_precedence():
    assert config_n_max({"n_max": "10"}, None) == 10
    assert config_n_max({"n_max": "10"}, 7) == 7
    assert config_n_max({}, None, default=8) == 8


def test_compute_writes_family(tmp_path):
    cfg = write(tmp_path, "h2.cfg", HERMITE_CFG)
    out = str(tmp_path / "fam.json")
    assert main(["compute", "--config", cfg, "--out", out]) == 0
    payload = json.loads((tmp_path / "fam.json").read_text())
    assert payload["N"] == 2
    assert payload["n_max"] == 6
    # complex entries are encoded as [re, im] pairs
    assert payload["H"][0][0][0] == pytest.approx([np.sqrt(np.pi), 0.0])


def test_compute_rejects_malformed_config(tmp_path):
    cfg = write(tmp_path, "bad.cfg", "family = freud\nbeta = 1\n")
    assert main(["compute", "--config", cfg]) == 2


def test_compute_gates_untrusted_degree(tmp_path):
    cfg = write(tmp_path, "h2.cfg", HERMITE_CFG)
    assert main(["compute", "--config", cfg, "--n-max", "40"]) == 3


def test_fast_hermite_matches_oracle_output(tmp_path):
    cfg = write(tmp_path, "h2.cfg", HERMITE_CFG)
    out = str(tmp_path / "fast.json")
    assert main(["fast-hermite", "--config", cfg, "--out", out]) == 0
    payload = json.loads((tmp_path / "fast.json").read_text())
    assert payload["n_max"] == 6
    assert {"H", "B", "C"} <= set(payload)


def test_fast_hermite_needs_gaussian_family(tmp_path):
    cfg = write(tmp_path, "sc.cfg", "family = scalar\nv = 0, 0, 1\n")
    assert main(["fast-hermite", "--config", cfg]) == 2


def test_verify_suite(tmp_path):
    out = str(tmp_path / "report.json")
    assert main(["verify", "--suite", "dpainleve", "--out", out]) == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["suite"] == "dpainleve"
    assert report["passed"] is True
    assert report["failed"] == []
    assert all(c["pass"] for c in report["checks"])
    assert all(c["max_residual"] < c["tolerance"] for c in report["checks"])


def test_verify_rejects_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_toda_evolve_csv(tmp_path):
    cfg = write(tmp_path, "h2.cfg", HERMITE_CFG)
    out = str(tmp_path / "flow.csv")
    assert main(["toda-evolve", "--config", cfg, "--t", "0.02",
                 "--h", "0.01", "--out", out]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][:3] == ["t", "b0_re", "b0_im"]
    assert len(rows) == 4  # header plus initial state plus two steps
    assert float(rows[-1][0]) == pytest.approx(0.02)


def test_bench_csv(tmp_path):
    cfg = write(tmp_path, "h2.cfg", HERMITE_CFG)
    out = str(tmp_path / "bench.csv")
    assert main(["bench", "--config", cfg, "--n-max", "6", "--out", out]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["family", "N", "n_max", "oracle_ms", "fast_ms",
                       "max_residual"]
    assert float(rows[1][5]) < 1e-8


def test_export_csv(tmp_path):
    cfg = write(tmp_path, "h2.cfg", HERMITE_CFG)
    out = str(tmp_path / "fam.csv")
    assert main(["export", "--config", cfg, "--n-max", "5", "--out", out]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["quantity", "n", "row", "col", "re", "im"]
    assert rows[1][0] == "H"
    assert float(rows[1][4]) == pytest.approx(np.sqrt(np.pi))


def test_figures_flag(tmp_path):
    cfg = write(tmp_path, "h2.cfg", HERMITE_CFG)
    out = str(tmp_path / "fam.json")
    assert main(["compute", "--config", cfg, "--out", out, "--figures"]) == 0
    assert (tmp_path / "fam.png").exists()
