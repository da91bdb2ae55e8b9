from fractions import Fraction

import pytest

from zetadelta.bounds.facts import ZetaPointwise
from zetadelta.config import RunConfig, load_config, parse_rational


def test_defaults():
    cfg = RunConfig()
    assert cfg.theta == Fraction(131, 416) and cfg.h == 0.01
    assert cfg.zeta_pointwise is ZetaPointwise.CLASSIC_32_205
    assert cfg.as_dict()["theta"] == "131/416"


def test_file_then_overrides(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# experiment\ntheta = 1/3\nzeta_exponent = bourgain_53_342\nh = 0.005  # finer\nthreads = 2\n")
    cfg = load_config(p)
    assert cfg.theta == Fraction(1, 3) and cfg.h == 0.005 and cfg.threads == 2
    assert cfg.zeta_pointwise is ZetaPointwise.BOURGAIN_53_342
    cfg = load_config(p, {"theta": "7/24", "h": None})
    assert cfg.theta == Fraction(7, 24) and cfg.h == 0.005


@pytest.mark.parametrize(
    "text",
    ["h = 0.5\n", "theta = 3/2\n", "threads = 0\n", "bogus = 1\n", "theta 1/3\n", "zeta_exponent = 1/6\n"],
)
def test_invalid_files(tmp_path, text):
    p = tmp_path / "bad.cfg"
    p.write_text(text)
    with pytest.raises(ValueError):
        load_config(p)


def test_rational_parsing():
    assert parse_rational(" 131/416 ") == Fraction(131, 416)
    with pytest.raises(ValueError):
        parse_rational("0.3.1")
