import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfsynth.config import (OPTIONS, RunConfig, build_config, parse_angle, parse_bool, parse_list, parse_range,
                            read_config_file)
from tfsynth.errors import ConfigError


@pytest.mark.parametrize("text,want", [
    ("pi", math.pi),
    ("0.86pi", 0.86 * math.pi),
    ("-0.095*pi", -0.095 * math.pi),
    ("1.5", 1.5),
    ("π", math.pi),
    ("2e-1 pi", 0.2 * math.pi),
    (0.3, 0.3),
])
def test_parse_angle(text, want):
    assert parse_angle(text) == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize("text", ["", "rad", "pi2", "1..2"])
def test_parse_angle_rejects(text):
    with pytest.raises(ConfigError):
        parse_angle(text)


@given(st.floats(-100, 100))
def test_parse_angle_round_trip(x):
    assert parse_angle(repr(x)) == x
    assert parse_angle(f"{x!r}pi") == pytest.approx(x * math.pi, rel=1e-15, abs=1e-300)


def test_parse_range_inclusive():
    r = parse_range("-15:15:0.05")
    assert r.size == 601
    assert r[0] == -15.0 and r[-1] == pytest.approx(15.0)


@pytest.mark.parametrize("text", ["1:2", "a:b:c", "0:1:0", "2:1:0.5"])
def test_parse_range_rejects(text):
    with pytest.raises(ConfigError):
        parse_range(text)


def test_parse_list_forms():
    assert parse_list("35,45,55,65") == [35.0, 45.0, 55.0, 65.0]
    assert parse_list("35:65:10") == [35.0, 45.0, 55.0, 65.0]
    assert parse_list([1, 2]) == [1.0, 2.0]
    with pytest.raises(ConfigError):
        parse_list("1,x")


def test_parse_bool():
    assert parse_bool("yes") is True and parse_bool("off") is False
    with pytest.raises(ConfigError):
        parse_bool("maybe")


def test_defaults_match_dataclass():
    cfg = build_config({}, {})
    for opt in OPTIONS:
        if opt.key in ("tau", "temps"):
            continue
        default = getattr(RunConfig(), opt.key)
        assert getattr(cfg, opt.key) == (opt.parse(opt.default) if opt.default is not None else None) == default


def test_every_option_has_flag_and_file_key(tmp_path):
    sections = {}
    for o in OPTIONS:
        if o.default is not None:
            sections.setdefault(o.section, []).append(f"{o.key} = {o.default}")
    text = "\n".join(f"[{name}]\n" + "\n".join(lines) for name, lines in sections.items())
    path = tmp_path / "all.ini"
    path.write_text(text)
    raw = read_config_file(path)
    assert set(raw) == {o.key for o in OPTIONS if o.default is not None}
    assert all(o.flag == "--" + o.key.replace("_", "-") for o in OPTIONS)


def test_precedence(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("[grid]\nn = 256\nspan = 32\n[biphoton]\ndelta = 0.2131\nphi = 0.86pi\n")
    cfg = build_config(read_config_file(path), {"n": "1024", "phi": None})
    assert cfg.n == 1024          # command line beats file
    assert cfg.span == 32.0       # file beats default
    assert cfg.phi == pytest.approx(0.86 * math.pi)
    assert cfg.b == 13.888        # default


def test_unknown_key(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[grid]\nwidth = 3\n")
    with pytest.raises(ConfigError):
        read_config_file(path)


def test_key_in_wrong_section(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[biphoton]\nn = 3\n")
    with pytest.raises(ConfigError):
        read_config_file(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        read_config_file(tmp_path / "nope.ini")


@pytest.mark.parametrize("cli", [
    {"model": "other"},
    {"rel_threshold": "1.5"},
    {"resolution": "-1"},
    {"delta": "-0.1"},
    {"g1": "0.1"},
    {"n": "many"},
])
def test_validation(cli):
    with pytest.raises(ConfigError):
        build_config({}, cli)


def test_tau_default_grid():
    cfg = build_config({}, {})
    np.testing.assert_allclose(cfg.tau[[0, -1]], [-15.0, 15.0])
