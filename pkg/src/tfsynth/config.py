"""Run configuration: one flat option table shared by the config file and the flags.

Config files are INI documents with one section per module::

    [grid]
    n = 512
    span = 16

    [biphoton]
    delta = 0.4237
    phi = pi

Every key is also a command-line flag (``--sweep-temp`` for
``sweep_temp``); flags override file values, which override defaults.
"""

from __future__ import annotations

import configparser
import math
import os
import re
from dataclasses import dataclass, fields
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from .errors import ConfigError

_ANGLE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(pi|π)?\s*$")


def parse_angle(text) -> float:
    """``"pi"``, ``"0.86pi"``, ``"-0.095*pi"`` or plain radians."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _ANGLE.match(str(text))
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ConfigError(f"cannot parse angle {text!r}")
    coef = float(m.group(1)) if m.group(1) is not None else 1.0
    return coef * math.pi if m.group(2) else coef


def parse_range(text) -> np.ndarray:
    """``start:stop:step`` with ``stop`` included when it falls on the grid."""
    try:
        start, stop, step = (float(x) for x in str(text).split(":"))
    except ValueError as exc:
        raise ConfigError(f"range must be start:stop:step, got {text!r}") from exc
    if not step > 0 or stop < start:
        raise ConfigError(f"bad range {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def parse_list(text) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    text = str(text).strip()
    if ":" in text:
        return [float(x) for x in parse_range(text)]
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise ConfigError(f"cannot parse list {text!r}") from exc


def parse_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"cannot parse boolean {text!r}")


@dataclass(frozen=True)
class Option:
    section: str
    key: str
    parse: Callable[[Any], Any]
    default: Any
    help: str

    @property
    def flag(self) -> str:
        return "--" + self.key.replace("_", "-")


def _int(x):
    try:
        return int(x)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"expected an integer, got {x!r}") from exc


def _float(x):
    try:
        return float(x)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"expected a number, got {x!r}") from exc


OPTIONS = [
    Option("grid", "n", _int, 512, "samples per axis (power of two >= 8)"),
    Option("grid", "span", _float, 16.0, "frequency span per axis, THz"),
    Option("biphoton", "model", str, "simplified", "simplified | physical"),
    Option("biphoton", "a", _float, 0.11284, "sum-frequency Gaussian coefficient, THz^-2"),
    Option("biphoton", "b", _float, 13.888, "difference-frequency sinc coefficient, ps"),
    Option("biphoton", "delta", _float, 0.0, "mode offset along nu1 - nu2, THz (0: single mode)"),
    Option("biphoton", "phi", parse_angle, math.pi, "relative phase (radians or '0.86pi')"),
    Option("biphoton", "pump_center_nm", _float, 792.0, "pump center wavelength, nm"),
    Option("biphoton", "pump_fwhm_nm", _float, 7.4, "pump intensity FWHM, nm"),
    Option("biphoton", "length", _float, 30.0, "crystal length, mm"),
    Option("biphoton", "poling_period", _float, 46.1, "poling period, um"),
    Option("biphoton", "dk0", _float, 0.0, "residual phase mismatch, rad/mm"),
    Option("biphoton", "gp", _float, 0.0, "pump inverse group velocity, ps/mm"),
    Option("biphoton", "g1", _float, None, "photon-1 inverse group velocity, ps/mm (default: GVM-matched to b)"),
    Option("biphoton", "g2", _float, None, "photon-2 inverse group velocity, ps/mm (default: GVM-matched to b)"),
    Option("interference", "tau", parse_range, "-15:15:0.05", "relay delays start:stop:step, ps"),
    Option("herald", "sweep_temp", parse_list, None, "crystal temperatures for the heralding sweep, C"),
    Option("herald", "rel_threshold", _float, 0.2, "peak threshold relative to the maximum"),
    Option("herald", "resolution", _float, 0.34, "detector timing FWHM for the blurred count, ps"),
    Option("calibration", "t_ref", _float, 45.0, "reference temperature, C"),
    Option("calibration", "sep_ref", _float, 0.26, "separation at t_ref, THz"),
    Option("calibration", "sep_slope", _float, 1.2e-2, "separation slope, THz/C"),
    Option("calibration", "phi_ref", parse_angle, 0.86 * math.pi, "phase at t_ref"),
    Option("calibration", "phi_slope", parse_angle, -0.095 * math.pi, "phase slope per C"),
    Option("calibration", "temps", parse_list, "35:65:5", "temperatures to evaluate, C"),
    Option("calibration", "points", str, None, "CSV of (temperature, value) rows to fit"),
    Option("output", "out", str, "out", "output directory"),
    Option("output", "heatmap", parse_bool, True, "also write PGM heatmaps"),
]

OPTION_BY_KEY = {o.key: o for o in OPTIONS}


@dataclass
class RunConfig:
    n: int = 512
    span: float = 16.0
    model: str = "simplified"
    a: float = 0.11284
    b: float = 13.888
    delta: float = 0.0
    phi: float = math.pi
    pump_center_nm: float = 792.0
    pump_fwhm_nm: float = 7.4
    length: float = 30.0
    poling_period: float = 46.1
    dk0: float = 0.0
    gp: float = 0.0
    g1: Optional[float] = None
    g2: Optional[float] = None
    tau: Any = None
    sweep_temp: Optional[List[float]] = None
    rel_threshold: float = 0.2
    resolution: float = 0.34
    t_ref: float = 45.0
    sep_ref: float = 0.26
    sep_slope: float = 1.2e-2
    phi_ref: float = 0.86 * math.pi
    phi_slope: float = -0.095 * math.pi
    temps: Any = None
    points: Optional[str] = None
    out: str = "out"
    heatmap: bool = True

    def validate(self) -> "RunConfig":
        if self.model not in ("simplified", "physical"):
            raise ConfigError(f"model must be 'simplified' or 'physical', got {self.model!r}")
        if not 0 < self.rel_threshold < 1:
            raise ConfigError("rel_threshold must be in (0, 1)")
        if self.resolution < 0:
            raise ConfigError("resolution must be >= 0")
        if self.delta < 0:
            raise ConfigError("delta must be >= 0")
        if (self.g1 is None) != (self.g2 is None):
            raise ConfigError("set both g1 and g2, or neither")
        return self


def read_config_file(path) -> Dict[str, str]:
    """Raw ``key -> text`` values from an INI file; unknown keys are errors."""
    if not os.path.exists(path):
        raise ConfigError(f"config file {path} not found")
    cp = configparser.ConfigParser()
    try:
        cp.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    raw = {}
    for section in cp.sections():
        for key, value in cp.items(section):
            opt = OPTION_BY_KEY.get(key)
            if opt is None or opt.section != section:
                raise ConfigError(f"unknown option [{section}] {key}")
            raw[key] = value
    return raw


def build_config(file_values: Dict[str, Any], cli_values: Dict[str, Any]) -> RunConfig:
    """Merge defaults < file < command line and parse every value."""
    kwargs = {}
    for opt in OPTIONS:
        if cli_values.get(opt.key) is not None:
            raw = cli_values[opt.key]
        elif opt.key in file_values:
            raw = file_values[opt.key]
        else:
            raw = opt.default
        kwargs[opt.key] = None if raw is None else opt.parse(raw)
    names = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in kwargs.items() if k in names}).validate()
