"""Command-line front end.

    tfsynth jta --delta 0.4237 --phi pi --n 512
    tfsynth hom --delta 0.2131 --phi 0.86pi --tau -15:15:0.05
    tfsynth herald --sweep-temp 35,45,55,65
    tfsynth selftest

Summary lines go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 failed self-test, 2 configuration or I/O error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from typing import List, Optional

import numpy as np

from . import io
from .acceptance import run_all
from .biphoton import (DispersionModel, PumpParams, SimplifiedJsaParams, jsa_physical,
                       jsa_simplified, shift_difference, superpose, swap)
from .config import OPTIONS, OPTION_BY_KEY, RunConfig, build_config, read_config_file
from .errors import ConfigError, NoPeaks, NumericFailure
from .fourier import antidiagonal_peaks, ft2, mode_separation_product, parseval_residual
from .grid import ComplexField2D, make_axis
from .herald import (anchored_calibration, convolve_response, count_peaks, heralded_spectral,
                     heralded_temporal, temperature_sweep)
from .interference import CalibrationModel, calibration_eval, fit_linear, hom_fit, hom_scan

EXIT_OK, EXIT_SELFTEST, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

SUBCOMMANDS = {
    "jsa": "joint spectral amplitude, intensity map and spectral marginal",
    "jta": "joint temporal amplitude, peak separations and their product",
    "hom": "coincidence scan versus relative delay, with an interferogram fit",
    "herald": "heralded waveforms, or peak counts over a temperature sweep",
    "calibrate": "temperature calibration table, or a linear fit of measured points",
    "selftest": "run the acceptance criteria",
}


def _option_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="INI file; command-line flags override its values")
    for opt in OPTIONS:
        default = "" if opt.default is None else f" [default: {opt.default}]"
        parent.add_argument(opt.flag, dest=opt.key, default=None, metavar=opt.key.upper(),
                            help=opt.help + default)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfsynth", description="Biphoton time-frequency synthesis.")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _option_parser()
    for name, help_text in SUBCOMMANDS.items():
        sub.add_parser(name, parents=[parent], help=help_text, description=help_text)
    return parser


def _join_negative_values(argv: List[str]) -> List[str]:
    """``--tau -15:15:0.05`` -> ``--tau=-15:15:0.05`` so argparse does not read a flag."""
    flags = {o.flag for o in OPTIONS} | {"--config"}
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in flags and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] not in flags:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def load_config(ns: argparse.Namespace) -> RunConfig:
    file_values = read_config_file(ns.config) if ns.config else {}
    cli_values = {k: getattr(ns, k) for k in OPTION_BY_KEY}
    return build_config(file_values, cli_values)


def frequency_axis(cfg: RunConfig):
    return make_axis(cfg.n, 0.0, cfg.span, "frequency")


def build_jsa(cfg: RunConfig) -> ComplexField2D:
    """Single-mode amplitude, or the two-mode superposition when ``delta > 0``."""
    axis = frequency_axis(cfg)
    if cfg.model == "simplified":
        single = jsa_simplified(SimplifiedJsaParams(cfg.a, cfg.b), axis)
    else:
        pump = PumpParams.from_wavelength(cfg.pump_center_nm, cfg.pump_fwhm_nm)
        if cfg.g1 is None:
            disp = DispersionModel.gvm_matched(cfg.b, cfg.length, cfg.poling_period, cfg.gp)
            disp = dataclasses.replace(disp, dk0=cfg.dk0)
        else:
            disp = DispersionModel(cfg.length, cfg.poling_period, cfg.dk0, cfg.gp, cfg.g1, cfg.g2)
        single = jsa_physical(pump, disp, axis)
    if cfg.delta == 0:
        return single
    s1 = shift_difference(single, cfg.delta)
    return superpose(s1, swap(s1), cfg.phi)


def _emit(key: str, value) -> None:
    if isinstance(value, float):
        value = f"{value:.6g}"
    print(f"{key} = {value}")


def _peak_separation(intensity: ComplexField2D, rel_threshold: float) -> Optional[float]:
    try:
        return antidiagonal_peaks(intensity, rel_threshold).separation
    except NoPeaks:
        return None


def _write_maps(cfg: RunConfig, stem: str, field: ComplexField2D) -> None:
    io.export_grid(field, os.path.join(cfg.out, f"{stem}_amplitude.grid"))
    inten = field.intensity()
    io.export_grid(inten, os.path.join(cfg.out, f"{stem}_intensity.grid"))
    if cfg.heatmap:
        io.export_heatmap(inten, os.path.join(cfg.out, f"{stem}_intensity.pgm"))


def cmd_jsa(cfg: RunConfig) -> int:
    jsa = build_jsa(cfg)
    io.ensure_dir(cfg.out)
    _write_maps(cfg, "jsa", jsa)
    spectral = heralded_spectral(jsa)
    io.export_csv(spectral, os.path.join(cfg.out, "heralded_spectral.csv"))
    peaks = antidiagonal_peaks(jsa.intensity(), cfg.rel_threshold)
    _emit("jsi_peaks", peaks.count)
    _emit("jsi_separation_thz", peaks.separation if peaks.separation is not None else "n/a")
    _emit("heralded_spectral_peaks", count_peaks(spectral, cfg.rel_threshold))
    return EXIT_OK


def cmd_jta(cfg: RunConfig) -> int:
    jsa = build_jsa(cfg)
    jta = ft2(jsa)
    io.ensure_dir(cfg.out)
    _write_maps(cfg, "jta", jta)
    temporal = heralded_temporal(jta)
    io.export_csv(temporal, os.path.join(cfg.out, "heralded_temporal.csv"))
    jsi_sep = _peak_separation(jsa.intensity(), cfg.rel_threshold)
    jti_sep = _peak_separation(jta.intensity(), cfg.rel_threshold)
    _emit("parseval_residual", f"{parseval_residual(jsa, jta):.3e}")
    _emit("jsi_separation_thz", jsi_sep if jsi_sep is not None else "n/a")
    _emit("jti_separation_ps", jti_sep if jti_sep is not None else "n/a")
    if jsi_sep is not None and jti_sep is not None:
        _emit("msp", mode_separation_product(jsi_sep, jti_sep))
    else:
        _emit("msp", "n/a")
    _emit("heralded_temporal_peaks", count_peaks(temporal, cfg.rel_threshold))
    return EXIT_OK


def cmd_hom(cfg: RunConfig) -> int:
    jsa = build_jsa(cfg)
    pattern = hom_scan(jsa, cfg.tau)
    io.ensure_dir(cfg.out)
    io.export_csv(pattern, os.path.join(cfg.out, "hom.csv"))
    p0 = float(hom_scan(jsa, [0.0]).p_cc[0])
    _emit("p_cc_zero_delay", p0)
    if cfg.delta == 0:
        # a single mode has no beat to fit
        return EXIT_OK
    fit = hom_fit(pattern)
    _emit("fit_freq_thz", fit.freq)
    _emit("fit_phase_pi", fit.phase_over_pi)
    _emit("fit_visibility", fit.visibility)
    _emit("fit_residual_rms", f"{fit.residual_rms:.3e}")
    return EXIT_OK


def _calibration(cfg: RunConfig) -> CalibrationModel:
    return CalibrationModel(cfg.t_ref, cfg.sep_ref, cfg.sep_slope, cfg.phi_ref, cfg.phi_slope)


def cmd_herald(cfg: RunConfig) -> int:
    io.ensure_dir(cfg.out)
    if cfg.sweep_temp:
        cal = anchored_calibration(t_low=cfg.t_ref, phi_low=cfg.phi_ref, phi_slope=cfg.phi_slope)
        sweep = temperature_sweep(cfg.sweep_temp, frequency_axis(cfg), SimplifiedJsaParams(cfg.a, cfg.b),
                                  cal, cfg.rel_threshold, cfg.resolution)
        print("temperature_c delta_thz phi_pi temporal_peaks spectral_peaks blurred_peaks")
        for p in sweep:
            print(f"{p.temperature:g} {p.delta:.6g} {p.phi / math.pi:.6g} "
                  f"{p.temporal_peaks} {p.spectral_peaks} {p.blurred_peaks}")
            tag = f"{p.temperature:g}C"
            io.export_csv(p.temporal, os.path.join(cfg.out, f"heralded_temporal_{tag}.csv"))
            io.export_csv(p.spectral, os.path.join(cfg.out, f"heralded_spectral_{tag}.csv"))
        return EXIT_OK
    jsa = build_jsa(cfg)
    temporal = heralded_temporal(ft2(jsa))
    spectral = heralded_spectral(jsa)
    blurred = convolve_response(temporal, cfg.resolution)
    io.export_csv(temporal, os.path.join(cfg.out, "heralded_temporal.csv"))
    io.export_csv(spectral, os.path.join(cfg.out, "heralded_spectral.csv"))
    io.export_csv(blurred, os.path.join(cfg.out, "heralded_temporal_blurred.csv"))
    _emit("temporal_peaks", count_peaks(temporal, cfg.rel_threshold))
    _emit("spectral_peaks", count_peaks(spectral, cfg.rel_threshold))
    _emit("blurred_peaks", count_peaks(blurred, cfg.rel_threshold))
    return EXIT_OK


def _read_points(path) -> np.ndarray:
    try:
        pts = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except ValueError as exc:
        raise ConfigError(f"cannot read points from {path}: {exc}") from exc
    if pts.shape[1] != 2:
        raise ConfigError(f"{path}: expected two columns (temperature, value)")
    return pts


def cmd_calibrate(cfg: RunConfig) -> int:
    if cfg.points:
        slope, intercept, r2 = fit_linear(_read_points(cfg.points))
        _emit("slope", slope)
        _emit("intercept", intercept)
        _emit("r2", r2)
        return EXIT_OK
    temps = np.asarray(cfg.temps, dtype=float)
    sep, phi = calibration_eval(_calibration(cfg), temps)
    io.ensure_dir(cfg.out)
    table = np.column_stack([temps, sep, phi / math.pi])
    np.savetxt(os.path.join(cfg.out, "calibration.csv"), table, fmt=io.FMT, delimiter=",",
               header="C,separation_THz,phase_pi", comments="# ")
    print("temperature_c separation_thz phi_pi")
    for t, s, p in table:
        print(f"{t:g} {s:.6g} {p:.6g}")
    _emit("separation_slope_thz_per_c", fit_linear(zip(temps, sep))[0] if temps.size > 1 else "n/a")
    _emit("phase_slope_pi_per_c", fit_linear(zip(temps, phi / math.pi))[0] if temps.size > 1 else "n/a")
    return EXIT_OK


def cmd_selftest(cfg: RunConfig) -> int:
    results = run_all(print)
    failed = [r.number for r in results if not r.passed]
    if failed:
        print(f"failed criteria: {', '.join(map(str, failed))}", file=sys.stderr)
        return EXIT_SELFTEST
    return EXIT_OK


COMMANDS = {
    "jsa": cmd_jsa,
    "jta": cmd_jta,
    "hom": cmd_hom,
    "herald": cmd_herald,
    "calibrate": cmd_calibrate,
    "selftest": cmd_selftest,
}


def run(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:  # argparse already printed usage to stderr
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    try:
        cfg = load_config(ns)
        return COMMANDS[ns.command](cfg)
    except ConfigError as exc:
        print(f"tfsynth: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"tfsynth: I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFailure as exc:
        print(f"tfsynth: numeric failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
