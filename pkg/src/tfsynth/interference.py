"""Hong-Ou-Mandel coincidence scans, interferogram fitting and temperature calibration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from .biphoton import sinc
from .errors import AxisMismatch, ConfigError, DegenerateX, FitDegenerate, NotConverged, ZeroField
from .grid import ComplexField2D, Domain

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class HomPattern:
    delays: np.ndarray
    p_cc: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.delays, dtype=float)
        p = np.asarray(self.p_cc, dtype=float)
        if d.shape != p.shape or d.ndim != 1:
            raise ConfigError("delays and p_cc must be 1D arrays of equal length")
        if d.size > 1 and np.any(np.diff(d) <= 0):
            raise ConfigError("delays must be strictly increasing")
        if np.any(p < -1e-9) or np.any(p > 1 + 1e-9):
            raise ValueError("coincidence probabilities must lie in [0, 1]")
        object.__setattr__(self, "delays", d)
        object.__setattr__(self, "p_cc", p)

    def __len__(self):
        return self.delays.size


@dataclass(frozen=True)
class HomFitResult:
    freq: float
    phase: float
    visibility: float
    envelope_width: float
    residual_rms: float

    @property
    def phase_over_pi(self) -> float:
        return self.phase / math.pi


@dataclass(frozen=True)
class CalibrationModel:
    """Linear temperature maps for mode separation (THz) and relative phase (rad).

    Defaults: separation 0.26 THz and phase 0.86 pi at 45 C, slopes
    1.2e-2 THz/C and -9.5e-2 pi/C.
    """

    t_ref: float = 45.0
    sep_ref: float = 0.26
    sep_slope: float = 1.2e-2
    phi_ref: float = 0.86 * math.pi
    phi_slope: float = -9.5e-2 * math.pi

    def __post_init__(self):
        for name in ("t_ref", "sep_ref", "sep_slope", "phi_ref", "phi_slope"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")

    @classmethod
    def from_anchors(cls, t1: float, sep1: float, t2: float, sep2: float, phi1: float,
                     phi_slope: float) -> "CalibrationModel":
        """Separation interpolated between two anchors, phase with an explicit slope."""
        if t1 == t2:
            raise DegenerateX("anchor temperatures must differ")
        return cls(t_ref=t1, sep_ref=sep1, sep_slope=(sep2 - sep1) / (t2 - t1), phi_ref=phi1,
                   phi_slope=phi_slope)


def calibration_eval(model: CalibrationModel, temperature) -> Tuple[float, float]:
    dt = np.asarray(temperature, dtype=float) - model.t_ref
    sep = model.sep_ref + model.sep_slope * dt
    phi = model.phi_ref + model.phi_slope * dt
    if np.ndim(dt) == 0:
        return float(sep), float(phi)
    return sep, phi


def fit_linear(points: Iterable[Sequence[float]]) -> Tuple[float, float, float]:
    """Ordinary least squares ``y = slope*x + intercept``; returns ``(slope, intercept, r2)``."""
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise DegenerateX("need at least two (x, y) points")
    x, y = pts[:, 0], pts[:, 1]
    xm, ym = x.mean(), y.mean()
    sxx = np.sum((x - xm) ** 2)
    if sxx == 0:
        raise DegenerateX("all x values are equal")
    slope = np.sum((x - xm) * (y - ym)) / sxx
    intercept = ym - slope * xm
    ss_tot = np.sum((y - ym) ** 2)
    ss_res = np.sum((y - (slope * x + intercept)) ** 2)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), float(r2)


def exchange_overlap_density(jsa: ComplexField2D) -> Tuple[np.ndarray, np.ndarray, float]:
    """``f(nu1,nu2) f*(nu2,nu1)`` summed along each difference diagonal.

    Returns ``(diff_coords, density, norm)`` where ``norm = sum |f|^2``; the
    delay dependence of the exchange overlap only enters through
    ``nu1 - nu2``, so the 2D quadrature collapses to a 1D sum.
    """
    jsa.require(Domain.FREQUENCY)
    if jsa.axis_x != jsa.axis_y:
        raise AxisMismatch("HOM scan needs identical photon axes")
    f = np.asarray(jsa.values, dtype=complex)
    norm = float(np.sum(np.abs(f) ** 2))
    if norm == 0:
        raise ZeroField("JSA is identically zero")
    n = f.shape[0]
    prod = f * np.conj(f.T)
    k = (np.arange(n)[:, None] - np.arange(n)[None, :]).ravel() + (n - 1)
    dens = np.bincount(k, weights=prod.real.ravel(), minlength=2 * n - 1) \
        + 1j * np.bincount(k, weights=prod.imag.ravel(), minlength=2 * n - 1)
    diff = (np.arange(2 * n - 1) - (n - 1)) * jsa.axis_x.step
    return diff, dens, norm


def hom_scan(jsa: ComplexField2D, delays, chunk: int = 256) -> HomPattern:
    """Coincidence probability behind a balanced beamsplitter vs relative delay.

    ``P(tau) = 1/2 [1 - Re(sum f(nu1,nu2) f*(nu2,nu1) exp(-i 2pi (nu1-nu2) tau)) / sum |f|^2]``
    """
    delays = np.asarray(delays, dtype=float)
    diff, dens, norm = exchange_overlap_density(jsa)
    out = np.empty(delays.size)
    for s in range(0, delays.size, chunk):
        tau = delays[s:s + chunk]
        kern = np.exp(-2j * math.pi * tau[:, None] * diff[None, :])
        out[s:s + chunk] = 0.5 * (1.0 - (kern @ dens).real / norm)
    return HomPattern(delays, np.clip(out, 0.0, 1.0))


def triangle(tau, width):
    return np.clip(1.0 - np.abs(tau) / width, 0.0, None)


def hom_model(tau, freq, phase, visibility, width):
    """Interferogram of two exchange-image sinc^2 modes.

    Triangular envelope of half-width ``width`` times ``cos(2 pi freq tau - phase)``,
    plus the phase-independent cross term of the two modes and its
    normalization. With ``visibility = 1`` this matches :func:`hom_scan` of a
    two-mode Gaussian x sinc amplitude in the continuum limit.
    """
    tau = np.asarray(tau, dtype=float)
    env = triangle(tau, width)
    cross = env * sinc(TWO_PI * freq * np.clip(width - np.abs(tau), 0.0, None))
    norm = 1.0 + math.cos(phase) * float(sinc(TWO_PI * freq * width))
    return 0.5 * (1.0 - visibility * (env * np.cos(TWO_PI * freq * tau - phase) + cross) / norm)


def _support_halfwidth(tau, p):
    dev = np.abs(p - 0.5)
    idx = np.nonzero(dev > 1e-3 * dev.max())[0]
    return max(abs(tau[idx[0]]), abs(tau[idx[-1]]))


def hom_fit(pattern: HomPattern, freq_min: float = 0.01, freq_max: float = 2.0, n_freq: int = 64,
            n_width: int = 9) -> HomFitResult:
    """Least-squares fit of :func:`hom_model` with a multi-start frequency grid.

    Every (frequency, width) start solves a linear problem in the cosine,
    sine and cross-term amplitudes; the best few starts are refined with a
    bounded nonlinear solver.
    """
    tau, p = pattern.delays, pattern.p_cc
    if tau.size < 32:
        raise FitDegenerate("need at least 32 delay points")
    if np.ptp(p) < 1e-9:
        raise FitDegenerate("pattern is flat")
    y = 1.0 - 2.0 * p
    w0 = _support_halfwidth(tau, p)
    widths = w0 * np.linspace(0.6, 1.4, n_width)
    starts = []
    for f in np.geomspace(freq_min, freq_max, n_freq):
        c, s = np.cos(TWO_PI * f * tau), np.sin(TWO_PI * f * tau)
        for w in widths:
            env = triangle(tau, w)
            cross = env * sinc(TWO_PI * f * np.clip(w - np.abs(tau), 0.0, None))
            basis = np.column_stack([env * c, env * s, cross])
            coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
            resid = float(np.sum((basis @ coef - y) ** 2))
            phase = math.atan2(coef[1], coef[0]) % TWO_PI
            vis = min(1.0, max(1e-3, math.hypot(coef[0], coef[1])))
            starts.append((resid, f, phase, vis, w))
    starts.sort(key=lambda r: r[0])

    def residuals(x):
        return hom_model(tau, *x) - p

    best = None
    for _, f, phase, vis, w in starts[:6]:
        x0 = np.array([f, phase, vis, w])
        lo = np.array([freq_min * 0.5, phase - 2 * math.pi, 0.0, 0.05 * w0])
        hi = np.array([freq_max * 2.0, phase + 2 * math.pi, 1.0, 4.0 * w0])
        res = least_squares(residuals, x0, bounds=(lo, hi), x_scale="jac", xtol=1e-14, ftol=1e-14,
                            gtol=1e-14, max_nfev=2000)
        if res.status <= 0:
            continue
        if best is None or res.cost < best.cost:
            best = res
    if best is None:
        raise NotConverged("no start converged")
    f, phase, vis, w = best.x
    rms = float(np.sqrt(np.mean(best.fun**2)))
    return HomFitResult(freq=float(f), phase=float(phase % TWO_PI), visibility=float(vis),
                        envelope_width=float(w), residual_rms=rms)


def phase_error(a: float, b: float) -> float:
    """Smallest absolute difference of two angles."""
    return abs(math.remainder(a - b, TWO_PI))
