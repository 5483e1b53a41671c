"""Heralded single-photon waveforms, detector blurring and peak counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.ndimage import gaussian_filter, gaussian_filter1d

from .biphoton import SimplifiedJsaParams, SuperpositionParams, two_mode_jsa
from .errors import EmptyWaveform, NegativeFwhm, ZeroField
from .fourier import ft2, refined_maxima
from .grid import ComplexField2D, Domain, SampledAxis, Waveform1D
from .interference import CalibrationModel, calibration_eval

FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))

# single-photon and two-photon timing resolution of the up-conversion system (ps)
SINGLE_PHOTON_RESOLUTION = 0.34
TWO_PHOTON_RESOLUTION = 0.48

# Gaussian kernels are cut at this many standard deviations
TRUNCATE = 8.0


def _marginal_over_partner(field: ComplexField2D) -> Waveform1D:
    inten = np.abs(field.values) ** 2
    if not inten.max() > 0:
        raise ZeroField("joint amplitude is identically zero")
    return Waveform1D(field.axis_x, inten.sum(axis=1) * field.axis_y.step)


def heralded_temporal(jta: ComplexField2D) -> Waveform1D:
    """Arrival-time distribution of photon 1 when photon 2 is detected without timing."""
    jta.require(Domain.TIME)
    return _marginal_over_partner(jta)


def heralded_spectral(jsa: ComplexField2D) -> Waveform1D:
    jsa.require(Domain.FREQUENCY)
    return _marginal_over_partner(jsa)


def _sigma_bins(fwhm: float, step: float) -> float:
    if fwhm < 0:
        raise NegativeFwhm(f"FWHM must be >= 0, got {fwhm}")
    return fwhm / FWHM_PER_SIGMA / step


def _kernel_radius(sigma: float) -> int:
    # same rounding as scipy.ndimage; radius 0 means the identity kernel
    return int(TRUNCATE * sigma + 0.5)


def convolve_response(w: Waveform1D, fwhm: float) -> Waveform1D:
    """Convolve with a unit-area Gaussian of the given FWHM.

    The axis is treated as periodic, like the discrete transform that
    produced it, so the area under ``w`` is conserved.
    """
    sigma = _sigma_bins(fwhm, w.axis.step)
    if _kernel_radius(sigma) == 0:
        return w
    out = gaussian_filter1d(np.asarray(w.values, dtype=float), sigma, mode="wrap", truncate=TRUNCATE)
    return Waveform1D(w.axis, out)


def blur2d(field: ComplexField2D, fwhm_x: float, fwhm_y: Optional[float] = None) -> ComplexField2D:
    """Separable Gaussian blur of an intensity map (periodic edges, mass conserving)."""
    fwhm_y = fwhm_x if fwhm_y is None else fwhm_y
    sx = _sigma_bins(fwhm_x, field.axis_x.step)
    sy = _sigma_bins(fwhm_y, field.axis_y.step)
    v = np.asarray(field.values)
    if np.iscomplexobj(v):
        raise ValueError("blur2d works on intensity maps")
    if _kernel_radius(sx) == 0 and _kernel_radius(sy) == 0:
        return field
    out = gaussian_filter(v.astype(float), (sx, sy), mode="wrap", truncate=TRUNCATE)
    return field.with_values(out)


def peak_positions(w: Waveform1D, rel_threshold: float = 0.2) -> np.ndarray:
    if not 0 < rel_threshold < 1:
        raise ValueError(f"rel_threshold must be in (0, 1), got {rel_threshold}")
    v = np.asarray(w.values)
    if np.iscomplexobj(v) or np.any(v < 0):
        raise ValueError("peak counting needs a real nonnegative waveform")
    if v.size == 0 or not v.max() > 0:
        raise EmptyWaveform("waveform has no positive samples")
    return w.axis.sample(refined_maxima(v, rel_threshold))


def count_peaks(w: Waveform1D, rel_threshold: float = 0.2) -> int:
    return int(peak_positions(w, rel_threshold).size)


@dataclass(frozen=True)
class SweepPoint:
    temperature: float
    delta: float
    phi: float
    temporal_peaks: int
    spectral_peaks: int
    blurred_peaks: int
    temporal: Waveform1D
    spectral: Waveform1D


def anchored_calibration(t_low: float = 45.0, delta_low: float = 0.2131, t_high: float = 65.0,
                         delta_high: float = 0.4237, phi_low: float = 0.86 * math.pi,
                         phi_slope: float = -0.095 * math.pi) -> CalibrationModel:
    """Temperature -> (mode offset, phase) through the two fitted offset anchors."""
    return CalibrationModel.from_anchors(t_low, delta_low, t_high, delta_high, phi_low, phi_slope)


def temperature_sweep(temperatures: Sequence[float], axis: SampledAxis,
                      params: SimplifiedJsaParams = SimplifiedJsaParams(),
                      calibration: Optional[CalibrationModel] = None, rel_threshold: float = 0.2,
                      resolution: float = SINGLE_PHOTON_RESOLUTION) -> List[SweepPoint]:
    cal = calibration if calibration is not None else anchored_calibration()
    points = []
    for temp in temperatures:
        delta, phi = calibration_eval(cal, temp)
        jsa = two_mode_jsa(params, SuperpositionParams(max(delta, 0.0), phi), axis)
        temporal = heralded_temporal(ft2(jsa))
        spectral = heralded_spectral(jsa)
        points.append(SweepPoint(
            temperature=float(temp), delta=delta, phi=phi,
            temporal_peaks=count_peaks(temporal, rel_threshold),
            spectral_peaks=count_peaks(spectral, rel_threshold),
            blurred_peaks=count_peaks(convolve_response(temporal, resolution), rel_threshold),
            temporal=temporal, spectral=spectral,
        ))
    return points
