"""Biphoton wave packets in two-dimensional time-frequency space.

Joint spectral amplitudes, their joint temporal transforms, Hong-Ou-Mandel
scans and heralded single-photon waveforms on uniform grids.
"""

from .biphoton import (DispersionModel, PumpParams, SimplifiedJsaParams, SuperpositionParams, jsa_physical,
                       jsa_simplified, marginal_amplitude, marginal_intensity, shift_difference, superpose,
                       swap, two_mode_jsa)
from .errors import ConfigError, NumericFailure, TfSynthError
from .fourier import (antidiagonal_peaks, ft2, ft2_rotated, ift2, jta_single, jta_two_mode,
                      mode_separation_product, parseval_residual)
from .grid import ComplexField2D, Domain, SampledAxis, Waveform1D, conjugate_axis, make_axis
from .herald import (blur2d, convolve_response, count_peaks, heralded_spectral, heralded_temporal,
                     temperature_sweep)
from .interference import CalibrationModel, HomPattern, calibration_eval, fit_linear, hom_fit, hom_scan

__version__ = "0.1.0"

__all__ = [
    "DispersionModel",
    "PumpParams",
    "SimplifiedJsaParams",
    "SuperpositionParams",
    "jsa_physical",
    "jsa_simplified",
    "marginal_amplitude",
    "marginal_intensity",
    "shift_difference",
    "superpose",
    "swap",
    "two_mode_jsa",
    "ConfigError",
    "NumericFailure",
    "TfSynthError",
    "antidiagonal_peaks",
    "ft2",
    "ft2_rotated",
    "ift2",
    "jta_single",
    "jta_two_mode",
    "mode_separation_product",
    "parseval_residual",
    "ComplexField2D",
    "Domain",
    "SampledAxis",
    "Waveform1D",
    "conjugate_axis",
    "make_axis",
    "blur2d",
    "convolve_response",
    "count_peaks",
    "heralded_spectral",
    "heralded_temporal",
    "temperature_sweep",
    "CalibrationModel",
    "HomPattern",
    "calibration_eval",
    "fit_linear",
    "hom_fit",
    "hom_scan",
]
