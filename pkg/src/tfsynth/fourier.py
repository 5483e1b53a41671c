"""Frequency <-> time transforms of joint amplitudes and their closed forms.

The forward transform is

    JTA(t1, t2) = sum JSA(nu1, nu2) exp(-i 2 pi (t1 nu1 + t2 nu2)) dnu^2

on the conjugate time axes, so closed forms written for the continuous
integral (Gaussian x UnitBox) are reproduced numerically including their
prefactors. The inverse uses the positive kernel with a ``dt^2`` weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.signal import find_peaks

from .biphoton import SimplifiedJsaParams, SuperpositionParams
from .errors import AxisMismatch, ConfigError, NonPositiveInput, NoPeaks, WrongDomain, ZeroField
from .grid import ComplexField2D, Domain, SampledAxis, conjugate_axis


def _center_phase(time_axis: SampledAxis, freq_center: float) -> Optional[np.ndarray]:
    if freq_center == 0:
        return None
    return np.exp(-2j * math.pi * time_axis.samples * freq_center)


def ft2(field: ComplexField2D) -> ComplexField2D:
    """Joint temporal amplitude of a frequency-domain field."""
    field.require(Domain.FREQUENCY)
    ax, ay = field.axis_x, field.axis_y
    tx, ty = conjugate_axis(ax), conjugate_axis(ay)
    out = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(field.values)))
    out *= ax.step * ay.step
    px, py = _center_phase(tx, ax.center), _center_phase(ty, ay.center)
    if px is not None:
        out *= px[:, None]
    if py is not None:
        out *= py[None, :]
    return ComplexField2D(tx, ty, out)


def ift2(field: ComplexField2D, axis_x: Optional[SampledAxis] = None,
         axis_y: Optional[SampledAxis] = None) -> ComplexField2D:
    """Inverse of :func:`ft2`; pass the original frequency axes to restore a nonzero center."""
    field.require(Domain.TIME)
    tx, ty = field.axis_x, field.axis_y
    fx = axis_x if axis_x is not None else conjugate_axis(tx)
    fy = axis_y if axis_y is not None else conjugate_axis(ty)
    if fx.n != tx.n or fy.n != ty.n:
        raise AxisMismatch("target frequency axes must have the same length as the time axes")
    values = np.array(field.values, dtype=complex)
    px, py = _center_phase(tx, fx.center), _center_phase(ty, fy.center)
    if px is not None:
        values *= np.conj(px)[:, None]
    if py is not None:
        values *= np.conj(py)[None, :]
    out = np.fft.fftshift(np.fft.ifft2(np.fft.ifftshift(values)))
    out *= tx.n * ty.n * tx.step * ty.step
    return ComplexField2D(fx, fy, out)


def ft2_rotated(sum_profile: Callable[[np.ndarray], np.ndarray],
                diff_profile: Callable[[np.ndarray], np.ndarray],
                axis: SampledAxis) -> ComplexField2D:
    """Transform of ``G(nu1 + nu2) * H(nu1 - nu2)`` via two 1D FFTs.

    With ``p = i + j`` and ``q = i - j`` the kernel factorizes, and the
    sum/difference coordinates are sampled on the same step as ``axis`` over
    ``2n`` points, which lands every ``(t1 + t2, t1 - t2)`` pair of the
    conjugate time grid on an FFT bin. Only pairs with ``p = q (mod 2)`` are
    grid points; summing over all pairs and adding the half-period-shifted
    product removes the others exactly. The result equals the square-grid
    :func:`ft2` whenever the field is negligible outside the rotated
    ``|nu1 +- nu2| < n*step/2`` window; slowly decaying profiles (sinc tails)
    see a different truncation than the square grid.
    """
    if axis.domain is not Domain.FREQUENCY:
        raise WrongDomain("ft2_rotated needs a frequency axis")
    if axis.center != 0:
        raise ConfigError("ft2_rotated works in shifted coordinates (axis center 0)")
    n, d = axis.n, axis.step
    rot = np.arange(-n, n) * d
    g_hat = np.fft.fft(np.fft.ifftshift(np.asarray(sum_profile(rot), dtype=complex)))
    h_hat = np.fft.fft(np.fft.ifftshift(np.asarray(diff_profile(rot), dtype=complex)))
    m = np.arange(n) - n // 2
    k_sum = (m[:, None] + m[None, :]) % (2 * n)
    k_diff = (m[:, None] - m[None, :]) % (2 * n)
    out = g_hat[k_sum] * h_hat[k_diff] + g_hat[(k_sum + n) % (2 * n)] * h_hat[(k_diff + n) % (2 * n)]
    out *= 0.5 * d * d
    t = conjugate_axis(axis)
    return ComplexField2D(t, t, out)


def unit_box(x):
    """1 on the closed interval ``[-1/2, 1/2]``, 0 elsewhere."""
    return (np.abs(np.asarray(x, dtype=float)) <= 0.5).astype(float)


def _sum_envelope(t1, t2, s: SimplifiedJsaParams):
    tp = np.asarray(t1, dtype=float) + np.asarray(t2, dtype=float)
    return np.sqrt(math.pi / s.a) * np.exp(-(math.pi**2) * tp**2 / (4.0 * s.a))


def jta_single(t1, t2, s: SimplifiedJsaParams):
    """Closed-form transform of the single-mode Gaussian x sinc amplitude."""
    tm = np.asarray(t1, dtype=float) - np.asarray(t2, dtype=float)
    return (math.pi / (2.0 * s.b)) * _sum_envelope(t1, t2, s) * unit_box(math.pi * tm / (2.0 * s.b)) + 0j


def jta_two_mode(t1, t2, s: SimplifiedJsaParams, sp: SuperpositionParams):
    """Closed-form transform of the two-mode amplitude with relative phase ``phi``.

    ``exp(i phi/2) cos(pi (t1 - t2) delta - phi/2)`` modulation: ``i sin`` at
    ``phi = pi`` and ``cos`` at ``phi = 0`` (those two cases are evaluated in
    their exact trigonometric form).
    """
    tm = np.asarray(t1, dtype=float) - np.asarray(t2, dtype=float)
    x = math.pi * tm * sp.delta
    phi = math.remainder(sp.phi, 2.0 * math.pi)
    if phi == 0.0:
        mod = np.cos(x) + 0j
    elif abs(phi) == math.pi:
        mod = 1j * np.sin(x)
    else:
        mod = np.exp(0.5j * phi) * np.cos(x - 0.5 * phi)
    env = (math.pi / s.b) * _sum_envelope(t1, t2, s) * unit_box(math.pi * tm / (2.0 * s.b))
    return env * mod


def closed_form_field(fn, time_axis: SampledAxis, *args) -> ComplexField2D:
    """Evaluate ``fn(t1, t2, *args)`` on a square time grid."""
    if time_axis.domain is not Domain.TIME:
        raise WrongDomain("closed forms are evaluated on time axes")
    t = time_axis.samples
    values = np.broadcast_to(fn(t[:, None], t[None, :], *args), (time_axis.n, time_axis.n))
    return ComplexField2D(time_axis, time_axis, values)


def parseval_residual(jsa: ComplexField2D, jta: ComplexField2D) -> float:
    jsa.require(Domain.FREQUENCY)
    jta.require(Domain.TIME)
    if jta.axis_x != conjugate_axis(jsa.axis_x) or jta.axis_y != conjugate_axis(jsa.axis_y):
        raise AxisMismatch("JSA and JTA are not on conjugate grids")
    e_nu = jsa.l2_mass()
    if e_nu == 0:
        raise ZeroField("JSA has zero norm")
    return abs(e_nu - jta.l2_mass()) / e_nu


def relative_l2(a, b, mask=None) -> float:
    """``||a - b|| / ||b||`` over ``mask``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if mask is not None:
        a, b = a[mask], b[mask]
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def box_edge_mask(time_axis: SampledAxis, halfwidth: float, bins: int = 3) -> np.ndarray:
    """True away from ``|t1 - t2| = halfwidth`` (Gibbs ringing excluded)."""
    t = time_axis.samples
    tm = np.abs(t[:, None] - t[None, :])
    return np.abs(tm - halfwidth) > bins * time_axis.step


PLATEAU_RESOLUTION = 1e-12


def refined_maxima(profile: np.ndarray, rel_threshold: float) -> np.ndarray:
    """Fractional indices of local maxima at or above ``rel_threshold * max``.

    End samples count as maxima when they exceed their single neighbour;
    plateaus count once (at their midpoint); isolated maxima are refined by
    a three-point parabola. Samples are compared at a resolution of
    ``PLATEAU_RESOLUTION * max`` so that rounding noise on a flat top does
    not split it into many maxima.
    """
    profile = np.asarray(profile, dtype=float)
    top = profile.max()
    if not top > 0:
        return np.empty(0)
    levels = np.round(profile / (top * PLATEAU_RESOLUTION))
    floor = levels.min() - 1.0
    padded = np.concatenate([[floor], levels, [floor]])
    idx, props = find_peaks(padded, height=rel_threshold / PLATEAU_RESOLUTION, plateau_size=1)
    out = []
    for k, left, right in zip(idx - 1, props["left_edges"] - 1, props["right_edges"] - 1):
        if right > left:
            out.append(0.5 * (left + right))
            continue
        if 0 < k < len(profile) - 1:
            y0, y1, y2 = profile[k - 1], profile[k], profile[k + 1]
            den = y0 - 2.0 * y1 + y2
            out.append(k + (0.5 * (y0 - y2) / den if den != 0 else 0.0))
        else:
            out.append(float(k))
    return np.asarray(out)


@dataclass(frozen=True)
class PeakSet:
    positions: List[Tuple[float, float]]
    separations: np.ndarray

    @property
    def count(self) -> int:
        return len(self.positions)

    @property
    def separation(self) -> Optional[float]:
        """Mean adjacent-peak distance, or ``None`` for fewer than two peaks."""
        if len(self.separations) == 0:
            return None
        return float(np.mean(self.separations))


def _real_nonnegative(field: ComplexField2D) -> np.ndarray:
    v = field.values
    if np.iscomplexobj(v):
        if np.any(v.imag != 0):
            raise ValueError("peak analysis needs a real field")
        v = v.real
    if np.any(v < 0):
        raise ValueError("peak analysis needs a nonnegative field")
    return v


def antidiagonal_peaks(field: ComplexField2D, rel_threshold: float = 0.2) -> PeakSet:
    """Peaks along the anti-diagonal line through the global maximum.

    The profile is the slice ``i + j = const`` containing the largest
    sample; on a square grid its natural coordinate is ``(x - y)/sqrt(2)``.
    Slices are used rather than a max over all of them because adjacent
    difference indices live on alternating sum-coordinate sublattices.
    """
    v = _real_nonnegative(field)
    if not v.max() > 0:
        raise NoPeaks("field is identically zero")
    n = v.shape[0]
    i0, j0 = np.unravel_index(np.argmax(v), v.shape)
    p = i0 + j0
    i = np.arange(max(0, p - (n - 1)), min(n - 1, p) + 1)
    profile = v[i, p - i]
    frac = refined_maxima(profile, rel_threshold)
    if frac.size == 0:
        raise NoPeaks("no maxima above threshold")
    fi = i[0] + frac
    fj = p - fi
    xs = field.axis_x.sample(fi)
    ys = field.axis_y.sample(fj)
    # sort by anti-diagonal coordinate
    order = np.argsort((xs - ys) / math.sqrt(2.0))
    xs, ys = xs[order], ys[order]
    positions = [(float(x), float(y)) for x, y in zip(xs, ys)]
    seps = np.hypot(np.diff(xs), np.diff(ys))
    return PeakSet(positions, seps)


def aligned_real_part(field: ComplexField2D) -> ComplexField2D:
    """Real part after removing the global phase at the largest sample, clipped at 0.

    The amplitude-level counterpart of an intensity map: positive lobes
    only, so peak spacing reflects the period of the signed amplitude.
    """
    v = field.values
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    ref = v[k]
    if ref == 0:
        raise ZeroField("field is identically zero")
    re = np.real(v * np.conj(ref) / abs(ref))
    return field.with_values(np.clip(re, 0.0, None))


def mode_separation_product(jsi_sep: float, jti_sep: float) -> float:
    if not (jsi_sep > 0 and jti_sep > 0):
        raise NonPositiveInput(f"separations must be > 0, got {jsi_sep}, {jti_sep}")
    return jsi_sep * jti_sep
