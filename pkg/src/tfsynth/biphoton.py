"""Joint spectral amplitudes and the mode algebra built on them.

All coordinates are shifted frequencies (THz from the band center), i.e.
the axes are normally centered at 0.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import map_coordinates

from .errors import AxisMismatch, BadAxisIndex, ConfigError, ShiftExceedsGrid, WrongDomain
from .grid import ComplexField2D, Domain, Model, SampledAxis, Waveform1D

SPEED_OF_LIGHT_NM_THZ = 299792.458  # nm * THz


def sinc(x):
    """Unnormalized ``sin(x)/x`` with ``sinc(0) = 1``."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    nz = x != 0
    out[nz] = np.sin(x[nz]) / x[nz]
    return out


@dataclass(frozen=True)
class PumpParams:
    sigma_p: float
    nu_p: float = 0.0

    def __post_init__(self):
        if not self.sigma_p > 0:
            raise ConfigError(f"sigma_p must be > 0, got {self.sigma_p}")

    @classmethod
    def from_wavelength(cls, center_nm: float, fwhm_nm: float, nu_p: float = 0.0) -> "PumpParams":
        """Pump whose intensity spectrum has the given FWHM in wavelength.

        ``|alpha|^2 = exp(-(x/sigma)^2)`` so the intensity FWHM is
        ``2 sigma sqrt(ln 2)``.
        """
        fwhm_thz = SPEED_OF_LIGHT_NM_THZ * fwhm_nm / center_nm**2
        return cls(sigma_p=fwhm_thz / (2.0 * math.sqrt(math.log(2.0))), nu_p=nu_p)


@dataclass(frozen=True)
class DispersionModel:
    """First-order (group-delay) expansion of the phase mismatch.

    ``L`` in mm, ``Lambda`` in um (informational: the poling term is folded
    into ``dk0``), ``dk0`` in rad/mm, inverse group velocities in ps/mm.
    """

    L: float
    Lambda: float
    dk0: float = 0.0
    gp: float = 0.0
    g1: float = 0.0
    g2: float = 0.0

    def __post_init__(self):
        if not self.L > 0:
            raise ConfigError(f"crystal length must be > 0, got {self.L}")
        if not self.Lambda > 0:
            raise ConfigError(f"poling period must be > 0, got {self.Lambda}")

    @classmethod
    def gvm_matched(cls, b: float, L: float = 30.0, Lambda: float = 46.1, gp: float = 0.0,
                    offset: float = 0.0) -> "DispersionModel":
        """Coefficients for which ``dk*L/2 = b*(nu1 - nu2 + offset)``.

        ``2 gp = g1 + g2`` makes the mismatch independent of the sum
        frequency; ``offset`` moves the sinc center along the difference
        coordinate through ``dk0``.
        """
        dg = b / (math.pi * L)
        return cls(L=L, Lambda=Lambda, dk0=2.0 * b * offset / L, gp=gp, g1=gp - dg, g2=gp + dg)

    def delta_k(self, nu1, nu2):
        return self.dk0 + 2.0 * math.pi * (self.gp * (nu1 + nu2) - self.g1 * nu1 - self.g2 * nu2)


@dataclass(frozen=True)
class SimplifiedJsaParams:
    a: float = 0.11284
    b: float = 13.888

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ConfigError(f"a and b must be > 0, got a={self.a}, b={self.b}")

    @property
    def box_halfwidth(self) -> float:
        """Support of the temporal box in ``t1 - t2``: ``b/pi``."""
        return self.b / math.pi


@dataclass(frozen=True)
class SuperpositionParams:
    delta: float
    phi: float = math.pi

    def __post_init__(self):
        if not self.delta >= 0:
            raise ConfigError(f"mode offset must be >= 0, got {self.delta}")
        if not math.isfinite(self.phi):
            raise ConfigError("relative phase must be finite")


def _axes(coords):
    if isinstance(coords, ComplexField2D):
        return coords.axis_x, coords.axis_y
    if isinstance(coords, SampledAxis):
        return coords, coords
    ax, ay = coords
    return ax, ay


def evaluate(model: Model, axis_x: SampledAxis, axis_y: SampledAxis, workers: int = 1) -> np.ndarray:
    """Evaluate ``model`` on the grid, optionally in row blocks across threads."""
    x = axis_x.samples
    y = axis_y.samples
    if workers <= 1:
        return np.asarray(model(x[:, None], y[None, :]))
    blocks = np.array_split(np.arange(axis_x.n), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda rows: np.asarray(model(x[rows][:, None], y[None, :])), blocks))
    return np.concatenate(parts, axis=0)


def field_from_model(model: Model, coords, domain=Domain.FREQUENCY, workers: int = 1) -> ComplexField2D:
    ax, ay = _axes(coords)
    if ax.domain is not Domain(domain) or ay.domain is not Domain(domain):
        raise WrongDomain(f"model needs {Domain(domain).value}-domain axes")
    values = evaluate(model, ax, ay, workers)
    values = np.broadcast_to(values, (ax.n, ay.n))
    return ComplexField2D(ax, ay, values, model)


def pump_envelope(coords, p: PumpParams, workers: int = 1) -> ComplexField2D:
    def model(nu1, nu2):
        return np.exp(-0.5 * ((nu1 + nu2 - p.nu_p) / p.sigma_p) ** 2)

    return field_from_model(model, coords, workers=workers)


def phase_matching_sinc(coords, d: DispersionModel, workers: int = 1) -> ComplexField2D:
    def model(nu1, nu2):
        return sinc(d.delta_k(nu1, nu2) * d.L / 2.0)

    return field_from_model(model, coords, workers=workers)


def jsa_physical(p: PumpParams, d: DispersionModel, coords, workers: int = 1) -> ComplexField2D:
    def model(nu1, nu2):
        pump = np.exp(-0.5 * ((nu1 + nu2 - p.nu_p) / p.sigma_p) ** 2)
        return pump * sinc(d.delta_k(nu1, nu2) * d.L / 2.0)

    return field_from_model(model, coords, workers=workers)


def jsa_simplified(s: SimplifiedJsaParams, coords, workers: int = 1) -> ComplexField2D:
    def model(nu1, nu2):
        return np.exp(-s.a * (nu1 + nu2) ** 2) * sinc(s.b * (nu1 - nu2))

    return field_from_model(model, coords, workers=workers)


def _main_lobe_inside(field: ComplexField2D, delta: float) -> bool:
    mag = np.abs(field.values)
    peak = mag.max()
    if peak == 0:
        return True
    i, j = np.nonzero(mag >= 0.5 * peak)
    x = field.axis_x.sample(i) - delta / 2.0
    y = field.axis_y.sample(j) + delta / 2.0
    ax, ay = field.axis_x, field.axis_y
    return bool(
        x.min() >= ax.sample(0) and x.max() <= ax.sample(ax.n - 1)
        and y.min() >= ay.sample(0) and y.max() <= ay.sample(ay.n - 1)
    )


def shift_difference(field: ComplexField2D, delta: float) -> ComplexField2D:
    """Displace the field by ``delta`` along the difference coordinate.

    ``out(nu1, nu2) = field(nu1 + delta/2, nu2 - delta/2)``: a mode centered
    at ``nu1 - nu2 = 0`` ends up centered at ``nu1 - nu2 = -delta``. Fields
    carrying a closed form are re-evaluated; others are bilinearly
    interpolated (zero outside the grid).
    """
    field.require(Domain.FREQUENCY)
    if delta == 0:
        return field
    if not _main_lobe_inside(field, delta):
        raise ShiftExceedsGrid(f"shift of {delta} THz moves the main lobe outside the grid")
    h = delta / 2.0
    if field.model is not None:
        base = field.model

        def model(nu1, nu2):
            return base(nu1 + h, nu2 - h)

        values = np.broadcast_to(evaluate(model, field.axis_x, field.axis_y), field.shape)
        return field.with_values(values, model)

    ii, jj = np.meshgrid(np.arange(field.axis_x.n, dtype=float), np.arange(field.axis_y.n, dtype=float),
                         indexing="ij")
    coords = np.array([ii + h / field.axis_x.step, jj - h / field.axis_y.step])
    v = field.values
    re = map_coordinates(np.real(v).astype(float), coords, order=1, mode="constant", cval=0.0)
    if np.iscomplexobj(v):
        im = map_coordinates(np.imag(v).astype(float), coords, order=1, mode="constant", cval=0.0)
        return field.with_values(re + 1j * im)
    return field.with_values(re)


def superpose(s1: ComplexField2D, s2: ComplexField2D, phi: float) -> ComplexField2D:
    """``s1 + exp(i phi) s2``."""
    if not s1.same_grid(s2):
        raise AxisMismatch("superposed fields must share axes")
    w = np.exp(1j * phi)
    m1, m2 = s1.model, s2.model
    model = None if m1 is None or m2 is None else (lambda nu1, nu2: m1(nu1, nu2) + w * m2(nu1, nu2))
    return s1.with_values(s1.values + w * s2.values, model)


def swap(field: ComplexField2D) -> ComplexField2D:
    """Exchange the two photons: ``out(i, j) = field(j, i)``."""
    if field.axis_x != field.axis_y:
        raise AxisMismatch("swap needs identical x and y axes")
    base = field.model
    model = None if base is None else (lambda nu1, nu2: base(nu2, nu1))
    return field.with_values(field.values.T, model)


def two_mode_jsa(s: SimplifiedJsaParams, sp: SuperpositionParams, coords, workers: int = 1) -> ComplexField2D:
    """Single mode displaced by ``+delta``, superposed with its exchange image."""
    s1 = shift_difference(jsa_simplified(s, coords, workers), sp.delta)
    return superpose(s1, swap(s1), sp.phi)


def _marginal(values: np.ndarray, field: ComplexField2D, axis_index: int) -> Waveform1D:
    if axis_index == 0:
        return Waveform1D(field.axis_x, values.sum(axis=1) * field.axis_y.step)
    if axis_index == 1:
        return Waveform1D(field.axis_y, values.sum(axis=0) * field.axis_x.step)
    raise BadAxisIndex(f"axis_index must be 0 or 1, got {axis_index}")


def marginal_amplitude(field: ComplexField2D, axis_index: int = 0) -> Waveform1D:
    """Integrate the amplitude over the other axis; ``axis_index`` is the axis kept."""
    return _marginal(field.values, field, axis_index)


def marginal_intensity(field: ComplexField2D, axis_index: int = 0) -> Waveform1D:
    """Integrate ``|field|^2`` over the other axis; ``axis_index`` is the axis kept."""
    return _marginal(np.abs(field.values) ** 2, field, axis_index)
