"""Sampled axes, 2D complex fields and 1D waveforms.

Frequencies are in THz and times in ps. With the ``exp(-i 2 pi t nu)``
transform kernel the product ``t * nu`` is dimensionless, so no unit
constants appear anywhere in the package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import AxisMismatch, NonPositiveSpan, NonPowerOfTwo, WrongDomain

Model = Callable[[np.ndarray, np.ndarray], np.ndarray]


class Domain(str, enum.Enum):
    FREQUENCY = "frequency"
    TIME = "time"

    @property
    def unit(self) -> str:
        return "THz" if self is Domain.FREQUENCY else "ps"

    def flipped(self) -> "Domain":
        return Domain.TIME if self is Domain.FREQUENCY else Domain.FREQUENCY


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SampledAxis:
    """Uniform axis with ``sample(i) = center + (i - n/2) * step``."""

    n: int
    center: float
    step: float
    domain: Domain
    # step of the axis this one was conjugated from; makes the
    # conjugate-of-conjugate step bit-identical to the original
    dual_step: Optional[float] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or not _is_power_of_two(int(self.n)) or self.n < 8:
            raise NonPowerOfTwo(f"axis length must be a power of two >= 8, got {self.n}")
        if not (math.isfinite(self.step) and self.step > 0):
            raise NonPositiveSpan(f"axis step must be positive and finite, got {self.step}")
        if not math.isfinite(self.center):
            raise NonPositiveSpan(f"axis center must be finite, got {self.center}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "domain", Domain(self.domain))

    @property
    def span(self) -> float:
        return self.n * self.step

    @property
    def unit(self) -> str:
        return self.domain.unit

    def sample(self, i):
        return self.center + (np.asarray(i, dtype=float) - self.n // 2) * self.step

    @property
    def samples(self) -> np.ndarray:
        return self.sample(np.arange(self.n))

    def index_of(self, x):
        """Fractional index of coordinate ``x`` (inverse of :meth:`sample`)."""
        return (np.asarray(x, dtype=float) - self.center) / self.step + self.n // 2


def make_axis(n: int, center: float, span: float, domain) -> SampledAxis:
    if not isinstance(n, (int, np.integer)) or not _is_power_of_two(int(n)) or n < 8:
        raise NonPowerOfTwo(f"n must be a power of two >= 8, got {n}")
    if not (math.isfinite(span) and span > 0):
        raise NonPositiveSpan(f"span must be positive, got {span}")
    return SampledAxis(int(n), float(center), span / n, Domain(domain))


def conjugate_axis(axis: SampledAxis) -> SampledAxis:
    """Axis in the Fourier-dual domain: ``step' = 1/(n*step)``, centered at 0."""
    if axis.dual_step is not None:
        step = axis.dual_step
    else:
        step = 1.0 / (axis.n * axis.step)
    return SampledAxis(axis.n, 0.0, step, axis.domain.flipped(), dual_step=axis.step)


@dataclass(frozen=True, eq=False)
class ComplexField2D:
    """Amplitude (or intensity) on an ``axis_x`` x ``axis_y`` grid.

    ``values[i, j]`` is the sample at ``(axis_x.sample(i), axis_y.sample(j))``.
    ``model`` optionally carries the closed form the values were evaluated
    from, so operations like a difference-frequency shift can re-evaluate it
    instead of interpolating.
    """

    axis_x: SampledAxis
    axis_y: SampledAxis
    values: np.ndarray
    model: Optional[Model] = field(default=None, repr=False)

    def __post_init__(self):
        if self.axis_x.domain is not self.axis_y.domain:
            raise AxisMismatch("both axes of a field must share a domain")
        values = np.array(self.values, copy=True)
        if values.shape != (self.axis_x.n, self.axis_y.n):
            raise AxisMismatch(
                f"values shape {values.shape} does not match axes ({self.axis_x.n}, {self.axis_y.n})"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def domain(self) -> Domain:
        return self.axis_x.domain

    @property
    def shape(self):
        return self.values.shape

    def mesh(self):
        return np.meshgrid(self.axis_x.samples, self.axis_y.samples, indexing="ij")

    def intensity(self) -> "ComplexField2D":
        return ComplexField2D(self.axis_x, self.axis_y, np.abs(self.values) ** 2)

    def l2_mass(self) -> float:
        """``sum |values|^2 * step_x * step_y``."""
        return float(np.sum(np.abs(self.values) ** 2) * self.axis_x.step * self.axis_y.step)

    def with_values(self, values, model: Optional[Model] = None) -> "ComplexField2D":
        return ComplexField2D(self.axis_x, self.axis_y, values, model)

    def require(self, domain: Domain) -> "ComplexField2D":
        if self.domain is not Domain(domain):
            raise WrongDomain(f"expected a {Domain(domain).value}-domain field, got {self.domain.value}")
        return self

    def same_grid(self, other: "ComplexField2D") -> bool:
        return self.axis_x == other.axis_x and self.axis_y == other.axis_y


@dataclass(frozen=True, eq=False)
class Waveform1D:
    """Values sampled along one axis: a marginal, a heralded waveform, etc."""

    axis: SampledAxis
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, copy=True)
        if values.shape != (self.axis.n,):
            raise AxisMismatch(f"waveform length {values.shape} does not match axis n={self.axis.n}")
        if not np.all(np.isfinite(values)):
            raise ValueError("waveform values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.axis.samples

    def integral(self) -> float:
        return float(np.sum(self.values) * self.axis.step)
