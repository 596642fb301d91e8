"""
Synthetic dynamic speckle.

Each frame is the intensity of a circular complex Gaussian field. The field
evolves as a first-order autoregression

    A[k+1] = rho * A[k] + sqrt(1 - rho**2) * eta[k]

with ``eta`` a fresh, independently drawn (and optionally smoothed) field,
so ``rho`` is the single activity knob: 1 freezes the pattern, 0 redraws it
on every frame.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.ndimage import gaussian_filter

from .core import FrameStack, SpeckleError, validate_stack


class InvalidParams(SpeckleError):
    pass


@dataclass(frozen=True)
class SyntheticParams:
    height: int = 128
    width: int = 128
    count: int = 30
    rho: float = 0.5
    grain: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise InvalidParams(f"frame size must be positive, got {self.height}x{self.width}")
        if self.count < 2:
            raise InvalidParams(f"need at least 2 frames, got {self.count}")
        if not 0.0 <= self.rho <= 1.0:
            raise InvalidParams(f"rho must lie in [0, 1], got {self.rho}")
        if not (self.grain >= 0 and math.isfinite(self.grain)):
            raise InvalidParams(f"grain must be a finite value >= 0, got {self.grain}")

    def with_rho(self, rho: float) -> "SyntheticParams":
        return replace(self, rho=rho)


def _gaussian_field(rng: np.random.Generator, shape: tuple[int, int], grain: float) -> np.ndarray:
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    if grain > 0:
        re = gaussian_filter(re, sigma=grain, mode="wrap")
        im = gaussian_filter(im, sigma=grain, mode="wrap")
    return re + 1j * im


def field_variance(shape: tuple[int, int], grain: float) -> float:
    """Variance of one (real or imaginary) component of the smoothed field."""
    if grain <= 0:
        return 1.0
    delta = np.zeros(shape)
    delta[0, 0] = 1.0
    kernel = gaussian_filter(delta, sigma=grain, mode="wrap")
    return float(np.sum(kernel ** 2))


def intensity_scale(params: SyntheticParams) -> float:
    """Gray levels per unit intensity.

    The autoregression keeps the field stationary, so intensity is
    exponential with mean ``2 * var`` in every frame whatever ``rho`` is.
    The white level sits at ``mean * (ln M + 1)`` for M = H*W*N samples,
    which fewer than one pixel per stack exceeds on average.
    """
    mean = 2.0 * field_variance((params.height, params.width), params.grain)
    m = params.height * params.width * params.count
    return 255.0 / (mean * (math.log(m) + 1.0))


def generate(params: SyntheticParams, *, quantize: bool = False) -> FrameStack:
    """Generate an N-frame speckle stack scaled to ``[0, 255]``.

    All frames share one linear gray-level scale that depends only on the
    geometry and grain (see :func:`intensity_scale`), never on the drawn
    values, so stacks with different ``rho`` or seed are directly comparable.
    The rare pixels above the white level saturate at 255. With
    ``quantize=True`` intensities are rounded to whole gray levels, as an
    8-bit camera would deliver them.
    """
    rng = np.random.default_rng(params.seed)
    shape = (params.height, params.width)
    rho = float(params.rho)
    innov = math.sqrt(max(0.0, 1.0 - rho * rho))

    frames = np.empty((params.count,) + shape, dtype=np.float64)
    field = _gaussian_field(rng, shape, params.grain)
    frames[0] = field.real ** 2 + field.imag ** 2
    for k in range(1, params.count):
        eta = _gaussian_field(rng, shape, params.grain)
        field = rho * field + innov * eta
        frames[k] = field.real ** 2 + field.imag ** 2

    frames *= intensity_scale(params)
    np.minimum(frames, 255.0, out=frames)
    if quantize:
        frames = np.clip(np.rint(frames), 0, 255)
    return validate_stack(frames)


def make_pair(params_high: SyntheticParams, params_low: SyntheticParams,
              *, quantize: bool = False) -> tuple[FrameStack, FrameStack]:
    """Generate a (high activity, low activity) pair of stacks of equal geometry."""
    geom_high = (params_high.height, params_high.width, params_high.count)
    geom_low = (params_low.height, params_low.width, params_low.count)
    if geom_high != geom_low:
        raise InvalidParams(f"stack geometries differ: {geom_high} vs {geom_low}")
    if not params_high.rho < params_low.rho:
        raise InvalidParams(
            f"high-activity rho ({params_high.rho}) must be below low-activity rho ({params_low.rho})")
    return generate(params_high, quantize=quantize), generate(params_low, quantize=quantize)
