"""
Shared types for dynamic-speckle activity analysis.

A stack is held as a single read-only ``(N, H, W)`` float64 array so that
every descriptor can walk the temporal axis of all pixels at once.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np


class SpeckleError(ValueError):
    """Base class for all validation errors raised by this package."""


class MismatchedDimensions(SpeckleError):
    pass


class TooFewFrames(SpeckleError):
    pass


class NonFiniteValue(SpeckleError):
    pass


class NegativeValue(SpeckleError):
    pass


class WindowOutOfRange(SpeckleError):
    pass


class MissingWindow(SpeckleError):
    pass


class Method(str, enum.Enum):
    FUJII = "fujii"
    GD = "gd"
    MWD = "mwd"
    SF = "sf"
    MSF = "msf"

    @property
    def windowed(self) -> bool:
        return self in (Method.MWD, Method.SF, Method.MSF)

    @classmethod
    def parse(cls, value: Union[str, "Method"]) -> "Method":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise SpeckleError(f"unknown method {value!r} (expected one of {names})") from None


def _frozen(a: np.ndarray) -> np.ndarray:
    # callers may keep a reference to the input, so never freeze it in place
    if (isinstance(a, np.ndarray) and a.dtype == np.float64
            and a.flags.c_contiguous and not a.flags.writeable):
        return a
    a = np.array(a, dtype=np.float64, order="C", copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FrameStack:
    """Ordered sequence of N equally sized grayscale frames.

    ``data`` has shape ``(N, H, W)``. Use :func:`validate_stack` to build one
    from arbitrary input; the constructor itself only enforces the shape.
    """

    data: np.ndarray
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.data.ndim != 3:
            raise MismatchedDimensions(f"expected (N, H, W) array, got shape {self.data.shape}")
        object.__setattr__(self, "data", _frozen(self.data))

    @classmethod
    def from_frames(cls, frames: Sequence[np.ndarray]) -> "FrameStack":
        frames = [np.asarray(f, dtype=np.float64) for f in frames]
        if not frames:
            raise TooFewFrames("stack has no frames")
        for i, f in enumerate(frames):
            if f.ndim != 2:
                raise MismatchedDimensions(f"frame {i} is not 2D (shape {f.shape})")
            if f.shape != frames[0].shape:
                raise MismatchedDimensions(
                    f"frame {i} has shape {f.shape}, expected {frames[0].shape}")
        return cls(np.stack(frames))

    @property
    def count(self) -> int:
        return self.data.shape[0]

    @property
    def height(self) -> int:
        return self.data.shape[1]

    @property
    def width(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1], self.data.shape[2]

    def __len__(self) -> int:
        return self.count

    def __getitem__(self, k: int) -> np.ndarray:
        return self.data[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrameStack):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ActivityMap:
    """H x W activity values produced by one descriptor."""

    values: np.ndarray
    method: Method
    window: Optional[int] = None

    def __post_init__(self):
        if self.values.ndim != 2:
            raise MismatchedDimensions(f"activity map must be 2D, got shape {self.values.shape}")
        object.__setattr__(self, "values", _frozen(self.values))
        object.__setattr__(self, "method", Method.parse(self.method))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, ActivityMap):
            return NotImplemented
        return (self.method == other.method and self.window == other.window
                and self.values.shape == other.values.shape
                and bool(np.array_equal(self.values, other.values)))

    __hash__ = None


@dataclass(frozen=True)
class DescriptorSpec:
    method: Method
    window: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "method", Method.parse(self.method))

    @property
    def label(self) -> str:
        if self.method.windowed:
            return f"{self.method.value}(w={self.window})"
        return self.method.value


StackLike = Union[FrameStack, np.ndarray, Sequence[np.ndarray]]


def validate_stack(stack: StackLike) -> FrameStack:
    """Check the stack invariants and return a validated :class:`FrameStack`.

    Accepts a FrameStack, an ``(N, H, W)`` array or a sequence of 2D frames.
    A stack that already passed validation is returned as is.
    """
    if isinstance(stack, FrameStack):
        if stack._validated:
            return stack
        fs = stack
    elif isinstance(stack, np.ndarray) and stack.ndim == 3:
        fs = FrameStack(stack)
    else:
        fs = FrameStack.from_frames(list(stack))

    if fs.count < 2:
        raise TooFewFrames(f"need at least 2 frames, got {fs.count}")
    if fs.height < 1 or fs.width < 1:
        raise MismatchedDimensions(f"frames are empty (shape {fs.shape})")
    if not np.isfinite(fs.data).all():
        raise NonFiniteValue("stack contains NaN or infinite intensities")
    if (fs.data < 0).any():
        raise NegativeValue("stack contains negative intensities")

    if isinstance(stack, FrameStack):
        object.__setattr__(stack, "_validated", True)
        return stack
    return FrameStack(fs.data, _validated=True)


def validate_spec(spec: DescriptorSpec, stack: FrameStack) -> DescriptorSpec:
    """Check the window constraint ``1 <= w <= N - 1`` for windowed methods.

    Non-windowed methods (Fujii, GD) ignore any window that was supplied.
    """
    if not spec.method.windowed:
        return spec
    if spec.window is None:
        raise MissingWindow(f"{spec.method.value} requires a window")
    n = stack.count
    w = spec.window
    if isinstance(w, bool) or int(w) != w:
        raise WindowOutOfRange(f"window must be an integer, got {w!r}")
    if not 1 <= w <= n - 1:
        raise WindowOutOfRange(f"window {w} outside [1, {n - 1}] for N={n}")
    return spec
