"""
Runtime harness for the activity descriptors.

Timings are wall-clock (``time.perf_counter``) means over ``runs`` repeated
calls after ``warmup`` discarded calls. Alongside the clock, :func:`op_count`
gives the exact number of pair differences each descriptor evaluates per
pixel, which is what the measured runtime ratios should track.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (ActivityMap, DescriptorSpec, FrameStack, Method, WindowOutOfRange,
                   validate_spec, validate_stack)
from .descriptors import compute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchConfig:
    runs: int = 20
    warmup: int = 2
    threads: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.warmup < 0:
            raise ValueError(f"warmup must be >= 0, got {self.warmup}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


@dataclass(frozen=True)
class TimingResult:
    """Mean runtimes of one descriptor on the high (X) and low (X') activity stacks."""

    method: Method
    window: Optional[int]
    t1: float
    t2: float
    samples_x: tuple[float, ...] = ()
    samples_xp: tuple[float, ...] = ()
    t_av: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "t_av", (self.t1 + self.t2) / 2)


def default_specs(window: int = 5) -> list[DescriptorSpec]:
    """All five descriptors, windowed ones at lag ``window``."""
    return [
        DescriptorSpec(Method.FUJII),
        DescriptorSpec(Method.MSF, window),
        DescriptorSpec(Method.SF, window),
        DescriptorSpec(Method.GD),
        DescriptorSpec(Method.MWD, window),
    ]


def op_count(spec: DescriptorSpec, n: int) -> int:
    """Number of ``|d|`` (or ``d**2``) terms evaluated per pixel for ``n`` frames."""
    if n < 2:
        raise ValueError(f"need at least 2 frames, got {n}")
    m = spec.method
    if m is Method.FUJII:
        return n - 1
    if m is Method.GD:
        return n * (n - 1) // 2
    w = spec.window
    if w is None or not 1 <= w <= n - 1:
        raise WindowOutOfRange(f"window {w} outside [1, {n - 1}] for N={n}")
    if m is Method.MWD:
        return w * (n - w)
    return n - w


def time_descriptor(stack: FrameStack, spec: DescriptorSpec,
                    cfg: BenchConfig = BenchConfig()) -> tuple[float, list[float], ActivityMap]:
    """Time ``cfg.runs`` evaluations of ``spec`` on ``stack``.

    Returns the mean runtime in seconds, the per-run samples and the map
    computed by the last timed run.
    """
    stack = validate_stack(stack)
    spec = validate_spec(spec, stack)
    for _ in range(cfg.warmup):
        compute(stack, spec, threads=cfg.threads)

    samples = []
    amap = None
    for _ in range(cfg.runs):
        t0 = time.perf_counter()
        amap = compute(stack, spec, threads=cfg.threads)
        samples.append(time.perf_counter() - t0)
    mean = sum(samples) / len(samples)
    logger.debug("%s: %.6f s mean over %d runs", spec.label, mean, cfg.runs)
    return mean, samples, amap


def time_pair(stack_x: FrameStack, stack_xp: FrameStack, spec: DescriptorSpec,
              cfg: BenchConfig = BenchConfig()) -> tuple[TimingResult, ActivityMap, ActivityMap]:
    t1, s1, map_x = time_descriptor(stack_x, spec, cfg)
    t2, s2, map_xp = time_descriptor(stack_xp, spec, cfg)
    window = spec.window if spec.method.windowed else None
    return TimingResult(spec.method, window, t1, t2, tuple(s1), tuple(s2)), map_x, map_xp


def run_suite(stack_x: FrameStack, stack_xp: FrameStack,
              specs: Optional[Sequence[DescriptorSpec]] = None,
              cfg: BenchConfig = BenchConfig()) -> list[TimingResult]:
    """Time every spec on both stacks, one descriptor at a time."""
    if specs is None:
        specs = default_specs()
    return [time_pair(stack_x, stack_xp, spec, cfg)[0] for spec in specs]
