"""Summary statistics of activity maps and the high/low activity comparison table."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .bench import BenchConfig, TimingResult, time_pair
from .core import (ActivityMap, DescriptorSpec, FrameStack, Method, MismatchedDimensions,
                   SpeckleError, validate_stack)


class MethodMismatch(SpeckleError):
    pass


DimensionMismatch = MismatchedDimensions


@dataclass(frozen=True)
class SummaryStats:
    max: float
    min: float
    mean: float


def summarize(amap: ActivityMap) -> SummaryStats:
    """Exact max, min and mean of the raw map values.

    The mean uses a correctly rounded sum, so it does not depend on pixel order.
    """
    v = amap.values
    mean = math.fsum(v.ravel().tolist()) / v.size
    hi, lo = float(v.max()), float(v.min())
    # the division can land one ulp outside [min, max] on constant maps
    return SummaryStats(max=hi, min=lo, mean=min(max(mean, lo), hi))


def mean_activity_difference(map_x: ActivityMap, map_xp: ActivityMap) -> float:
    """``mean(X) - mean(X')`` for two maps of the same descriptor; may be negative."""
    if map_x.method != map_xp.method or map_x.window != map_xp.window:
        raise MethodMismatch(
            f"cannot compare {map_x.method.value}(w={map_x.window}) "
            f"with {map_xp.method.value}(w={map_xp.window})")
    if map_x.shape != map_xp.shape:
        raise DimensionMismatch(f"map shapes differ: {map_x.shape} vs {map_xp.shape}")
    return summarize(map_x).mean - summarize(map_xp).mean


@dataclass(frozen=True)
class MethodRow:
    method: Method
    window: Optional[int]
    stats_x: SummaryStats
    stats_xp: SummaryStats
    mean_activity_difference: float
    timing: TimingResult

    @property
    def t_av(self) -> float:
        return self.timing.t_av


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[MethodRow, ...] = ()

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def build_report(stack_x: FrameStack, stack_xp: FrameStack, specs: Sequence[DescriptorSpec],
                 timing: BenchConfig = BenchConfig()) -> ComparisonReport:
    """Compute, time and summarize every descriptor on the X / X' pair."""
    stack_x = validate_stack(stack_x)
    stack_xp = validate_stack(stack_xp)
    if stack_x.shape != stack_xp.shape:
        raise DimensionMismatch(f"stack frame sizes differ: {stack_x.shape} vs {stack_xp.shape}")

    rows = []
    for spec in specs:
        result, map_x, map_xp = time_pair(stack_x, stack_xp, spec, timing)
        sx, sxp = summarize(map_x), summarize(map_xp)
        rows.append(MethodRow(result.method, result.window, sx, sxp, sx.mean - sxp.mean, result))
    return ComparisonReport(tuple(rows))
