"""
Pixelwise activity descriptors: Fujii, GD, MWD, SF and MSF.

Every kernel loops over the temporal axis in Python and applies one
vectorised operation per frame pair to a whole block of pixels. The frame
pair loop order is ascending (k, then l), so each pixel accumulates its
terms in a fixed order and the result does not depend on how the image is
split between worker threads.

GD and MWD are deliberately written as explicit double loops over frame
pairs; their cost is O(N^2) and O(w N) pair differences per pixel, against
O(N) for Fujii, SF and MSF.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np

from .core import (ActivityMap, DescriptorSpec, FrameStack, Method, StackLike,
                   validate_spec, validate_stack)

__all__ = ["fujii", "gd", "mwd", "sf", "msf", "compute"]

Kernel = Callable[[np.ndarray, np.ndarray], None]


def _fujii_kernel(block: np.ndarray, out: np.ndarray) -> None:
    n = block.shape[0]
    num = np.empty_like(out)
    den = np.empty_like(out)
    mask = np.empty(out.shape, dtype=bool)
    for k in range(n - 1):
        a, b = block[k], block[k + 1]
        np.subtract(a, b, out=num)
        np.abs(num, out=num)
        np.add(a, b, out=den)
        np.greater(den, 0.0, out=mask)
        # den == 0 only when a == b == 0, where num is already 0
        np.divide(num, den, out=num, where=mask)
        out += num


def _gd_kernel(block: np.ndarray, out: np.ndarray) -> None:
    n = block.shape[0]
    tmp = np.empty_like(out)
    for k in range(n):
        a = block[k]
        for l in range(k + 1, n):
            np.subtract(a, block[l], out=tmp)
            np.abs(tmp, out=tmp)
            out += tmp


def _mwd_kernel(w: int) -> Kernel:
    def kernel(block: np.ndarray, out: np.ndarray) -> None:
        n = block.shape[0]
        tmp = np.empty_like(out)
        for k in range(n - w):
            a = block[k]
            for l in range(k + 1, k + w + 1):
                np.subtract(a, block[l], out=tmp)
                np.abs(tmp, out=tmp)
                out += tmp
    return kernel


def _sf_kernel(w: int) -> Kernel:
    def kernel(block: np.ndarray, out: np.ndarray) -> None:
        n = block.shape[0]
        tmp = np.empty_like(out)
        for k in range(n - w):
            np.subtract(block[k], block[k + w], out=tmp)
            np.multiply(tmp, tmp, out=tmp)
            out += tmp
    return kernel


def _msf_kernel(w: int) -> Kernel:
    def kernel(block: np.ndarray, out: np.ndarray) -> None:
        n = block.shape[0]
        tmp = np.empty_like(out)
        for k in range(n - w):
            np.subtract(block[k], block[k + w], out=tmp)
            np.abs(tmp, out=tmp)
            out += tmp
    return kernel


def _row_tiles(height: int, threads: int) -> list[tuple[int, int]]:
    parts = max(1, min(threads, height))
    edges = np.linspace(0, height, parts + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run(kernel: Kernel, stack: FrameStack, threads: int) -> np.ndarray:
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    data = stack.data
    out = np.zeros(stack.shape, dtype=np.float64)
    if threads == 1:
        kernel(data, out)
        return out
    tiles = _row_tiles(stack.height, threads)
    # each tile owns a disjoint band of rows; numpy releases the GIL per op
    with ThreadPoolExecutor(max_workers=len(tiles)) as pool:
        futures = [pool.submit(kernel, data[:, r0:r1], out[r0:r1]) for r0, r1 in tiles]
        for f in futures:
            f.result()
    return out


def _windowed(stack: StackLike, method: Method, w: Optional[int]) -> tuple[FrameStack, int]:
    stack = validate_stack(stack)
    spec = validate_spec(DescriptorSpec(method, w), stack)
    return stack, int(spec.window)


def fujii(stack: StackLike, *, threads: int = 1) -> ActivityMap:
    """Sum over consecutive frames of ``|I_k - I_k+1| / (I_k + I_k+1)``.

    Terms with a zero denominator contribute nothing. Values lie in
    ``[0, N - 1]``.
    """
    stack = validate_stack(stack)
    return ActivityMap(_run(_fujii_kernel, stack, threads), Method.FUJII)


def gd(stack: StackLike, *, threads: int = 1) -> ActivityMap:
    """Generalized difference: sum of ``|I_k - I_l|`` over every frame pair k < l."""
    stack = validate_stack(stack)
    return ActivityMap(_run(_gd_kernel, stack, threads), Method.GD)


def mwd(stack: StackLike, w: int, *, threads: int = 1) -> ActivityMap:
    """Windowed difference: ``|I_k - I_l|`` for k in 1..N-w and l in k+1..k+w."""
    stack, w = _windowed(stack, Method.MWD, w)
    return ActivityMap(_run(_mwd_kernel(w), stack, threads), Method.MWD, w)


def sf(stack: StackLike, w: int, *, threads: int = 1) -> ActivityMap:
    """Temporal structure function at lag ``w``: sum of ``(I_k - I_k+w)**2``."""
    stack, w = _windowed(stack, Method.SF, w)
    return ActivityMap(_run(_sf_kernel(w), stack, threads), Method.SF, w)


def msf(stack: StackLike, w: int, *, threads: int = 1) -> ActivityMap:
    stack, w = _windowed(stack, Method.MSF, w)
    return ActivityMap(_run(_msf_kernel(w), stack, threads), Method.MSF, w)


def compute(stack: StackLike, spec: DescriptorSpec, *, threads: int = 1) -> ActivityMap:
    """Dispatch ``spec`` to the matching descriptor."""
    method = spec.method
    if method is Method.FUJII:
        return fujii(stack, threads=threads)
    if method is Method.GD:
        return gd(stack, threads=threads)
    if method is Method.MWD:
        return mwd(stack, spec.window, threads=threads)
    if method is Method.SF:
        return sf(stack, spec.window, threads=threads)
    return msf(stack, spec.window, threads=threads)
