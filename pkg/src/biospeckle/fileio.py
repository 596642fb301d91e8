"""
Reading frame stacks from disk and writing maps, reports and timings.

Input frames must be 8-bit single-channel images (PNG or PGM). Colour or
16-bit files are rejected rather than converted, since any conversion would
change the gray levels the descriptors see.
"""
from __future__ import annotations

import csv
import glob
import json
import os
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from .bench import TimingResult
from .core import ActivityMap, FrameStack, MismatchedDimensions, Method, SpeckleError, TooFewFrames, validate_stack
from .stats import ComparisonReport

PathLike = Union[str, os.PathLike]

REPORT_COLUMNS = ["method", "window", "max_X", "min_X", "mean_X",
                  "max_Xp", "min_Xp", "mean_Xp", "mean_diff", "t_av_seconds"]
TIMING_COLUMNS = ["method", "window", "stack", "run", "seconds"]


class DecodeError(SpeckleError):
    pass


class WriteError(SpeckleError, OSError):
    pass


def resolve_source(source: Union[PathLike, Sequence[PathLike]], pattern: str = "*.png") -> list[Path]:
    """Turn a stack source into an ordered list of files.

    ``source`` may be an explicit list (kept in the given order), a directory
    (files matching ``pattern``, sorted by name) or a glob string (sorted).
    """
    if isinstance(source, (str, os.PathLike)):
        src = str(source)
        if os.path.isdir(src):
            paths = sorted(Path(src).glob(pattern))
        elif glob.has_magic(src):
            paths = [Path(p) for p in sorted(glob.glob(src))]
        else:
            paths = [Path(src)]
    else:
        paths = [Path(p) for p in source]
    return paths


def load_frame(path: PathLike) -> np.ndarray:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such frame file: {path}")
    try:
        with Image.open(path) as img:
            img.load()
            if img.mode != "L":
                raise DecodeError(f"{path}: expected 8-bit grayscale, got mode {img.mode!r}")
            return np.asarray(img, dtype=np.uint8).astype(np.float64)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise DecodeError(f"{path}: cannot decode image ({exc})") from exc


def load_stack(source: Union[PathLike, Sequence[PathLike]], pattern: str = "*.png") -> FrameStack:
    """Load frames in source order as a validated stack of values 0.0..255.0."""
    paths = resolve_source(source, pattern)
    if len(paths) < 2:
        raise TooFewFrames(f"need at least 2 frame files, got {len(paths)} from {source!r}")
    frames = []
    for p in paths:
        f = load_frame(p)
        if frames and f.shape != frames[0].shape:
            raise MismatchedDimensions(f"{p}: shape {f.shape} differs from {frames[0].shape}")
        frames.append(f)
    return validate_stack(frames)


def save_stack(stack: FrameStack, outdir: PathLike, prefix: str = "frame") -> list[Path]:
    """Write each frame as an 8-bit PNG ``<prefix>_<k>.png``.

    Values are rounded and clipped to 0..255, so a quantized stack round-trips
    exactly through :func:`load_stack`.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    width = max(3, len(str(stack.count - 1)))
    paths = []
    for k in range(stack.count):
        p = outdir / f"{prefix}_{k:0{width}d}.png"
        img = np.clip(np.rint(stack[k]), 0, 255).astype(np.uint8)
        _write_png(img, p)
        paths.append(p)
    return paths


def _write_png(pixels: np.ndarray, path: PathLike) -> None:
    try:
        Image.fromarray(np.ascontiguousarray(pixels, dtype=np.uint8)).save(path, format="PNG")
    except (OSError, ValueError) as exc:
        raise WriteError(f"cannot write {path}: {exc}") from exc


def map_to_uint8(amap: ActivityMap) -> np.ndarray:
    """Min-max normalise a map to 0..255; a constant map becomes all zeros."""
    v = amap.values
    lo, hi = float(v.min()), float(v.max())
    if hi <= lo:
        return np.zeros(v.shape, dtype=np.uint8)
    return np.rint(255.0 * (v - lo) / (hi - lo)).astype(np.uint8)


def save_map_image(amap: ActivityMap, path: PathLike) -> Path:
    path = Path(path)
    _write_png(map_to_uint8(amap), path)
    return path


def save_map_csv(amap: ActivityMap, path: PathLike) -> Path:
    """Row-major CSV with 17 significant digits, enough to round-trip float64."""
    v = amap.values
    if v.size == 0:
        raise WriteError("refusing to write an empty activity map")
    path = Path(path)
    try:
        with open(path, "w", newline="") as fh:
            for row in v:
                fh.write(",".join(format(x, ".17g") for x in row.tolist()))
                fh.write("\n")
    except OSError as exc:
        raise WriteError(f"cannot write {path}: {exc}") from exc
    return path


def load_map_csv(path: PathLike, method: Union[str, Method] = Method.GD, window=None) -> ActivityMap:
    with open(path, newline="") as fh:
        rows = [[float(x) for x in row] for row in csv.reader(fh) if row]
    return ActivityMap(np.array(rows, dtype=np.float64), method, window)


def report_records(report: ComparisonReport) -> list[dict]:
    records = []
    for row in report:
        records.append({
            "method": row.method.value,
            "window": row.window,
            "max_X": row.stats_x.max,
            "min_X": row.stats_x.min,
            "mean_X": row.stats_x.mean,
            "max_Xp": row.stats_xp.max,
            "min_Xp": row.stats_xp.min,
            "mean_Xp": row.stats_xp.mean,
            "mean_diff": row.mean_activity_difference,
            "t_av_seconds": row.t_av,
        })
    return records


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_csv(path: Path, columns: list[str], records: Iterable[dict]) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for rec in records:
                writer.writerow([_cell(rec[c]) for c in columns])
    except OSError as exc:
        raise WriteError(f"cannot write {path}: {exc}") from exc


def save_report(report: ComparisonReport, path: PathLike, format: str = "csv") -> Path:
    """Write the comparison table as CSV (one row per method) or JSON."""
    path = Path(path)
    records = report_records(report)
    if format == "csv":
        _write_csv(path, REPORT_COLUMNS, records)
    elif format == "json":
        try:
            with open(path, "w") as fh:
                json.dump({"columns": REPORT_COLUMNS, "rows": records}, fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            raise WriteError(f"cannot write {path}: {exc}") from exc
    else:
        raise ValueError(f"unknown report format {format!r}")
    return path


def timing_records(results: Sequence[TimingResult]) -> list[dict]:
    records = []
    for r in results:
        for name, samples in (("X", r.samples_x), ("Xp", r.samples_xp)):
            for i, s in enumerate(samples):
                records.append({"method": r.method.value, "window": r.window,
                                "stack": name, "run": i, "seconds": s})
    return records


def save_timings(results: Sequence[TimingResult], path: PathLike) -> Path:
    """Per-run timing samples as CSV, one line per (method, stack, run)."""
    path = Path(path)
    _write_csv(path, TIMING_COLUMNS, timing_records(results))
    return path
