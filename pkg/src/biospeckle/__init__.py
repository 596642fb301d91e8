"""Full-field activity maps from dynamic (bio)speckle image stacks."""
from .core import (ActivityMap, DescriptorSpec, FrameStack, Method, MismatchedDimensions,
                   MissingWindow, NegativeValue, NonFiniteValue, SpeckleError, TooFewFrames,
                   WindowOutOfRange, validate_spec, validate_stack)
from .descriptors import compute, fujii, gd, msf, mwd, sf
from .synth import InvalidParams, SyntheticParams, generate, make_pair
from .bench import BenchConfig, TimingResult, default_specs, op_count, run_suite, time_descriptor
from .stats import (ComparisonReport, DimensionMismatch, MethodMismatch, SummaryStats,
                    build_report, mean_activity_difference, summarize)
from .fileio import (DecodeError, WriteError, load_map_csv, load_stack, save_map_csv,
                     save_map_image, save_report, save_stack, save_timings)

__version__ = "0.1.0"
