import numpy as np
import pytest

from biospeckle import (ActivityMap, DescriptorSpec, FrameStack, Method, MismatchedDimensions,
                        MissingWindow, NegativeValue, NonFiniteValue, TooFewFrames,
                        WindowOutOfRange, validate_spec, validate_stack)


def test_minimal_stack_accepted():
    stack = validate_stack([np.zeros((4, 4)), np.zeros((4, 4))])
    assert (stack.count, stack.height, stack.width) == (2, 4, 4)


def test_mismatched_dimensions():
    with pytest.raises(MismatchedDimensions):
        validate_stack([np.zeros((4, 4)), np.zeros((4, 5))])


def test_too_few_frames():
    with pytest.raises(TooFewFrames):
        validate_stack([np.zeros((4, 4))])
    with pytest.raises(TooFewFrames):
        validate_stack([])


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_non_finite(bad):
    frames = np.zeros((3, 2, 2))
    frames[1, 0, 1] = bad
    with pytest.raises(NonFiniteValue):
        validate_stack(frames)


def test_negative_rejected():
    with pytest.raises(NegativeValue):
        validate_stack(np.array([[[1.0]], [[-1.0]]]))


def test_validate_is_idempotent(rng):
    stack = validate_stack(rng.uniform(0, 255, (5, 3, 4)))
    again = validate_stack(stack)
    assert again is stack
    assert again == validate_stack(stack.data.copy())


def test_stack_is_immutable_and_detached():
    raw = np.ones((2, 2, 2))
    stack = validate_stack(raw)
    raw[0, 0, 0] = 99
    assert stack.data[0, 0, 0] == 1.0
    with pytest.raises(ValueError):
        stack.data[0, 0, 0] = 5


def test_uint8_frames_convert_exactly():
    frames = np.arange(256, dtype=np.uint8).reshape(1, 16, 16).repeat(2, axis=0)
    stack = validate_stack(frames)
    assert stack.data.dtype == np.float64
    assert np.array_equal(stack.data, frames.astype(np.float64))


def test_spec_with_window_five():
    stack = validate_stack(np.zeros((30, 2, 2)))
    assert validate_spec(DescriptorSpec(Method.SF, 5), stack).window == 5


@pytest.mark.parametrize("w", [0, 30, -1])
def test_window_out_of_range(w):
    stack = validate_stack(np.zeros((30, 2, 2)))
    with pytest.raises(WindowOutOfRange):
        validate_spec(DescriptorSpec(Method.SF, w), stack)


def test_missing_window():
    stack = validate_stack(np.zeros((30, 2, 2)))
    for m in ("mwd", "sf", "msf"):
        with pytest.raises(MissingWindow):
            validate_spec(DescriptorSpec(m), stack)


def test_gd_ignores_window():
    stack = validate_stack(np.zeros((30, 2, 2)))
    assert validate_spec(DescriptorSpec(Method.GD), stack).method is Method.GD
    assert validate_spec(DescriptorSpec(Method.GD, 99), stack).method is Method.GD


def test_method_parse():
    assert Method.parse("SF") is Method.SF
    assert DescriptorSpec("msf", 3).label == "msf(w=3)"
    with pytest.raises(ValueError):
        Method.parse("entropy")


def test_activity_map_must_be_2d():
    with pytest.raises(MismatchedDimensions):
        ActivityMap(np.zeros(3), Method.GD)
    with pytest.raises(MismatchedDimensions):
        FrameStack(np.zeros((2, 2)))
