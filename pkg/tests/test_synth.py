import numpy as np
import pytest
from scipy import stats as sps

from biospeckle import (InvalidParams, SyntheticParams, generate, gd, make_pair, msf, mwd, sf,
                        mean_activity_difference, summarize)
from biospeckle.synth import field_variance, intensity_scale


def test_rho_one_freezes_pattern():
    for seed in (0, 1, 17):
        stack = generate(SyntheticParams(32, 24, 6, rho=1.0, grain=1.5, seed=seed))
        for k in range(1, stack.count):
            assert stack[k].tobytes() == stack[0].tobytes()


def test_rho_zero_decorrelates_consecutive_frames():
    stack = generate(SyntheticParams(128, 128, 8, rho=0.0, grain=1.0, seed=3))
    for k in range(stack.count - 1):
        r = np.corrcoef(stack[k].ravel(), stack[k + 1].ravel())[0, 1]
        assert abs(r) < 0.1


def test_high_rho_keeps_frames_correlated():
    stack = generate(SyntheticParams(64, 64, 4, rho=0.95, grain=1.0, seed=3))
    r = np.corrcoef(stack[0].ravel(), stack[1].ravel())[0, 1]
    assert r > 0.8


def test_fully_developed_intensity_is_negative_exponential():
    stack = generate(SyntheticParams(256, 256, 2, rho=0.0, grain=0, seed=5))
    sample = stack[0].ravel() - stack[0].min()
    mean = sample.mean()
    # an exponential law has unit contrast: std / mean = 1
    assert sample.std() / mean == pytest.approx(1.0, abs=0.05)
    ks = sps.kstest(sample, "expon", args=(0, mean))
    assert ks.statistic < 0.02


def test_output_range_and_quantization():
    p = SyntheticParams(40, 30, 5, rho=0.4, grain=2.0, seed=11)
    real = generate(p)
    assert real.data.min() >= 0.0 and real.data.max() <= 255.0
    assert real.data.max() > 100
    q = generate(p, quantize=True)
    assert np.array_equal(q.data, np.rint(q.data))
    assert q.data.min() >= 0 and q.data.max() <= 255
    assert np.abs(q.data - real.data).max() <= 0.5


def test_determinism():
    p = SyntheticParams(20, 20, 6, rho=0.7, grain=1.0, seed=42)
    assert generate(p).data.tobytes() == generate(p).data.tobytes()
    assert generate(p) != generate(p.with_rho(0.6))


@pytest.mark.parametrize("kwargs", [dict(rho=-0.1), dict(rho=1.5), dict(count=1),
                                    dict(height=0), dict(width=0), dict(grain=-1)])
def test_invalid_params(kwargs):
    with pytest.raises(InvalidParams):
        SyntheticParams(**kwargs)


def test_make_pair_geometry():
    x, xp = make_pair(SyntheticParams(30, 40, 6, rho=0.3, seed=1),
                      SyntheticParams(30, 40, 6, rho=0.95, seed=2))
    assert x.data.shape == xp.data.shape == (6, 30, 40)


def test_make_pair_rejects_bad_ordering():
    with pytest.raises(InvalidParams):
        make_pair(SyntheticParams(8, 8, 4, rho=0.5), SyntheticParams(8, 8, 4, rho=0.5))
    with pytest.raises(InvalidParams):
        make_pair(SyntheticParams(8, 8, 4, rho=0.9), SyntheticParams(8, 8, 4, rho=0.5))
    with pytest.raises(InvalidParams):
        make_pair(SyntheticParams(8, 8, 4, rho=0.1), SyntheticParams(8, 9, 4, rho=0.5))


def test_frozen_low_stack_gives_full_difference():
    x, xp = make_pair(SyntheticParams(32, 32, 8, rho=0.0, seed=1),
                      SyntheticParams(32, 32, 8, rho=1.0, seed=2))
    for fn in (gd, lambda s: mwd(s, 2), lambda s: sf(s, 2), lambda s: msf(s, 2)):
        high, low = fn(x), fn(xp)
        assert not low.values.any()
        assert mean_activity_difference(high, low) == summarize(high).mean > 0


def test_scale_is_shared_across_rho_and_seed():
    base = SyntheticParams(16, 16, 5, rho=0.2, grain=1.5, seed=0)
    assert intensity_scale(base) == intensity_scale(base.with_rho(0.9))
    # frame 0 is drawn before rho enters, so it is identical for every rho
    a, b = generate(base), generate(base.with_rho(0.9))
    assert np.array_equal(a[0], b[0])


@pytest.mark.parametrize("grain", [0, 0.7, 2.0, 4.0])
def test_field_variance_matches_sample(grain):
    rng = np.random.default_rng(0)
    noise = rng.standard_normal((64, 64, 40))
    from scipy.ndimage import gaussian_filter
    sample = np.var([gaussian_filter(noise[..., i], grain, mode="wrap") if grain else noise[..., i]
                     for i in range(40)])
    assert sample == pytest.approx(field_variance((64, 64), grain), rel=0.05)


def test_saturation_is_rare():
    stack = generate(SyntheticParams(128, 128, 30, rho=0.0, grain=1.0, seed=4))
    assert (stack.data >= 255.0).sum() <= 5


@pytest.mark.parametrize("seed", [8, 21, 1234])
def test_activity_decreases_with_rho(seed):
    # lag 1: the expected drop from rho=0 to 0.5 is 25%, far above sampling noise
    means = {name: [] for name in ("gd", "mwd", "sf", "msf")}
    for rho in (0.0, 0.5, 0.9, 0.99):
        s = generate(SyntheticParams(48, 48, 12, rho=rho, grain=1.0, seed=seed))
        means["gd"].append(gd(s).values.mean())
        means["mwd"].append(mwd(s, 1).values.mean())
        means["sf"].append(sf(s, 1).values.mean())
        means["msf"].append(msf(s, 1).values.mean())
    for name, seq in means.items():
        assert all(a > b for a, b in zip(seq, seq[1:])), (name, seq)
