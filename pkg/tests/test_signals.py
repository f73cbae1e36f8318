import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddop import GridError, SampledSignal, make_rect, tf_shift
from ddop.ambiguity import inner_product
from ddop.signals import embed


def rand_signal(seed, n=37, dt=0.125, t0=-1.0):
    rng = np.random.default_rng(seed)
    return SampledSignal(rng.standard_normal(n) + 1j * rng.standard_normal(n), dt, t0)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        SampledSignal([1.0], 0.0)
    with pytest.raises(ValueError):
        SampledSignal([np.nan], 1.0)


def test_energy_is_riemann_sum():
    s = SampledSignal([1, 2j, -1], 0.5, 3.0)
    assert s.energy() == pytest.approx((1 + 4 + 1) * 0.5)
    assert s.t_end == pytest.approx(4.5)


def test_grid_compatibility():
    a = SampledSignal(np.ones(4), 0.25, 0.0)
    assert a.offset_of(SampledSignal(np.ones(2), 0.25, 0.75)) == 3
    assert not a.is_compatible(SampledSignal(np.ones(2), 0.25, 0.1))
    assert not a.is_compatible(SampledSignal(np.ones(2), 0.5, 0.0))


def test_json_round_trip_is_bit_exact():
    s = rand_signal(1)
    back = SampledSignal.from_json(s.to_json())
    assert back.samples.tobytes() == s.samples.tobytes()
    assert back.dt == s.dt and back.t0 == s.t0


def test_csv_round_trip():
    s = rand_signal(2)
    back = SampledSignal.from_csv(s.to_csv())
    np.testing.assert_array_equal(back.samples, s.samples)
    assert back.dt == pytest.approx(s.dt, rel=1e-15)
    assert back.t0 == s.t0
    assert s.to_csv().splitlines()[0] == "t,re,im"


def test_tf_shift_identity():
    s = rand_signal(3)
    out = tf_shift(s, 0.0, 0.0)
    np.testing.assert_array_equal(out.samples, s.samples)
    assert out.t0 == s.t0


def test_tf_shift_rejects_off_grid_delay():
    with pytest.raises(GridError):
        tf_shift(rand_signal(4), 0.3, 0.0)


@settings(max_examples=40, deadline=None)
@given(k=st.integers(-50, 50), nu=st.floats(-20, 20))
def test_tf_shift_preserves_energy(k, nu):
    s = rand_signal(5)
    out = tf_shift(s, k * s.dt, nu)
    assert out.energy() == pytest.approx(s.energy(), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(k1=st.integers(-30, 30), k2=st.integers(-30, 30))
def test_tf_shift_composition(k1, k2):
    s = rand_signal(6)
    a = tf_shift(tf_shift(s, k1 * s.dt, 0.0), k2 * s.dt, 0.0)
    b = tf_shift(s, (k1 + k2) * s.dt, 0.0)
    np.testing.assert_array_equal(a.samples, b.samples)
    assert s.offset_of(a) == s.offset_of(b)


def test_shift_covariance_of_subcarriers():
    # <g_F, g_2F> == <g, g_F> for the rectangle
    frame = 1.0
    g = make_rect(frame, frame / 64)
    F = 1.0 / frame
    lhs = inner_product(tf_shift(g, 0, F), tf_shift(g, 0, 2 * F))
    rhs = inner_product(g, tf_shift(g, 0, F))
    assert abs(lhs - rhs) <= 1e-12


def test_embed_aligns_supports():
    a = SampledSignal([1, 2], 1.0, 0.0)
    b = SampledSignal([3], 1.0, 3.0)
    arr, dt, t0 = embed([a, b])
    assert t0 == 0.0 and dt == 1.0
    np.testing.assert_array_equal(arr, [[1, 2, 0, 0], [0, 0, 0, 3]])
