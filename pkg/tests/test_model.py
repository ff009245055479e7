import math

import numpy as np
import pytest
from scipy.integrate import quad

import picture_lab as pl


def test_zero_field_evaluates_to_zero():
    model = pl.FieldModel.zero()
    for t in (0.0, 3.7, -12.0, 1e4):
        assert pl.evaluate_field(model, t) == 0.0


def test_monochromatic_at_t_zero():
    model = pl.FieldModel.monochromatic(1.0, 0.5, 0.0)
    assert pl.evaluate_field(model, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_mode_sum_two_term_value():
    # direct evaluation of the two-term sum at t = pi
    model = pl.FieldModel.mode_sum([1.0, 0.5], [1.0, 2.0], [0.0, math.pi / 2])
    expected = 1.0 * math.cos(math.pi) + 0.5 * math.cos(2.0 * math.pi + math.pi / 2)
    assert expected == pytest.approx(-1.0, abs=1e-12)
    assert pl.evaluate_field(model, math.pi) == pytest.approx(expected, abs=1e-12)


def test_evaluate_field_is_pure_and_vectorized():
    model = pl.FieldModel.mode_sum([0.3, 0.2], [1.3, 2.7], seed=11)
    ts = np.linspace(-5.0, 5.0, 101)
    values = pl.evaluate_field(model, ts)
    again = pl.evaluate_field(model, ts)
    assert np.array_equal(values, again)
    for i in (0, 37, 100):
        assert pl.evaluate_field(model, float(ts[i])) == values[i]


def test_mode_sum_seed_reproducible_bit_for_bit():
    a = pl.FieldModel.mode_sum([1.0, 2.0, 0.5], [0.9, 1.7, 2.4], seed=42)
    b = pl.FieldModel.mode_sum([1.0, 2.0, 0.5], [0.9, 1.7, 2.4], seed=42)
    assert a.phases == b.phases
    ts = np.linspace(0.0, 20.0, 500)
    assert np.array_equal(pl.evaluate_field(a, ts), pl.evaluate_field(b, ts))
    c = pl.FieldModel.mode_sum([1.0, 2.0, 0.5], [0.9, 1.7, 2.4], seed=43)
    assert a.phases != c.phases


def test_mode_sum_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        pl.FieldModel.mode_sum([1.0, 2.0], [1.0], [0.0, 0.0])


def test_ground_state_width_values():
    assert pl.ground_state_width(pl.OscillatorParams(1, 1, 0, 1)) == \
        pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert pl.ground_state_width(pl.OscillatorParams(2, 1, 0, 1)) == \
        pytest.approx(0.5, abs=1e-15)
    assert pl.ground_state_width(pl.OscillatorParams(1, 4, 0, 1)) == \
        pytest.approx(math.sqrt(0.125), abs=1e-15)


@pytest.mark.parametrize("mass,omega0", [(1.0, 1.0), (2.0, 1.0), (1.0, 4.0)])
def test_width_squared_matches_gaussian_quadrature(mass, omega0):
    # independent oracle: integrate x^2 against the normalized ground density
    params = pl.OscillatorParams(mass, omega0, 0.0, 1.0)
    norm = math.sqrt(mass * omega0 / math.pi)
    density = lambda x: norm * math.exp(-mass * omega0 * x * x)
    moment, _ = quad(lambda x: x * x * density(x), -np.inf, np.inf)
    assert pl.ground_state_width(params) ** 2 == pytest.approx(moment, rel=1e-10)


def test_width_scales_as_inverse_sqrt_frequency():
    widths = [pl.ground_state_width(pl.OscillatorParams(1.0, w, 0.0, 1.0))
              for w in (0.5, 2.0, 8.0)]
    for w, width in zip((0.5, 2.0, 8.0), widths):
        assert width * math.sqrt(w) == pytest.approx(widths[0] * math.sqrt(0.5),
                                                     rel=1e-12)


def test_params_validation_messages():
    with pytest.raises(ValueError, match="mass must be positive"):
        pl.OscillatorParams(mass=-1.0)
    with pytest.raises(ValueError, match="omega0"):
        pl.OscillatorParams(omega0=0.0)
    with pytest.raises(ValueError, match="hbar"):
        pl.OscillatorParams(hbar=-2.0)
    pl.OscillatorParams(charge=0.0)  # zero charge is allowed
    pl.OscillatorParams(charge=-3.0)  # any real charge is allowed


def test_field_validation():
    with pytest.raises(ValueError, match="gamma"):
        pl.FieldModel.zero(gamma=-0.1)
    with pytest.raises(ValueError, match="kind"):
        pl.FieldModel(kind="sawtooth")


def test_time_grid_basics():
    grid = pl.TimeGrid(0.0, 2.0, 4)
    assert grid.dt == 0.5
    assert np.allclose(grid.times, [0.0, 0.5, 1.0, 1.5, 2.0])
    assert len(grid.half_times) == 9
    assert grid.refined(2).n_steps == 8
    with pytest.raises(ValueError):
        pl.TimeGrid(1.0, 1.0, 10)
    with pytest.raises(ValueError):
        pl.TimeGrid(0.0, 1.0, 0)
