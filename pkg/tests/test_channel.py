"""Radio chain against hand-computed oracle values.

Oracle arithmetic (worked independently of the implementation, Table-2
style constants f = 2500 MHz, N = 3, c = 3e8, alpha = 5.6e6, dsq = 7.5):

  wavelength           3e8 / 2.5e9                          = 0.12 m
  cos(theta)           100 / sqrt(50^2 + 100^2)             = 0.8944271909999159
  doppler              15 / 0.12 * cos(theta)               = 111.80339887498948 Hz
  path loss (1 m)      20*lg(2500) - 28                     = 39.95880017344075 dB
  path loss (100 m)    + 30*lg(100)                         = 99.95880017344075 dB
  with f_d above       20*lg(2500 + 111.803e-6) + 30*lg100 - 28
                                                            = 99.95880056188554 dB
  shadow corr          0.5 ** (15/100)                      = 0.9012504626108302
  rate                 7.5 * 0.9012504626108302             = 6.759378469581226
  power                (rate / 5.6e6)^2                     = 1.4569259341530051e-12 W
  power in dB          10*lg(power)                         = -118.36562525928196 dB
  comm quality         (P_dB - L_dB(with f_d)) * 1          = -218.3244258211675
  tx energy (10 MB)    10 * sqrt(power) / 5.6e6             = 2.155414052800136e-12 J
"""

import numpy as np
import pytest

from feelsim.channel import (
    RadioEnvironment,
    comm_quality,
    doppler_shift,
    link_snapshot,
    path_loss_db,
    shadow_correlation,
    tx_energy_j,
    tx_power_w,
    tx_rate,
    update_energy,
    wavelength_m,
)

ENV = RadioEnvironment()


def test_wavelength():
    assert wavelength_m(ENV) == pytest.approx(0.12)
    assert wavelength_m(RadioEnvironment(carrier_freq_mhz=1250.0)) == pytest.approx(0.24)


def test_doppler_oracle():
    assert doppler_shift(ENV, 15.0, 100.0, 50.0) == pytest.approx(111.80339887498948)
    # straight overhead: ground distance ~ 0 kills the projection
    assert doppler_shift(ENV, 15.0, 1e-9, 50.0) == pytest.approx(0.0, abs=1e-6)


def test_path_loss_oracle():
    assert path_loss_db(ENV, 0.0, 1.0) == pytest.approx(39.95880017344075)
    assert path_loss_db(ENV, 0.0, 100.0) == pytest.approx(99.95880017344075)
    fd = doppler_shift(ENV, 15.0, 100.0, 50.0)
    assert path_loss_db(ENV, fd, 100.0) == pytest.approx(99.95880056188554)


def test_path_loss_doubles_distance():
    # +10*N*lg(2) = 9.030899869919436 dB per doubling with N = 3
    base = path_loss_db(ENV, 0.0, 100.0)
    assert path_loss_db(ENV, 0.0, 200.0) - base == pytest.approx(9.030899869919436)


def test_path_loss_monotone_in_distance():
    d = np.linspace(1.0, 500.0, 200)
    losses = path_loss_db(ENV, 0.0, d)
    assert np.all(np.diff(losses) > 0)


def test_shadow_correlation_oracle():
    assert shadow_correlation(0.5, 15.0, 100.0) == pytest.approx(0.9012504626108302)
    # farther out, less decorrelation per slot
    near = shadow_correlation(0.5, 15.0, 10.0)
    far = shadow_correlation(0.5, 15.0, 400.0)
    assert near < far <= 1.0
    with pytest.raises(ValueError):
        shadow_correlation(1.0, 15.0, 100.0)
    with pytest.raises(ValueError):
        shadow_correlation(-0.1, 15.0, 100.0)


def test_rate_power_energy_oracle():
    a = 0.9012504626108302
    r = tx_rate(ENV, a)
    assert r == pytest.approx(6.759378469581226)
    p = tx_power_w(ENV, r)
    assert p == pytest.approx(1.4569259341530051e-12)
    e = tx_energy_j(ENV, 10.0, p)
    assert e == pytest.approx(2.155414052800136e-12)


def test_rate_chain_monotone_in_shadow_corr():
    a = np.linspace(0.01, 1.0, 50)
    powers = tx_power_w(ENV, tx_rate(ENV, a))
    energies = tx_energy_j(ENV, 10.0, powers)
    assert np.all(np.diff(powers) > 0)
    assert np.all(np.diff(energies) > 0)
    assert np.all(energies >= 0.0)


def test_comm_quality_oracle():
    fd = doppler_shift(ENV, 15.0, 100.0, 50.0)
    loss = path_loss_db(ENV, fd, 100.0)
    p = 1.4569259341530051e-12
    assert comm_quality(ENV, p, loss, 1.0) == pytest.approx(-218.3244258211675)


def test_comm_quality_trivial_cases():
    assert comm_quality(ENV, 1.0, 10.0, 0.0) == 0.0
    # P_dB = 0 for unit power, so equal loss of 0 dB cancels exactly
    assert comm_quality(ENV, 1.0, 0.0, 0.5) == 0.0


def test_comm_quality_zero_power_floor():
    q = comm_quality(ENV, 0.0, 100.0, 1.0)
    assert q == pytest.approx((-300.0 - 100.0) * 1.0)
    arr = comm_quality(ENV, np.array([0.0, 1.0]), np.array([0.0, 0.0]), 1.0)
    assert arr[0] == pytest.approx(-300.0)
    assert arr[1] == pytest.approx(0.0)


def test_comm_quality_decreasing_in_loss():
    losses = np.linspace(40.0, 140.0, 30)
    q = comm_quality(ENV, 1.4569259341530051e-12, losses, 1.0)
    assert np.all(np.diff(q) < 0)


def test_update_energy():
    assert update_energy(50.0, 0.0) == 50.0
    assert update_energy(50.0, 50.0) == 0.0
    assert update_energy(100.0, 2.155414052800136e-12) == pytest.approx(
        100.0 - 2.155414052800136e-12)


def test_link_snapshot_bundles_chain():
    snap = link_snapshot(ENV, speed_mps=15.0, ground_distance_m=100.0,
                         height_m=50.0, epsilon=0.5, noise=1.0,
                         data_size_mb=10.0)
    assert snap.doppler_hz == pytest.approx(111.80339887498948)
    assert snap.path_loss_db == pytest.approx(99.95880056188554)
    assert snap.shadow_corr == pytest.approx(0.9012504626108302)
    assert snap.rate == pytest.approx(6.759378469581226)
    assert snap.power_w == pytest.approx(1.4569259341530051e-12)
    assert snap.comm_quality == pytest.approx(-218.3244258211675)
    assert snap.tx_energy_j == pytest.approx(2.155414052800136e-12)


def test_environment_validation():
    with pytest.raises(ValueError):
        RadioEnvironment(carrier_freq_mhz=0.0)
    with pytest.raises(ValueError):
        RadioEnvironment(rate_scale=-1.0)
    with pytest.raises(ValueError):
        RadioEnvironment(path_loss_exponent=0.0)
