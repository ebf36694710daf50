"""Vehicle-to-server radio chain.

The link model walks a fixed pipeline each slot: Doppler shift from the
vehicle's speed and slant geometry, ITU-R style log-distance path loss
shifted by the Doppler, a shadow-fading correlation that decays with the
ratio of distance travelled to decorrelation distance, then achievable
rate, transmit power, a dB-domain communication quality figure, and the
energy cost of pushing one data batch through the link.

Every function broadcasts over numpy arrays so a whole fleet can be
evaluated in one call; scalar inputs come back as plain floats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadioEnvironment:
    """Constants of the uplink: carrier, propagation, and rate scaling.

    carrier_freq_mhz      carrier frequency f in MHz
    path_loss_exponent    distance power-law exponent N
    light_speed_mps       propagation speed used for the wavelength
    rate_scale            alpha, maps sqrt(power) to rate (rate = alpha*sqrt(P))
    channel_gain_var      delta^2, variance of the channel gain; caps the rate
    power_floor_db        dB value reported for zero transmit power
    """

    carrier_freq_mhz: float = 2500.0
    path_loss_exponent: float = 3.0
    light_speed_mps: float = 3.0e8
    rate_scale: float = 5.6e6
    channel_gain_var: float = 7.5
    power_floor_db: float = -300.0

    def __post_init__(self):
        if self.carrier_freq_mhz <= 0.0:
            raise ValueError(f"carrier frequency must be > 0, got {self.carrier_freq_mhz}")
        if self.path_loss_exponent <= 0.0:
            raise ValueError(f"path-loss exponent must be > 0, got {self.path_loss_exponent}")
        if self.light_speed_mps <= 0.0:
            raise ValueError(f"light speed must be > 0, got {self.light_speed_mps}")
        if self.rate_scale <= 0.0:
            raise ValueError(f"rate scale must be > 0, got {self.rate_scale}")
        if self.channel_gain_var < 0.0:
            raise ValueError(f"channel gain variance must be >= 0, got {self.channel_gain_var}")


@dataclass(frozen=True)
class ChannelSnapshot:
    """Per-vehicle, per-slot link figures produced by the chain."""

    doppler_hz: float
    path_loss_db: float
    shadow_corr: float
    rate: float
    power_w: float
    comm_quality: float
    tx_energy_j: float


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def wavelength_m(env: RadioEnvironment):
    """Carrier wavelength B = c / f in metres (f given in MHz)."""
    return env.light_speed_mps / (env.carrier_freq_mhz * 1e6)


def doppler_shift(env: RadioEnvironment, speed_mps, ground_distance_m, height_m):
    """Doppler shift f_d = (v / B) * cos(theta) in Hz.

    theta is the angle between the velocity (along the road) and the
    slant path to the elevated server, so cos(theta) = d / sqrt(h^2 + d^2)
    with ground distance d and server height h.
    """
    d = np.asarray(ground_distance_m, dtype=float)
    cos_theta = d / np.sqrt(height_m * height_m + d * d)
    return _out(np.asarray(speed_mps, dtype=float) / wavelength_m(env) * cos_theta)


def path_loss_db(env: RadioEnvironment, doppler_hz, ground_distance_m):
    """Log-distance path loss 20*lg(f + f_d) + 10*N*lg(d) - 28 in dB.

    The carrier f is in MHz and the Doppler shift is converted from Hz
    to MHz before the sum, so the shift perturbs the loss only in the
    sixth decimal at vehicular speeds.
    """
    f_mhz = env.carrier_freq_mhz + np.asarray(doppler_hz, dtype=float) / 1e6
    d = np.asarray(ground_distance_m, dtype=float)
    return _out(
        20.0 * np.log10(f_mhz)
        + 10.0 * env.path_loss_exponent * np.log10(d)
        - 28.0
    )


def shadow_correlation(epsilon, speed_mps, decorrelation_distance_m):
    """Shadow-fading correlation a = epsilon ** (v / d_corr).

    epsilon in [0, 1) is the per-slot base correlation; the exponent is
    the distance moved per unit time over the decorrelation distance, so
    fast vehicles (or short decorrelation distances) decorrelate harder.
    """
    eps = np.asarray(epsilon, dtype=float)
    if np.any(eps < 0.0) or np.any(eps >= 1.0):
        raise ValueError("shadow base correlation must lie in [0, 1)")
    d = np.asarray(decorrelation_distance_m, dtype=float)
    if np.any(d <= 0.0):
        raise ValueError("decorrelation distance must be > 0")
    return _out(eps ** (np.asarray(speed_mps, dtype=float) / d))


def tx_rate(env: RadioEnvironment, shadow_corr):
    """Achievable rate r = delta^2 * a; equals delta^2 when fully correlated."""
    return _out(env.channel_gain_var * np.asarray(shadow_corr, dtype=float))


def tx_power_w(env: RadioEnvironment, rate):
    """Transmit power P = (r / alpha)^2 in watts, inverting r = alpha*sqrt(P)."""
    r = np.asarray(rate, dtype=float)
    return _out((r / env.rate_scale) ** 2)


def comm_quality(env: RadioEnvironment, power_w, loss_db, noise):
    """Quality figure C_com = (P_dB - L_dB) * noise, all in dB domain.

    P_dB = 10*lg(P); zero power maps to the environment's power floor
    instead of -inf.  noise is a positive multiplicative factor.
    """
    p = np.asarray(power_w, dtype=float)
    if np.any(p < 0.0):
        raise ValueError("transmit power must be >= 0")
    p_db = np.where(
        p > 0.0,
        10.0 * np.log10(np.maximum(p, 1e-300)),
        env.power_floor_db,
    )
    return _out((p_db - np.asarray(loss_db, dtype=float)) * np.asarray(noise, dtype=float))


def tx_energy_j(env: RadioEnvironment, data_size_mb, power_w):
    """Energy to upload one batch: E = size * sqrt(P) / alpha.

    sqrt(P)/alpha is the reciprocal rate at that power, so this is
    size * time-per-unit, in joules under the model's unit convention.
    """
    p = np.asarray(power_w, dtype=float)
    if np.any(p < 0.0):
        raise ValueError("transmit power must be >= 0")
    return _out(np.asarray(data_size_mb, dtype=float) * np.sqrt(p) / env.rate_scale)


def update_energy(previous_j: float, spent_j: float) -> float:
    """Residual energy after a transmission; may cross zero, the caller
    deactivates the vehicle when it does."""
    return previous_j - spent_j


def link_snapshot(env: RadioEnvironment, *, speed_mps: float,
                  ground_distance_m: float, height_m: float, epsilon: float,
                  noise: float, data_size_mb: float) -> ChannelSnapshot:
    """Run the whole chain for one vehicle and bundle the results."""
    fd = doppler_shift(env, speed_mps, ground_distance_m, height_m)
    loss = path_loss_db(env, fd, ground_distance_m)
    a = shadow_correlation(epsilon, speed_mps, ground_distance_m)
    r = tx_rate(env, a)
    p = tx_power_w(env, r)
    q = comm_quality(env, p, loss, noise)
    e = tx_energy_j(env, data_size_mb, p)
    return ChannelSnapshot(
        doppler_hz=fd,
        path_loss_db=loss,
        shadow_corr=a,
        rate=r,
        power_w=p,
        comm_quality=q,
        tx_energy_j=e,
    )
