"""Vehicle kinematics on a straight road segment under server coverage.

Vehicles enter at one end of a coverage span of length D, move at a
constant per-vehicle speed drawn from a truncated Gaussian, and leave
at the far end.  The roadside server sits at the midpoint of the span
at some height, so the vehicle-server distance follows from the 1-D
position.  Each vehicle carries a survivability clock: the time (in
seconds) it is expected to remain inside coverage, initialised from
geometry and speed and counted down once per slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Ground distance is clamped away from zero before it enters any radio
# formula; a vehicle exactly under the antenna otherwise yields lg(0).
MIN_GROUND_DISTANCE_M = 1.0


@dataclass(frozen=True)
class SpeedDistribution:
    """Truncated Gaussian speed model: samples confined to [v_min, v_max]."""

    mean_mps: float = 15.0
    variance: float = 0.7
    v_min_mps: float = 13.6
    v_max_mps: float = 16.4

    def __post_init__(self):
        if self.variance < 0.0:
            raise ValueError(f"speed variance must be >= 0, got {self.variance}")
        if self.v_min_mps > self.v_max_mps:
            raise ValueError(
                f"empty speed window: v_min {self.v_min_mps} > v_max {self.v_max_mps}"
            )


@dataclass(frozen=True)
class CoverageGeometry:
    """Road span of length D with the server at the midpoint, height h."""

    span_m: float = 1000.0
    radius_m: float = 500.0
    height_m: float = 50.0

    def __post_init__(self):
        if self.span_m <= 0.0:
            raise ValueError(f"coverage span must be > 0, got {self.span_m}")
        if not math.isclose(self.span_m, 2.0 * self.radius_m):
            raise ValueError(
                f"span {self.span_m} must equal twice the radius {self.radius_m}"
            )
        if self.height_m <= 0.0:
            raise ValueError(f"server height must be > 0, got {self.height_m}")

    @property
    def server_position_m(self) -> float:
        return 0.5 * self.span_m


@dataclass(slots=True)
class VehicleState:
    """Mutable per-vehicle record the simulator debits as slots pass.

    remaining_data_items counts fixed-size local data items; the selector
    converts to megabytes.  survivability_s is the residual coverage time
    in seconds.  A vehicle is active while it is inside the span with
    positive survivability and positive energy.
    """

    vehicle_id: int
    position_m: float
    speed_mps: float
    remaining_data_items: int
    remaining_energy_j: float
    survivability_s: float
    active: bool = True


def sample_speed(dist: SpeedDistribution, rng: np.random.Generator,
                 max_tries: int = 100_000) -> float:
    """Draw one speed from the truncated Gaussian by rejection.

    Draws from the parent Gaussian N(mean, variance) and rejects values
    outside [v_min, v_max]; for the default window this accepts ~90.6 %
    of draws.  A degenerate window (v_min == v_max) returns that point;
    zero variance returns the mean if it lies inside the window.
    """
    if dist.v_min_mps == dist.v_max_mps:
        return dist.v_min_mps
    sigma = math.sqrt(dist.variance)
    if sigma == 0.0:
        if dist.v_min_mps <= dist.mean_mps <= dist.v_max_mps:
            return dist.mean_mps
        raise ValueError("zero-variance speed with mean outside [v_min, v_max]")
    for _ in range(max_tries):
        v = rng.normal(dist.mean_mps, sigma)
        if dist.v_min_mps <= v <= dist.v_max_mps:
            return float(v)
    raise RuntimeError(
        f"rejection sampling failed after {max_tries} draws; "
        f"window [{dist.v_min_mps}, {dist.v_max_mps}] has negligible mass"
    )


def distance_to_server(geom: CoverageGeometry, position_m, *,
                       min_distance_m: float = MIN_GROUND_DISTANCE_M):
    """Ground distance from a 1-D position to the mid-span server.

    Accepts a scalar or an array of positions; the result is clamped
    below at min_distance_m.
    """
    d = np.abs(np.asarray(position_m, dtype=float) - geom.server_position_m)
    d = np.maximum(d, min_distance_m)
    return float(d) if d.ndim == 0 else d


def initial_survivability(geom: CoverageGeometry, position_m: float,
                          speed_mps: float) -> float:
    """Residual coverage time (D - d) / v in seconds for a vehicle at
    1-D position d moving at speed v; never negative."""
    if speed_mps <= 0.0:
        raise ValueError(f"speed must be > 0, got {speed_mps}")
    return max((geom.span_m - position_m) / speed_mps, 0.0)


def advance_slot(v: VehicleState, slot_duration_s: float,
                 geom: CoverageGeometry) -> VehicleState:
    """Return the vehicle's state one slot later.

    Position moves by speed * slot_duration, survivability counts down by
    one slot duration (floored at 0), and the active flag is re-derived:
    the vehicle stays active while it is still within the span with
    positive survivability and positive energy.
    """
    position = v.position_m + v.speed_mps * slot_duration_s
    survivability = max(v.survivability_s - slot_duration_s, 0.0)
    active = (
        survivability > 0.0
        and v.remaining_energy_j > 0.0
        and position <= geom.span_m
    )
    return VehicleState(
        vehicle_id=v.vehicle_id,
        position_m=position,
        speed_mps=v.speed_mps,
        remaining_data_items=v.remaining_data_items,
        remaining_energy_j=v.remaining_energy_j,
        survivability_s=survivability,
        active=active,
    )
