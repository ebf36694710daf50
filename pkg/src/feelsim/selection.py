"""Vehicle selection schemes and the resource-status priority ranking.

The proposed scheme ranks eligible vehicles by a status weight
w = (remaining data * comm quality) / (remaining energy * survivability)
and takes the n* highest — vehicles holding much data on a good channel
but short on energy or time-in-coverage upload first.  Three baselines
share the interface: select every eligible vehicle, select a fixed-size
random subset, and select a uniformly random subset of size n*.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class SchemeKind(enum.Enum):
    PROPOSED = "proposed"
    MAXIMUM = "maximum"
    STATIC = "static"
    RANDOM = "random"


@dataclass(frozen=True)
class ResourceStatus:
    """One vehicle's per-slot standing as seen by the selector."""

    vehicle_id: int
    remaining_data_mb: float
    comm_quality: float
    remaining_energy_j: float
    survivability_s: float


@dataclass(frozen=True)
class SelectionDecision:
    """Outcome of one slot's selection round."""

    slot: int
    n_star: int
    selected_ids: tuple[int, ...]
    arrivals_mb: float


def priority(status: ResourceStatus) -> float:
    """Status weight (C_d * C_com) / (C_E * C_S); 0 when the vehicle has
    no energy or no residual coverage time (it cannot finish an upload,
    so it must not outrank anyone)."""
    if status.survivability_s <= 0.0 or status.remaining_energy_j <= 0.0:
        return 0.0
    return (
        status.remaining_data_mb * status.comm_quality
        / (status.remaining_energy_j * status.survivability_s)
    )


def eligible(statuses: list[ResourceStatus], batch_mb: float) -> list[ResourceStatus]:
    """Vehicles holding at least one full batch of data."""
    return [s for s in statuses if s.remaining_data_mb >= batch_mb]


def select(scheme: SchemeKind, statuses: list[ResourceStatus], n_star: int,
           rng: np.random.Generator, *, slot: int = 0, batch_mb: float = 10.0,
           static_count: int = 5) -> SelectionDecision:
    """Pick this slot's uploaders from the active vehicles' statuses.

    statuses should cover exactly the currently active vehicles; only
    those holding a full batch are considered.  proposed takes the
    n_star best by descending priority (ties towards the lower vehicle
    id); maximum takes everyone eligible and reports the eligible count
    as n_star; static draws a fixed-size uniform subset and reports its
    size; random draws a uniform subset of size n_star.  Only static and
    random consume randomness.
    """
    if n_star < 0:
        raise ValueError(f"n_star must be >= 0, got {n_star}")
    pool = eligible(statuses, batch_mb)
    if scheme is SchemeKind.PROPOSED:
        ranked = sorted(pool, key=lambda s: (-priority(s), s.vehicle_id))
        chosen = [s.vehicle_id for s in ranked[: min(n_star, len(ranked))]]
        reported = n_star
    elif scheme is SchemeKind.MAXIMUM:
        chosen = sorted(s.vehicle_id for s in pool)
        reported = len(chosen)
    elif scheme is SchemeKind.STATIC:
        take = min(static_count, len(pool))
        chosen = _draw(pool, take, rng)
        reported = take
    elif scheme is SchemeKind.RANDOM:
        take = min(n_star, len(pool))
        chosen = _draw(pool, take, rng)
        reported = n_star
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown scheme {scheme!r}")
    return SelectionDecision(
        slot=slot,
        n_star=reported,
        selected_ids=tuple(chosen),
        arrivals_mb=batch_mb * len(chosen),
    )


def _draw(pool: list[ResourceStatus], take: int, rng: np.random.Generator) -> list[int]:
    if take == 0:
        return []
    ids = np.array([s.vehicle_id for s in pool])
    return [int(v) for v in rng.choice(ids, size=take, replace=False)]
