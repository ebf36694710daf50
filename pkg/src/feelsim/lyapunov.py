"""Cache queue dynamics and drift-plus-penalty admission control.

The edge server buffers uploaded data batches in a bounded FIFO cache.
Backlog evolves as Q(t+1) = max(Q(t) + arrivals - departures, 0); the
quadratic Lyapunov function L = Q^2 / 2 measures congestion.  Each slot
the controller picks the batch count n maximising

    V * U(n) + Q * (batch_size * n - mu_est)

over counts that are both available and safe, i.e. the post-arrival
backlog Q + batch_size * n stays within the cache bound.  V trades
training utility against backlog growth; mu_est is the most recent
observed departure volume.  Departures themselves follow one of three
pluggable models (uniform volume target, per-batch coin flips, or
channel-gated readiness).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

DEPARTURE_MODELS = ("uniform-volume", "bernoulli", "channel-gated")


@dataclass(frozen=True)
class Batch:
    """One uploaded data batch sitting in the server cache."""

    vehicle_id: int
    size_mb: float
    arrival_slot: int


@dataclass(frozen=True)
class DriftPenaltyConfig:
    """Controller constants: utility weight V and per-selection batch size."""

    tradeoff_v: float = 1.0e10
    batch_size_mb: float = 10.0

    def __post_init__(self):
        if self.tradeoff_v < 0.0:
            raise ValueError(f"tradeoff V must be >= 0, got {self.tradeoff_v}")
        if self.batch_size_mb <= 0.0:
            raise ValueError(f"batch size must be > 0, got {self.batch_size_mb}")


@dataclass(frozen=True)
class DepartureModel:
    """How cached batches drain each slot.

    uniform-volume: draw a volume target ~ U[0, volume_max_mb] and pop
        whole FIFO batches while they fit under the target.
    bernoulli: each cached batch departs independently with prob p_dep.
    channel-gated: a batch departs when its owner's current shadow
        correlation exceeds corr_threshold (absent owners always depart).
    """

    kind: str = "uniform-volume"
    p_dep: float = 0.5
    volume_max_mb: float = 120.0
    corr_threshold: float = 0.6

    def __post_init__(self):
        if self.kind not in DEPARTURE_MODELS:
            raise ValueError(
                f"unknown departure model {self.kind!r}; expected one of {DEPARTURE_MODELS}"
            )
        if not 0.0 <= self.p_dep <= 1.0:
            raise ValueError(f"departure probability must lie in [0, 1], got {self.p_dep}")
        if self.volume_max_mb < 0.0:
            raise ValueError(f"departure volume bound must be >= 0, got {self.volume_max_mb}")
        if not 0.0 <= self.corr_threshold <= 1.0:
            raise ValueError(
                f"correlation threshold must lie in [0, 1], got {self.corr_threshold}"
            )


class CacheQueue:
    """FIFO cache of uploaded batches with a running backlog figure.

    capacity_mb is the controller's safety bound, not a hard limit:
    push never refuses, so schemes that bypass the controller can drive
    the backlog past it (and that overflow is itself a result).
    """

    def __init__(self, capacity_mb: float):
        if capacity_mb <= 0.0:
            raise ValueError(f"cache capacity must be > 0, got {capacity_mb}")
        self.capacity_mb = capacity_mb
        self._batches: deque[Batch] = deque()
        self.backlog_mb = 0.0

    def __len__(self) -> int:
        return len(self._batches)

    @property
    def batches(self) -> tuple[Batch, ...]:
        return tuple(self._batches)

    def push(self, batch: Batch) -> None:
        if batch.size_mb <= 0.0:
            raise ValueError(f"batch size must be > 0, got {batch.size_mb}")
        self._batches.append(batch)
        self.backlog_mb += batch.size_mb

    def extend(self, batches: Iterable[Batch]) -> None:
        for b in batches:
            self.push(b)

    def remove_if(self, departs: Callable[[int, Batch], bool]) -> list[Batch]:
        """Drop every batch for which departs(index, batch) is true,
        preserving FIFO order among survivors; returns the removed batches."""
        removed: list[Batch] = []
        kept: deque[Batch] = deque()
        for i, b in enumerate(self._batches):
            if departs(i, b):
                removed.append(b)
            else:
                kept.append(b)
        self._batches = kept
        self.backlog_mb -= sum(b.size_mb for b in removed)
        if not self._batches:
            self.backlog_mb = 0.0  # clear accumulated float dust
        return removed

    def pop_up_to_volume(self, target_mb: float) -> list[Batch]:
        """Pop whole batches from the FIFO head while they fit under
        target_mb; returns the popped batches (possibly none)."""
        removed: list[Batch] = []
        total = 0.0
        while self._batches and total + self._batches[0].size_mb <= target_mb:
            b = self._batches.popleft()
            removed.append(b)
            total += b.size_mb
        self.backlog_mb -= total
        if not self._batches:
            self.backlog_mb = 0.0
        return removed


def queue_update(backlog_mb: float, arrivals_mb: float, departures_mb: float) -> float:
    """One-slot backlog recursion Q(t+1) = max(Q + arrivals - departures, 0)."""
    if arrivals_mb < 0.0 or departures_mb < 0.0:
        raise ValueError("arrivals and departures must be >= 0")
    return max(backlog_mb + arrivals_mb - departures_mb, 0.0)


def lyapunov_value(backlog_mb: float) -> float:
    """Quadratic congestion measure L(Q) = Q^2 / 2."""
    return 0.5 * backlog_mb * backlog_mb


def arrivals_for(n: int, cfg: DriftPenaltyConfig) -> float:
    """Cache arrivals implied by admitting n batches."""
    if n < 0:
        raise ValueError(f"batch count must be >= 0, got {n}")
    return cfg.batch_size_mb * n


def objective(n: int, backlog_mb: float, mu_est_mb: float,
              cfg: DriftPenaltyConfig, utility_fn: Callable[[int], float]) -> float:
    """Drift-plus-penalty value V * U(n) + Q * (batch_size * n - mu_est)."""
    return (
        cfg.tradeoff_v * utility_fn(n)
        + backlog_mb * (cfg.batch_size_mb * n - mu_est_mb)
    )


def optimal_n(backlog_mb: float, available: int, mu_est_mb: float,
              cfg: DriftPenaltyConfig, utility_fn: Callable[[int], float],
              q_max_mb: float) -> int:
    """Batch count maximising the drift-plus-penalty objective.

    Scans n = 0..available subject to the cache-safety bound
    backlog + batch_size * n <= q_max and returns the argmax, breaking
    ties towards the larger count.  n = 0 is always admissible (it adds
    nothing to the cache), so the scan never comes back empty-handed.
    """
    if available < 0:
        raise ValueError(f"available count must be >= 0, got {available}")
    best_n = 0
    best_val = None
    v, batch = cfg.tradeoff_v, cfg.batch_size_mb  # inlined objective(); hot loop
    for n in range(available + 1):
        if n > 0 and backlog_mb + batch * n > q_max_mb:
            break
        val = v * utility_fn(n) + backlog_mb * (batch * n - mu_est_mb)
        if best_val is None or val >= best_val:
            best_n, best_val = n, val
    return best_n


def sample_departures(queue: CacheQueue, model: DepartureModel,
                      rng: np.random.Generator,
                      shadow_corr: Mapping[int, float] | None = None,
                      ) -> tuple[float, list[Batch]]:
    """Draw one slot of departures from the cache.

    Returns (departed volume in MB, the removed batches).  The bernoulli
    model consumes one uniform per cached batch; uniform-volume consumes
    exactly one; channel-gated consumes none (it reads the supplied
    per-vehicle shadow correlations, treating missing owners as gone and
    therefore ready to depart).
    """
    if len(queue) == 0:
        return 0.0, []
    if model.kind == "uniform-volume":
        target = rng.uniform(0.0, model.volume_max_mb)
        removed = queue.pop_up_to_volume(target)
    elif model.kind == "bernoulli":
        coins = rng.random(len(queue))
        removed = queue.remove_if(lambda i, b: coins[i] < model.p_dep)
    else:  # channel-gated
        corr = shadow_corr or {}
        removed = queue.remove_if(
            lambda i, b: corr.get(b.vehicle_id) is None
            or corr[b.vehicle_id] > model.corr_threshold
        )
    return sum(b.size_mb for b in removed), removed
