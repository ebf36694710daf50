"""Slot-based simulation of vehicle selection at replicated edge servers.

Each server runs the same closed loop once per slot: refresh every
active vehicle's link figures, solve (or bypass, depending on scheme)
the drift-plus-penalty count, select uploaders, debit their data and
energy, enqueue the uploaded batches, drain the cache through the
departure model, fold the admitted volume into the learning curve, then
advance vehicle kinematics.  An experiment replays that loop over
independent servers and averages the per-slot records into an
aggregate trace.

Randomness is split into three named substreams per server (world
randomness, scheme sampling, cache departures), each seeded from the
master seed and server index.  Scheme choice therefore never perturbs
fleet initialisation: comparative runs see identical vehicles.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .channel import (
    RadioEnvironment,
    comm_quality,
    doppler_shift,
    path_loss_db,
    shadow_correlation,
    tx_energy_j,
    tx_power_w,
    tx_rate,
    update_energy,
)
from .learning import LearningCurve, expected_accuracy, record_training, slot_utility
from .lyapunov import (
    Batch,
    CacheQueue,
    DepartureModel,
    DriftPenaltyConfig,
    optimal_n,
    sample_departures,
)
from .mobility import (
    CoverageGeometry,
    SpeedDistribution,
    VehicleState,
    advance_slot,
    distance_to_server,
    initial_survivability,
    sample_speed,
)
from .selection import ResourceStatus, SchemeKind, select

COMM_QUALITY_MODES = ("normalized", "literal")
UTILITY_BASES = ("slot", "cumulative")

# Field order of the per-server CSV trace; the aggregate drops server_id.
TRACE_FIELDS = (
    "slot",
    "server_id",
    "scheme",
    "queue_backlog_mb",
    "n_star",
    "n_selected",
    "arrivals_mb",
    "departures_mb",
    "cumulative_selected",
    "cumulative_trained_mb",
    "accuracy",
    "loss",
    "active_vehicles",
)


class ConfigError(ValueError):
    """A configuration value violates its constraint."""


@dataclass
class SimConfig:
    """Full experiment configuration; defaults reproduce the reference
    scenario (100 vehicles on a 1 km span, 2 GB cache, nine servers)."""

    # fleet
    num_vehicles: int = 100
    data_items_per_vehicle: int = 1000
    item_size_mb: float = 1.0
    energy_min_j: float = 50.0
    energy_max_j: float = 100.0
    # road and coverage geometry
    coverage_span_m: float = 1000.0
    coverage_radius_m: float = 500.0
    server_height_m: float = 50.0
    # speed model
    speed_mean_mps: float = 15.0
    speed_variance: float = 0.7
    speed_min_mps: float = 13.6
    speed_max_mps: float = 16.4
    # radio chain
    carrier_freq_mhz: float = 2500.0
    path_loss_exponent: float = 3.0
    light_speed_mps: float = 3.0e8
    rate_scale: float = 5.6e6
    channel_gain_var: float = 7.5
    epsilon_min: float = 0.3
    epsilon_max: float = 0.9
    noise_min: float = 0.0
    noise_max: float = 1.0
    comm_quality_mode: str = "normalized"
    # drift-plus-penalty controller
    tradeoff_v: float = 1.0e10
    batch_mb: float = 10.0
    queue_capacity_mb: float = 2000.0
    # learning surrogate
    learning_rate: float = 1.0
    decay_rate: float = -0.3
    utility_basis: str = "slot"
    # cache departures
    departure_model: str = "uniform-volume"
    departure_prob: float = 0.5
    departure_volume_max_mb: float = 120.0
    departure_corr_threshold: float = 0.6
    # scheme and run shape
    scheme: SchemeKind = SchemeKind.PROPOSED
    static_count: int = 5
    num_servers: int = 9
    max_slots: int = 1500
    slot_duration_s: float = 0.05
    master_seed: int = 0
    energy_scale: float = 1.0
    respawn: bool = False

    def validate(self) -> None:
        """Raise ConfigError naming the violated constraint."""
        checks = [
            (self.num_vehicles >= 1, f"num_vehicles must be >= 1, got {self.num_vehicles}"),
            (self.data_items_per_vehicle >= 0,
             f"data_items_per_vehicle must be >= 0, got {self.data_items_per_vehicle}"),
            (self.item_size_mb > 0.0, f"item_size_mb must be > 0, got {self.item_size_mb}"),
            (0.0 < self.energy_min_j <= self.energy_max_j,
             f"energy range must satisfy 0 < min <= max, got [{self.energy_min_j}, {self.energy_max_j}]"),
            (0.0 <= self.epsilon_min <= self.epsilon_max <= 1.0,
             f"epsilon range must satisfy 0 <= min <= max <= 1, got [{self.epsilon_min}, {self.epsilon_max}]"),
            (0.0 <= self.noise_min <= self.noise_max <= 1.0,
             f"noise range must satisfy 0 <= min <= max <= 1, got [{self.noise_min}, {self.noise_max}]"),
            (self.comm_quality_mode in COMM_QUALITY_MODES,
             f"comm_quality_mode must be one of {COMM_QUALITY_MODES}, got {self.comm_quality_mode!r}"),
            (self.utility_basis in UTILITY_BASES,
             f"utility_basis must be one of {UTILITY_BASES}, got {self.utility_basis!r}"),
            (self.queue_capacity_mb > 0.0,
             f"queue_capacity_mb must be > 0, got {self.queue_capacity_mb}"),
            (self.static_count >= 0, f"static_count must be >= 0, got {self.static_count}"),
            (self.num_servers >= 1, f"num_servers must be >= 1, got {self.num_servers}"),
            (self.max_slots >= 1, f"max_slots must be >= 1, got {self.max_slots}"),
            (self.slot_duration_s > 0.0,
             f"slot_duration_s must be > 0, got {self.slot_duration_s}"),
            (self.energy_scale >= 0.0, f"energy_scale must be >= 0, got {self.energy_scale}"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        ratio = self.batch_mb / self.item_size_mb
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise ConfigError(
                f"batch_mb must be a positive whole multiple of item_size_mb, "
                f"got {self.batch_mb} / {self.item_size_mb}"
            )
        try:
            self.geometry()
            self.radio_env()
            self.speed_dist()
            self.drift_cfg()
            self.departure()
            LearningCurve(self.learning_rate, self.decay_rate)
        except ValueError as err:
            raise ConfigError(str(err)) from err

    # derived model objects

    def geometry(self) -> CoverageGeometry:
        return CoverageGeometry(self.coverage_span_m, self.coverage_radius_m,
                                self.server_height_m)

    def radio_env(self) -> RadioEnvironment:
        return RadioEnvironment(
            carrier_freq_mhz=self.carrier_freq_mhz,
            path_loss_exponent=self.path_loss_exponent,
            light_speed_mps=self.light_speed_mps,
            rate_scale=self.rate_scale,
            channel_gain_var=self.channel_gain_var,
        )

    def speed_dist(self) -> SpeedDistribution:
        return SpeedDistribution(self.speed_mean_mps, self.speed_variance,
                                 self.speed_min_mps, self.speed_max_mps)

    def drift_cfg(self) -> DriftPenaltyConfig:
        return DriftPenaltyConfig(self.tradeoff_v, self.batch_mb)

    def departure(self) -> DepartureModel:
        return DepartureModel(self.departure_model, self.departure_prob,
                              self.departure_volume_max_mb,
                              self.departure_corr_threshold)

    @property
    def items_per_batch(self) -> int:
        return round(self.batch_mb / self.item_size_mb)


@dataclass(frozen=True, slots=True)
class SlotMetrics:
    """One slot of one server's trace; mirrors the CSV schema."""

    slot: int
    server_id: int
    scheme: str
    queue_backlog_mb: float
    n_star: int
    n_selected: int
    arrivals_mb: float
    departures_mb: float
    cumulative_selected: int
    cumulative_trained_mb: float
    accuracy: float
    loss: float
    active_vehicles: int


@dataclass(frozen=True, slots=True)
class AggregateMetrics:
    """Across-server arithmetic mean of a slot; counts become floats."""

    slot: int
    scheme: str
    queue_backlog_mb: float
    n_star: float
    n_selected: float
    arrivals_mb: float
    departures_mb: float
    cumulative_selected: float
    cumulative_trained_mb: float
    accuracy: float
    loss: float
    active_vehicles: float


@dataclass
class ExperimentResult:
    """Per-server traces plus their across-server aggregate."""

    config: SimConfig
    traces: list[list[SlotMetrics]]
    aggregate: list[AggregateMetrics]


def server_rngs(master_seed: int, server_index: int
                ) -> tuple[np.random.Generator, np.random.Generator, np.random.Generator]:
    """Three independent generators (world, scheme, queue) for one server.

    Derived as SeedSequence(master_seed, spawn_key=(server_index, k)), so
    every (seed, server, stream) triple maps to a stable, platform-
    independent state.  Keeping scheme sampling and departures off the
    world stream means changing the scheme never changes the fleet.
    """
    return tuple(
        np.random.default_rng(np.random.SeedSequence(master_seed,
                                                     spawn_key=(server_index, k)))
        for k in range(3)
    )


class ServerSim:
    """One edge server's slot loop; deterministic given (config, index)."""

    def __init__(self, cfg: SimConfig, server_index: int = 0):
        cfg.validate()
        if server_index < 0:
            raise ValueError(f"server index must be >= 0, got {server_index}")
        self.cfg = cfg
        self.server_id = server_index
        self.geom = cfg.geometry()
        self.env = cfg.radio_env()
        self.speeds = cfg.speed_dist()
        self.drift = cfg.drift_cfg()
        self.departure_model = cfg.departure()
        self.curve = LearningCurve(cfg.learning_rate, cfg.decay_rate)
        self.queue = CacheQueue(cfg.queue_capacity_mb)
        self.rng_world, self.rng_scheme, self.rng_queue = server_rngs(
            cfg.master_seed, server_index)
        # vehicles[i].vehicle_id == i always; respawned vehicles append.
        self.vehicles: list[VehicleState] = self._spawn_fleet()
        self.initial_items = {v.vehicle_id: v.remaining_data_items
                              for v in self.vehicles}
        self.uploads_by_vehicle = {v.vehicle_id: 0 for v in self.vehicles}
        self.cumulative_selected = 0
        self.prev_departures_mb = 0.0
        self.slots_run = 0

    def _spawn_fleet(self) -> list[VehicleState]:
        # Draw phases in a fixed order (speeds, positions, energies) so
        # the world stream lines up across configurations.
        cfg = self.cfg
        k = cfg.num_vehicles
        speeds = [sample_speed(self.speeds, self.rng_world) for _ in range(k)]
        positions = self.rng_world.uniform(0.0, cfg.coverage_span_m, k)
        energies = self.rng_world.uniform(cfg.energy_min_j, cfg.energy_max_j, k)
        fleet = []
        for i in range(k):
            surv = initial_survivability(self.geom, positions[i], speeds[i])
            fleet.append(VehicleState(
                vehicle_id=i,
                position_m=float(positions[i]),
                speed_mps=speeds[i],
                remaining_data_items=cfg.data_items_per_vehicle,
                remaining_energy_j=float(energies[i]),
                survivability_s=surv,
                active=surv > 0.0,
            ))
        return fleet

    def _fresh_vehicle(self) -> VehicleState:
        # Respawn draw order: speed, then energy.
        cfg = self.cfg
        speed = sample_speed(self.speeds, self.rng_world)
        energy = float(self.rng_world.uniform(cfg.energy_min_j, cfg.energy_max_j))
        vid = len(self.vehicles)
        return VehicleState(
            vehicle_id=vid,
            position_m=0.0,
            speed_mps=speed,
            remaining_data_items=cfg.data_items_per_vehicle,
            remaining_energy_j=energy,
            survivability_s=initial_survivability(self.geom, 0.0, speed),
            active=True,
        )

    def _quality_figures(self, literal: np.ndarray) -> np.ndarray:
        """Map literal dB qualities to the figures fed to the selector.

        normalized mode min-max rescales this slot's active vehicles to
        [0, 1] (all-equal maps to 1); literal passes the dB values through.
        """
        if self.cfg.comm_quality_mode == "literal" or literal.size == 0:
            return literal
        lo, hi = literal.min(), literal.max()
        if hi == lo:
            return np.ones_like(literal)
        return (literal - lo) / (hi - lo)

    def _utility_fn(self):
        cfg, curve = self.cfg, self.curve
        if cfg.utility_basis == "slot":
            return lambda n: slot_utility(curve, n, cfg.batch_mb)
        base = curve.cumulative_data_mb
        return lambda n: expected_accuracy(curve, base + cfg.batch_mb * n)

    def step(self) -> SlotMetrics:
        """Advance one slot and return its metrics row."""
        cfg = self.cfg
        t = self.slots_run
        active = [v for v in self.vehicles if v.active]
        # Whole-fleet draws (noise, then shadow base correlation) keep
        # the world stream aligned across slots regardless of who is
        # currently active.
        noise = self.rng_world.uniform(cfg.noise_min, cfg.noise_max,
                                       len(self.vehicles))
        eps = self.rng_world.uniform(cfg.epsilon_min, cfg.epsilon_max,
                                     len(self.vehicles))

        if active:
            ids = np.array([v.vehicle_id for v in active])
            pos = np.array([v.position_m for v in active])
            spd = np.array([v.speed_mps for v in active])
            energy = np.array([v.remaining_energy_j for v in active])
            surv = np.array([v.survivability_s for v in active])
            data_mb = np.array([float(v.remaining_data_items) for v in active])
            data_mb *= cfg.item_size_mb
            dist = distance_to_server(self.geom, pos)
            fd = doppler_shift(self.env, spd, dist, self.geom.height_m)
            loss = path_loss_db(self.env, fd, dist)
            shadow = shadow_correlation(eps[ids], spd, dist)
            rate = tx_rate(self.env, shadow)
            power = tx_power_w(self.env, rate)
            literal_q = np.asarray(comm_quality(self.env, power, loss, noise[ids]))
            quality = self._quality_figures(literal_q)
            e_tx = np.asarray(tx_energy_j(self.env, cfg.batch_mb, power))
            e_tx = e_tx * cfg.energy_scale
            statuses = [
                ResourceStatus(int(i), float(d), float(q), float(e), float(s))
                for i, d, q, e, s in zip(ids, data_mb, quality, energy, surv)
            ]
            # any remaining data keeps a vehicle in the controller's
            # count; selection itself still demands a full batch
            available = int(np.count_nonzero(data_mb > 0.0))
        else:
            ids = np.array([], dtype=int)
            shadow = np.array([])
            e_tx = np.array([])
            statuses = []
            available = 0

        if cfg.scheme in (SchemeKind.PROPOSED, SchemeKind.RANDOM):
            n_star = optimal_n(self.queue.backlog_mb, available,
                               self.prev_departures_mb, self.drift,
                               self._utility_fn(), cfg.queue_capacity_mb)
        else:
            n_star = 0
        decision = select(cfg.scheme, statuses, n_star, self.rng_scheme,
                          slot=t, batch_mb=cfg.batch_mb,
                          static_count=cfg.static_count)

        energy_cost = {int(i): float(e) for i, e in zip(ids, e_tx)}
        for vid in decision.selected_ids:
            v = self.vehicles[vid]
            v.remaining_data_items -= cfg.items_per_batch
            v.remaining_energy_j = update_energy(v.remaining_energy_j,
                                                 energy_cost[vid])
            if v.remaining_energy_j <= 0.0:
                v.active = False
            self.uploads_by_vehicle[vid] += 1
            self.queue.push(Batch(vid, cfg.batch_mb, t))
        self.cumulative_selected += len(decision.selected_ids)

        shadow_by_id = None
        if self.departure_model.kind == "channel-gated":
            shadow_by_id = {int(i): float(a) for i, a in zip(ids, shadow)}
        departed_mb, _ = sample_departures(self.queue, self.departure_model,
                                           self.rng_queue, shadow_by_id)

        accuracy, loss_value = record_training(self.curve, decision.arrivals_mb)

        exited = 0
        for i, v in enumerate(self.vehicles):
            if v.active:
                moved = advance_slot(v, cfg.slot_duration_s, self.geom)
                # kinematic advance can only deactivate by leaving
                # coverage; energy-exhausted vehicles were flagged above
                if not moved.active and moved.remaining_energy_j > 0.0:
                    exited += 1
                self.vehicles[i] = moved
        if cfg.respawn:
            for _ in range(exited):
                fresh = self._fresh_vehicle()
                self.vehicles.append(fresh)
                self.initial_items[fresh.vehicle_id] = fresh.remaining_data_items
                self.uploads_by_vehicle[fresh.vehicle_id] = 0

        self.prev_departures_mb = departed_mb
        self.slots_run += 1
        return SlotMetrics(
            slot=t,
            server_id=self.server_id,
            scheme=cfg.scheme.value,
            queue_backlog_mb=self.queue.backlog_mb,
            n_star=decision.n_star,
            n_selected=len(decision.selected_ids),
            arrivals_mb=decision.arrivals_mb,
            departures_mb=departed_mb,
            cumulative_selected=self.cumulative_selected,
            cumulative_trained_mb=self.curve.cumulative_data_mb,
            accuracy=accuracy,
            loss=loss_value,
            active_vehicles=len(active),
        )

    def drained(self) -> bool:
        """True when no eligible upload can ever happen again and the
        cache is empty — nothing measurable changes from here on."""
        if self.queue.backlog_mb > 0.0:
            return False
        threshold = self.cfg.items_per_batch
        return not any(v.active and v.remaining_data_items >= threshold
                       for v in self.vehicles)

    def run(self) -> list[SlotMetrics]:
        """Run until drained or max_slots, whichever comes first."""
        rows = []
        for _ in range(self.cfg.max_slots):
            rows.append(self.step())
            if self.drained():
                break
        return rows


def run_server(cfg: SimConfig, server_index: int = 0) -> list[SlotMetrics]:
    """Convenience wrapper: simulate one server and return its trace."""
    return ServerSim(cfg, server_index).run()


def _padded_row(trace: list[SlotMetrics], t: int) -> SlotMetrics:
    # Terminated servers hold their final state; flow columns read 0 so
    # padding never invents arrivals or departures.
    if t < len(trace):
        return trace[t]
    return replace(trace[-1], slot=t, n_star=0, n_selected=0,
                   arrivals_mb=0.0, departures_mb=0.0)


def aggregate_traces(traces: list[list[SlotMetrics]], scheme: str
                     ) -> list[AggregateMetrics]:
    """Arithmetic mean of every numeric column across servers, slot by
    slot, out to the longest trace."""
    if not traces:
        return []
    horizon = max(len(tr) for tr in traces)
    k = float(len(traces))
    out = []
    for t in range(horizon):
        rows = [_padded_row(tr, t) for tr in traces]
        out.append(AggregateMetrics(
            slot=t,
            scheme=scheme,
            queue_backlog_mb=sum(r.queue_backlog_mb for r in rows) / k,
            n_star=sum(r.n_star for r in rows) / k,
            n_selected=sum(r.n_selected for r in rows) / k,
            arrivals_mb=sum(r.arrivals_mb for r in rows) / k,
            departures_mb=sum(r.departures_mb for r in rows) / k,
            cumulative_selected=sum(r.cumulative_selected for r in rows) / k,
            cumulative_trained_mb=sum(r.cumulative_trained_mb for r in rows) / k,
            accuracy=sum(r.accuracy for r in rows) / k,
            loss=sum(r.loss for r in rows) / k,
            active_vehicles=sum(r.active_vehicles for r in rows) / k,
        ))
    return out


def run_experiment(cfg: SimConfig) -> ExperimentResult:
    """Simulate every server under one config and aggregate the traces."""
    cfg.validate()
    traces = [run_server(cfg, i) for i in range(cfg.num_servers)]
    return ExperimentResult(
        config=cfg,
        traces=traces,
        aggregate=aggregate_traces(traces, cfg.scheme.value),
    )
