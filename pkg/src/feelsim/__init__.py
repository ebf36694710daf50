"""Slot-based simulator of vehicle selection for federated edge learning.

Vehicles crossing a roadside server's coverage upload training data
under one of four selection schemes; a drift-plus-penalty controller
bounds the server's cache backlog while a learning-curve surrogate
scores the accumulated data.  See the module docstrings for the model
pieces: mobility (kinematics and survivability), channel (radio chain),
lyapunov (queue and controller), learning (accuracy surrogate),
selection (schemes), simulator (slot loop), cli (front end).
"""

from .channel import (
    ChannelSnapshot,
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
from .learning import LearningCurve, expected_accuracy, record_training, slot_utility
from .lyapunov import (
    Batch,
    CacheQueue,
    DepartureModel,
    DriftPenaltyConfig,
    arrivals_for,
    lyapunov_value,
    objective,
    optimal_n,
    queue_update,
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
from .selection import ResourceStatus, SchemeKind, SelectionDecision, priority, select
from .simulator import (
    AggregateMetrics,
    ConfigError,
    ExperimentResult,
    ServerSim,
    SimConfig,
    SlotMetrics,
    aggregate_traces,
    run_experiment,
    run_server,
    server_rngs,
)

__version__ = "0.1.0"
