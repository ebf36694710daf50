"""Training-accuracy surrogate driven by cumulative data volume.

Model accuracy is approximated by a saturating power law of the data
volume x (in MB) seen so far: E_acc(x) = 1 - l_rate * x ** d_rate with
d_rate < 0, so accuracy climbs steeply for the first batches and
flattens as volume grows.  Below one unit of data the surrogate reports
zero accuracy, which also keeps the negative power from blowing up near
x = 0.  Loss is simply 1 - accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class LearningCurve:
    """Power-law accuracy surrogate plus the volume trained so far."""

    learning_rate: float = 1.0
    decay_rate: float = -0.3
    cumulative_data_mb: float = 0.0

    def __post_init__(self):
        if self.learning_rate <= 0.0:
            raise ValueError(f"learning rate must be > 0, got {self.learning_rate}")
        if self.decay_rate >= 0.0:
            raise ValueError(f"decay rate must be < 0, got {self.decay_rate}")
        if self.cumulative_data_mb < 0.0:
            raise ValueError("cumulative data volume must be >= 0")


def expected_accuracy(curve: LearningCurve, volume_mb: float) -> float:
    """Accuracy after training on volume_mb of data; 0 below one unit."""
    if volume_mb < 1.0:
        return 0.0
    return 1.0 - curve.learning_rate * volume_mb ** curve.decay_rate


def slot_utility(curve: LearningCurve, n: int, batch_mb: float) -> float:
    """Utility of admitting n batches this slot: E_acc(batch_mb * n).

    Non-decreasing in n, which is what makes the drift-plus-penalty
    argmax land on the largest feasible count.
    """
    if n < 0:
        raise ValueError(f"batch count must be >= 0, got {n}")
    return expected_accuracy(curve, batch_mb * n)


def record_training(curve: LearningCurve, arrivals_mb: float) -> tuple[float, float]:
    """Fold one slot's admitted volume into the curve.

    Adds arrivals_mb to the cumulative volume and returns the updated
    (accuracy, loss) pair, with loss = 1 - accuracy exactly.
    """
    if arrivals_mb < 0.0:
        raise ValueError(f"arrivals must be >= 0, got {arrivals_mb}")
    curve.cumulative_data_mb += arrivals_mb
    acc = expected_accuracy(curve, curve.cumulative_data_mb)
    return acc, 1.0 - acc
