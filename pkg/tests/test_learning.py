"""Learning-curve surrogate: 1 - l_rate * x^d_rate."""

import numpy as np
import pytest

from feelsim.learning import LearningCurve, expected_accuracy, record_training, slot_utility


def test_expected_accuracy_oracle():
    curve = LearningCurve()
    # 1 - 10^-0.3 and 1 - (1e6)^-0.3, worked by hand
    assert expected_accuracy(curve, 10.0) == pytest.approx(0.49881276637272776)
    assert expected_accuracy(curve, 1e6) == pytest.approx(0.9841510680753889)


def test_expected_accuracy_below_one_unit():
    curve = LearningCurve()
    assert expected_accuracy(curve, 0.0) == 0.0
    assert expected_accuracy(curve, 0.5) == 0.0
    # exactly one unit: 1 - 1^d = 0 for any decay
    assert expected_accuracy(curve, 1.0) == 0.0


def test_expected_accuracy_monotone_and_saturating():
    curve = LearningCurve()
    x = np.linspace(1.0, 1e5, 500)
    acc = np.array([expected_accuracy(curve, xi) for xi in x])
    assert np.all(np.diff(acc) >= 0.0)
    assert np.all(acc < 1.0)


def test_slot_utility_matches_accuracy_of_volume():
    curve = LearningCurve()
    assert slot_utility(curve, 1, 10.0) == expected_accuracy(curve, 10.0)
    assert slot_utility(curve, 0, 10.0) == 0.0
    assert slot_utility(curve, 7, 10.0) == expected_accuracy(curve, 70.0)
    with pytest.raises(ValueError):
        slot_utility(curve, -1, 10.0)


def test_slot_utility_non_decreasing_in_n():
    curve = LearningCurve()
    utils = [slot_utility(curve, n, 10.0) for n in range(0, 150)]
    assert all(b >= a for a, b in zip(utils, utils[1:]))


def test_record_training_accumulates():
    curve = LearningCurve()
    acc1, loss1 = record_training(curve, 10.0)
    assert curve.cumulative_data_mb == 10.0
    assert acc1 == pytest.approx(0.49881276637272776)
    assert loss1 == 1.0 - acc1
    acc2, _ = record_training(curve, 0.0)
    assert acc2 == acc1  # idle slot, no regression
    acc3, loss3 = record_training(curve, 90.0)
    assert curve.cumulative_data_mb == 100.0
    assert acc3 > acc2
    assert loss3 == 1.0 - acc3
    with pytest.raises(ValueError):
        record_training(curve, -1.0)


def test_curve_validation():
    with pytest.raises(ValueError):
        LearningCurve(learning_rate=0.0)
    with pytest.raises(ValueError):
        LearningCurve(decay_rate=0.3)
    with pytest.raises(ValueError):
        LearningCurve(cumulative_data_mb=-5.0)
