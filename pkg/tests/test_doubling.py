import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betfree.doubling import DoublingBettor, doubling_step
from betfree.learners import ContractViolation


def test_restart_after_third_unit_gradient():
    b = DoublingBettor((1,))
    for expected_z, expected_a in [(1, 5), (2, 5)]:
        doubling_step(b, [1.0])
        assert b.z_epoch[0] == expected_z and b.A[0] == expected_a and b.epoch[0] == 1
    doubling_step(b, [1.0])
    assert b.A[0] == 10 and b.epoch[0] == 2 and b.z_epoch[0] == 0


def test_prediction_after_restart_is_zero():
    b = DoublingBettor((1,))
    for _ in range(3):
        b.update([1.0])
    assert b.restarted[0]
    assert b.predict()[0] == 0.0
    assert b.wealth[0] > 1.0  # wealth carried over


def test_zero_gradients_never_restart():
    b = DoublingBettor((2,))
    for _ in range(500):
        b.update([0.0, 0.0])
    assert np.all(b.epoch == 1) and np.all(b.v == 0)


def test_rejects_large_gradient():
    with pytest.raises(ContractViolation):
        DoublingBettor((1,)).update([1.5])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-1, 1))
def test_epoch_count_and_wealth(seed, bias):
    rng = np.random.default_rng(seed)
    b = DoublingBettor((1,))
    total = 0.0
    for t in range(1, 400):
        g = np.clip(bias + 0.5 * rng.standard_normal(1), -1, 1)
        a_before = b.A.copy()
        b.update(g)
        total += g[0] ** 2
        assert b.wealth[0] > 0
        if b.restarted[0]:
            assert b.A[0] == 2 * a_before[0]
        else:
            assert b.A[0] == a_before[0]
            assert 2 * b.z_epoch[0] <= b.A[0]
    assert b.epoch[0] <= np.log2(1 + 2 * total / 5.0) + 1
