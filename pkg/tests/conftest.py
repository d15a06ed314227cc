import numpy as np
import pytest

from betfree.learners import Learner


class ConstantLearner(Learner):
    """Always predicts the same vector; remembers the gradients it was fed."""

    def __init__(self, value):
        value = np.asarray(value, dtype=float)
        super().__init__(value.shape)
        self.value = value
        self.received = []

    def predict(self):
        return self.value.copy()

    def update(self, g):
        self.received.append(np.array(g, dtype=float))
        self.round += 1


@pytest.fixture
def constant_learner():
    return ConstantLearner


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
