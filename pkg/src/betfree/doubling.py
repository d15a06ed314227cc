"""1-D unconstrained coin bettor with a fixed regularizer and doubling restarts.

Within an epoch the betting fraction is FTRL with the fixed quadratic
regularizer ``A v^2 / 4`` (eta = 1). Once the epoch's sum of squared
gradients Z satisfies 2 Z > A, A doubles and the FTRL state and fraction
reset. Wealth carries over between epochs. The round that triggers the
restart is still processed in the old epoch.

Arrays are elementwise, so a shape ``(d,)`` bettor is d independent copies,
i.e. the per-coordinate lifting.
"""

import numpy as np

from .learners import NORM_TOL, ContractViolation, Learner

A_INIT = 5.0


class DoublingBettor(Learner):
    def __init__(self, shape, epsilon=1.0, a_init=A_INIT):
        super().__init__(shape)
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        self.epsilon = float(epsilon)
        self.a_init = float(a_init)
        self.A = np.full(self.shape, self.a_init)
        self.epoch = np.ones(self.shape, dtype=int)
        self.z_epoch = np.zeros(self.shape)  # sum of g^2 in the current epoch
        self.z_sum = np.zeros(self.shape)
        self.z_sq_sum = np.zeros(self.shape)
        self.v = np.zeros(self.shape)
        self.wealth = np.full(self.shape, self.epsilon)
        self.last_z = None
        self.restarted = np.zeros(self.shape, dtype=bool)

    def predict(self):
        return self.v * self.wealth

    def update(self, g):
        g = self._as_gradient(g)
        if np.any(np.abs(g) > 1 + NORM_TOL):
            raise ContractViolation(f"round {self.round}: |g| > 1")
        v = self.v
        self.wealth = self.wealth - v * self.wealth * g
        z = g / (1.0 - g * v)
        self.z_sum = self.z_sum + z
        self.z_sq_sum = self.z_sq_sum + z * z
        self.v = np.clip(-2.0 * self.z_sum / self.A, -0.5, 0.5)
        self.z_epoch = self.z_epoch + g * g
        restart = 2.0 * self.z_epoch > self.A
        if np.any(restart):
            self.A = np.where(restart, 2.0 * self.A, self.A)
            self.epoch = self.epoch + restart
            self.z_epoch = np.where(restart, 0.0, self.z_epoch)
            self.z_sum = np.where(restart, 0.0, self.z_sum)
            self.z_sq_sum = np.where(restart, 0.0, self.z_sq_sum)
            self.v = np.where(restart, 0.0, self.v)
        self.restarted = restart
        self.last_z = z
        self.round += 1

    def metadata(self):
        return {"learner": "doubling1d", "epsilon": self.epsilon, "a_init": self.a_init}


def doubling_step(state, g):
    """Functional alias: advance ``state`` by one gradient and return it."""
    state.update(g)
    return state
