"""Reference learners: diagonal Adagrad and the fixed-fraction bettor."""

import numpy as np

from .learners import Learner
from .vectorlab import norm as vnorm


class Adagrad(Learner):
    def __init__(self, shape, learning_rate, epsilon_div=1e-8):
        super().__init__(shape)
        if learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        self.learning_rate = float(learning_rate)
        self.epsilon_div = float(epsilon_div)
        self.w = np.zeros(self.shape)
        self.accumulator = np.zeros(self.shape)

    def predict(self):
        return self.w.copy()

    def update(self, g):
        g = self._as_gradient(g)
        self.accumulator = self.accumulator + g * g
        self.w = self.w - self.learning_rate * g / (np.sqrt(self.accumulator) + self.epsilon_div)
        self.round += 1

    def metadata(self):
        return {"learner": "adagrad", "learning_rate": self.learning_rate, "epsilon_div": self.epsilon_div}


def adagrad_step(state, g):
    state.update(g)
    return state


class FixedFractionBettor(Learner):
    """Bets the same fraction of current wealth every round."""

    def __init__(self, v_star, epsilon=1.0, norm="linf"):
        v_star = np.asarray(v_star, dtype=float)
        super().__init__(v_star.shape)
        if np.any(vnorm(v_star, norm) > 0.5):
            raise ValueError("fixed fraction must have norm <= 1/2")
        self.v_star = v_star
        self.wealth = np.full(self.shape[:-1], float(epsilon))

    def predict(self):
        return self.wealth[..., None] * self.v_star

    def update(self, g):
        g = self._as_gradient(g)
        self.wealth = self.wealth * (1.0 - np.sum(g * self.v_star, axis=-1))
        self.round += 1


def fixed_fraction_run(v_star, gradients, epsilon=1.0):
    """Final wealth epsilon * prod_t (1 - g_t . v_star)."""
    g = np.atleast_2d(np.asarray(gradients, dtype=float))
    if g.size == 0:
        return float(epsilon)
    return float(epsilon * np.prod(1.0 - g @ np.asarray(v_star, dtype=float)))


def optimal_fixed_fraction(gradients, comparator, norm="linf"):
    """The hindsight fraction along u = comparator/||comparator||.

    v = -u S / (2|S| + 2Q) with S = sum g.u and Q = sum (g.u)^2; this fraction
    earns at least epsilon * exp(S^2 / (4|S| + 4Q)).
    """
    u = np.asarray(comparator, dtype=float)
    u = u / vnorm(u, norm)
    gu = np.atleast_2d(np.asarray(gradients, dtype=float)) @ u
    s, q = gu.sum(), np.sum(gu * gu)
    if s == 0.0:
        return np.zeros_like(u)
    return -u * s / (2 * abs(s) + 2 * q)


def fixed_fraction_wealth_bound(gradients, comparator, epsilon=1.0, norm="linf"):
    u = np.asarray(comparator, dtype=float)
    u = u / vnorm(u, norm)
    gu = np.atleast_2d(np.asarray(gradients, dtype=float)) @ u
    s, q = gu.sum(), np.sum(gu * gu)
    if s == 0.0:
        return float(epsilon)
    return float(epsilon * np.exp(s * s / (4 * abs(s) + 4 * q)))
