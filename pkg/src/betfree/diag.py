"""Per-coordinate coin betting with FTRL betting fractions.

Each coordinate runs its own 1-D bettor on the box [-1/2, 1/2]. The raw bet
``x = v * wealth`` is clipped into the box and gradients pointing back into
the box from a clipped bet are zeroed, so the regret of the clipped iterates
is controlled by the regret of the unclipped ones.

The fraction update writes the fraction for the *next* round: after seeing
round t the learner stores clip(-2 eta sum_z / (5 + sum_z^2), -1/2, 1/2) and
uses it at round t + 1.
"""

from dataclasses import dataclass

import numpy as np

from .learners import NORM_TOL, ContractViolation, InvariantFailure, Learner

A_INIT = 5.0
BOX = 0.5


def ftrl_fraction(z_history, eta=0.5):
    """argmin over |v| <= 1/2 of sum(z) v + v^2 (5 + sum(z^2)) / (4 eta)."""
    z = np.asarray(z_history, dtype=float)
    return float(np.clip(-2.0 * eta * z.sum() / (A_INIT + np.sum(z * z)), -BOX, BOX))


@dataclass(frozen=True)
class ReductionTrace:
    x: np.ndarray
    w: np.ndarray
    g: np.ndarray
    g_tilde: np.ndarray


def reduce_gradient(g, x, w):
    """Zero the gradient where it points away from a clipped bet."""
    return np.where(g * (x - w) < 0, 0.0, g)


class DiagOptimizer(Learner):
    """d independent 1-D bettors; gradients must satisfy |g_i| <= 1.

    ``epsilon`` is the total initial wealth, split evenly across coordinates
    unless ``split_epsilon`` is False.
    """

    def __init__(self, shape, epsilon=1.0, eta=0.5, split_epsilon=True, clamp=None):
        super().__init__(shape)
        if epsilon <= 0 or eta <= 0:
            raise ValueError("epsilon and eta must be positive")
        self.epsilon = epsilon / self.dim if split_epsilon else float(epsilon)
        self.eta = float(eta)
        self.clamp = clamp
        self.wealth = np.full(self.shape, self.epsilon)
        self.A = np.full(self.shape, A_INIT)
        self.z_sum = np.zeros(self.shape)
        self.v = np.zeros(self.shape)
        self.last_trace = None
        self.last_z = None
        self._bet = None

    def _place_bet(self):
        if self._bet is None:
            v = self.v if self.clamp is None else self.clamp.apply(self.v)
            x = v * self.wealth
            self._bet = (v, x, np.clip(x, -BOX, BOX))
        return self._bet

    def fraction(self):
        """Betting fraction actually used this round (after any clamp)."""
        return self._place_bet()[0].copy()

    def predict(self):
        return self._place_bet()[2].copy()

    def update(self, g):
        g = self._as_gradient(g)
        if np.any(np.abs(g) > 1 + NORM_TOL):
            raise ContractViolation(f"round {self.round}: |g_i| > 1 (max {np.max(np.abs(g)):.6g})")
        v, x, w = self._place_bet()
        g_tilde = reduce_gradient(g, x, w)
        self.wealth = self.wealth - x * g_tilde
        denom = 1.0 - g_tilde * v
        if np.any(denom < 0.5 - NORM_TOL):
            raise InvariantFailure("1 - g v fell below 1/2")
        z = g_tilde / denom
        self.A = self.A + z * z
        self.z_sum = self.z_sum + z
        self.v = np.clip(-2.0 * self.eta * self.z_sum / self.A, -BOX, BOX)
        if self.clamp is not None:
            self.clamp.observe(z, self.v)
        self.last_trace = ReductionTrace(x, w, g, g_tilde)
        self.last_z = z
        self._bet = None
        self.round += 1

    def metadata(self):
        return {
            "learner": "diag",
            "epsilon_per_coord": self.epsilon,
            "eta": self.eta,
            "init_clamp": self.clamp is not None,
        }
