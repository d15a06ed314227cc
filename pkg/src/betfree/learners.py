"""Shared online-learner protocol, error types and regret/wealth bookkeeping.

Every learner follows the two-phase online protocol::

    w = learner.predict()      # iterate for the current round, no mutation
    learner.update(g)          # reveal the gradient, advance one round

State arrays have shape ``shape``; the last axis holds coordinates and any
leading axes are independent copies (handy for running many trajectories at
once). A plain ``(d,)`` shape is the ordinary single-run case.
"""

from dataclasses import dataclass, field

import numpy as np

# slack for float rounding when checking norm contracts
NORM_TOL = 1e-9


class ContractViolation(ValueError):
    """A gradient or betting fraction broke the learner's declared norm bound."""


class InvariantFailure(AssertionError):
    """An internal invariant that the preconditions should guarantee did not hold."""


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class LearnerStep:
    iterate: np.ndarray
    round: int


class Learner:
    """Base class: keeps the round counter and shape bookkeeping."""

    def __init__(self, shape):
        self.shape = tuple(np.atleast_1d(shape).astype(int))
        if len(self.shape) == 0 or self.shape[-1] < 1:
            raise ConfigurationError(f"bad learner shape {shape!r}")
        self.round = 1

    @property
    def dim(self):
        return self.shape[-1]

    def predict(self):
        raise NotImplementedError

    def update(self, g):
        raise NotImplementedError

    def step(self):
        return LearnerStep(self.predict(), self.round)

    def _as_gradient(self, g):
        g = np.asarray(g, dtype=float)
        if g.shape != self.shape:
            g = np.broadcast_to(g, self.shape)
        if not np.all(np.isfinite(g)):
            raise ContractViolation("gradient has non-finite entries")
        return g

    def metadata(self):
        return {"learner": type(self).__name__}


@dataclass
class WealthLedger:
    """Wealth = epsilon - sum_t g_t . w_t, tracked both ways."""

    epsilon: float
    wealth: np.ndarray = None
    cumulative_payout: np.ndarray = None

    def __post_init__(self):
        if self.wealth is None:
            self.wealth = np.asarray(self.epsilon, dtype=float).copy()
        if self.cumulative_payout is None:
            self.cumulative_payout = np.zeros_like(self.wealth)

    def record(self, payout):
        self.wealth = self.wealth - payout
        self.cumulative_payout = self.cumulative_payout + payout


@dataclass
class RegretLedger:
    """History of gradients and payouts g_t . w_t for regret queries."""

    gradient_history: list = field(default_factory=list)
    iterate_payouts: list = field(default_factory=list)

    def record(self, g, w):
        g = np.array(g, dtype=float)
        self.gradient_history.append(g)
        self.iterate_payouts.append(np.sum(g * np.asarray(w, dtype=float), axis=-1))

    def __len__(self):
        return len(self.gradient_history)

    def regret_at(self, comparator):
        return regret_at(self, comparator)


def regret_at(ledger, comparator):
    """R_T(u) = sum_t g_t . w_t - (sum_t g_t) . u; 0 for an empty history."""
    comparator = np.asarray(comparator, dtype=float)
    if len(ledger) == 0:
        return 0.0
    grads = np.stack(ledger.gradient_history)
    if grads.shape[-1] != comparator.shape[-1]:
        raise ValueError("comparator dimension does not match gradients")
    payout = np.sum(np.stack(ledger.iterate_payouts), axis=0)
    return payout - np.sum(np.sum(grads, axis=0) * comparator, axis=-1)
