"""Outer coin bettor whose betting fractions come from an inner learner.

The outer iterate is ``w_t = Wealth_{t-1} v_t`` where ``v_t`` is the inner
learner's prediction. After the gradient arrives the inner learner is fed
``scale * g_t / (1 - g_t . v_t)``, the gradient of -log(1 - g . v) at v_t.
Bets are measured in the infinity norm, so gradients must have L1 norm <= 1.
With ||v||_inf <= 1/2 the inner gradient has infinity norm <= 2, and the
default scale of 1/2 brings it back into [-1, 1].
"""

import numpy as np

from .diag import DiagOptimizer
from .learners import NORM_TOL, ContractViolation, InvariantFailure, Learner, WealthLedger

WEALTH_FLOOR = 1e-300


class RecursiveOptimizer(Learner):
    def __init__(self, shape, epsilon=1.0, inner=None, inner_gradient_scale=0.5):
        super().__init__(shape)
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if inner is None:
            inner = DiagOptimizer(self.shape, epsilon=epsilon)
        if tuple(inner.shape) != self.shape:
            raise ValueError(f"inner shape {inner.shape} != outer shape {self.shape}")
        self.epsilon = float(epsilon)
        self.inner = inner
        self.inner_gradient_scale = float(inner_gradient_scale)
        self.ledger = WealthLedger(np.full(self.shape[:-1], self.epsilon))
        # per-coordinate sum of squared gradients forwarded to the inner learner
        self.inner_grad_sq = np.zeros(self.shape)
        self.last_z = None
        self._v = None

    @property
    def wealth(self):
        return self.ledger.wealth

    def fraction(self):
        if self._v is None:
            v = np.asarray(self.inner.predict(), dtype=float)
            if np.any(np.max(np.abs(v), axis=-1) > 0.5 + NORM_TOL):
                raise ContractViolation(f"round {self.round}: inner fraction has ||v||_inf > 1/2")
            self._v = v
        return self._v

    def predict(self):
        return self.wealth[..., None] * self.fraction()

    def update(self, g):
        g = self._as_gradient(g)
        l1 = np.sum(np.abs(g), axis=-1)
        if np.any(l1 > 1 + NORM_TOL):
            raise ContractViolation(f"round {self.round}: ||g||_1 = {np.max(l1):.6g} > 1")
        v = self.fraction()
        w = self.wealth[..., None] * v
        gv = np.sum(g * v, axis=-1)
        denom = 1.0 - gv
        if np.any(denom <= 0):
            raise InvariantFailure("1 - g.v <= 0")
        self.ledger.record(np.sum(g * w, axis=-1))
        if np.any(self.wealth < WEALTH_FLOOR):
            raise InvariantFailure(f"round {self.round}: wealth underflow ({np.min(self.wealth):.3g})")
        if not np.all(np.isfinite(self.wealth)):
            raise InvariantFailure(f"round {self.round}: wealth overflow")
        z = g / denom[..., None]
        inner_g = self.inner_gradient_scale * z
        self.inner_grad_sq += inner_g * inner_g
        self.inner.update(inner_g)
        self.last_z = z
        self._v = None
        self.round += 1

    def metadata(self):
        return {
            "learner": "recursive",
            "epsilon": self.epsilon,
            "inner_gradient_scale": self.inner_gradient_scale,
            "inner": self.inner.metadata(),
        }
