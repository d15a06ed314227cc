"""Practical wrappers around the betting learners.

Composition used by the harness, outermost first::

    MomentumOffset(GmaxScaler(RecursiveOptimizer(inner=DiagOptimizer(clamp=InitFractionClamp))))

None of these carry a regret guarantee of their own; they only make the
learners usable on gradients without a known bound.
"""

import numpy as np

from .learners import Learner
from .vectorlab import norm


class GmaxScaler(Learner):
    """Divides each gradient by the largest L1 norm seen so far."""

    def __init__(self, inner):
        super().__init__(inner.shape)
        self.inner = inner
        self.g_max = np.zeros(self.shape[:-1])

    def __getattr__(self, name):
        # wealth, fraction, ... of the wrapped learner
        if name == "inner":
            raise AttributeError(name)
        return getattr(self.inner, name)

    def predict(self):
        return self.inner.predict()

    def forward(self, g):
        g = self._as_gradient(g)
        self.g_max = np.maximum(self.g_max, norm(g, "l1"))
        safe = np.where(self.g_max > 0, self.g_max, 1.0)
        return np.where(self.g_max[..., None] > 0, g / safe[..., None], 0.0)

    def update(self, g):
        self.inner.update(self.forward(g))
        self.round += 1

    def metadata(self):
        return {"wrapper": "gmax", "inner": self.inner.metadata()}


def gmax_forward(scaler, g):
    return scaler.forward(g)


class MomentumOffset(Learner):
    """Reports w_t + wbar_t, wbar_t the ||g||^2-weighted mean of earlier inner iterates."""

    def __init__(self, inner, dual_norm="l1"):
        super().__init__(inner.shape)
        self.inner = inner
        self.dual_norm = dual_norm
        self.weighted_sum = np.zeros(self.shape)
        self.weight_total = np.zeros(self.shape[:-1])

    def __getattr__(self, name):
        if name == "inner":
            raise AttributeError(name)
        return getattr(self.inner, name)

    def average(self):
        total = self.weight_total[..., None]
        return np.where(total > 0, self.weighted_sum / np.where(total > 0, total, 1.0), 0.0)

    def predict(self):
        return self.inner.predict() + self.average()

    def update(self, g):
        g = self._as_gradient(g)
        weight = norm(g, self.dual_norm) ** 2
        self.weighted_sum = self.weighted_sum + weight[..., None] * self.inner.predict()
        self.weight_total = self.weight_total + weight
        self.inner.update(g)
        self.round += 1

    def metadata(self):
        return {"wrapper": "momentum", "inner": self.inner.metadata()}


def momentum_iterate(offset):
    return offset.predict()


class InitFractionClamp:
    """Keeps a coordinate's betting fraction within +-threshold until it has seen enough signal.

    ``statistic="z"`` retires the clamp once the running sum of squared inner
    gradients reaches 1; ``statistic="fraction"`` uses squared betting
    fractions instead.
    """

    def __init__(self, shape, threshold=0.1, statistic="z"):
        if statistic not in ("z", "fraction"):
            raise ValueError("statistic must be 'z' or 'fraction'")
        self.threshold = float(threshold)
        self.statistic = statistic
        self.accumulator = np.zeros(shape)
        self.retired = np.zeros(shape, dtype=bool)

    @property
    def active(self):
        return ~self.retired

    def apply(self, v):
        return np.where(self.active, np.clip(v, -self.threshold, self.threshold), v)

    def observe(self, z, v_next):
        inc = z * z if self.statistic == "z" else v_next * v_next
        self.accumulator = self.accumulator + inc
        self.retired = self.retired | (self.accumulator >= 1.0)


def clamp_fraction(clamp, v, coord):
    """Clamp a single coordinate's fraction."""
    idx = np.unravel_index(coord, clamp.accumulator.shape) if np.ndim(coord) == 0 else coord
    if clamp.retired[idx]:
        return v
    return float(np.clip(v, -clamp.threshold, clamp.threshold))
