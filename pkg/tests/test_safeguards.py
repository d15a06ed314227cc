import numpy as np
import pytest

from betfree.diag import DiagOptimizer
from betfree.recursive import RecursiveOptimizer
from betfree.safeguards import (
    GmaxScaler,
    InitFractionClamp,
    MomentumOffset,
    clamp_fraction,
    gmax_forward,
    momentum_iterate,
)
from betfree.vectorlab import norm


def test_gmax_running_max(constant_learner):
    s = GmaxScaler(constant_learner(np.zeros(2)))
    assert norm(gmax_forward(s, [0.5, 0.5]), "l1") == 1.0
    assert norm(gmax_forward(s, [1.0, -2.0]), "l1") == 1.0
    assert s.g_max == 3.0


def test_gmax_all_zero(constant_learner):
    inner = constant_learner(np.zeros(2))
    s = GmaxScaler(inner)
    for _ in range(3):
        s.update(np.zeros(2))
    assert s.g_max == 0
    assert all(np.all(g == 0) for g in inner.received)


def test_gmax_scales_by_running_max(constant_learner):
    inner = constant_learner(np.zeros(1))
    s = GmaxScaler(inner)
    s.update([2.0])
    s.update([1.0])
    assert [norm(g, "l1") for g in inner.received] == [1.0, 0.5]


def test_gmax_constant_factor_after_max(constant_learner):
    inner = constant_learner(np.zeros(3))
    s = GmaxScaler(inner)
    rng = np.random.default_rng(0)
    s.update([10.0, 0, 0])
    for _ in range(50):
        g = rng.uniform(-1, 1, 3)
        s.update(g)
        np.testing.assert_allclose(inner.received[-1], g / 10.0)
        assert norm(inner.received[-1], "l1") <= 1.0


def test_gmax_makes_recursive_safe():
    s = GmaxScaler(RecursiveOptimizer((3,)))
    rng = np.random.default_rng(0)
    for _ in range(100):
        s.update(rng.standard_normal(3) * 50)
    assert s.wealth > 0


def test_momentum_equal_iterates(constant_learner):
    m = MomentumOffset(constant_learner([0.3, -1.0]))
    np.testing.assert_array_equal(momentum_iterate(m), [0.3, -1.0])
    for _ in range(4):
        m.update([1.0, 1.0])
    np.testing.assert_allclose(m.predict(), [0.6, -2.0])


def test_momentum_weighted_mean():
    class Seq(type(DiagOptimizer((1,))).__mro__[1]):
        def __init__(self):
            super().__init__((1,))
            self.values = [0.0, 1.0, 5.0]

        def predict(self):
            return np.array([self.values[self.round - 1]])

        def update(self, g):
            self.round += 1

    m = MomentumOffset(Seq())
    m.update([1.0])
    m.update([np.sqrt(3.0)])
    assert abs(m.predict()[0] - (5.0 + 0.75)) < 1e-12


def test_clamp_examples():
    c = InitFractionClamp((1,))
    assert clamp_fraction(c, 0.4, 0) == pytest.approx(0.1)
    assert clamp_fraction(c, -0.05, 0) == -0.05
    c.observe(np.array([np.sqrt(2.0)]), np.array([0.0]))
    assert clamp_fraction(c, 0.4, 0) == 0.4
    assert clamp_fraction(c, -0.05, 0) == -0.05


def test_clamp_never_reactivates():
    c = InitFractionClamp((4,))
    rng = np.random.default_rng(0)
    retired = np.zeros(4, dtype=bool)
    for _ in range(100):
        c.observe(rng.uniform(-0.3, 0.3, 4), rng.uniform(-0.5, 0.5, 4))
        assert np.all(c.retired >= retired)
        retired = c.retired.copy()
        np.testing.assert_array_equal(c.active, c.accumulator < 1)


def test_clamp_fraction_statistic():
    c = InitFractionClamp((1,), statistic="fraction")
    c.observe(np.array([5.0]), np.array([0.5]))
    assert c.active[0]
    for _ in range(3):
        c.observe(np.array([0.0]), np.array([0.5]))
    assert not c.active[0]


def test_clamp_limits_inner_bets():
    clamp = InitFractionClamp((2,))
    opt = DiagOptimizer((2,), clamp=clamp)
    for _ in range(3):
        opt.update([-1.0, 0.01])
        assert np.all(np.abs(opt.fraction()[clamp.active]) <= 0.1)


def test_full_stack_composition():
    learner = MomentumOffset(GmaxScaler(RecursiveOptimizer((3,), inner=DiagOptimizer((3,), clamp=InitFractionClamp((3,))))))
    rng = np.random.default_rng(2)
    for _ in range(200):
        learner.predict()
        learner.update(rng.standard_normal(3) * 7 + 1)
    assert np.all(np.isfinite(learner.predict()))
    assert learner.wealth > 0
