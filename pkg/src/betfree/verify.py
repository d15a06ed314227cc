"""Randomized checks of closed forms against brute-force grid oracles.

Each check returns a CheckResult; ``run_all`` drives the ``betfree verify``
command. Sampling ranges are fixed here so a given seed always produces the
same instances.
"""

from dataclasses import dataclass

import numpy as np

from .diag import ftrl_fraction
from .theory import (
    BoundInputs,
    balancelog_bound,
    balancelog_grid_inf,
    conjugate_exp_grid,
    fenchel_conjugate_exp,
    log1m_gap,
    theorem4_bound,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    instances: int
    failures: int
    worst: float
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.failures}/{self.instances} failures, worst margin {self.worst:.3g} {self.detail}".rstrip()


def _loguniform(rng, lo, hi, size=None):
    return 10 ** rng.uniform(np.log10(lo), np.log10(hi), size)


def check_conjugate(n=1000, seed=0, tol=1e-3):
    """Closed-form conjugate of a exp(b x) vs grid sup over [-50, 50], step 1e-4."""
    rng = np.random.default_rng(seed)
    worst, bad = 0.0, 0
    for _ in range(n):
        a, b, y = _loguniform(rng, 0.1, 10), rng.uniform(0.5, 5), rng.uniform(0.01, 10)
        err = abs(fenchel_conjugate_exp(a, b, y) - conjugate_exp_grid(a, b, y))
        worst = max(worst, err)
        bad += err > tol
    return CheckResult("fenchel conjugate vs grid sup", bad == 0, n, bad, worst, f"(tol {tol})")


def sample_balancelog(rng, proof_region=False):
    """A, B, D log-uniform on [1e-3, 1e3], C uniform on [0, 5].

    With ``proof_region`` the draw is repeated until 4A^2 + D >= 4A.
    """
    while True:
        A, B, D = _loguniform(rng, 1e-3, 1e3, 3)
        C = rng.uniform(0, 5)
        if not proof_region or 4 * A * A + D >= 4 * A:
            return A, B, C, D


def check_balancelog(n=1000, seed=0, proof_region=False, tol=1e-9):
    """Grid infimum over x in (0, 1/2], step 1e-4, must not exceed the closed-form bound."""
    rng = np.random.default_rng(seed)
    worst, bad, examples = -np.inf, 0, []
    for _ in range(n):
        A, B, C, D = sample_balancelog(rng, proof_region)
        margin = balancelog_grid_inf(A, B, C, D) - balancelog_bound(A, B, C, D)
        worst = max(worst, margin)
        if margin > tol:
            bad += 1
            examples.append((A, B, C, D))
    name = "balancing-log bound vs grid inf" + (" (4A^2+D >= 4A)" if proof_region else "")
    detail = ""
    if examples:
        A, B, C, D = examples[0]
        detail = f"e.g. A={A:.4g} B={B:.4g} C={C:.4g} D={D:.4g}"
    return CheckResult(name, bad == 0, n, bad, worst, detail)


def check_log1m(n=1000, seed=0):
    """log(1 - x) >= -x - x^2 for x <= 1/2, on a dense grid plus random points."""
    rng = np.random.default_rng(seed)
    grid = np.linspace(-20.0, 0.5, 2_050_001)
    pts = np.concatenate([grid, 0.5 - _loguniform(rng, 1e-6, 100, n)])
    gap = log1m_gap(pts)
    bad = int(np.sum(gap < -1e-15))
    return CheckResult("log(1-x) >= -x - x^2", bad == 0, pts.size, bad, float(-gap.min()))


def ftrl_objective_grid_argmin(z, eta, step=1e-4):
    v = np.linspace(-0.5, 0.5, int(round(1 / step)) + 1)
    obj = z.sum() * v + v * v * (5 + np.sum(z * z)) / (4 * eta)
    return float(v[np.argmin(obj)])


def check_ftrl(n=100, seed=0, step=1e-4):
    rng = np.random.default_rng(seed)
    worst, bad = 0.0, 0
    for _ in range(n):
        z = rng.uniform(-2, 2, rng.integers(0, 201))
        # a drifting history pushes the argmin onto the boundary
        z = z + rng.uniform(-2, 2) * (rng.random() < 0.5)
        z = np.clip(z, -2, 2)
        eta = rng.uniform(0.1, 2.0)
        err = abs(ftrl_fraction(z, eta) - ftrl_objective_grid_argmin(z, eta, step))
        worst = max(worst, err)
        bad += err > step
    return CheckResult("FTRL fraction vs grid argmin", bad == 0, n, bad, worst, f"(tol {step})")


def check_theorem4_monotone(n=200, seed=0, h=1e-3):
    rng = np.random.default_rng(seed)
    bad, worst = 0, 0.0
    for _ in range(n):
        d = int(rng.integers(1, 6))
        u = rng.uniform(-0.5, 0.5, d)
        G = _loguniform(rng, 1e-2, 1e5, d)
        eps = _loguniform(rng, 1e-3, 10)
        base = theorem4_bound(BoundInputs(eps, 0.5, u, G, 0.0, 0.0, 0.0))
        for i in range(d):
            bumped = G.copy()
            bumped[i] += h * (1 + G[i])
            drop = base - theorem4_bound(BoundInputs(eps, 0.5, u, bumped, 0.0, 0.0, 0.0))
            worst = max(worst, drop)
            bad += drop > 1e-9 * max(1.0, base)
    return CheckResult("diagonal bound nondecreasing in G_i", bad == 0, n, bad, worst)


def run_all(seed=0, quick=False):
    n = 100 if quick else 1000
    return [
        check_conjugate(n, seed),
        check_balancelog(n, seed),
        check_balancelog(n, seed, proof_region=True),
        check_log1m(n, seed),
        check_ftrl(100, seed),
        check_theorem4_monotone(200, seed),
    ]
