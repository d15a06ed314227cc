"""Closed-form regret bounds and brute-force oracles for the supporting inequalities.

Closed forms and their grid oracles live side by side so the ``verify``
suite and the tests can check one against the other. The grid oracles
never call the closed forms.
"""

from dataclasses import dataclass

import numpy as np

from .vectorlab import norm as vnorm


def _max_log(arg, shift):
    """max[log(arg) - shift, 1], resolving to 1 when arg <= 0."""
    if arg <= 0:
        return 1.0
    return max(np.log(arg) - shift, 1.0)


# ---------------------------------------------------------------- conjugates


def fenchel_conjugate_exp(a, b, y):
    """Conjugate of f(x) = a exp(b x) at y >= 0: (y/b)(log(y/(ab)) - 1)."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if y < 0:
        raise ValueError("y must be nonnegative")
    if y == 0:
        return 0.0
    return (y / b) * (np.log(y / (a * b)) - 1.0)


def conjugate_exp_grid(a, b, y, lo=-50.0, hi=50.0, step=1e-4, chunk=1_000_000):
    """sup over a uniform x-grid of y x - a exp(b x)."""
    n = int(round((hi - lo) / step)) + 1
    best = -np.inf
    for start in range(0, n, chunk):
        x = lo + step * np.arange(start, min(n, start + chunk))
        best = max(best, float(np.max(y * x - a * np.exp(b * x))))
    return best


# ---------------------------------------------------------------- balancing


def balancelog_bound(A, B, C, D):
    """Upper bound on inf_{x in (0,1/2]} (A/x)(log(B/x) - C) + D x."""
    first = np.sqrt(A * D * _max_log(B * np.sqrt(D) / np.sqrt(A), C))
    second = 2 * A * _max_log(B * np.sqrt(4 * A * A + D) / np.sqrt(A), C)
    return 2.0 * max(first, second)


def balancelog_grid_inf(A, B, C, D, step=1e-4):
    x = step * np.arange(1, int(round(0.5 / step)) + 1)
    return float(np.min((A / x) * (np.log(B / x) - C) + D * x))


def log1m_gap(x):
    """log(1 - x) - (-x - x^2); nonnegative for x <= 1/2."""
    x = np.asarray(x, dtype=float)
    return np.log1p(-x) + x + x * x


# ---------------------------------------------------------------- bounds


@dataclass(frozen=True)
class BoundInputs:
    """Trajectory statistics feeding the regret bounds.

    G: per-coordinate sum_t g_{t,i}^2
    Z: sum_t (g_t . u)^2 and X: -sum_t g_t . u, with u = comparator / ||comparator||
    sum_dot_sq: sum_t (g_t . comparator)^2
    """

    epsilon: float
    eta: float
    comparator: np.ndarray
    G: np.ndarray
    Z: float
    X: float
    sum_dot_sq: float
    norm: str = "linf"

    def __post_init__(self):
        if self.epsilon <= 0 or self.eta <= 0:
            raise ValueError("epsilon and eta must be positive")
        if np.any(np.asarray(self.G) < 0) or self.Z < 0:
            raise ValueError("G and Z must be nonnegative")

    @property
    def comparator_norm(self):
        return float(vnorm(self.comparator, self.norm))


def bound_inputs(gradients, comparator, epsilon=1.0, eta=0.5, norm="linf"):
    g = np.atleast_2d(np.asarray(gradients, dtype=float))
    u = np.asarray(comparator, dtype=float)
    dots = g @ u
    unorm = float(vnorm(u, norm))
    if unorm > 0:
        X = float(-dots.sum() / unorm)
        Z = float(np.sum(dots * dots) / unorm**2)
    else:
        X = Z = 0.0
    return BoundInputs(
        epsilon=float(epsilon),
        eta=float(eta),
        comparator=u,
        G=np.sum(g * g, axis=0),
        Z=Z,
        X=X,
        sum_dot_sq=float(np.sum(dots * dots)),
        norm=norm,
    )


FULL_MATRIX = 1
DIAGONAL = 2


def theorem3_bound(inputs, G_T_value):
    """Regret bound of the recursive learner; returns (branch, bound).

    Branch 1 (X >= 2 G_T, boundary inclusive) gives the full-matrix bound,
    branch 2 gives epsilon + 2 ||u|| G_T.
    """
    eps = inputs.epsilon
    unorm = inputs.comparator_norm
    if unorm == 0:
        return DIAGONAL, eps
    if inputs.X >= 2.0 * G_T_value:
        energy = 4 * unorm**2 + inputs.sum_dot_sq
        inner = _max_log(2 * np.sqrt(energy) / eps, 1.0 - eps)
        return FULL_MATRIX, eps + 4.0 * np.sqrt(energy * inner)
    return DIAGONAL, eps + 2.0 * unorm * G_T_value


def theorem4_bound(inputs):
    """Per-coordinate regret bound of DiagOptimizer; epsilon is per coordinate.

    Requires ||comparator||_inf <= 1/2.
    """
    u = np.asarray(inputs.comparator, dtype=float)
    if np.max(np.abs(u)) > 0.5 + 1e-12:
        raise ValueError("comparator must satisfy ||u||_inf <= 1/2")
    eps, eta = inputs.epsilon, inputs.eta
    total = u.shape[-1] * eps
    for ui, Gi in zip(np.abs(u), np.asarray(inputs.G, dtype=float)):
        if ui == 0:
            continue
        energy = 5 / (4 * eta) + Gi * (1 + 2 / eta)
        growth = (1 + 4 * Gi) ** eta
        first = np.sqrt(energy * _max_log(ui * growth * np.sqrt(2 / eta + Gi * (1 + 2 / eta)) / eps, 1.0))
        second = 2 * _max_log(ui * growth * np.sqrt(4 + energy) / eps, 1.0)
        total += 2 * ui * max(first, second)
    return float(total)


def theorem4_G(direction, G, epsilon, eta=0.5):
    """The function G(u) with R_T(w) <= d eps + ||w||_inf G(w/||w||_inf).

    ``direction`` should have infinity norm 1; ``epsilon`` is per coordinate.
    """
    u = np.abs(np.asarray(direction, dtype=float))
    G = np.asarray(G, dtype=float)
    energy = 5 / (4 * eta) + G * (1 + 2 / eta)
    growth = (1 + 4 * G) ** eta
    first = np.sqrt(energy * np.maximum(np.log(growth * np.sqrt(energy) / (2 * epsilon)) - 1, 1))
    second = 2 * np.maximum(np.log(growth * np.sqrt(4 + energy) / (2 * epsilon)) - 1, 1)
    return float(2 * np.sum(u * np.maximum(first, second)))


def recursive_inner_G_T(direction, inner_grad_sq, inner_epsilon, eta=0.5, inner_gradient_scale=0.5):
    """G_T for RecursiveOptimizer with a DiagOptimizer inner learner.

    The inner learner sees ``scale * z_t``; its regret on z_t is 1/scale times
    its regret on what it sees, so G_T = G(u) / scale, where G uses the
    per-coordinate sums of squared inner gradients. The additive constant
    d * inner_epsilon / scale should equal the outer epsilon for the bound
    to apply verbatim.
    """
    return theorem4_G(direction, inner_grad_sq, inner_epsilon, eta) / inner_gradient_scale


def duality_check(wealth_T, f_params, comparator_norm, epsilon, empirical_regret):
    """Regret <= epsilon + f*(||u||) for f(x) = a exp(b x)."""
    a, b = f_params
    return bool(empirical_regret <= epsilon + fenchel_conjugate_exp(a, b, comparator_norm) + 1e-9)
