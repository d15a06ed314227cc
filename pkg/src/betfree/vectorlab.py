"""Vector norms, seeded randomness and Gaussians with a prescribed spectrum."""

from dataclasses import dataclass

import numpy as np

RNG_ALGORITHM = "numpy.PCG64"

NORMS = ("l1", "l2", "linf")


def norm(v, which="l2"):
    """Norm along the last axis; works on single vectors and on batches."""
    v = np.asarray(v, dtype=float)
    which = which.lower()
    if which == "l1":
        return np.sum(np.abs(v), axis=-1)
    if which == "l2":
        if v.shape[-1] == 0:
            return np.zeros(v.shape[:-1])
        # scale by the max entry so tiny or huge vectors don't under/overflow when squared
        m = np.max(np.abs(v), axis=-1, keepdims=True)
        safe = np.where(m > 0, m, 1.0)
        return m[..., 0] * np.sqrt(np.sum((v / safe) ** 2, axis=-1))
    if which == "linf":
        if v.shape[-1] == 0:
            return np.zeros(v.shape[:-1])
        return np.max(np.abs(v), axis=-1)
    raise ValueError(f"unknown norm {which!r}, expected one of {NORMS}")


def dual_norm_name(which):
    return {"l1": "linf", "l2": "l2", "linf": "l1"}[which.lower()]


def seeded_rng(seed, stream=0):
    """Independent PCG64 stream derived from (seed, stream).

    Streams with different ``stream`` ids never overlap, which is how the
    harness keeps the training draws and the holdout set apart.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.PCG64(ss))


def check_finite(g, what="gradient"):
    g = np.asarray(g, dtype=float)
    if not np.all(np.isfinite(g)):
        raise ValueError(f"{what} has non-finite entries")
    return g


@dataclass(frozen=True)
class CovarianceFactor:
    """Sigma = basis @ diag(eigenvalues) @ basis.T with orthonormal basis."""

    basis: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.basis, dtype=float)
        lam = np.asarray(self.eigenvalues, dtype=float)
        d = lam.shape[0]
        if q.shape != (d, d):
            raise ValueError(f"basis shape {q.shape} does not match {d} eigenvalues")
        if np.max(np.abs(q.T @ q - np.eye(d))) > 1e-10:
            raise ValueError("basis columns are not orthonormal")
        if np.any(lam < 0) or np.any(np.diff(lam) > 0):
            raise ValueError("eigenvalues must be nonnegative and sorted descending")
        object.__setattr__(self, "basis", q)
        object.__setattr__(self, "eigenvalues", lam)

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    @property
    def matrix(self):
        return (self.basis * self.eigenvalues) @ self.basis.T

    @property
    def sqrt_factor(self):
        # x = sqrt_factor @ z has covariance Sigma
        return self.basis * np.sqrt(self.eigenvalues)

    @property
    def condition_number(self):
        return self.eigenvalues[0] / self.eigenvalues[-1]


def random_orthogonal(dim, rng):
    """Q factor of a Gaussian matrix, signs fixed so that diag(R) > 0."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def make_covariance(dim, condition_number, rng):
    """Random rotation with eigenvalues decaying geometrically from 1 to 1/cond."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    if not condition_number >= 1:
        raise ValueError("condition_number must be >= 1")
    ratio = condition_number ** (-1.0 / (dim - 1))
    eigenvalues = ratio ** np.arange(dim, dtype=float)
    eigenvalues[-1] = 1.0 / condition_number
    return CovarianceFactor(random_orthogonal(dim, rng), eigenvalues)


def sample_gaussian(cov, rng, size=None):
    """Draw from N(0, Sigma); ``size`` adds leading batch dimensions."""
    shape = (cov.dim,) if size is None else tuple(np.atleast_1d(size)) + (cov.dim,)
    z = rng.standard_normal(shape)
    return z @ cov.sqrt_factor.T
