"""Diagonal-covariance Gaussian mixture fitted by EM."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp
from sklearn.base import BaseEstimator

from .core import ParameterError

logger = logging.getLogger(__name__)

VAR_FLOOR = 1e-8


@dataclass
class ClusteringOutcome:
    """Cluster labels plus the per-point densities used to rank outliers."""

    assignment: dict
    n_clusters: int
    log_likelihood: float
    iterations: int
    degenerate: bool = False
    # (n, n_clusters) log p(x_i, component k); rows follow assignment order
    log_density: np.ndarray | None = field(default=None, repr=False)

    @property
    def per_point_log_likelihood(self) -> float:
        return self.log_likelihood / max(len(self.assignment), 1)

    def sizes(self) -> list[int]:
        out = [0] * self.n_clusters
        for k in self.assignment.values():
            out[k] += 1
        return out


def farthest_point_init(X, k, rng) -> np.ndarray:
    """Indices of ``k`` seeds: a random first point, then farthest-first."""
    n = len(X)
    chosen = [int(rng.integers(n))]
    d = ((X - X[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        d_masked = d.copy()
        d_masked[chosen] = -1.0
        nxt = int(np.argmax(d_masked))
        chosen.append(nxt)
        d = np.minimum(d, ((X - X[nxt]) ** 2).sum(axis=1))
    return np.array(chosen)


def _log_joint(X, weights, means, variances):
    # log w_k + log N(x | mu_k, diag var_k), shape (n, k)
    log_det = np.log(variances).sum(axis=1)
    sq = ((X[:, None, :] - means[None, :, :]) ** 2 / variances[None, :, :]).sum(axis=2)
    d = X.shape[1]
    with np.errstate(divide="ignore"):
        log_w = np.log(weights)
    return log_w[None, :] - 0.5 * (d * np.log(2 * np.pi) + log_det[None, :] + sq)


class DiagonalGaussianEM(BaseEstimator):
    """Gaussian mixture with diagonal covariances.

    Initialisation places the means on farthest-first points, starting from a
    point drawn with ``random_state``. Iteration stops when the total
    log-likelihood improves by less than ``tol`` or after ``max_iter`` rounds.
    """

    def __init__(self, n_components=2, tol=1e-6, max_iter=100, var_floor=VAR_FLOOR,
                 random_state=0):
        self.n_components = n_components
        self.tol = tol
        self.max_iter = max_iter
        self.var_floor = var_floor
        self.random_state = random_state

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise ParameterError("features must be a 2-D array")
        n, d = X.shape
        k = self.n_components
        if n < k:
            raise ParameterError(f"{n} points cannot fill {k} components")
        rng = np.random.default_rng(self.random_state)
        spread = X.var(axis=0)
        self.degenerate_ = bool(np.all(spread <= self.var_floor))
        if self.degenerate_:
            logger.warning("all feature dimensions are constant; using round-robin labels")
            self.weights_ = np.full(k, 1.0 / k)
            self.means_ = np.repeat(X[:1], k, axis=0)
            self.variances_ = np.full((k, d), self.var_floor)
            self.labels_ = np.arange(n) % k
            self.n_iter_ = 0
            self.log_likelihood_ = float(logsumexp(_log_joint(X, self.weights_, self.means_,
                                                              self.variances_), axis=1).sum())
            return self

        means = X[farthest_point_init(X, k, rng)].copy()
        variances = np.tile(np.maximum(spread, self.var_floor), (k, 1))
        weights = np.full(k, 1.0 / k)
        prev = -np.inf
        it = 0
        for it in range(1, self.max_iter + 1):
            log_joint = _log_joint(X, weights, means, variances)
            log_norm = logsumexp(log_joint, axis=1)
            ll = float(log_norm.sum())
            resp = np.exp(log_joint - log_norm[:, None])
            nk = resp.sum(axis=0)
            alive = nk > 1e-12
            weights = nk / n
            new_means = means.copy()
            new_means[alive] = (resp[:, alive].T @ X) / nk[alive, None]
            diff2 = (X[:, None, :] - new_means[None, :, :]) ** 2
            new_vars = variances.copy()
            new_vars[alive] = np.einsum("nk,nkd->kd", resp[:, alive], diff2[:, alive]) / nk[alive, None]
            means, variances = new_means, np.maximum(new_vars, self.var_floor)
            if ll - prev < self.tol:
                break
            prev = ll
        self.weights_, self.means_, self.variances_ = weights, means, variances
        self.n_iter_ = it
        log_joint = _log_joint(X, weights, means, variances)
        self.log_likelihood_ = float(logsumexp(log_joint, axis=1).sum())
        self.labels_ = np.argmax(log_joint, axis=1)
        return self

    def _check_fitted(self):
        if not hasattr(self, "means_"):
            raise ParameterError("estimator is not fitted")

    def log_joint(self, X):
        self._check_fitted()
        return _log_joint(np.asarray(X, dtype=float), self.weights_, self.means_, self.variances_)

    def predict(self, X):
        return np.argmax(self.log_joint(X), axis=1)

    def score_samples(self, X):
        return logsumexp(self.log_joint(X), axis=1)

    def score(self, X, y=None):
        """Mean per-point log-likelihood."""
        return float(self.score_samples(X).mean())


def em_cluster(features, M: int, seed=0, ids=None, **kwargs) -> ClusteringOutcome:
    """Cluster feature rows into ``M`` groups by maximum responsibility."""
    X = np.asarray(features, dtype=float)
    if ids is None:
        ids = [str(i) for i in range(len(X))]
    gm = DiagonalGaussianEM(n_components=M, random_state=seed, **kwargs).fit(X)
    if gm.degenerate_:
        log_density = np.zeros((len(X), M))
    else:
        log_density = gm.log_joint(X)
    return ClusteringOutcome(
        assignment={sid: int(k) for sid, k in zip(ids, gm.labels_)},
        n_clusters=M,
        log_likelihood=gm.log_likelihood_,
        iterations=gm.n_iter_,
        degenerate=gm.degenerate_,
        log_density=log_density,
    )
