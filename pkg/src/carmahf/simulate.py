"""Seeded simulation of CARMA sample paths on a Delta-grid.

Exact Gaussian transitions for the Brownian driver, fine-grid Euler for
Brownian or compound-Poisson drivers, and the empirical second-order
estimators used as Monte Carlo oracles.

RNG contract: numpy's PCG64 via ``default_rng``.  Each path gets its own
SeedSequence substream (``spawn_seeds``), and identical (model, delta, n,
seed, scheme) reproduce bit-identical arrays within one artifact version.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.signal

from . import core, sampling
from .core import CarmaModel
from .sampling import CovSequence

_CHUNK = 1_000_000
#: Jitter added to near-singular transition noise covariances, relative to trace.
_CHOL_JITTER = 1e-14


@dataclass(frozen=True)
class DriverSpec:
    """Second-order driving Levy process specification.

    ``kind`` is "brownian" or "compound_poisson".  Compound-Poisson jumps are
    either zero-mean normal or symmetric two-point; jump sizes are normalized
    so that Var(L_1) equals the model's sigma2.
    """

    kind: str = "brownian"
    jump_rate: float = 1.0
    jump_dist: str = "normal"  # "normal" or "two_point"

    def __post_init__(self):
        if self.kind not in ("brownian", "compound_poisson"):
            raise ValueError(f"unknown driver kind {self.kind!r}")
        if self.kind == "compound_poisson":
            if self.jump_rate <= 0.0:
                raise ValueError("jump_rate must be positive")
            if self.jump_dist not in ("normal", "two_point"):
                raise ValueError(f"unknown jump distribution {self.jump_dist!r}")


@dataclass(frozen=True)
class SimulationResult:
    delta: float
    y: np.ndarray
    seed: int
    scheme: str  # "exact_gaussian" or "euler"
    substeps: int = 1


def spawn_seeds(seed: int, k: int) -> list:
    """k independent child seeds for parallel paths."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(k)]


def transition_noise_covariance(model: CarmaModel, delta: float) -> np.ndarray:
    """Q_Delta = int_0^Delta e^(Au) e_p e_p^T e^(A^T u) du (per unit sigma2).

    Computed via the augmented 2p x 2p block matrix exponential, so it is
    exact to matrix-exponential accuracy.
    """
    p = model.p
    A = model.companion()
    M = np.zeros((2 * p, 2 * p))
    M[:p, :p] = A
    M[p:, p:] = -A.T
    M[p - 1, 2 * p - 1] = 1.0  # e_p e_p^T block
    E = core.matrix_exp(M * delta)
    F = E[:p, :p]  # e^(A Delta)
    G = E[:p, p:]
    Q = G @ F.T
    return 0.5 * (Q + Q.T)


def _safe_cholesky(S: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(S)
    except np.linalg.LinAlgError:
        jitter = _CHOL_JITTER * np.trace(S) * np.eye(len(S))
        return np.linalg.cholesky(S + jitter)


def _eigen_state(model: CarmaModel):
    """Eigendecomposition of the companion matrix, or None if ill-conditioned."""
    A = model.companion()
    lam, V = np.linalg.eig(A)
    if len(lam) > 1:
        d = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() < 1e-8:
            return None
    if np.linalg.cond(V) > 1e8:
        return None
    return lam, V


def _propagate(b_out: np.ndarray, F: np.ndarray, eps: np.ndarray, x0: np.ndarray, eig) -> np.ndarray:
    """y[k] = b_out . x[k] for x[k] = F x[k-1] + eps[k], x[0] = x0.

    Uses p decoupled scalar recursions through the eigenbasis of the
    companion matrix when available, else a direct loop.
    """
    n = len(eps) + 1
    if eig is not None:
        lam, V = eig
        fdiag = np.diag(np.linalg.solve(V, F @ V))
        w = np.linalg.solve(V, eps.T)  # (p, n-1)
        z0 = np.linalg.solve(V, x0)
        bv = b_out @ V
        y = np.zeros(n)
        y[0] = np.real(np.dot(bv, z0))
        for j in range(len(lam)):
            zj = scipy.signal.lfilter([1.0], [1.0, -fdiag[j]], w[j], zi=np.array([fdiag[j] * z0[j]]))[0]
            y[1:] += np.real(bv[j] * zj)
        return y
    x = x0.astype(float).copy()
    y = np.empty(n)
    y[0] = b_out @ x
    for k in range(1, n):
        x = F @ x + eps[k - 1]
        y[k] = b_out @ x
    return y


def simulate_gaussian_exact(model: CarmaModel, delta: float, n: int, seed: int) -> SimulationResult:
    """Exact discretization of the state equation under a Brownian driver.

    The initial state is drawn from the stationary law; transitions use
    e^(A Delta) and Gaussian noise with covariance sigma2 * Q_Delta.  With
    sigma2 = 0 the path is identically zero (degenerate run mode).
    """
    if model.sigma2 == 0.0:
        return SimulationResult(delta=delta, y=np.zeros(n), seed=seed, scheme="exact_gaussian")
    core.validate(model, require_coprime=False)
    rng = np.random.default_rng(seed)
    p = model.p
    F = core.matrix_exp(model.companion() * delta)
    Q = model.sigma2 * transition_noise_covariance(model, delta)
    Lq = _safe_cholesky(Q)
    Ls = _safe_cholesky(model.sigma2 * core.stationary_state_covariance(model))
    x0 = Ls @ rng.standard_normal(p)
    eps = rng.standard_normal((n - 1, p)) @ Lq.T
    y = _propagate(model.b_vector(), F, eps, x0, _eigen_state(model))
    return SimulationResult(delta=delta, y=y, seed=seed, scheme="exact_gaussian")


def _driver_increments(rng, driver: DriverSpec, sigma2: float, dt: float, k: int) -> np.ndarray:
    if driver.kind == "brownian":
        return np.sqrt(sigma2 * dt) * rng.standard_normal(k)
    rate = driver.jump_rate
    counts = rng.poisson(rate * dt, size=k)
    if driver.jump_dist == "normal":
        # Var(jump) = sigma2 / rate, so Var(L_1) = rate * Var(jump) = sigma2.
        return np.sqrt(sigma2 / rate * counts) * rng.standard_normal(k)
    j = np.sqrt(sigma2 / rate)
    return j * (2.0 * rng.binomial(counts, 0.5) - counts)


def simulate_euler(
    model: CarmaModel,
    delta: float,
    n: int,
    substeps: int,
    driver: DriverSpec,
    seed: int,
) -> SimulationResult:
    """Euler-Maruyama on the state equation at step Delta/substeps.

    A burn-in of ceil(20 / (Delta * min|Re lambda|)) recorded steps is
    simulated and discarded before recording starts, so the output is
    approximately stationary from a zero initial state.
    """
    if substeps < 1:
        raise ValueError("substeps must be >= 1")
    core.validate(model, require_coprime=False)
    rng = np.random.default_rng(seed)
    p = model.p
    dt = delta / substeps
    A = model.companion()
    F = np.eye(p) + A * dt
    b_out = model.b_vector()
    min_re = min(abs(z.real) for z in core.ar_roots(model).distinct())
    burn = int(np.ceil(20.0 / (delta * min_re)))
    total = (burn + n) * substeps
    eig = _eigen_state(model)

    y_sub = np.empty(0)
    if eig is not None:
        lam, V = eig
        fdiag = 1.0 + lam * dt
        u = np.linalg.solve(V, np.eye(p)[:, -1])  # V^-1 e_p
        bv = b_out @ V
        zi = np.zeros((p, 1), dtype=complex)
        chunks = []
        done = 0
        while done < total:
            k = min(_CHUNK, total - done)
            dl = _driver_increments(rng, driver, model.sigma2, dt, k)
            yk = np.zeros(k)
            for j in range(p):
                zj, zi_j = scipy.signal.lfilter([1.0], [1.0, -fdiag[j]], u[j] * dl, zi=zi[j])
                zi[j] = zi_j
                yk += np.real(bv[j] * zj)
            chunks.append(yk)
            done += k
        y_sub = np.concatenate(chunks)
    else:
        x = np.zeros(p)
        y_sub = np.empty(total)
        done = 0
        while done < total:
            k = min(_CHUNK, total - done)
            dl = _driver_increments(rng, driver, model.sigma2, dt, k)
            for i in range(k):
                x = F @ x
                x[-1] += dl[i]
                y_sub[done + i] = b_out @ x
            done += k
    y = y_sub[substeps - 1 :: substeps][burn : burn + n]
    return SimulationResult(delta=delta, y=y.copy(), seed=seed, scheme="euler", substeps=substeps)


def empirical_filtered_acvf(result: SimulationResult, model: CarmaModel, lags: int) -> CovSequence:
    """Sample autocovariances (biased) of the filtered simulated series.

    Applies the annihilating filter from :func:`sampling.filter_coefficients`
    and attaches Bartlett-formula standard errors appropriate for an MA(p-1)
    sequence.
    """
    y = np.asarray(result.y, dtype=float)
    p = model.p
    if len(y) < 100 * max(p, 1):
        raise ValueError(f"series too short: need at least {100 * max(p, 1)} points")
    if p > 0:
        a = sampling.filter_coefficients(model, result.delta)
        u = np.convolve(y, a, mode="valid")
    else:
        u = y
    u = u - u.mean()
    n = len(u)
    vals = np.array([np.dot(u[: n - h], u[h:]) / n for h in range(lags + 1)])

    # Bartlett: Var(gamma_hat(h)) ~ (1/n) sum_j [gamma(j)^2 + gamma(j+h) gamma(j-h)],
    # truncated at the MA order p-1 where the true sequence vanishes.
    m = p - 1 if p > 0 else 0
    gam = np.array([np.dot(u[: n - h], u[h:]) / n for h in range(m + 1)])

    def g(j):
        return gam[abs(j)] if abs(j) <= m else 0.0

    se = np.empty(lags + 1)
    for h in range(lags + 1):
        s = sum(g(j) ** 2 + g(j + h) * g(j - h) for j in range(-m - lags, m + lags + 1))
        se[h] = np.sqrt(max(s, 0.0) / n)
    return CovSequence(
        delta=result.delta, values=tuple(vals), provenance="empirical", stderr=tuple(se)
    )
