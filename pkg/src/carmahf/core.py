"""Continuous-time CARMA layer.

Model validation, companion state-space matrices, the causal kernel g, the
continuous-time autocovariance and spectral density, and the stationary state
covariance.  Where the residue formulas require distinct autoregressive roots,
a state-space (matrix exponential / Lyapunov) route is used instead, and both
routes agree whenever both apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from . import poly
from .poly import Polynomial, RootSet

#: Roots closer than this are treated as numerically repeated and the
#: state-space route is used instead of residue sums.
ROOT_SEPARATION = 1e-4


class ModelError(ValueError):
    """A CARMA model violates one of the standing assumptions."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class CarmaModel:
    """CARMA(p, q) specification.

    ``a`` holds the autoregressive coefficients (a_1, ..., a_p) of
    a(z) = z^p + a_1 z^(p-1) + ... + a_p, ``b`` the moving-average
    coefficients (b_0, ..., b_q) with b_q = 1, and ``sigma2`` the variance of
    the driving Levy process per unit time.
    """

    a: tuple
    b: tuple
    sigma2: float
    label: str | None = None

    def __init__(self, a, b, sigma2=1.0, label=None):
        object.__setattr__(self, "a", tuple(float(x) for x in a))
        object.__setattr__(self, "b", tuple(float(x) for x in b))
        object.__setattr__(self, "sigma2", float(sigma2))
        object.__setattr__(self, "label", label)

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b) - 1

    def ar_polynomial(self) -> Polynomial:
        return Polynomial(list(self.a[::-1]) + [1.0])

    def ma_polynomial(self) -> Polynomial:
        return Polynomial(self.b)

    def companion(self) -> np.ndarray:
        """The p x p companion matrix whose eigenvalues are the AR roots."""
        p = self.p
        A = np.zeros((p, p))
        if p > 1:
            A[:-1, 1:] = np.eye(p - 1)
        A[-1, :] = [-c for c in self.a[::-1]]
        return A

    def b_vector(self) -> np.ndarray:
        """Moving-average coefficients zero-padded to length p."""
        v = np.zeros(self.p)
        v[: self.q + 1] = self.b
        return v


@lru_cache(maxsize=256)
def ar_roots(model: CarmaModel) -> RootSet:
    return poly.find_roots(model.ar_polynomial())


def _use_residues(model: CarmaModel) -> bool:
    rs = ar_roots(model)
    if not rs.all_simple:
        return False
    vals = rs.distinct()
    if len(vals) > 1:
        d = np.abs(vals[:, None] - vals[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() < ROOT_SEPARATION:
            return False
    return True


def validate(model: CarmaModel, require_coprime: bool = True) -> CarmaModel:
    """Check all standing assumptions; raise ModelError naming the violation.

    ``require_coprime=False`` skips the common-zero check: coprimality is an
    identifiability condition, and every second-order quantity here is well
    defined without it (a shared zero just makes the state space non-minimal).
    """
    if model.p < 1 or model.q >= model.p:
        raise ModelError("bad_orders", f"require 0 <= q < p, got p={model.p} q={model.q}")
    if model.sigma2 <= 0.0:
        raise ModelError("nonpositive_sigma2", f"sigma2 must be positive, got {model.sigma2}")
    if model.b[-1] != 1.0:
        raise ModelError("bad_normalization", f"leading MA coefficient must be 1, got {model.b[-1]}")
    if not poly.is_stable(ar_roots(model)):
        raise ModelError("unstable_ar", "autoregressive roots must lie strictly in the left half plane")
    if require_coprime and not poly.coprime(model.ar_polynomial(), model.ma_polynomial()):
        raise ModelError("common_zeros", "AR and MA polynomials share a zero")
    return model


def matrix_exp(M: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring Pade, via scipy)."""
    return scipy.linalg.expm(np.asarray(M, dtype=float))


@lru_cache(maxsize=256)
def _residue_weights(model: CarmaModel) -> np.ndarray:
    """Per-root weights b(lambda)/a'(lambda) of the kernel residue sum."""
    lam = ar_roots(model).distinct()
    a = model.ar_polynomial()
    da = a.derivative()
    b = model.ma_polynomial()
    return np.array([b.eval(z) / da.eval(z) for z in lam])


def kernel_values(model: CarmaModel, t) -> np.ndarray:
    """The causal kernel g evaluated on an array of times.

    g(t) = b^T e^(At) e_p for t > 0 and 0 for t < 0.  At t = 0 the right
    limit g(0+) is returned (relevant only when p - q = 1).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(t.shape)
    pos = t >= 0.0
    if _use_residues(model):
        lam = ar_roots(model).distinct()
        w = _residue_weights(model)
        out[pos] = np.real(np.exp(np.outer(t[pos], lam)) @ w)
    else:
        A = model.companion()
        b = model.b_vector()
        for i in np.nonzero(pos)[0]:
            out[i] = b @ matrix_exp(A * t[i])[:, -1]
    return out


def kernel(model: CarmaModel, t: float) -> float:
    """Scalar convenience wrapper around :func:`kernel_values`."""
    return float(kernel_values(model, [t])[0])


def kernel_derivative_at_zero(model: CarmaModel, k: int) -> float:
    """Right derivative g^(k)(0+) = b^T A^k e_p.

    Equals 0 for k < p-q-1 and 1 for k = p-q-1.
    """
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    A = model.companion()
    v = model.b_vector()
    for _ in range(k):
        v = A.T @ v
    return float(v[-1])


@lru_cache(maxsize=256)
def stationary_state_covariance(model: CarmaModel) -> np.ndarray:
    """Stationary covariance Sigma (per unit sigma2): A Sigma + Sigma A^T = -e_p e_p^T."""
    A = model.companion()
    rhs = np.zeros((model.p, model.p))
    rhs[-1, -1] = -1.0
    sigma = scipy.linalg.solve_continuous_lyapunov(A, rhs)
    return 0.5 * (sigma + sigma.T)


@lru_cache(maxsize=256)
def _acvf_residue_weights(model: CarmaModel) -> np.ndarray:
    """Weights of gamma_Y(h) = sigma2 * sum_i w_i exp(lambda_i |h|), simple roots."""
    lam = ar_roots(model).distinct()
    a = model.ar_polynomial()
    da = a.derivative()
    b = model.ma_polynomial()
    return np.array([b.eval(z) * b.eval(-z) / (da.eval(z) * a.eval(-z)) for z in lam])


def acvf_continuous(model: CarmaModel, h) -> np.ndarray | float:
    """Autocovariance gamma_Y(h) of the continuous-time process.

    Residue sum over the (distinct) AR roots; falls back to the
    state-space identity sigma2 * b^T e^(A|h|) Sigma b for repeated or
    nearly-repeated roots.
    """
    h_arr = np.atleast_1d(np.abs(np.asarray(h, dtype=float)))
    if _use_residues(model):
        lam = ar_roots(model).distinct()
        w = _acvf_residue_weights(model)
        out = model.sigma2 * np.real(np.exp(np.outer(h_arr, lam)) @ w)
    else:
        A = model.companion()
        b = model.b_vector()
        sb = stationary_state_covariance(model) @ b
        out = np.array([model.sigma2 * (b @ matrix_exp(A * hv) @ sb) for hv in h_arr])
    if np.isscalar(h) or np.asarray(h).ndim == 0:
        return float(out[0])
    return out


def spectral_density_continuous(model: CarmaModel, omega) -> np.ndarray | float:
    """f_Y(omega) = sigma2/(2 pi) * |b(i omega)|^2 / |a(i omega)|^2."""
    w = np.asarray(omega, dtype=float)
    iw = 1j * w
    num = np.abs(model.ma_polynomial().eval(iw)) ** 2
    den = np.abs(model.ar_polynomial().eval(iw)) ** 2
    out = model.sigma2 / (2.0 * np.pi) * num / den
    if w.ndim == 0:
        return float(out)
    return out
