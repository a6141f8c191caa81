"""The Delta-grid layer.

Sampled spectral density, annihilating-filter coefficients and power transfer
function, the filtered-sequence spectral density, and the exact filtered
autocovariances at lags 0..p-1 (extendable past p-1, where they vanish).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import core
from .core import CarmaModel

#: Nodes per length-Delta subinterval; the integrands are entire there.
_GL_ORDER = 32
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)

#: Tail threshold for the folded-sum route of the sampled spectral density.
_FOLD_TOL = 1e-12
_FOLD_CAP = 10**7


class CoarseSamplingWarning(UserWarning):
    """Delta * max|Re lambda| > 1: outside the small-Delta regime."""


class NumericalError(RuntimeError):
    """A certified numerical procedure could not meet its error target."""


@dataclass(frozen=True)
class CovSequence:
    """Finite autocovariance list gamma(0..n_max) on a Delta-grid.

    ``provenance`` is one of "exact", "asymptotic", "empirical"; empirical
    sequences carry per-lag standard errors.
    """

    delta: float
    values: tuple
    provenance: str
    stderr: tuple | None = None

    def __post_init__(self):
        if self.provenance not in ("exact", "asymptotic", "empirical"):
            raise ValueError(f"unknown provenance {self.provenance!r}")


def _check_grid(model: CarmaModel, delta: float) -> None:
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    max_re = max(abs(z.real) for z in core.ar_roots(model).distinct())
    if delta * max_re > 1.0:
        warnings.warn(
            f"delta={delta} is coarse for this model (delta * max|Re lambda| = "
            f"{delta * max_re:.3g} > 1); asymptotic comparisons are unreliable",
            CoarseSamplingWarning,
            stacklevel=3,
        )


@lru_cache(maxsize=512)
def _filter_coefficients_cached(model: CarmaModel, delta: float) -> tuple:
    lam = core.ar_roots(model).values()
    c = np.array([1.0 + 0.0j])
    for z in lam:
        f = np.exp(z * delta)
        nxt = np.zeros(len(c) + 1, dtype=complex)
        nxt[: len(c)] += c
        nxt[1:] -= f * c
        c = nxt
    scale = np.max(np.abs(c))
    if np.max(np.abs(c.imag)) > 1e-12 * scale:
        raise NumericalError("filter coefficients have non-negligible imaginary part")
    return tuple(c.real)


def filter_coefficients(model: CarmaModel, delta: float) -> np.ndarray:
    """Coefficients (A_0, ..., A_p) of the annihilating filter prod(1 - e^(lambda_j Delta) B).

    A_0 = 1; computed by multiplying the factors out one at a time, which is
    numerically stable and handles repeated roots transparently.
    """
    _check_grid(model, delta)
    return np.array(_filter_coefficients_cached(model, delta))


def power_transfer(model: CarmaModel, delta: float, omega) -> np.ndarray | float:
    """Power transfer function psi(omega) = |phi(e^(i omega))|^2 of the filter.

    Evaluated through the product form 2^p e^(-a_1 Delta) prod(cosh(lambda_i
    Delta) - cos omega), which is real and non-negative by conjugate pairing.
    """
    w = np.asarray(omega, dtype=float)
    lam = core.ar_roots(model).values()
    prod = np.ones(w.shape, dtype=complex)
    for z in lam:
        prod = prod * (np.cosh(z * delta) - np.cos(w))
    out = (2.0 ** model.p) * np.exp(-model.a[0] * delta) * np.real(prod)
    out = np.maximum(out, 0.0)
    if w.ndim == 0:
        return float(out)
    return out


def _fold_horizon(model: CarmaModel, delta: float) -> int:
    """Smallest H with a certified folded-sum tail below _FOLD_TOL."""
    max_re = max(z.real for z in core.ar_roots(model).distinct())  # negative
    g0 = core.acvf_continuous(model, 0.0)
    r = np.exp(delta * max_re)
    # gamma_Y(0) * r^H / (1 - r) < tol * gamma_Y(0)
    if r >= 1.0:
        raise NumericalError("non-contracting sampled autocovariance")
    h = int(np.ceil(np.log(_FOLD_TOL * (1.0 - r)) / np.log(r)))
    if h > _FOLD_CAP:
        raise NumericalError(
            f"folded-sum horizon {h} exceeds cap {_FOLD_CAP}; "
            "mixing is pathologically slow relative to delta"
        )
    return max(h, 1)


@lru_cache(maxsize=256)
def _sampled_acvf_grid(model: CarmaModel, delta: float) -> tuple:
    """gamma_Y(h Delta) for h = 0..H with certified tail, as a tuple."""
    h = _fold_horizon(model, delta)
    if core._use_residues(model):
        lam = core.ar_roots(model).distinct()
        w = core._acvf_residue_weights(model)
        hs = np.arange(h + 1)
        vals = model.sigma2 * np.real(np.exp(np.outer(hs * delta, lam)) @ w)
    else:
        A = model.companion()
        b = model.b_vector()
        f = core.matrix_exp(A * delta)
        v = core.stationary_state_covariance(model) @ b
        vals = np.empty(h + 1)
        for k in range(h + 1):
            vals[k] = model.sigma2 * (b @ v)
            v = f @ v
    return tuple(vals)


def _sampled_density_folded(model: CarmaModel, delta: float, w: np.ndarray) -> np.ndarray:
    gam = np.array(_sampled_acvf_grid(model, delta))
    hs = np.arange(1, len(gam))
    cos_terms = np.cos(np.outer(w, hs))
    return (gam[0] + 2.0 * cos_terms @ gam[1:]) / (2.0 * np.pi)


def _sampled_density_residue(model: CarmaModel, delta: float, w: np.ndarray) -> np.ndarray:
    lam = core.ar_roots(model).distinct()
    wts = core._acvf_residue_weights(model)
    out = np.zeros(w.shape, dtype=complex)
    for z, c in zip(lam, wts):
        out += c * np.sinh(delta * z) / (np.cosh(delta * z) - np.cos(w))
    return -model.sigma2 / (2.0 * np.pi) * np.real(out)


def spectral_density_sampled(model: CarmaModel, delta: float, omega, method: str = "auto"):
    """Spectral density f_Delta of the sampled sequence on [-pi, pi].

    ``method`` is "residue" (distinct AR roots only), "folded" (a truncated
    folded sum with a certified geometric tail bound, multiplicity-agnostic)
    or "auto".
    """
    _check_grid(model, delta)
    w = np.asarray(omega, dtype=float)
    w1 = np.atleast_1d(w)
    if method == "auto":
        method = "residue" if core._use_residues(model) else "folded"
    if method == "residue":
        if not core._use_residues(model):
            raise ValueError("residue route requires distinct AR roots")
        out = _sampled_density_residue(model, delta, w1)
    elif method == "folded":
        out = _sampled_density_folded(model, delta, w1)
    else:
        raise ValueError(f"unknown method {method!r}")
    if w.ndim == 0:
        return float(out[0])
    return out


def spectral_density_filtered(model: CarmaModel, delta: float, omega, method: str = "auto"):
    """Spectral density f_MA = psi * f_Delta of the filtered sequence."""
    psi = power_transfer(model, delta, omega)
    return psi * spectral_density_sampled(model, delta, omega, method=method)


def _filtered_kernel(model: CarmaModel, delta: float, t: np.ndarray) -> np.ndarray:
    """phi(B_Delta) g at times t: sum_k A_k g(t - k Delta)."""
    A = filter_coefficients(model, delta)
    out = np.zeros(t.shape)
    for k, a in enumerate(A):
        out += a * core.kernel_values(model, t - k * delta)
    return out


def annihilation_residual(model: CarmaModel, delta: float, t: float) -> float:
    """sum_k A_k g(t - k Delta) for t > p Delta; vanishes identically in theory."""
    if t <= model.p * delta:
        raise ValueError("annihilation holds only beyond p * delta")
    return float(_filtered_kernel(model, delta, np.array([t]))[0])


def acvf_filtered(model: CarmaModel, delta: float, n: int) -> float:
    """Exact autocovariance gamma_MA(n) of the filtered sampled sequence.

    Evaluates the triple-sum integral representation via fixed-order
    Gauss-Legendre quadrature on each subinterval ((i-1) Delta, i Delta),
    where both kernel arguments stay non-negative and the integrand is a
    product of entire functions.  Lags n >= p are supported and vanish up to
    quadrature/rounding noise, witnessing (p-1)-correlation.
    """
    if n < 0:
        raise ValueError("lag must be non-negative")
    _check_grid(model, delta)
    p = model.p
    n_sub = p - n if n <= p - 1 else p
    if n_sub <= 0:
        return 0.0
    total = 0.0
    half = 0.5 * delta
    for i in range(1, n_sub + 1):
        s = (i - 1) * delta + half * (_GL_NODES + 1.0)
        h1 = _filtered_kernel(model, delta, s)
        h2 = _filtered_kernel(model, delta, s + n * delta)
        total += half * np.dot(_GL_WEIGHTS, h1 * h2)
    return model.sigma2 * total


def acvf_filtered_sequence(model: CarmaModel, delta: float, n_max: int | None = None) -> CovSequence:
    """Exact CovSequence gamma_MA(0..n_max); n_max defaults to p-1."""
    if n_max is None:
        n_max = model.p - 1
    vals = tuple(acvf_filtered(model, delta, n) for n in range(n_max + 1))
    return CovSequence(delta=delta, values=vals, provenance="exact")
