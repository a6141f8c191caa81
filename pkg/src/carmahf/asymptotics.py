"""Small-Delta limit formulas.

The odd-coefficient series c_k(omega), the asymptotic filtered spectral
density and autocovariances, the closed-form limit MA models for
p - q in {1, 2, 3}, and the differenced-spectrum form.

The alternating triple sum behind the asymptotic autocovariance suffers
catastrophic cancellation in floating point (at lag p-1 it collapses to a
tiny beta-function value), so it is evaluated in exact rational arithmetic
and converted to float only at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import CarmaModel

#: Exclusion zone around omega = 0, where c_k(omega) has a pole.
OMEGA_TOL = 1e-8


class OmegaTooCloseToZero(ValueError):
    pass


def _check_omega(omega) -> np.ndarray:
    w = np.asarray(omega, dtype=float)
    if np.min(np.abs(1.0 - np.cos(w))) <= OMEGA_TOL:
        raise OmegaTooCloseToZero(
            "asymptotic spectral formulas have a pole at omega = 0; "
            "require |1 - cos omega| > 1e-8"
        )
    return w


def c_coefficients(omega: float, K: int) -> np.ndarray:
    """Coefficients c_0..c_K of sinh(x)/(cosh(x) - cos omega) = sum c_k x^(2k+1).

    Obtained by dividing the two Taylor series in powers of x^2.
    In particular c_0 = 1/(1 - cos omega).
    """
    _check_omega(omega)
    if K < 0:
        raise ValueError("K must be non-negative")
    num = np.array([1.0 / math.factorial(2 * k + 1) for k in range(K + 1)])
    den = np.array([1.0 / math.factorial(2 * k) for k in range(K + 1)])
    den[0] = 1.0 - math.cos(omega)
    c = np.empty(K + 1)
    for k in range(K + 1):
        c[k] = (num[k] - np.dot(den[1 : k + 1], c[k - 1 :: -1][:k])) / den[0]
    return c


def f_ma_asymptotic(model: CarmaModel, delta: float, omega) -> np.ndarray | float:
    """Leading-order filtered spectral density as Delta -> 0 (fixed omega != 0)."""
    w = _check_omega(omega)
    d = model.p - model.q
    c = np.array([c_coefficients(float(x), d - 1)[d - 1] for x in np.atleast_1d(w)])
    out = (
        model.sigma2
        / (2.0 * np.pi)
        * (-1.0) ** (d - 1)
        * delta ** (2 * d - 1)
        * c
        * 2.0 ** (model.p - 1)
        * (1.0 - np.cos(np.atleast_1d(w))) ** model.p
    )
    if w.ndim == 0:
        return float(out[0])
    return out


@lru_cache(maxsize=4096)
def _c_exact(h: int, k: int, i: int, n: int, N: int) -> Fraction:
    """C(h, k, i, n; N) via the closed double-binomial sum, exactly."""
    x = i - 1 - h
    y = i - 1 - k + n
    total = Fraction(0)
    for l1 in range(N + 1):
        xl = Fraction(1) if N - l1 == 0 else Fraction(x) ** (N - l1)
        for l2 in range(N + 1):
            yl = Fraction(1) if N - l2 == 0 else Fraction(y) ** (N - l2)
            total += (
                Fraction(math.comb(N, l1) * math.comb(N, l2), l1 + l2 + 1) * xl * yl
            )
    return total


@lru_cache(maxsize=1024)
def gamma_ma_asymptotic_coefficient(p: int, q: int, n: int) -> Fraction:
    """Exact rational coefficient of sigma^2 Delta^(2(p-q)-1) in gamma_MA(n).

    At n = p - 1 this equals (-1)^q / (2(p-q) - 1)! exactly.
    """
    if not 0 <= q < p:
        raise ValueError("require 0 <= q < p")
    if n < 0:
        raise ValueError("lag must be non-negative")
    N = p - q - 1
    total = Fraction(0)
    for i in range(1, p - n + 1):
        for k in range(0, n + i):
            for h in range(0, i):
                total += (
                    (-1) ** (h + k)
                    * math.comb(p, k)
                    * math.comb(p, h)
                    * _c_exact(h, k, i, n, N)
                )
    return total / Fraction(math.factorial(N)) ** 2


def gamma_ma_asymptotic(model: CarmaModel, delta: float, n: int) -> float:
    """Leading-order gamma_MA(n) as Delta -> 0."""
    coef = gamma_ma_asymptotic_coefficient(model.p, model.q, n)
    return float(coef) * model.sigma2 * delta ** (2 * (model.p - model.q) - 1)


@dataclass(frozen=True)
class AsymptoticMa:
    """Closed-form limit MA model for d = p - q in {1, 2, 3}.

    The limit moving average is (1 + theta_1 B + ...) (1 - B)^q with
    innovation variance tau2_scale * sigma^2 * Delta^(2d-1); ``theta`` is the
    non-(1-B)^q part.
    """

    d: int
    theta: tuple
    tau2_scale: float


def limit_ma_model(d: int) -> AsymptoticMa:
    """Tabulated limit MA coefficients and innovation-variance scale."""
    if d == 1:
        return AsymptoticMa(d=1, theta=(), tau2_scale=1.0)
    if d == 2:
        return AsymptoticMa(d=2, theta=(2.0 - math.sqrt(3.0),), tau2_scale=(2.0 + math.sqrt(3.0)) / 6.0)
    if d == 3:
        r30 = math.sqrt(30.0)
        t1 = 13.0 - math.sqrt(135.0 + 4.0 * r30)
        t2 = 2.0 * (8.0 + r30) - math.sqrt(375.0 + 64.0 * r30)
        scale = (2.0 * (8.0 + r30) + math.sqrt(375.0 + 64.0 * r30)) / 120.0
        return AsymptoticMa(d=3, theta=(t1, t2), tau2_scale=scale)
    raise ValueError(f"no closed-form limit MA model for p - q = {d}; supported d are 1, 2, 3")


def differenced_spectrum_asymptotic(model: CarmaModel, delta: float, omega) -> np.ndarray | float:
    """Leading-order spectral density of the (p-q)-times differenced samples.

    For a CAR(1) this is the constant sigma^2 Delta / (2 pi): the increments
    approximate those of Brownian motion.
    """
    w = _check_omega(omega)
    d = model.p - model.q
    c = np.array([c_coefficients(float(x), d - 1)[d - 1] for x in np.atleast_1d(w)])
    out = (
        model.sigma2
        / (2.0 * np.pi)
        * delta
        * (-2.0 * delta**2) ** (d - 1)
        * c
        * (1.0 - np.cos(np.atleast_1d(w))) ** d
    )
    if w.ndim == 0:
        return float(out[0])
    return out
