"""Smooth scalar building blocks: polynomial envelope, sigmoid, Gaussian weight.

The envelope decays from 1 at x = 0 to 0 at x = 1 with vanishing first and
second derivatives at 1, and is clamped to exactly 0 for x >= 1 so that the
function and both derivatives are total and C2 across the boundary.

All functions accept scalars or numpy arrays and return matching shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "EnvelopeParams",
    "WeightParams",
    "envelope",
    "envelope_d1",
    "envelope_d2",
    "sigmoid",
    "sigmoid_d1",
    "sigmoid_d2",
    "gauss_weight",
    "gauss_weight_d1",
    "gauss_weight_d2",
]

_SQRT_2PI = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class EnvelopeParams:
    """Envelope exponent; n >= 3 is required so the second derivative
    also vanishes at the boundary."""

    n: int = 50

    def __post_init__(self):
        if int(self.n) < 3:
            raise ValueError("envelope exponent n must be >= 3")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class WeightParams:
    """Gaussian weighting over ranks: mu is the target neighbor count,
    sigma the tolerance around it (both in dimensionless rank units)."""

    mu: float = 20.0
    sigma: float = 4.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("mu must be positive")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")


def _as_nonnegative(x):
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise DomainError("envelope argument must be >= 0")
    return x


def _scalar_like(out, x):
    return float(out) if np.ndim(x) == 0 else out


def envelope(x, params=EnvelopeParams()):
    """Polynomial envelope p(x) on [0, 1), exactly 0 for x >= 1.

    p(x) = 1 - (n+1)(n+2)/2 x^n + n(n+2) x^(n+1) - n(n+1)/2 x^(n+2)
    """
    x = _as_nonnegative(x)
    n = params.n
    xc = np.minimum(x, 1.0)
    val = (
        1.0
        - (n + 1) * (n + 2) / 2.0 * xc**n
        + n * (n + 2) * xc ** (n + 1)
        - n * (n + 1) / 2.0 * xc ** (n + 2)
    )
    out = np.where(x < 1.0, val, 0.0)
    return _scalar_like(out, x)


def envelope_d1(x, params=EnvelopeParams()):
    """First derivative of the envelope, in the factored form
    p'(x) = -K x^(n-1) (1-x)^2 with K = n(n+1)(n+2)/2."""
    x = _as_nonnegative(x)
    n = params.n
    k = n * (n + 1) * (n + 2) / 2.0
    xc = np.minimum(x, 1.0)
    val = -k * xc ** (n - 1) * (1.0 - xc) ** 2
    out = np.where(x < 1.0, val, 0.0)
    return _scalar_like(out, x)


def envelope_d2(x, params=EnvelopeParams()):
    """Second derivative of the envelope:
    p''(x) = -K x^(n-2) (1-x) ((n-1) - (n+1) x)."""
    x = _as_nonnegative(x)
    n = params.n
    k = n * (n + 1) * (n + 2) / 2.0
    xc = np.minimum(x, 1.0)
    val = -k * xc ** (n - 2) * (1.0 - xc) * ((n - 1) - (n + 1) * xc)
    out = np.where(x < 1.0, val, 0.0)
    return _scalar_like(out, x)


def sigmoid(x):
    """Logistic function 1/(1+e^-x), evaluated in overflow-safe branches."""
    x = np.asarray(x, dtype=np.float64)
    e = np.exp(-np.abs(x))
    out = np.where(x >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
    return _scalar_like(out, x)


def sigmoid_d1(x):
    """S'(x) = S(x)(1 - S(x))."""
    s = np.asarray(sigmoid(x))
    out = s * (1.0 - s)
    return _scalar_like(out, x)


def sigmoid_d2(x):
    """S''(x) = S(x)(1 - S(x))(1 - 2 S(x))."""
    s = np.asarray(sigmoid(x))
    out = s * (1.0 - s) * (1.0 - 2.0 * s)
    return _scalar_like(out, x)


def gauss_weight(x, params=WeightParams()):
    """Normal PDF with mean mu and standard deviation sigma.

    Far tails underflow gracefully to 0; the stabilizer in the cutoff
    average keeps downstream ratios well defined in that regime.
    """
    x = np.asarray(x, dtype=np.float64)
    t = (x - params.mu) / params.sigma
    out = np.exp(-0.5 * t * t) / (params.sigma * _SQRT_2PI)
    return _scalar_like(out, x)


def gauss_weight_d1(x, params=WeightParams()):
    """First derivative of the Gaussian weight in x."""
    x = np.asarray(x, dtype=np.float64)
    t = (x - params.mu) / params.sigma
    out = -t / params.sigma * np.exp(-0.5 * t * t) / (params.sigma * _SQRT_2PI)
    return _scalar_like(out, x)


def gauss_weight_d2(x, params=WeightParams()):
    """Second derivative of the Gaussian weight in x."""
    x = np.asarray(x, dtype=np.float64)
    t = (x - params.mu) / params.sigma
    out = (t * t - 1.0) / params.sigma**2 * np.exp(-0.5 * t * t) / (
        params.sigma * _SQRT_2PI
    )
    return _scalar_like(out, x)
