r"""The weakly dissipative Camassa-Holm flow in its nonlocal form.

The evolved equation is

    u_t = F(u) = -(u + Gamma) u_x - lambda u + Q(u),
    Q(u) = -(1 - d_xx)^{-1} d_x( -h(u) + u^2 + u_x^2 / 2 ),
    h(u) = (alpha + Gamma) u + (beta/3) u^3 + (gamma/4) u^4,

with lambda > 0 the dissipation rate.  The equivalent local form pulls the
Helmholtz operator across; the two differ in how the alpha term transforms,
which ``formulation_residual`` measures (it is zero only for alpha = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import (
    GevreyIndex,
    SpectralField,
    derivative,
    gevrey_norm,
    helmholtz,
    helmholtz_inv,
    product,
    sobolev_norm,
    to_physical,
)

__all__ = [
    "ModelParams",
    "StateFunctionals",
    "h_of_u",
    "nonlocal_source",
    "rhs",
    "functional_H",
    "small_data_check",
    "formulation_residual",
    "lipschitz_ratio",
]

# padding that keeps quartic powers alias-free on the stored band
_QUARTIC_PAD = 2.5


@dataclass(frozen=True)
class ModelParams:
    """Coefficients of the flow; lam is the dissipation rate lambda > 0."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    Gamma_coef: float = 0.0
    lam: float = 1.0
    epsilon: float = 0.1

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "Gamma_coef", "lam", "epsilon"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite real, got {v!r}")
        if not (self.lam > 0.0):
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not (self.epsilon > 0.0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


@dataclass(frozen=True)
class StateFunctionals:
    """Smallness functional at t=0 and at a later time, for monotonicity checks."""

    H0: float
    H_t: float
    s: float

    def __post_init__(self):
        if not (self.s > 1.5):
            raise ValueError(f"s must exceed 3/2, got {self.s}")
        if self.H0 < 0.0 or self.H_t < 0.0:
            raise ValueError("functional values must be nonnegative")


def h_of_u(u: SpectralField, p: ModelParams, dealias: bool = True) -> SpectralField:
    """(alpha + Gamma) u + (beta/3) u^3 + (gamma/4) u^4, de-aliased powers."""
    out = (p.alpha + p.Gamma_coef) * u
    if p.beta != 0.0 or p.gamma != 0.0:
        pad = _QUARTIC_PAD if dealias else 1.0
        u2 = product(u, u, pad)
        u3 = product(u2, u, pad)
        if p.beta != 0.0:
            out = out + (p.beta / 3.0) * u3
        if p.gamma != 0.0:
            out = out + (p.gamma / 4.0) * product(u3, u, pad)
    return out


def nonlocal_source(u: SpectralField, p: ModelParams, dealias: bool = True) -> SpectralField:
    """Q(u) = -(1-d_xx)^{-1} d_x(-h(u) + u^2 + u_x^2/2); exactly mean free."""
    pad = 1.5 if dealias else 1.0
    ux = derivative(u)
    inner = -1.0 * h_of_u(u, p, dealias) + product(u, u, pad) + 0.5 * product(ux, ux, pad)
    return -1.0 * helmholtz_inv(derivative(inner))


def rhs(u: SpectralField, p: ModelParams, dealias: bool = True) -> SpectralField:
    """F(u) = -(u+Gamma) u_x - lambda u + Q(u)."""
    pad = 1.5 if dealias else 1.0
    ux = derivative(u)
    advection = product(u, ux, pad) + p.Gamma_coef * ux
    return -1.0 * advection - p.lam * u + nonlocal_source(u, p, dealias)


def functional_H(u: SpectralField, p: ModelParams, s: float) -> float:
    """|alpha| + |Gamma| + n + (|beta|/3) n^2 + (|gamma|/4) n^3 with n = H^s norm."""
    if not (s > 1.5):
        raise ValueError(f"the smallness functional needs s > 3/2, got {s}")
    n = sobolev_norm(u, s)
    return (
        abs(p.alpha)
        + abs(p.Gamma_coef)
        + n
        + (abs(p.beta) / 3.0) * n**2
        + (abs(p.gamma) / 4.0) * n**3
    )


def small_data_check(u0: SpectralField, p: ModelParams, s: float) -> bool:
    """True iff the t=0 functional is within the dissipation budget lam*epsilon
    (boundary included)."""
    return functional_H(u0, p, s) <= p.lam * p.epsilon


def formulation_residual(u: SpectralField, p: ModelParams) -> float:
    """Max-norm mismatch between the evolved nonlocal form and the local form.

    Applies (1 - d_xx) to rhs(u) and subtracts the local-form right-hand side

        -3 u u_x + 2 u_x u_xx + u u_xxx + alpha u + beta u^2 u_x
        + gamma u^3 u_x + Gamma u_xxx - lambda (u - u_xx).

    The two agree identically for alpha = 0; for alpha != 0 they differ (the
    nonlocal form carries alpha*u_x where the local form has alpha*u).  This is
    a diagnostic: report it, never assert it to zero.
    """
    pad = _QUARTIC_PAD
    ux = derivative(u)
    uxx = derivative(ux)
    uxxx = derivative(uxx)
    lifted = helmholtz(rhs(u, p))
    local = (
        -3.0 * product(u, ux, pad)
        + 2.0 * product(ux, uxx, pad)
        + product(u, uxxx, pad)
        + p.alpha * u
        + p.Gamma_coef * uxxx
        - p.lam * (u - uxx)
    )
    if p.beta != 0.0 or p.gamma != 0.0:
        u2 = product(u, u, pad)
        if p.beta != 0.0:
            local = local + p.beta * product(u2, ux, pad)
        if p.gamma != 0.0:
            local = local + p.gamma * product(product(u2, u, pad), ux, pad)
    diff = lifted - local
    return float(np.max(np.abs(to_physical(diff, imag_tol=np.inf))))


def lipschitz_ratio(
    u: SpectralField,
    v: SpectralField,
    p: ModelParams,
    sigma: float,
    delta_wide: float,
    delta_narrow: float,
    s: float,
) -> float:
    """||F(u)-F(v)||_{G^{delta_narrow}} / ||u-v||_{G^{delta_wide}} for one pair.

    The narrower index must lose width (delta_narrow < delta_wide); the ratio
    is what the fixed-point argument bounds by L/(delta_wide-delta_narrow)^sigma.
    """
    if not (delta_narrow < delta_wide):
        raise ValueError("need delta_narrow < delta_wide")
    num = gevrey_norm(rhs(u, p) - rhs(v, p), GevreyIndex(sigma, delta_narrow, s))
    den = gevrey_norm(u - v, GevreyIndex(sigma, delta_wide, s))
    if den == 0.0:
        raise ValueError("u and v coincide; ratio undefined")
    return num / den
