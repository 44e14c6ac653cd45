r"""Time stepping for the dissipative flow: classical RK4 marching and the
integral-equation (Picard) iteration used for the contraction experiment.

Both paths are deterministic: identical inputs produce bit-identical states.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .model import ModelParams, rhs
from .spectral import NonFiniteError, SpectralField, sobolev_norm, to_physical

__all__ = [
    "SolverConfig",
    "Trajectory",
    "BlowUpError",
    "step_rk4",
    "integrate",
    "picard_iterate",
    "PicardResult",
]

BLOWUP_NORM = 1e6


class BlowUpError(RuntimeError):
    """The state left the resolvable regime; carries the failure time and the
    trajectory recorded up to that point."""

    def __init__(self, time: float, trajectory: "Trajectory | None" = None):
        self.time = time
        self.trajectory = trajectory
        super().__init__(f"solution blew up at t = {time:.6g}")


@dataclass(frozen=True)
class SolverConfig:
    """March parameters; s_monitor is the Sobolev order watched for blow-up."""

    dt: float
    t_end: float
    record_every: int = 1
    dealias: bool = True
    s_monitor: float = 2.0

    def __post_init__(self):
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (self.t_end >= 0.0 and math.isfinite(self.t_end)):
            raise ValueError(f"t_end must be nonnegative, got {self.t_end}")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")


@dataclass
class Trajectory:
    """Recorded times/states plus per-time diagnostic records (attached after
    the march by the analyticity tracker)."""

    times: np.ndarray
    states: list
    diagnostics: list = dataclass_field(default_factory=list)


def _symmetrize(u: SpectralField) -> SpectralField:
    """Average with the conjugate mirror; idempotent on real fields."""
    n = u.grid.n_points
    mirror = np.conj(u.coeffs[(-u.grid.modes) % n])
    return u.with_coeffs(0.5 * (u.coeffs + mirror))


def step_rk4(u: SpectralField, p: ModelParams, dt: float, dealias: bool = True) -> SpectralField:
    """One classical Runge-Kutta step of u_t = F(u); re-enforces Hermitian
    symmetry afterwards.  Raises BlowUpError (time=dt) on non-finite output."""
    try:
        k1 = rhs(u, p, dealias)
        k2 = rhs(u + (0.5 * dt) * k1, p, dealias)
        k3 = rhs(u + (0.5 * dt) * k2, p, dealias)
        k4 = rhs(u + dt * k3, p, dealias)
        out = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    except NonFiniteError:
        raise BlowUpError(dt) from None
    return _symmetrize(out)


def _advisory_dt_bound(u0: SpectralField, p: ModelParams) -> float:
    k_max = float(np.max(np.abs(u0.grid.wavenumbers)))
    u_max = float(np.max(np.abs(to_physical(u0, imag_tol=np.inf))))
    return 1.0 / (k_max * (u_max + abs(p.Gamma_coef)) + p.lam)


def integrate(u0: SpectralField, p: ModelParams, cfg: SolverConfig) -> Trajectory:
    """March u0 to cfg.t_end, recording every cfg.record_every steps (plus the
    initial and final states).

    Raises BlowUpError -- with the partial trajectory attached -- if the state
    goes non-finite or the monitored Sobolev norm exceeds 1e6.
    """
    bound = _advisory_dt_bound(u0, p)
    if cfg.dt > bound:
        warnings.warn(
            f"dt = {cfg.dt:.3g} exceeds the advisory stability bound {bound:.3g} "
            "(k_max*(|u|+|Gamma|)+lambda)",
            stacklevel=2,
        )
    n_steps = max(0, int(round(cfg.t_end / cfg.dt)))
    times = [0.0]
    states = [u0]
    u = u0
    for i in range(n_steps):
        t_next = (i + 1) * cfg.dt
        try:
            u = step_rk4(u, p, cfg.dt, cfg.dealias)
            norm = sobolev_norm(u, cfg.s_monitor)
        except (BlowUpError, OverflowError):
            raise BlowUpError(t_next, Trajectory(np.array(times), states)) from None
        if not math.isfinite(norm) or norm > BLOWUP_NORM:
            raise BlowUpError(t_next, Trajectory(np.array(times), states))
        if (i + 1) % cfg.record_every == 0 or i + 1 == n_steps:
            times.append(t_next)
            states.append(u)
    return Trajectory(np.array(times), states)


# --- integral-equation iteration ----------------------------------------------


@dataclass
class PicardResult:
    """Iterate families on a fixed node grid plus the contraction report.

    ``ratios[k]`` is d_{k+2}/d_{k+1} with d_j the weighted-norm distance
    between iterates j and j-1.  Ratios stop being reported once distances
    reach ``floor`` (rounding level); ``converged_at`` is the first such j.
    ``diverged_at`` is set instead of raising when an iterate overflows.
    """

    times: np.ndarray
    iterates: list
    diffs: list
    ratios: list
    floor: float
    converged_at: int | None = None
    diverged_at: int | None = None


def picard_iterate(
    u0: SpectralField,
    p: ModelParams,
    sigma: float,
    s: float,
    T: float,
    n_iters: int,
    n_nodes: int = 512,
    c_prime: float = 1.0,
    enforce_window: bool = True,
    dealias: bool = True,
) -> PicardResult:
    """Iterate u_{n+1}(t) = u0 + int_0^t F(u_n) dtau on [0, T].

    The zeroth iterate is the constant-in-time datum; integrals use composite
    trapezoid on ``n_nodes`` uniform nodes.  ``T`` must sit inside the
    fixed-point existence window computed from the datum (disable with
    ``enforce_window=False`` to study divergence).
    """
    from .analyticity import ea_norm, lifespan_bounds  # deferred: avoids an import cycle
    from .spectral import GevreyIndex, gevrey_norm

    if n_nodes < 2:
        raise ValueError("need at least 2 quadrature nodes")
    if not (T > 0.0):
        raise ValueError(f"horizon must be positive, got {T}")
    if enforce_window:
        norm0 = gevrey_norm(u0, GevreyIndex(sigma, 1.0, s))
        window = lifespan_bounds(norm0, sigma, c_prime).T0_closed_form / (2.0**sigma - 1.0)
        if T > window:
            raise ValueError(
                f"horizon {T:.3g} exceeds the existence window {window:.3g}; "
                "pass enforce_window=False to study divergence"
            )

    times = np.linspace(0.0, T, n_nodes)
    base = [u0] * n_nodes
    scale = ea_norm(times, base, T, sigma, s)
    floor = 1e3 * np.finfo(float).eps * max(scale, 1e-300)

    iterates = [base]
    diffs: list = []
    ratios: list = []
    converged_at = None
    diverged_at = None
    for it in range(1, n_iters + 1):
        prev = iterates[-1]
        try:
            f_stack = np.stack([rhs(v, p, dealias).coeffs for v in prev])
            integral = cumulative_trapezoid(f_stack, times, axis=0, initial=0.0)
            family = [u0.with_coeffs(u0.coeffs + integral[j]) for j in range(n_nodes)]
        except (NonFiniteError, FloatingPointError):
            diverged_at = it
            break
        if not all(np.all(np.isfinite(v.coeffs)) for v in family):
            diverged_at = it
            break
        iterates.append(family)
        d = ea_norm(times, [a - b for a, b in zip(family, prev)], T, sigma, s)
        diffs.append(d)
        if converged_at is None and d <= floor:
            converged_at = it
    for k in range(len(diffs) - 1):
        if diffs[k] <= floor:
            break
        ratios.append(diffs[k + 1] / diffs[k])
    return PicardResult(
        times=times,
        iterates=iterates,
        diffs=diffs,
        ratios=ratios,
        floor=floor,
        converged_at=converged_at,
        diverged_at=diverged_at,
    )
