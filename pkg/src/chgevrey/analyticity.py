r"""Radius-of-analyticity measurement and the quantitative existence bounds.

Three ingredients live here:

* ``estimate_radius`` reads the exponential decay rate of Fourier
  coefficients off a least-squares fit of log|c_m| against |k_m|^(1/sigma).
* ``lifespan_bounds`` / ``delta_of_tau`` / ``ea_norm`` render the fixed-point
  existence window, the shrinking-width schedule, and the weighted sup norm
  over (time, width) pairs at desk scale.
* ``radius_ode_advance`` marches the lower-bound ODE for the width
  (f^2' = 2*C*b^5, delta' = -8*C*delta*f^3) and ``track_radius`` attaches the
  measured-vs-theory diagnostics to a trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import logsumexp

from .integrate import BlowUpError, SolverConfig, Trajectory, integrate
from .model import ModelParams, functional_H
from .spectral import (
    GevreyIndex,
    NormOverflowError,
    SpectralField,
    gevrey_norm,
    sobolev_norm,
)

__all__ = [
    "RadiusEstimate",
    "LifespanBounds",
    "RadiusODEState",
    "RadiusRecord",
    "ContinuityReport",
    "InsufficientDecayError",
    "WindowError",
    "CalibrationError",
    "ExperimentError",
    "estimate_radius",
    "lifespan_bounds",
    "delta_of_tau",
    "delta_of_tau_window",
    "delta_of_tau_in_range",
    "ea_norm",
    "radius_ode_init",
    "radius_ode_advance",
    "track_radius",
    "calibrate_radius_constant",
    "continuity_experiment",
]

EA_DELTA_GRID = np.linspace(0.05, 0.95, 19)
DELTA_CLAMP = 1e-300


class InsufficientDecayError(ValueError):
    """Too few coefficients above the noise floor to fit a decay rate."""


class WindowError(ValueError):
    """A time/width argument fell outside its admissible window."""


class CalibrationError(RuntimeError):
    """No tested multiplier makes the measured-vs-theory invariant hold."""


class ExperimentError(RuntimeError):
    """A sub-run of a multi-trajectory experiment failed."""


# --- measured radius ----------------------------------------------------------


@dataclass(frozen=True)
class RadiusEstimate:
    """Fitted decay rate: log|c_m| ~ intercept - delta_fit * |k_m|^(1/sigma)."""

    delta_fit: float
    intercept: float
    residual: float
    modes_used: tuple

    @property
    def n_modes(self) -> int:
        return self.modes_used[1] - self.modes_used[0] + 1


def estimate_radius(
    field: SpectralField,
    sigma: float = 1.0,
    noise_floor: float = 1e-14,
    min_modes: int = 8,
) -> RadiusEstimate:
    """Least-squares decay fit over positive modes m >= 2.

    Modes 0 and 1 are excluded (they pollute the intercept); the scan walks
    upward and stops at the first coefficient below ``noise_floor`` relative
    to the largest one.  Fewer than ``min_modes`` usable modes raises
    InsufficientDecayError.
    """
    if not (sigma >= 1.0):
        raise ValueError(f"sigma must be >= 1, got {sigma}")
    grid = field.grid
    mags = np.abs(field.coeffs)
    floor = noise_floor * float(np.max(mags))
    if floor == 0.0:
        raise InsufficientDecayError("field is identically zero")
    ms, xs, ys = [], [], []
    for m in range(2, grid.n_points // 2 + 1):
        c = mags[grid.index_of(m)]
        if c < floor:
            break
        ms.append(m)
        k = abs(2.0 * math.pi * m / grid.period)
        xs.append(k ** (1.0 / sigma))
        ys.append(math.log(c))
    if len(ms) < min_modes:
        raise InsufficientDecayError(
            f"only {len(ms)} modes above the noise floor; need {min_modes}"
        )
    line = np.polynomial.polynomial.Polynomial.fit(xs, ys, 1)
    intercept, slope = line.convert().coef
    fitted = intercept + slope * np.asarray(xs)
    residual = float(np.sqrt(np.mean((fitted - np.asarray(ys)) ** 2)))
    return RadiusEstimate(
        delta_fit=-float(slope),
        intercept=float(intercept),
        residual=residual,
        modes_used=(ms[0], ms[-1]),
    )


# --- existence window ---------------------------------------------------------


@dataclass(frozen=True)
class LifespanBounds:
    """Constants of the fixed-point existence argument for one datum."""

    L: float
    M: float
    R: float
    D_sigma: float
    T0_min_formula: float
    T0_closed_form: float
    C_prime: float


def lifespan_bounds(u0_norm: float, sigma: float, c_prime: float = 1.0) -> LifespanBounds:
    """Existence-window constants from the width-1 Gevrey norm of the datum.

    R = 1 + ||u0||;  base = C'(e^-sigma sigma^sigma + 2);
    L = 2^4 base R^4;  M = (base/2)||u0|| R^4;
    D_sigma = 1/(2^sigma - 2 + 2^-(sigma+1));
    T0 = min(1/(2^(2sigma+4) L), (2^sigma-1)R / ((2^sigma-1) 2^(2sigma+3) L R + M D_sigma))
    and the closed form 1/(2^(2sigma+8) base R^4), which the min never beats.
    """
    if not (u0_norm >= 0.0):
        raise ValueError(f"norm must be nonnegative, got {u0_norm}")
    if not (sigma >= 1.0):
        raise ValueError(f"sigma must be >= 1, got {sigma}")
    if not (c_prime > 0.0):
        raise ValueError(f"c_prime must be positive, got {c_prime}")
    base = c_prime * (math.exp(-sigma) * sigma**sigma + 2.0)
    R = 1.0 + u0_norm
    L = 2.0**4 * base * R**4
    M = 0.5 * base * u0_norm * R**4
    D_sigma = 1.0 / (2.0**sigma - 2.0 + 2.0 ** -(sigma + 1.0))
    two_sig = 2.0**sigma - 1.0
    t0_min = min(
        1.0 / (2.0 ** (2 * sigma + 4) * L),
        two_sig * R / (two_sig * 2.0 ** (2 * sigma + 3) * L * R + M * D_sigma),
    )
    t0_closed = 1.0 / (2.0 ** (2 * sigma + 8) * base * R**4)
    assert t0_closed <= t0_min * (1.0 + 1e-9), "closed form must not beat the min"
    return LifespanBounds(
        L=L,
        M=M,
        R=R,
        D_sigma=D_sigma,
        T0_min_formula=t0_min,
        T0_closed_form=t0_closed,
        C_prime=c_prime,
    )


# --- shrinking-width schedule -------------------------------------------------


def _check_delta_sigma_a(delta: float, sigma: float, a: float) -> None:
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not (sigma >= 1.0):
        raise ValueError(f"sigma must be >= 1, got {sigma}")
    if not (a > 0.0):
        raise ValueError(f"a must be positive, got {a}")


def delta_of_tau_window(delta: float, sigma: float, a: float) -> float:
    """Largest tau for which the schedule's inner root stays real: a(1-delta)^sigma."""
    _check_delta_sigma_a(delta, sigma, a)
    return a * (1.0 - delta) ** sigma


def delta_of_tau(tau: float, delta: float, sigma: float, a: float) -> float:
    """Width schedule delta(tau) interpolating from (1+delta)/2 down to delta.

    delta(tau) = (1+delta)/2 + (1/2)^(2+1/sigma) *
                 ( [(1-delta)^sigma - tau/a]^(1/sigma)
                   - [(1-delta)^sigma + (2^(sigma+1)-1) tau/a]^(1/sigma) ).

    For sigma = 1 this is (1+delta)/2 - tau/(2a).  Raises WindowError outside
    the real-root window tau in [0, a(1-delta)^sigma].
    """
    _check_delta_sigma_a(delta, sigma, a)
    if tau < 0.0:
        raise WindowError(f"tau must be nonnegative, got {tau}")
    pow_gap = (1.0 - delta) ** sigma
    root_arg = pow_gap - tau / a
    if root_arg < -1e-12 * pow_gap:
        raise WindowError(
            f"tau = {tau:.6g} beyond the real-root window {a * pow_gap:.6g}"
        )
    root_arg = max(root_arg, 0.0)  # absorb one-ulp overshoot at the endpoint
    inv_sigma = 1.0 / sigma
    bracket = root_arg**inv_sigma - (pow_gap + (2.0 ** (sigma + 1.0) - 1.0) * tau / a) ** inv_sigma
    return 0.5 * (1.0 + delta) + 0.5 ** (2.0 + inv_sigma) * bracket


def delta_of_tau_in_range(tau: float, delta: float, sigma: float, a: float) -> bool:
    """Whether the schedule value stays strictly between delta and 1."""
    value = delta_of_tau(tau, delta, sigma, a)
    return delta < value < 1.0


# --- weighted sup norm over (time, width) -------------------------------------


def ea_norm(
    times,
    fields,
    a: float,
    sigma: float,
    s: float,
    delta_grid=None,
) -> float:
    """sup over the width grid and admissible times of
    ||u(t)||_{G^delta} (1-delta)^sigma sqrt(1 - |t|/(a(1-delta)^sigma)),
    with times admissible when |t| < a(1-delta)^sigma/(2^sigma - 1).

    Evaluated in log space so heavy Gevrey weights cannot overflow.
    Raises WindowError when no (time, width) pair is admissible.
    """
    if not (a > 0.0):
        raise ValueError(f"a must be positive, got {a}")
    if not (sigma >= 1.0):
        raise ValueError(f"sigma must be >= 1, got {sigma}")
    t_arr = np.abs(np.asarray(times, dtype=float))
    if t_arr.ndim != 1 or len(fields) != t_arr.shape[0]:
        raise ValueError("times and fields must be parallel 1-d sequences")
    if t_arr.shape[0] == 0:
        raise WindowError("empty trajectory")
    if delta_grid is None:
        delta_grid = EA_DELTA_GRID
    grid = fields[0].grid
    k2 = grid.wavenumbers**2
    with np.errstate(divide="ignore"):
        log_mag2 = 2.0 * np.log(np.abs(np.stack([f.coeffs for f in fields])))
    best = -np.inf
    admissible = False
    for delta in delta_grid:
        shrink = a * (1.0 - delta) ** sigma
        window = shrink / (2.0**sigma - 1.0)
        mask = t_arr < window
        if not np.any(mask):
            continue
        admissible = True
        log_w = s * np.log1p(k2) + 2.0 * delta * (1.0 + k2) ** (1.0 / (2.0 * sigma))
        log_norm2 = logsumexp(log_mag2[mask] + log_w[None, :], axis=1)
        score = (
            0.5 * log_norm2
            + sigma * math.log(1.0 - delta)
            + 0.5 * np.log1p(-t_arr[mask] / shrink)
        )
        best = max(best, float(np.max(score)))
    if not admissible:
        raise WindowError("no admissible (time, width) pair on the grid")
    if best == -np.inf:
        return 0.0
    value = math.exp(best) if best < 709.0 else math.inf
    if not math.isfinite(value):
        raise NormOverflowError("weighted sup norm overflowed")
    return value


# --- width lower-bound ODE ----------------------------------------------------


@dataclass(frozen=True)
class RadiusODEState:
    """State of the width lower-bound march.

    f_sq integrates 2*C*b^5 from 2(1+||u0||_{G^{delta0}})^2; delta_theory
    decays by exp(-8*C*f^3 dt).  b_prev remembers the last b sample so both
    updates are trapezoidal; clamped flags the 1e-300 underflow guard.
    """

    delta_theory: float
    f_sq: float
    C_cal: float
    delta0: float
    b_prev: float | None = None
    clamped: bool = False


def radius_ode_init(u0_norm_at_delta0: float, C_cal: float, delta0: float) -> RadiusODEState:
    if not (0.0 < delta0 < 1.0):
        raise ValueError(f"delta0 must lie in (0,1), got {delta0}")
    if not (C_cal > 0.0):
        raise ValueError(f"C_cal must be positive, got {C_cal}")
    if not (u0_norm_at_delta0 >= 0.0):
        raise ValueError("norm must be nonnegative")
    return RadiusODEState(
        delta_theory=delta0,
        f_sq=2.0 * (1.0 + u0_norm_at_delta0) ** 2,
        C_cal=C_cal,
        delta0=delta0,
    )


def radius_ode_advance(state: RadiusODEState, b_now: float, dt: float) -> RadiusODEState:
    """One trapezoidal step of the width lower bound; dt = 0 only re-arms b_prev."""
    if not (b_now >= 1.0 - 1e-12):
        raise ValueError(f"b = 1 + Sobolev norm must be >= 1, got {b_now}")
    if dt < 0.0:
        raise ValueError(f"dt must be nonnegative, got {dt}")
    if dt == 0.0:
        return replace(state, b_prev=b_now)
    b_old = state.b_prev if state.b_prev is not None else b_now
    f_sq_new = state.f_sq + state.C_cal * dt * (b_old**5 + b_now**5)
    decay = math.exp(
        -4.0 * state.C_cal * dt * (state.f_sq**1.5 + f_sq_new**1.5)
    )
    delta_new = state.delta_theory * decay
    clamped = state.clamped
    if delta_new < DELTA_CLAMP:
        delta_new = DELTA_CLAMP
        clamped = True
    return replace(
        state,
        delta_theory=delta_new,
        f_sq=f_sq_new,
        b_prev=b_now,
        clamped=clamped,
    )


# --- trajectory diagnostics ---------------------------------------------------


@dataclass(frozen=True)
class RadiusRecord:
    """Per-time diagnostics row; delta_fit is NaN when the decay fit has too
    few usable modes at that time."""

    t: float
    sobolev_s: float
    gevrey_at_delta_theory: float
    delta_fit: float
    delta_theory: float
    f_val: float
    b_val: float
    H_val: float


def track_radius(
    traj: Trajectory,
    p: ModelParams,
    sigma: float,
    s: float,
    delta0: float,
    c_cal: float,
    attach: bool = True,
) -> list:
    """Walk a recorded trajectory, marching the width ODE on the recorded b
    samples and fitting the measured decay rate at each time."""
    if len(traj.states) != len(traj.times):
        raise ValueError("trajectory times/states out of step")
    u0 = traj.states[0]
    norm0 = gevrey_norm(u0, GevreyIndex(sigma, delta0, s))
    state = radius_ode_init(norm0, c_cal, delta0)
    records = []
    prev_t = None
    for t, u in zip(traj.times, traj.states):
        b = 1.0 + sobolev_norm(u, s)
        dt = 0.0 if prev_t is None else float(t) - prev_t
        state = radius_ode_advance(state, b, dt)
        try:
            fit = estimate_radius(u, sigma).delta_fit
        except InsufficientDecayError:
            fit = math.nan
        records.append(
            RadiusRecord(
                t=float(t),
                sobolev_s=b - 1.0,
                gevrey_at_delta_theory=gevrey_norm(
                    u, GevreyIndex(sigma, state.delta_theory, s)
                ),
                delta_fit=fit,
                delta_theory=state.delta_theory,
                f_val=math.sqrt(state.f_sq),
                b_val=b,
                H_val=functional_H(u, p, s),
            )
        )
        prev_t = float(t)
    if attach:
        traj.diagnostics = records
    return records


def calibrate_radius_constant(
    traj: Trajectory,
    p: ModelParams,
    sigma: float,
    s: float,
    delta0: float,
    c_algebra: float,
    t_max: float = 1.0,
    max_doublings: int = 60,
) -> float:
    """Smallest power-of-two multiple of the pinned algebra constant whose
    width ODE stays below the measured decay rate up to t_max.

    Larger multipliers only lower the theory curve, so the doubling search is
    monotone.  The t=0 comparison is multiplier-independent (theory starts at
    delta0); if it already fails, no multiplier can help.
    """
    for j in range(max_doublings + 1):
        c_cal = c_algebra * 2.0**j
        records = track_radius(traj, p, sigma, s, delta0, c_cal, attach=False)
        ok = True
        for r in records:
            if r.t > t_max or math.isnan(r.delta_fit):
                continue
            if r.delta_theory > r.delta_fit * (1.0 + 1e-12):
                ok = False
                break
        if ok:
            return c_cal
        if records and not math.isnan(records[0].delta_fit) and records[0].delta_fit < delta0:
            raise CalibrationError(
                f"measured rate {records[0].delta_fit:.4g} at t=0 is below "
                f"delta0 = {delta0}; no multiplier can fix the start"
            )
    raise CalibrationError(f"no multiplier up to 2^{max_doublings} works")


# --- continuity in the initial data -------------------------------------------


@dataclass(frozen=True)
class ContinuityReport:
    """Distances between perturbed and limit runs over a common horizon."""

    T: float
    distances: tuple
    bounds: tuple
    budget: float

    @property
    def within_bounds(self) -> tuple:
        return tuple(d <= b for d, b in zip(self.distances, self.bounds))


def continuity_experiment(
    u0_sequence,
    u0_limit: SpectralField,
    p: ModelParams,
    sigma: float,
    s: float,
    cfg: SolverConfig,
    c_prime: float = 1.0,
    budget: float = 1e-6,
) -> ContinuityReport:
    """Integrate each perturbed datum and the limit datum to the common
    existence horizon and compare weighted-norm distances against twice the
    initial-datum distance plus a solver budget.

    The horizon uses the largest datum norm so one window serves all runs.
    A blow-up in any run raises ExperimentError naming it.
    """
    index = GevreyIndex(sigma, 1.0, s)
    norms = [gevrey_norm(u, index) for u in u0_sequence]
    norm_limit = gevrey_norm(u0_limit, index)
    base = c_prime * (math.exp(-sigma) * sigma**sigma + 2.0)
    worst = max(norms + [norm_limit])
    T = 1.0 / (2.0 ** (2 * sigma + 8) * base * (2.0 + worst) ** 4)
    dt = min(cfg.dt, T / 64.0)
    run_cfg = SolverConfig(
        dt=dt, t_end=T, record_every=1, dealias=cfg.dealias, s_monitor=cfg.s_monitor
    )

    def run(u0, label):
        try:
            return integrate(u0, p, run_cfg)
        except BlowUpError as err:
            raise ExperimentError(f"run {label} blew up at t = {err.time:.4g}") from err

    limit_traj = run(u0_limit, "limit")
    distances, bounds = [], []
    for i, u0 in enumerate(u0_sequence):
        traj = run(u0, f"#{i}")
        diffs = [a - b for a, b in zip(traj.states, limit_traj.states)]
        distances.append(ea_norm(traj.times, diffs, T, sigma, s))
        bounds.append(2.0 * gevrey_norm(u0 - u0_limit, index) + budget)
    return ContinuityReport(
        T=T, distances=tuple(distances), bounds=tuple(bounds), budget=budget
    )
