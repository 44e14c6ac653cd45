r"""Fourier-side representation of periodic fields and the exponential-weight
norms used throughout the package.

Conventions
-----------
* A field on the torus of period ``P`` is stored as the full band of Fourier
  coefficients ``c_m`` for integer modes ``m`` in ``[-n/2+1, n/2]``, in FFT
  order (the slot numpy labels ``-n/2`` is relabelled ``+n/2``).
* The forward transform is normalized by ``1/n`` so that ``c_0`` is the mean
  of the samples and a constant field ``c`` has ``c_0 = c``.
* Norms are pure coefficient mode sums -- no ``2*pi`` measure factor.  With
  this choice the squared ``s=0`` norm equals the mean of ``|f|^2`` over the
  collocation points (discrete Parseval).
* Exponential weights ``exp(delta*(1+k^2)^(1/(2*sigma)))`` are evaluated in
  log space per mode so that heavy weights on tiny coefficients do not
  overflow prematurely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np
from scipy.special import logsumexp

__all__ = [
    "TorusGrid",
    "SpectralField",
    "GevreyIndex",
    "GridMismatchError",
    "SymmetryError",
    "NonFiniteError",
    "ModeOverflowError",
    "NormOverflowError",
    "to_spectral",
    "to_physical",
    "field_from_modes",
    "random_field",
    "derivative",
    "helmholtz",
    "helmholtz_inv",
    "gevrey_multiplier",
    "sobolev_norm",
    "gevrey_norm",
    "gevrey_norm_bar",
    "product",
    "product_direct",
]


class GridMismatchError(ValueError):
    """Two fields that should share a grid do not."""


class SymmetryError(ValueError):
    """A nominally real field has too much imaginary residue."""


class NonFiniteError(ValueError):
    """Coefficients or samples contain NaN/inf."""


class ModeOverflowError(OverflowError):
    """An exponential weight overflowed at a specific mode."""

    def __init__(self, mode: int, message: str | None = None):
        self.mode = mode
        super().__init__(message or f"weighted coefficient overflowed at mode {mode}")


class NormOverflowError(OverflowError):
    """A weighted norm accumulated to a non-finite value."""


# --- grid and field containers -------------------------------------------------


@dataclass(frozen=True)
class TorusGrid:
    """Uniform collocation grid on a periodic interval.

    ``n_points`` must be even and at least 8; wavenumbers are
    ``k_m = 2*pi*m/period``.
    """

    n_points: int
    period: float = 2.0 * math.pi

    def __post_init__(self):
        if self.n_points < 8 or self.n_points % 2 != 0:
            raise ValueError(f"n_points must be even and >= 8, got {self.n_points}")
        if not (self.period > 0.0) or not math.isfinite(self.period):
            raise ValueError(f"period must be positive and finite, got {self.period}")

    @property
    def modes(self) -> np.ndarray:
        """Integer mode numbers in storage (FFT) order; the Nyquist slot is +n/2."""
        m = np.fft.fftfreq(self.n_points, 1.0 / self.n_points).astype(np.int64)
        m[self.n_points // 2] = self.n_points // 2
        return m

    @property
    def wavenumbers(self) -> np.ndarray:
        return 2.0 * math.pi * self.modes / self.period

    @property
    def x(self) -> np.ndarray:
        """Collocation points x_j = j*period/n."""
        return self.period * np.arange(self.n_points) / self.n_points

    def index_of(self, mode: int) -> int:
        half = self.n_points // 2
        if not (-half + 1 <= mode <= half):
            raise ValueError(f"mode {mode} outside band [{-half + 1}, {half}]")
        return mode % self.n_points


@dataclass(frozen=True, eq=False)
class SpectralField:
    """A field stored as its full symmetric band of Fourier coefficients."""

    grid: TorusGrid
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.shape != (self.grid.n_points,):
            raise ValueError(
                f"coefficient array has shape {c.shape}, expected ({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(c)):
            raise NonFiniteError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    def coeff(self, mode: int) -> complex:
        return complex(self.coeffs[self.grid.index_of(mode)])

    def hermitian_defect(self) -> float:
        """max |c_{-m} - conj(c_m)| over the paired band (0 for a real field)."""
        c = self.coeffs
        mirrored = np.conj(c[(-self.grid.modes) % self.grid.n_points])
        return float(np.max(np.abs(c - mirrored)))

    def with_coeffs(self, coeffs: np.ndarray) -> "SpectralField":
        return replace(self, coeffs=coeffs)

    # Scalar linear algebra; products of fields live in product()/product_direct().
    def __add__(self, other: "SpectralField") -> "SpectralField":
        _require_same_grid(self, other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        _require_same_grid(self, other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __neg__(self) -> "SpectralField":
        return self.with_coeffs(-self.coeffs)

    def __mul__(self, scalar) -> "SpectralField":
        if isinstance(scalar, SpectralField):
            raise TypeError("use product()/product_direct() to multiply fields")
        return self.with_coeffs(self.coeffs * complex(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class GevreyIndex:
    """Regularity triple: Gevrey exponent sigma >= 1, width delta >= 0, Sobolev order s."""

    sigma: float
    delta: float
    s: float

    def __post_init__(self):
        if not (self.sigma >= 1.0):
            raise ValueError(f"sigma must be >= 1, got {self.sigma}")
        if not (self.delta >= 0.0):
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if not math.isfinite(self.s):
            raise ValueError("s must be finite")


def _require_same_grid(f: SpectralField, g: SpectralField) -> None:
    if f.grid != g.grid:
        raise GridMismatchError(f"grids differ: {f.grid} vs {g.grid}")


# --- transforms ---------------------------------------------------------------


def to_spectral(samples, grid: TorusGrid) -> SpectralField:
    """Forward transform of real collocation samples (1/n normalization)."""
    arr = np.asarray(samples)
    if np.iscomplexobj(arr):
        raise ValueError("physical samples must be real")
    arr = arr.astype(np.float64)
    if arr.shape != (grid.n_points,):
        raise ValueError(f"expected {grid.n_points} samples, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("samples must be finite")
    return SpectralField(grid, np.fft.fft(arr) / grid.n_points)


def to_physical(field: SpectralField, imag_tol: float = 1e-10) -> np.ndarray:
    """Inverse transform to real samples.

    Raises SymmetryError if the imaginary residue exceeds ``imag_tol`` in max
    norm, which signals a broken Hermitian symmetry upstream.
    """
    z = np.fft.ifft(field.coeffs) * field.grid.n_points
    residue = float(np.max(np.abs(z.imag)))
    if residue > imag_tol:
        raise SymmetryError(
            f"imaginary residue {residue:.3e} exceeds {imag_tol:.1e}; "
            "field is not a real signal"
        )
    return z.real.copy()


def field_from_modes(
    grid: TorusGrid, amplitudes: Mapping[int, complex], hermitian: bool = True
) -> SpectralField:
    """Build a field from {mode: coefficient}; mirrors conjugates when hermitian."""
    c = np.zeros(grid.n_points, dtype=np.complex128)
    for m, a in amplitudes.items():
        c[grid.index_of(m)] = a
    if hermitian:
        half = grid.n_points // 2
        for m, a in amplitudes.items():
            if m != 0 and m != half and -m not in amplitudes:
                c[grid.index_of(-m)] = np.conj(a)
    return SpectralField(grid, c)


def random_field(
    grid: TorusGrid,
    rng: np.random.Generator,
    band: int | None = None,
    decay: float = 2.0,
) -> SpectralField:
    """Random real band-limited field: complex Gaussian coefficients with
    |m|^-decay fall-off, modes |m| <= band (default n/4)."""
    if band is None:
        band = grid.n_points // 4
    band = min(band, grid.n_points // 2 - 1)
    c = np.zeros(grid.n_points, dtype=np.complex128)
    c[0] = rng.standard_normal()
    for m in range(1, band + 1):
        z = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
        c[grid.index_of(m)] = z * m ** (-decay)
        c[grid.index_of(-m)] = np.conj(c[grid.index_of(m)])
    return SpectralField(grid, c)


# --- diagonal operators -------------------------------------------------------


def derivative(field: SpectralField) -> SpectralField:
    """Spectral d/dx: c_m -> i*k_m*c_m.

    The unpaired Nyquist slot is zeroed: a real field carries a real Nyquist
    coefficient, and i*k*c there has no Hermitian partner.
    """
    c = 1j * field.grid.wavenumbers * field.coeffs
    c[field.grid.n_points // 2] = 0.0
    return field.with_coeffs(c)


def helmholtz(field: SpectralField) -> SpectralField:
    """(1 - d^2/dx^2): multiply by (1 + k^2)."""
    return field.with_coeffs((1.0 + field.grid.wavenumbers**2) * field.coeffs)


def helmholtz_inv(field: SpectralField) -> SpectralField:
    """(1 - d^2/dx^2)^{-1}: divide by (1 + k^2)."""
    return field.with_coeffs(field.coeffs / (1.0 + field.grid.wavenumbers**2))


def gevrey_multiplier(field: SpectralField, delta: float, sigma: float) -> SpectralField:
    """Apply exp(delta*(1+k^2)^(1/(2*sigma))) mode by mode, in log space.

    ``delta`` may be negative (smoothing direction).  A non-finite weighted
    coefficient raises ModeOverflowError naming the first offending mode.
    """
    if not (sigma >= 1.0):
        raise ValueError(f"sigma must be >= 1, got {sigma}")
    if delta == 0.0:
        return field.with_coeffs(field.coeffs.copy())
    k2 = field.grid.wavenumbers**2
    log_weight = delta * (1.0 + k2) ** (1.0 / (2.0 * sigma))
    mag = np.abs(field.coeffs)
    out = np.zeros_like(field.coeffs)
    nz = mag > 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        scale = np.exp(log_weight[nz] + np.log(mag[nz]))
        out[nz] = scale * (field.coeffs[nz] / mag[nz])
    if not np.all(np.isfinite(out)):
        bad = int(np.flatnonzero(~np.isfinite(out))[0])
        raise ModeOverflowError(int(field.grid.modes[bad]))
    return field.with_coeffs(out)


# --- norms --------------------------------------------------------------------


def sobolev_norm(field: SpectralField, s: float) -> float:
    """H^s mode sum: sqrt(sum (1+k^2)^s |c_m|^2)."""
    k2 = field.grid.wavenumbers**2
    with np.errstate(over="ignore"):
        total = float(np.sum((1.0 + k2) ** s * np.abs(field.coeffs) ** 2))
    if not math.isfinite(total):
        raise NormOverflowError(f"H^{s} norm accumulation overflowed")
    return math.sqrt(total)

def _log_mode_terms(field: SpectralField, s: float, log_weight2: np.ndarray) -> np.ndarray:
    # log of (1+k^2)^s * w^2 * |c|^2 per mode; -inf where the coefficient vanishes
    k2 = field.grid.wavenumbers**2
    mag = np.abs(field.coeffs)
    with np.errstate(divide="ignore"):
        log_mag2 = 2.0 * np.log(mag)
    return s * np.log1p(k2) + log_weight2 + log_mag2


def _norm_from_log_terms(terms: np.ndarray, what: str) -> float:
    total = logsumexp(terms)
    if total == -np.inf:
        return 0.0
    with np.errstate(over="ignore"):
        value = math.exp(0.5 * total) if total < 1420.0 else math.inf
    if not math.isfinite(value):
        raise NormOverflowError(f"{what} accumulated to a non-finite value")
    return value


def gevrey_norm(field: SpectralField, index: GevreyIndex) -> float:
    """sqrt(sum (1+k^2)^s exp(2*delta*(1+k^2)^(1/(2*sigma))) |c_m|^2)."""
    k2 = field.grid.wavenumbers**2
    lw2 = 2.0 * index.delta * (1.0 + k2) ** (1.0 / (2.0 * index.sigma))
    terms = _log_mode_terms(field, index.s, lw2)
    return _norm_from_log_terms(terms, f"Gevrey norm {index}")


def gevrey_norm_bar(field: SpectralField, index: GevreyIndex) -> float:
    """Bar variant: weight exp(2*delta*|k|^(1/sigma)) in place of the smooth one."""
    k = np.abs(field.grid.wavenumbers)
    lw2 = 2.0 * index.delta * k ** (1.0 / index.sigma)
    terms = _log_mode_terms(field, index.s, lw2)
    return _norm_from_log_terms(terms, f"bar Gevrey norm {index}")


# --- products -----------------------------------------------------------------


def _pad_coeffs(field: SpectralField, n_fine: int) -> np.ndarray:
    """Embed the stored band [-n/2+1, n/2] into a finer FFT-order array.

    Each stored mode keeps its label, including the unpaired +n/2 slot, which
    matches the band convention of product_direct.
    """
    n = field.grid.n_points
    half = n // 2
    fine = np.zeros(n_fine, dtype=np.complex128)
    fine[: half + 1] = field.coeffs[: half + 1]      # modes 0 .. n/2
    fine[-(half - 1):] = field.coeffs[-(half - 1):]  # modes -n/2+1 .. -1
    return fine


def _truncate_coeffs(fine: np.ndarray, grid: TorusGrid) -> np.ndarray:
    """Project a finer FFT-order array onto the stored band (drop the rest)."""
    n = grid.n_points
    half = n // 2
    out = np.empty(n, dtype=np.complex128)
    out[: half + 1] = fine[: half + 1]
    out[-(half - 1):] = fine[-(half - 1):]
    return out


def product(f: SpectralField, g: SpectralField, pad_factor: float = 1.5) -> SpectralField:
    """Pointwise product, de-aliased by zero padding.

    ``pad_factor`` 3/2 is exact for a single quadratic product of full-band
    fields (two-thirds rule); callers forming cubic/quartic powers pass >= 5/2.
    ``pad_factor`` 1.0 disables de-aliasing (the product wraps).

    Every stored mode, including the unpaired +n/2 slot, receives the true
    convolution coefficient (modes beyond the band are dropped), so this agrees
    with product_direct on the whole band.  A product that genuinely reaches
    mode +-n/2 therefore stores a complex corner coefficient; real-signal
    pipelines keep their content inside the paired band |m| <= n/2 - 1.
    """
    _require_same_grid(f, g)
    n = f.grid.n_points
    n_fine = max(n, int(math.ceil(pad_factor * n)))
    if n_fine % 2:
        n_fine += 1
    if n_fine == n:
        fg = np.fft.fft(np.fft.ifft(f.coeffs) * np.fft.ifft(g.coeffs) * n)
        return f.with_coeffs(fg)
    cf = _pad_coeffs(f, n_fine)
    cg = _pad_coeffs(g, n_fine)
    # 1/n normalization: ifft carries 1/n_fine, one factor of n_fine restores scale
    samples = np.fft.ifft(cf) * np.fft.ifft(cg) * n_fine
    fine = np.fft.fft(samples)
    return f.with_coeffs(_truncate_coeffs(fine, f.grid))


_DIRECT_MAX_POINTS = 512


def product_direct(f: SpectralField, g: SpectralField) -> SpectralField:
    """O(N^2) convolution oracle over the stored band.

    coeffs[m] = sum_j f_j * g_{m-j} over in-range j; no truncation beyond the
    stored band.  Guarded to n_points <= 512.  Operands are canonicalized by
    byte order internally so the computation is exactly symmetric in (f, g).
    """
    _require_same_grid(f, g)
    n = f.grid.n_points
    if n > _DIRECT_MAX_POINTS:
        raise ValueError(
            f"product_direct is O(N^2) and limited to {_DIRECT_MAX_POINTS} points; got {n}"
        )
    a, b = f.coeffs, g.coeffs
    if b.tobytes() < a.tobytes():
        a, b = b, a
    half = n // 2
    band = np.arange(-half + 1, half + 1)
    ca = a[band % n]
    cb = b[band % n]
    full = np.convolve(ca, cb)
    # full[q] collects mode sums m1+m2 = q + 2*(-half+1)
    sliced = full[half - 1 : half - 1 + n]
    out = np.empty(n, dtype=np.complex128)
    out[band % n] = sliced
    return f.with_coeffs(out)
