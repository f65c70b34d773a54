"""Wrapped-Gaussian coherent states on the unit circle.

A state is labeled by an integer winding number m and an angle alpha; its
wave function on [-pi, pi) is

    psi_{m,alpha}(phi) = A * exp(i m phi) * exp(-wrap(phi - alpha)^2 / 2),

where wrap() reduces modulo 2 pi into [-pi, pi) and A normalizes the state,
A = 1/sqrt(sqrt(pi) erf(pi)).  Because the Gaussian envelope is applied to
the *wrapped* distance, |psi| is continuous everywhere on the circle; the
envelope has a derivative kink at the point antipodal to alpha, and that is
the only non-smooth feature.

Angles are plain floats.  wrap_angle() produces the canonical representative
in [-pi, pi); StateLabel applies it on construction, so two labels that
describe the same physical state compare equal.

Grid conventions: an n-point sampling lives on phi_j = -pi + 2 pi j / n,
and a sampled vector is read as its trigonometric interpolant wherever a
continuum object is needed (norm, Fourier coefficients).
"""

from __future__ import annotations

import cmath
import functools
import math
import numbers
import os
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_TWO_PI = 2.0 * math.pi


def wrap_angle(x: float) -> float:
    """Reduce x modulo 2 pi into [-pi, pi).

    Values already in range are returned unchanged, which makes the
    reduction exactly idempotent.  pi maps to -pi.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"wrap_angle: non-finite angle {x}")
    if -math.pi <= x < math.pi:
        return x
    y = math.fmod(x + math.pi, _TWO_PI)
    if y < 0.0:
        y += _TWO_PI
    return y - math.pi


def _wrap_array(x: np.ndarray) -> np.ndarray:
    y = np.mod(np.asarray(x, dtype=float) + math.pi, _TWO_PI) - math.pi
    # np.mod can land on the open endpoint through rounding.
    return np.where(y >= math.pi, y - _TWO_PI, y)


@functools.cache
def normalization_constant() -> float:
    """A = 1/sqrt(sqrt(pi) erf(pi)), the L2 normalization of every state.

    Cached; the closed form comes from int_{-pi}^{pi} e^{-x^2} dx =
    sqrt(pi) erf(pi).
    """
    return 1.0 / math.sqrt(math.sqrt(math.pi) * math.erf(math.pi))


@dataclass(frozen=True)
class StateLabel:
    """Label (m, alpha) of one coherent state; alpha is canonicalized."""

    m: int
    alpha: float

    def __post_init__(self):
        if not isinstance(self.m, numbers.Integral):
            raise DomainError(f"winding number must be an integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "alpha", wrap_angle(self.alpha))


def coherent_eval(label: StateLabel, phi: float) -> complex:
    """Wave function of the labeled state at angle phi.

    phi may be any finite float; it is wrapped first, so evaluation is
    2 pi periodic by construction.
    """
    phi_c = wrap_angle(phi)
    d = wrap_angle(phi_c - label.alpha)
    return (
        normalization_constant()
        * cmath.exp(1j * label.m * phi_c)
        * math.exp(-0.5 * d * d)
    )


def _amplitudes(label: StateLabel, phi: np.ndarray) -> np.ndarray:
    phi_c = _wrap_array(phi)
    d = _wrap_array(phi_c - label.alpha)
    return (
        normalization_constant()
        * np.exp(1j * label.m * phi_c)
        * np.exp(-0.5 * d * d)
    )


def vacuum():
    """The (0, 0) state as a plain callable phi -> complex."""
    label = StateLabel(0, 0.0)

    def psi(phi: float) -> complex:
        return coherent_eval(label, phi)

    return psi


@dataclass(frozen=True)
class SampledWaveFunction:
    """A wave function sampled on the uniform grid phi_j = -pi + 2 pi j / n.

    The amplitude array is copied and frozen read-only.  norm_squared() is
    the trapezoid rule on the periodic grid, which for a trigonometric
    interpolant is its exact L2 norm.
    """

    n_grid: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n_grid, numbers.Integral) or self.n_grid < 2:
            raise DomainError(f"n_grid must be an integer >= 2, got {self.n_grid!r}")
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (int(self.n_grid),):
            raise DomainError(
                f"amplitudes must have shape ({self.n_grid},), got {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise DomainError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "n_grid", int(self.n_grid))
        object.__setattr__(self, "amplitudes", amps)

    def grid(self) -> np.ndarray:
        return -math.pi + np.arange(self.n_grid) * (_TWO_PI / self.n_grid)

    def norm_squared(self) -> float:
        return _TWO_PI / self.n_grid * float(np.sum(np.abs(self.amplitudes) ** 2))

    def to_csv(self, destination) -> None:
        """Write rows phi,re,im at 17 significant digits."""
        own = isinstance(destination, (str, bytes, os.PathLike))
        fh = open(destination, "w", encoding="utf-8", newline="") if own else destination
        try:
            fh.write("phi,re,im\n")
            for p, z in zip(self.grid(), self.amplitudes):
                fh.write(f"{p:.17g},{z.real:.17g},{z.imag:.17g}\n")
        finally:
            if own:
                fh.close()


def sample_state(label: StateLabel, n_grid: int) -> SampledWaveFunction:
    """Sample the labeled state; n_grid must be at least 16."""
    if not isinstance(n_grid, numbers.Integral) or n_grid < 16:
        raise DomainError(f"n_grid must be an integer >= 16, got {n_grid!r}")
    n_grid = int(n_grid)
    phi = -math.pi + np.arange(n_grid) * (_TWO_PI / n_grid)
    return SampledWaveFunction(n_grid, _amplitudes(label, phi))


def fourier_coefficients(psi: SampledWaveFunction, n_max: int) -> np.ndarray:
    """Coefficients a_n = (1/2 pi) int psi(phi) e^{-i n phi} dphi.

    Returned for n = -n_max .. n_max (index 0 is n = -n_max), computed by
    one FFT of the samples: the periodic trapezoid rule gives
    a_n = (-1)^n / n_grid * FFT(psi)[n mod n_grid], exact for the
    interpolant as long as n_grid >= 4 * n_max (enforced; keeps aliasing
    out of the window).
    """
    if not isinstance(n_max, numbers.Integral) or n_max < 0:
        raise DomainError(f"n_max must be an integer >= 0, got {n_max!r}")
    n_max = int(n_max)
    if psi.n_grid < 4 * n_max:
        raise DomainError(
            f"n_grid = {psi.n_grid} too coarse for n_max = {n_max}"
            f" (need n_grid >= {4 * n_max})"
        )
    forward = np.fft.fft(psi.amplitudes) / psi.n_grid
    n = np.arange(-n_max, n_max + 1)
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    return sign * forward[n % psi.n_grid]


def phase_transform(psi: SampledWaveFunction, m: int) -> SampledWaveFunction:
    """Multiply the samples by e^{i m phi_j} (grid winding operator)."""
    if not isinstance(m, numbers.Integral):
        raise DomainError(f"winding number must be an integer, got {m!r}")
    return SampledWaveFunction(
        psi.n_grid, psi.amplitudes * np.exp(1j * int(m) * psi.grid())
    )


def shift_transform(psi: SampledWaveFunction, alpha: float) -> SampledWaveFunction:
    """Rotate the samples by alpha, which must be a grid multiple.

    The rotated vector is psi(phi - alpha) realized as an index roll, so
    alpha/h (h the grid step) has to be an integer to 1e-9, else DomainError.
    """
    h = _TWO_PI / psi.n_grid
    steps = float(alpha) / h
    nearest = round(steps)
    if abs(steps - nearest) > 1e-9:
        raise DomainError(
            f"shift {alpha} is not a multiple of the grid step {h:.6g}"
        )
    return SampledWaveFunction(psi.n_grid, np.roll(psi.amplitudes, int(nearest) % psi.n_grid))
