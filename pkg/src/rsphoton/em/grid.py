"""Periodic cubic grid and spectral (FFT) space derivatives.

Scalar fields are arrays of shape ``(n, n, n)``; vector fields put the
component axis first, ``(3, n, n, n)``.  A band-limited field is
``f(x) = sum_k c_k exp(j k.x)`` and ``c_k = fft(f) / n**3``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft

from ..errors import GridMismatchError, OffLatticeError

AXES = (-3, -2, -1)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("RSPHOTON_THREADS", "1")))
    except ValueError:
        return 1


def fft3(f):
    return scipy.fft.fftn(f, axes=AXES, workers=_workers())


def ifft3(f):
    return scipy.fft.ifftn(f, axes=AXES, workers=_workers())


@dataclass(frozen=True)
class Grid:
    """``n`` points per axis (power of two, >= 4) on a box of edge ``L``."""

    n: int
    L: float

    def __post_init__(self):
        if self.n < 4 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 4, got {self.n}")
        if not self.L > 0:
            raise ValueError("box length must be positive")

    @property
    def dx(self) -> float:
        return self.L / self.n

    @property
    def shape(self):
        return (self.n,) * 3

    @property
    def volume(self) -> float:
        return self.L**3

    @property
    def dV(self) -> float:
        return self.dx**3

    @property
    def dk(self) -> float:
        return 2 * math.pi / self.L

    @cached_property
    def lattice(self) -> np.ndarray:
        """Integer wave numbers along one axis in FFT order."""
        return np.rint(np.fft.fftfreq(self.n, 1.0 / self.n)).astype(int)

    @cached_property
    def coords(self) -> np.ndarray:
        x = np.arange(self.n) * self.dx
        return np.stack(np.meshgrid(x, x, x, indexing="ij"))

    @cached_property
    def kvec(self) -> np.ndarray:
        k = self.dk * self.lattice
        return np.stack(np.meshgrid(k, k, k, indexing="ij"))

    @cached_property
    def ksq(self) -> np.ndarray:
        return np.sum(self.kvec**2, axis=0)

    @cached_property
    def kabs(self) -> np.ndarray:
        return np.sqrt(self.ksq)

    @cached_property
    def nyquist(self) -> np.ndarray:
        """Mask of lattice points with any Nyquist component."""
        m = self.lattice == -self.n // 2
        a, b, c = np.meshgrid(m, m, m, indexing="ij")
        return a | b | c

    @cached_property
    def _jk_odd(self) -> np.ndarray:
        jk = 1j * self.kvec
        return np.where(self.nyquist[None], 0.0, jk)

    def check_same(self, other: "Grid"):
        if other != self:
            raise GridMismatchError(f"grid mismatch: {self} vs {other}")

    def lattice_index(self, m) -> tuple:
        """FFT array index of integer wave vector(s) ``m`` (shape (..., 3)).

        Nyquist wave numbers are not representable as a single complex mode
        and are rejected along with anything outside the band.
        """
        m = np.asarray(m)
        if not np.issubdtype(m.dtype, np.integer):
            if not np.allclose(m, np.rint(m), atol=1e-9):
                raise OffLatticeError(f"wave vector {m} is not an integer lattice vector")
            m = np.rint(m).astype(int)
        half = self.n // 2
        if np.any(np.abs(m) >= half):
            raise OffLatticeError(f"lattice vector outside the band |m| < {half}")
        idx = np.mod(m, self.n)
        return idx[..., 0], idx[..., 1], idx[..., 2]

    def wave_vector(self, m) -> np.ndarray:
        return self.dk * np.asarray(m, dtype=float)

    def periodic_distance(self, center) -> np.ndarray:
        """Minimum-image distance from ``center`` to every grid point."""
        d = self.coords - np.asarray(center, dtype=float).reshape(3, 1, 1, 1)
        d -= self.L * np.rint(d / self.L)
        return np.sqrt(np.sum(d**2, axis=0))

    def integrate(self, f) -> complex:
        return np.sum(f, axis=AXES) * self.dV


def spectral_grad(f, grid: Grid):
    fk = fft3(f)
    return ifft3(grid._jk_odd * fk[None])


def spectral_partial(f, axis: int, grid: Grid):
    return ifft3(grid._jk_odd[axis] * fft3(f))


def spectral_div(v, grid: Grid):
    vk = fft3(v)
    return ifft3(np.sum(grid._jk_odd * vk, axis=0))


def spectral_curl(v, grid: Grid):
    vk = fft3(v)
    jk = grid._jk_odd
    ck = np.stack([jk[1] * vk[2] - jk[2] * vk[1],
                   jk[2] * vk[0] - jk[0] * vk[2],
                   jk[0] * vk[1] - jk[1] * vk[0]])
    return ifft3(ck)


def spectral_laplacian(f, grid: Grid):
    return ifft3(-grid.ksq * fft3(f))


def poisson_solve(rhs, grid: Grid):
    """Zero-mean solution of ``laplacian(u) = rhs`` (mean of rhs dropped)."""
    rk = fft3(rhs)
    ksq = grid.ksq.copy()
    ksq[0, 0, 0] = 1.0
    uk = -rk / ksq
    uk[0, 0, 0] = 0.0
    return ifft3(uk)


def band_limited_random(grid: Grid, rng, shape=(), kmax: int = 3, real: bool = False):
    """Random field with Fourier support in ``|m_i| <= kmax`` (no Nyquist)."""
    kmax = min(kmax, grid.n // 2 - 1)
    coeffs = np.zeros(tuple(shape) + grid.shape, dtype=complex)
    sel = np.abs(grid.lattice) <= kmax
    box = np.ix_(sel, sel, sel)
    sub = coeffs[(Ellipsis,) + box]
    noise = rng.standard_normal(sub.shape) + 1j * rng.standard_normal(sub.shape)
    coeffs[(Ellipsis,) + box] = noise
    f = ifft3(coeffs)
    if real:
        f = f.real.astype(complex)
    return f / np.max(np.abs(f))
