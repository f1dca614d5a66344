"""Four-potentials and the fields derived from them.

Two time backings exist.  :class:`ModeField` is a finite sum of lattice
plane waves ``amp * exp(j(k.x - Omega t))`` and differentiates analytically in
time to any order.  :class:`SampledPotential` holds two grid slices and only
offers a one-sided first time derivative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import Multivector, Paravector
from ..constants import PhysicalConstants
from ..errors import MissingTimeDerivativeError, UnresolvedFrequencyError
from .grid import Grid, ifft3, spectral_curl, spectral_div, spectral_grad


@dataclass(frozen=True, eq=False)
class ModeField:
    """Sum of lattice plane waves with ``ncomp`` complex components.

    ``k`` holds integer lattice vectors (M, 3), ``omega`` the signed angular
    frequency of each term (time factor ``exp(-j omega t)``), ``amp`` the
    (M, ncomp) amplitudes and ``eps`` an optional frequency-sign label per
    term (0 = unlabeled).  A four-potential uses the components
    ``(phi/c, Ax, Ay, Az)``.
    """

    grid: Grid
    k: np.ndarray
    omega: np.ndarray
    amp: np.ndarray
    eps: np.ndarray = field(default=None)

    def __post_init__(self):
        k = np.asarray(self.k, dtype=int).reshape(-1, 3)
        amp = np.asarray(self.amp, dtype=complex)
        if amp.ndim == 1:
            amp = amp[:, None]
        omega = np.asarray(self.omega, dtype=float).reshape(-1)
        eps = np.zeros(len(k), dtype=int) if self.eps is None else np.asarray(self.eps, dtype=int).reshape(-1)
        if not (len(k) == len(omega) == len(amp) == len(eps)):
            raise ValueError("k, omega, amp and eps must have the same length")
        if len(k):
            self.grid.lattice_index(k)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "amp", amp)
        object.__setattr__(self, "eps", eps)

    @property
    def ncomp(self) -> int:
        return self.amp.shape[1]

    def __len__(self):
        return len(self.k)

    def sample(self, t: float, order: int = 0) -> np.ndarray:
        """``d^order/dt^order`` of the field at time ``t``, shape (ncomp, n, n, n)."""
        g = self.grid
        coeffs = np.zeros((self.ncomp,) + g.shape, dtype=complex)
        if len(self):
            factor = (-1j * self.omega) ** order * np.exp(-1j * self.omega * t)
            ix, iy, iz = g.lattice_index(self.k)
            for c in range(self.ncomp):
                np.add.at(coeffs[c], (ix, iy, iz), factor * self.amp[:, c])
        return ifft3(coeffs) * g.n**3

    def select(self, mask) -> "ModeField":
        mask = np.asarray(mask, dtype=bool)
        return ModeField(self.grid, self.k[mask], self.omega[mask], self.amp[mask], self.eps[mask])

    def sheet(self, eps: int) -> "ModeField":
        return self.select(self.eps == eps)

    def require_labels(self):
        if np.any(~np.isin(self.eps, (-1, 1))):
            raise UnresolvedFrequencyError("every term needs a frequency-sign label eps = +-1")

    def __add__(self, other: "ModeField") -> "ModeField":
        self.grid.check_same(other.grid)
        return ModeField(self.grid, np.concatenate([self.k, other.k]),
                         np.concatenate([self.omega, other.omega]),
                         np.concatenate([self.amp, other.amp]),
                         np.concatenate([self.eps, other.eps]))

    def scaled(self, s) -> "ModeField":
        return ModeField(self.grid, self.k, self.omega, self.amp * s, self.eps)

    def conj(self) -> "ModeField":
        """Complex conjugate field: k -> -k, omega -> -omega, eps -> -eps."""
        return ModeField(self.grid, -self.k, -self.omega, np.conj(self.amp), -self.eps)

    def box(self, c: float) -> "ModeField":
        """d'Alembertian (d_ct^2 - laplacian) applied term by term."""
        kk = np.sum(self.grid.wave_vector(self.k) ** 2, axis=1)
        factor = -(self.omega / c) ** 2 + kk
        return ModeField(self.grid, self.k, self.omega, self.amp * factor[:, None], self.eps)


@dataclass(frozen=True, eq=False)
class SampledPotential:
    """Four-potential known on two time slices ``t`` and ``t + dt``."""

    grid: Grid
    t: float
    dt: float
    now: np.ndarray
    later: np.ndarray

    def sample(self, t: float, order: int = 0) -> np.ndarray:
        if not np.isclose(t, self.t, rtol=0, atol=1e-15 * max(1.0, abs(self.t))):
            raise MissingTimeDerivativeError(f"samples exist only at t={self.t}")
        if order == 0:
            return np.asarray(self.now, dtype=complex)
        if order == 1:
            if self.dt == 0:
                raise MissingTimeDerivativeError("two coincident slices give no time derivative")
            return (np.asarray(self.later) - np.asarray(self.now)) / self.dt
        raise MissingTimeDerivativeError("grid samples carry no second time derivative")


def plane_wave_potential(grid: Grid, m, amp4, omega, eps=0) -> ModeField:
    return ModeField(grid, np.reshape(m, (1, 3)), [omega], np.reshape(amp4, (1, 4)), [eps])


@dataclass(frozen=True, eq=False)
class FourCurrent:
    """Density ``j0`` and flux ``j`` obeying ``d_t j0 + div j = source``.

    The covariant four-vector is ``(c j0, j)``.  For a matter source ``j0`` is
    the charge density and ``j`` the current density; for photon currents they
    are number density and number flux.
    """

    grid: Grid
    j0: np.ndarray
    j: np.ndarray
    kind: str = "matter-source"
    t: float = 0.0

    def paravector(self, c: float) -> Paravector:
        return Paravector(c * np.asarray(self.j0), self.j)

    def four_vector(self, c: float) -> np.ndarray:
        return np.concatenate([c * np.asarray(self.j0)[None], self.j])


@dataclass(frozen=True, eq=False)
class RSField:
    """Graded field ``F = c Lambda + E + I c B``.

    ``scalar`` stores ``c Lambda``.  The ``dt_*`` arrays are optional time
    derivatives; operations needing ``d_ct F`` require them.
    """

    grid: Grid
    t: float
    scalar: np.ndarray
    E: np.ndarray
    B: np.ndarray
    c: float
    dt_scalar: np.ndarray | None = None
    dt_E: np.ndarray | None = None
    dt_B: np.ndarray | None = None

    @property
    def has_time_backing(self) -> bool:
        return self.dt_E is not None and self.dt_B is not None

    def multivector(self) -> Multivector:
        return Multivector.from_parts(self.scalar, self.E, self.c * self.B, 0.0)

    def bold(self) -> Multivector:
        """The RS vector ``E + I c B`` without the gauge scalar."""
        return Multivector.from_parts(0.0, self.E, self.c * self.B, 0.0)

    def dt_bold(self) -> Multivector:
        if not self.has_time_backing:
            raise MissingTimeDerivativeError("RS field carries no time derivative")
        return Multivector.from_parts(0.0, self.dt_E, self.c * self.dt_B, 0.0)

    def __add__(self, other: "RSField") -> "RSField":
        self.grid.check_same(other.grid)

        def add(a, b):
            return None if a is None or b is None else a + b

        return RSField(self.grid, self.t, self.scalar + other.scalar, self.E + other.E,
                       self.B + other.B, self.c, add(self.dt_scalar, other.dt_scalar),
                       add(self.dt_E, other.dt_E), add(self.dt_B, other.dt_B))


def compute_rs(A, consts: PhysicalConstants, t: float = 0.0) -> RSField:
    """Lambda, E and B of a four-potential.

    ``Lambda = c^-2 d_t phi + div A``, ``E = -grad phi - d_t A``,
    ``B = curl A``.  Mode-backed potentials also get exact time derivatives.
    """
    g, c = A.grid, consts.c
    a0 = A.sample(t, 0)
    a1 = A.sample(t, 1)
    phi, vec = c * a0[0], a0[1:]
    dphi, dvec = c * a1[0], a1[1:]
    lam = dphi / c**2 + spectral_div(vec, g)
    E = -spectral_grad(phi, g) - dvec
    B = spectral_curl(vec, g)
    if not isinstance(A, ModeField):
        return RSField(g, t, c * lam, E, B, c)
    a2 = A.sample(t, 2)
    ddphi, ddvec = c * a2[0], a2[1:]
    dlam = ddphi / c**2 + spectral_div(dvec, g)
    dE = -spectral_grad(dphi, g) - ddvec
    dB = spectral_curl(dvec, g)
    return RSField(g, t, c * lam, E, B, c, c * dlam, dE, dB)


def gauge_transform(A, chi: ModeField, consts: PhysicalConstants):
    """``phi' = phi - d_t chi``, ``A' = A + grad chi`` for a scalar ``chi``."""
    A.grid.check_same(chi.grid)
    if chi.ncomp != 1:
        raise ValueError("gauge function must be a scalar mode field")
    kv = chi.grid.wave_vector(chi.k)
    b = chi.amp[:, 0]
    delta = np.column_stack([1j * chi.omega * b / consts.c, 1j * kv * b[:, None]])
    shift = ModeField(chi.grid, chi.k, chi.omega, delta, chi.eps)
    if isinstance(A, ModeField):
        return A + shift
    if isinstance(A, SampledPotential):
        return SampledPotential(A.grid, A.t, A.dt, A.now + shift.sample(A.t),
                                A.later + shift.sample(A.t + A.dt))
    raise TypeError(f"unsupported potential backing {type(A).__name__}")
