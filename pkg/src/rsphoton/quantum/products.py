"""Photon states on the k-lattice and the two scalar products.

Amplitude sheets are indexed by ``(eps, lam)`` and stored as complex arrays
in FFT order, matching :class:`~rsphoton.em.grid.Grid`.  The continuum
measure ``dk/(2pi)^3`` becomes ``1/L^3`` times a lattice sum.
"""

from __future__ import annotations

import numpy as np

from ..constants import PhysicalConstants
from ..em.grid import Grid, spectral_grad
from ..em.potentials import ModeField
from ..errors import ExcludedPointError, GridMismatchError, NonTransverseError
from ..modes import ModeExpansion, helicity_vector, one_photon_potential

SHEETS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _unit_k(grid: Grid) -> np.ndarray:
    """k-hat on the lattice with the k = 0 point pointed along e3 (unused)."""
    kabs = grid.kabs.copy()
    kvec = grid.kvec.copy()
    kvec[2][kabs == 0] = 1.0
    kabs[kabs == 0] = 1.0
    return kvec / kabs


class KSpaceState:
    """Amplitudes ``a[(eps, lam)]`` on the reciprocal lattice of ``grid``."""

    def __init__(self, grid: Grid, sheets: dict):
        self.grid = grid
        self.sheets = {}
        for key, arr in sheets.items():
            if key not in SHEETS:
                raise ValueError(f"sheet key {key} is not (eps, lam) with entries +-1")
            arr = np.asarray(arr, dtype=complex)
            if arr.shape != grid.shape:
                raise GridMismatchError(f"sheet shape {arr.shape} does not match grid {grid.shape}")
            if arr[0, 0, 0] != 0:
                raise ExcludedPointError("photon states carry no amplitude at k = 0")
            self.sheets[key] = arr

    def sheet(self, eps: int, lam: int) -> np.ndarray:
        return self.sheets.get((eps, lam), np.zeros(self.grid.shape, dtype=complex))

    @classmethod
    def from_expansion(cls, exp: ModeExpansion, grid: Grid) -> "KSpaceState":
        exp.check_lattice(grid)
        sheets = {}
        for key in SHEETS:
            mask = (exp.eps == key[0]) & (exp.lam == key[1])
            if not np.any(mask):
                continue
            arr = np.zeros(grid.shape, dtype=complex)
            arr[grid.lattice_index(exp.k[mask])] = exp.amp[mask]
            sheets[key] = arr
        return cls(grid, sheets)

    def to_expansion(self, drop: float = 0.0) -> ModeExpansion:
        m = np.stack(np.meshgrid(self.grid.lattice, self.grid.lattice, self.grid.lattice, indexing="ij"))
        items = []
        for (eps, lam), arr in sorted(self.sheets.items()):
            idx = np.nonzero(np.abs(arr) > drop)
            for ix, iy, iz in zip(*idx):
                items.append((tuple(int(v) for v in m[:, ix, iy, iz]), eps, lam, arr[ix, iy, iz]))
        return ModeExpansion.from_modes(items)

    def to_vectors(self) -> dict:
        """Polarization-vector form ``psi_eps(k) = sum_lam a e_lam(k-hat)``."""
        khat = _unit_k(self.grid)
        out = {}
        for (eps, lam), arr in self.sheets.items():
            vec = helicity_vector(khat, lam) * arr
            out[eps] = out.get(eps, 0) + vec
        return out

    @classmethod
    def from_vectors(cls, grid: Grid, vectors: dict, tol: float = 1e-10) -> "KSpaceState":
        """Inverse of :meth:`to_vectors`; rejects longitudinal components."""
        khat = _unit_k(grid)
        sheets = {}
        for eps, vec in vectors.items():
            vec = np.asarray(vec, dtype=complex)
            scale = np.max(np.abs(vec), initial=0.0)
            longit = np.abs(np.sum(khat * vec, axis=0))
            longit[0, 0, 0] = np.max(np.abs(vec[:, 0, 0, 0]))
            if scale and longit.max() > tol * scale:
                raise NonTransverseError(f"vector state has longitudinal part {longit.max() / scale:.3e}")
            for lam in (1, -1):
                a = np.sum(np.conj(helicity_vector(khat, lam)) * vec, axis=0)
                a[0, 0, 0] = 0
                sheets[(eps, lam)] = a
        return cls(grid, sheets)

    def __add__(self, other: "KSpaceState") -> "KSpaceState":
        self.grid.check_same(other.grid)
        keys = set(self.sheets) | set(other.sheets)
        return KSpaceState(self.grid, {k: self.sheet(*k) + other.sheet(*k) for k in keys})

    def scaled(self, s) -> "KSpaceState":
        return KSpaceState(self.grid, {k: s * v for k, v in self.sheets.items()})


def scalar_product_k(s1: KSpaceState, s2: KSpaceState) -> complex:
    """``(1/L^3) sum_{eps, lam, k} conj(a1) a2``."""
    if s1.grid != s2.grid:
        raise GridMismatchError("states live on different lattices")
    total = 0j
    for key in SHEETS:
        if key in s1.sheets and key in s2.sheets:
            total += np.vdot(s1.sheets[key], s2.sheets[key])
    return complex(total / s1.grid.volume)


def _sheet_E(A: ModeField, consts: PhysicalConstants, t: float) -> np.ndarray:
    a0, a1 = A.sample(t, 0), A.sample(t, 1)
    phi = consts.c * a0[0]
    return -spectral_grad(phi, A.grid) - a1[1:]


def scalar_product_x(A1: ModeField, A2: ModeField, consts: PhysicalConstants, t: float = 0.0) -> complex:
    """Potential/field pairing over the box, diagonal in the frequency sign.

    ``(j eps0/hbar) sum_eps eps int (E1* . A2 - A1* . E2) dx``.  Helicity
    diagonality follows from the orthogonality of the polarization vectors.
    Both potentials must carry eps labels on every term.
    """
    A1.grid.check_same(A2.grid)
    A1.require_labels()
    A2.require_labels()
    g = A1.grid
    total = 0j
    for eps in (1, -1):
        s1, s2 = A1.sheet(eps), A2.sheet(eps)
        if not len(s1) or not len(s2):
            continue
        a1, a2 = s1.sample(t)[1:], s2.sample(t)[1:]
        e1, e2 = _sheet_E(s1, consts, t), _sheet_E(s2, consts, t)
        integrand = np.sum(np.conj(e1) * a2 - np.conj(a1) * e2, axis=0)
        total += eps * g.integrate(integrand)
    return complex(1j * consts.eps0 / consts.hbar * total)


def scalar_product_modes(e1: ModeExpansion, e2: ModeExpansion, grid: Grid,
                         consts: PhysicalConstants, t: float = 0.0) -> complex:
    """x-space product of two mode expansions through their one-photon potentials."""
    return scalar_product_x(one_photon_potential(e1, grid, consts),
                            one_photon_potential(e2, grid, consts), consts, t)


def normalized_mode(grid: Grid, k, eps: int, lam: int) -> ModeExpansion:
    """Single lattice mode with unit norm under both products."""
    return ModeExpansion([k], [eps], [lam], [np.sqrt(grid.volume)])


def norm(state: KSpaceState) -> float:
    return float(np.sqrt(scalar_product_k(state, state).real))
