"""Momentum-space operators acting on photon states.

States are polarization-vector arrays ``psi[eps]`` of shape (3, n, n, n) on
the reciprocal lattice (see :meth:`KSpaceState.to_vectors`).  Multipliers
and spin matrices act exactly; the orbital parts of angular momentum and
boost take central differences along the lattice with step ``dk``.

Generators (momentum ``P = hbar k``, energy ``H = eps hbar c |k|``)::

    J = -j hbar k x grad_k + hbar S
    K = eps (j hbar |k| grad_k + hbar k_hat x S)

The factor ``eps`` on the boost keeps ``[K_i, P_j] = j hbar delta_ij H/c``
on both frequency sheets.
"""

from __future__ import annotations

import numpy as np

from ..constants import PhysicalConstants
from ..em.grid import Grid, spectral_curl
from ..em.potentials import RSField
from ..errors import ExcludedPointError
from ..modes import expand_rs, project_modes
from .products import KSpaceState

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0

OPERATORS = ("P1", "P2", "P3", "P_abs", "S1", "S2", "S3", "helicity", "eps", "H",
             "J1", "J2", "J3", "K1", "K2", "K3")


def spin_matrices() -> np.ndarray:
    """``S[i, j, k] = -j eps_ijk``; ``(a . S) b = j a x b``."""
    return -1j * LEVI_CIVITA


def apply_spin(S: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Matrix ``S`` (3, 3) or field of matrices (3, 3, ...) on vectors (3, ...)."""
    if S.ndim == 2:
        return np.tensordot(S, psi, axes=(1, 0))
    return np.einsum("ab...,b...->a...", S, psi)


def _lattice_diff(psi: np.ndarray, axis: int, dk: float) -> np.ndarray:
    # arrays are in FFT order, so neighbours along a lattice axis are rolls
    ax = psi.ndim - 3 + axis
    return (np.roll(psi, -1, axis=ax) - np.roll(psi, 1, axis=ax)) / (2 * dk)


def _check_origin(psi: np.ndarray, what: str):
    if np.any(psi[(slice(None), 0, 0, 0)] != 0):
        raise ExcludedPointError(f"{what} is undefined at k = 0")


def _unit(grid: Grid):
    kabs = grid.kabs
    safe = np.where(kabs == 0, 1.0, kabs)
    return grid.kvec / safe, kabs


def _apply_one(name: str, psi: np.ndarray, eps: int, grid: Grid, consts: PhysicalConstants) -> np.ndarray:
    hbar = consts.hbar
    kvec, kabs = grid.kvec, grid.kabs
    S = spin_matrices()
    if name in ("P1", "P2", "P3"):
        return hbar * kvec[int(name[1]) - 1] * psi
    if name == "P_abs":
        return hbar * kabs * psi
    if name in ("S1", "S2", "S3"):
        return hbar * apply_spin(S[int(name[1]) - 1], psi)
    if name == "helicity":
        _check_origin(psi, "helicity")
        khat, _ = _unit(grid)
        return apply_spin(np.einsum("i...,ijk->jk...", khat, S), psi)
    if name == "eps":
        return eps * psi
    if name == "H":
        return eps * hbar * consts.c * kabs * psi
    i = int(name[1]) - 1
    dk = grid.dk
    if name[0] == "J":
        a, b = (i + 1) % 3, (i + 2) % 3
        orbital = kvec[a] * _lattice_diff(psi, b, dk) - kvec[b] * _lattice_diff(psi, a, dk)
        return -1j * hbar * orbital + hbar * apply_spin(S[i], psi)
    if name[0] == "K":
        _check_origin(psi, "boost")
        khat, _ = _unit(grid)
        a, b = (i + 1) % 3, (i + 2) % 3
        spin = khat[a] * apply_spin(S[b], psi) - khat[b] * apply_spin(S[a], psi)
        return eps * (1j * hbar * kabs * _lattice_diff(psi, i, dk) + hbar * spin)
    raise ValueError(f"unknown operator {name!r}")


def apply_operator(name: str, state, consts: PhysicalConstants, grid: Grid | None = None) -> dict:
    """Apply a named operator to a :class:`KSpaceState` or a vector-state dict.

    Returns the vector-state dict ``{eps: (3, n, n, n)}``; the result of spin
    or boost generators need not be transverse.
    """
    if name not in OPERATORS:
        raise ValueError(f"unknown operator {name!r}")
    if isinstance(state, KSpaceState):
        grid, vectors = state.grid, state.to_vectors()
    else:
        if grid is None:
            raise ValueError("vector states need their grid")
        vectors = state
    return {eps: _apply_one(name, np.asarray(psi, dtype=complex), eps, grid, consts)
            for eps, psi in vectors.items()}


def hamiltonian_apply(state, consts: PhysicalConstants, route: str = "modes"):
    """``H = eps c |p|`` on a state.

    A :class:`KSpaceState` is scaled sheet by sheet.  For an :class:`RSField`
    the ``modes`` route projects onto modes and scales each by
    ``eps hbar w_k``; the ``curl`` route evaluates ``-j hbar c I (curl F)``,
    which equals ``j hbar d_t F`` on free fields.
    """
    if isinstance(state, KSpaceState):
        g = state.grid
        return KSpaceState(g, {(e, l): e * consts.hbar * consts.c * g.kabs * a
                               for (e, l), a in state.sheets.items()})
    if not isinstance(state, RSField):
        raise TypeError(f"unsupported state {type(state).__name__}")
    g, hbar, c = state.grid, consts.hbar, consts.c
    if route == "modes":
        exp = project_modes(state, consts, normalized=False)
        scaled = exp.with_amplitudes(exp.amp * exp.eps * hbar * exp.omega(g, consts))
        out = expand_rs(scaled, g, state.t, consts, normalized=False)
        return out.E, out.B
    if route == "curl":
        # -j hbar c I (curl E + I c curl B); I * I = -1 and I maps vectors to bivectors
        cE = spectral_curl(state.E, g)
        cB = spectral_curl(state.B, g)
        newE = -1j * hbar * c * (-c * cB)
        newcB = -1j * hbar * c * cE
        return newE, newcB / c
    raise ValueError(f"unknown route {route!r}")
