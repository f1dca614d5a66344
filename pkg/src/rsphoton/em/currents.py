"""Photon number currents from the global phase symmetry and their
continuity equation."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

import numpy as np

from ..constants import PhysicalConstants
from ..errors import GridMismatchError
from .grid import spectral_curl, spectral_div, spectral_grad, spectral_partial
from .maxwell import METRIC
from .potentials import FourCurrent, ModeField

KINDS = ("covariant", "standard")


def _sheet_fields(A: ModeField, consts: PhysicalConstants, t: float):
    g, c = A.grid, consts.c
    a0, a1 = A.sample(t, 0), A.sample(t, 1)
    phi = c * a0[0]
    E = -spectral_grad(phi, g) - a1[1:]
    B = spectral_curl(a0[1:], g)
    return a0, a1, phi, E, B


def _covariant_sheet(A, consts, t):
    g, c, pref = A.grid, consts.c, consts.eps0 * consts.c / consts.hbar
    a0, a1 = A.sample(t, 0), A.sample(t, 1)
    w = METRIC.reshape(4, 1, 1, 1)
    ac = np.conj(a0)

    def antisym(da):
        # A*_nu da^nu - (da*)_nu A^nu
        return np.sum(w * (ac * da - np.conj(da) * a0), axis=0)

    j0 = -1j * pref * antisym(a1 / c)
    flux = np.stack([-1j * pref * antisym(-spectral_partial(a0, i, g)) for i in range(3)])
    return j0, c * flux


def _standard_sheet(A, consts, t):
    c, pref = consts.c, consts.eps0 / consts.hbar
    _, _, phi, E, B = _sheet_fields(A, consts, t)
    vec = A.sample(t)[1:]
    Ec = np.conj(E)
    dens = 1j * pref * np.sum(Ec * vec, axis=0)
    bxa = np.stack([np.conj(B[1]) * vec[2] - np.conj(B[2]) * vec[1],
                    np.conj(B[2]) * vec[0] - np.conj(B[0]) * vec[2],
                    np.conj(B[0]) * vec[1] - np.conj(B[1]) * vec[0]])
    flux = 1j * pref * (-c**2 * bxa + Ec * phi)
    return dens + np.conj(dens), flux + np.conj(flux)


def noether_current(kind: str, A: ModeField, consts: PhysicalConstants, t: float = 0.0) -> FourCurrent:
    """Photon number density and flux of an eps-labeled potential.

    ``covariant``: ``J^mu = -(j eps0 c/hbar) sum_eps eps A*_nu <-d^mu A^nu``;
    ``standard``: density ``(j eps0/hbar) sum eps E*.A + c.c.`` and flux
    ``(j eps0/hbar) sum eps (-c^2 B* x A + E* phi) + c.c.``.

    The returned density is the number density; the covariant time component
    is ``c`` times it.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown current kind {kind!r}")
    A.require_labels()
    g = A.grid
    dens = np.zeros(g.shape, dtype=complex)
    flux = np.zeros((3,) + g.shape, dtype=complex)
    sheet_fn = _covariant_sheet if kind == "covariant" else _standard_sheet
    for eps in (1, -1):
        sheet = A.sheet(eps)
        if not len(sheet):
            continue
        d, f = sheet_fn(sheet, consts, t)
        dens += eps * d
        flux += eps * f
    return FourCurrent(g, dens.real, flux.real, kind=kind, t=t)


def continuity_source(A: ModeField, source, consts: PhysicalConstants, t: float = 0.0) -> np.ndarray:
    """Right side of ``d_t n + div j`` for a matter-sourced potential.

    ``c * sum_eps [-(j eps/(hbar c)) A*_nu J_m^nu + c.c.]``.  ``source`` is a
    :class:`FourCurrent` shared by both sheets or a mapping ``eps -> FourCurrent``.
    """
    A.require_labels()
    c = consts.c
    w = METRIC.reshape(4, 1, 1, 1)
    out = np.zeros(A.grid.shape, dtype=complex)
    for eps in (1, -1):
        sheet = A.sheet(eps)
        if not len(sheet):
            continue
        src = source[eps] if isinstance(source, Mapping) else source
        J = src.four_vector(c)
        term = -1j * eps / (consts.hbar * c) * np.sum(w * np.conj(sheet.sample(t)) * J, axis=0)
        out += term + np.conj(term)
    return (c * out).real


def continuity_residual(series: Sequence[FourCurrent], source_terms: Sequence[np.ndarray] | None = None):
    """``d_t n + div j - source`` at the interior samples of an evenly spaced
    current series; the time derivative is a central difference."""
    if len(series) < 3:
        raise ValueError("continuity check needs at least three time samples")
    g = series[0].grid
    times = np.array([s.t for s in series])
    steps = np.diff(times)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
        raise ValueError("time samples must be evenly spaced")
    for s in series:
        if s.grid != g:
            raise GridMismatchError("current series mixes grids")
    dt = steps[0]
    out = []
    for i in range(1, len(series) - 1):
        r = (series[i + 1].j0 - series[i - 1].j0) / (2 * dt) + spectral_div(series[i].j, g).real
        if source_terms is not None:
            r = r - source_terms[i]
        out.append(r)
    return out


def photon_number(J: FourCurrent) -> float:
    return float(J.grid.integrate(J.j0).real)
