"""Numerical check of the Poincare algebra of the photon generators.

Test states are smooth helicity packets given as callables ``psi(k)`` on
one frequency sheet.  Generators map callables to callables, and the
k-gradients inside ``J`` and ``K`` use central differences with step ``h``
evaluated at points shifted off the lattice.  Each commutator residual is
sampled on the lattice points under the packet and measured at ``h`` and
``h/2`` to report the convergence order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..constants import NATURAL, PhysicalConstants
from ..em.grid import Grid
from ..errors import ExcludedPointError, LatticeBoundaryError
from ..modes import helicity_vector
from .operators import LEVI_CIVITA, spin_matrices

# residuals below this are round-off from differencing at the default step
ROUNDOFF_FLOOR = 1e-11


@dataclass(frozen=True)
class PacketState:
    """Gaussian helicity packet ``exp(-|k - k0|^2 / (2 w^2)) e_lam(k_hat)``.

    ``center`` and ``width`` are in units of the lattice spacing ``dk``.
    """

    grid: Grid
    center: tuple
    width: float
    eps: int = 1
    lam: int = 1
    reach: float = 4.0

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        edge = self.grid.n // 2 - 1
        if np.any(np.abs(c) + self.reach * self.width > edge):
            raise LatticeBoundaryError("packet support reaches the lattice boundary")
        if np.linalg.norm(c) < self.reach * self.width:
            raise ExcludedPointError("packet support reaches k = 0")

    def __call__(self, k: np.ndarray) -> np.ndarray:
        dk = self.grid.dk
        k0 = np.asarray(self.center, dtype=float)[:, None] * dk
        w = self.width * dk
        env = np.exp(-np.sum((k - k0) ** 2, axis=0) / (2 * w * w))
        return env * helicity_vector(k, self.lam)

    def probe_points(self, radius: float = 2.0) -> np.ndarray:
        """Lattice wave vectors within ``radius * width`` of the center, (3, P)."""
        c = np.asarray(self.center, dtype=float)
        r = radius * self.width
        lo, hi = np.floor(c - r).astype(int), np.ceil(c + r).astype(int)
        axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
        m = np.stack(np.meshgrid(*axes, indexing="ij")).reshape(3, -1)
        keep = np.sum((m - c[:, None]) ** 2, axis=0) <= r * r
        return m[:, keep] * self.grid.dk


def _derivative(psi, axis: int, h: float, richardson: bool):
    def central(step):
        def d(k):
            shift = np.zeros((3, 1))
            shift[axis] = step
            return (psi(k + shift) - psi(k - shift)) / (2 * step)
        return d

    if not richardson:
        return central(h)
    coarse, fine = central(h), central(h / 2)
    return lambda k: (4 * fine(k) - coarse(k)) / 3


def _spin(i):
    return spin_matrices()[i]


def generator(name: str, eps: int, consts: PhysicalConstants, h: float, richardson: bool = False):
    """Return the operator ``name`` (e.g. ``"J3"``) as a map on callables."""
    hbar, c = consts.hbar, consts.c
    kind = name[0]
    i = int(name[1]) - 1 if len(name) > 1 else None

    if kind == "P":
        return lambda psi: (lambda k: hbar * k[i] * psi(k))
    if kind == "H":
        return lambda psi: (lambda k: eps * hbar * c * np.linalg.norm(k, axis=0) * psi(k))
    if kind == "S":
        S = _spin(i)
        return lambda psi: (lambda k: hbar * np.tensordot(S, psi(k), axes=(1, 0)))
    if kind == "J":
        a, b = (i + 1) % 3, (i + 2) % 3
        S = _spin(i)

        def J(psi):
            da, db = _derivative(psi, a, h, richardson), _derivative(psi, b, h, richardson)

            def out(k):
                orbital = k[a] * db(k) - k[b] * da(k)
                return -1j * hbar * orbital + hbar * np.tensordot(S, psi(k), axes=(1, 0))
            return out
        return J
    if kind == "K":
        a, b = (i + 1) % 3, (i + 2) % 3
        Sa, Sb = _spin(a), _spin(b)

        def K(psi):
            di = _derivative(psi, i, h, richardson)

            def out(k):
                kabs = np.linalg.norm(k, axis=0)
                p = psi(k)
                spin = (k[a] * np.tensordot(Sb, p, axes=(1, 0))
                        - k[b] * np.tensordot(Sa, p, axes=(1, 0))) / kabs
                return eps * (1j * hbar * kabs * di(k) + hbar * spin)
            return out
        return K
    raise ValueError(f"unknown generator {name!r}")


def expected_commutator(a: str, b: str, consts: PhysicalConstants) -> list:
    """Right side of ``[a, b]`` as a list of ``(coefficient, generator)``."""
    hbar, c = consts.hbar, consts.c
    A, B = a[0], b[0]
    i = int(a[1]) - 1 if len(a) > 1 else None
    j = int(b[1]) - 1 if len(b) > 1 else None

    def levi(target, coef):
        return [(coef * LEVI_CIVITA[i, j, k], f"{target}{k + 1}") for k in range(3) if LEVI_CIVITA[i, j, k]]

    table = {
        ("S", "S"): lambda: [(s / hbar, n) for s, n in levi("S", 1j * hbar)],
        ("J", "J"): lambda: levi("J", 1j * hbar),
        ("J", "K"): lambda: levi("K", 1j * hbar),
        ("K", "K"): lambda: levi("J", -1j * hbar),
        ("J", "P"): lambda: levi("P", 1j * hbar),
        ("K", "P"): lambda: [(1j * hbar / c, "H")] if i == j else [],
        ("K", "H"): lambda: [(1j * hbar * c, f"P{i + 1}")],
        ("J", "H"): lambda: [],
        ("P", "H"): lambda: [],
        ("P", "P"): lambda: [],
    }
    if (A, B) not in table:
        raise ValueError(f"no expected value for [{a}, {b}]")
    return table[(A, B)]()


def _residual(a, b, state: PacketState, consts, h, richardson) -> float:
    opA = generator(a, state.eps, consts, h, richardson)
    opB = generator(b, state.eps, consts, h, richardson)
    k = state.probe_points()
    ab = opA(opB(state))(k)
    ba = opB(opA(state))(k)
    rhs = np.zeros_like(ab)
    for coef, name in expected_commutator(a, b, consts):
        rhs += coef * generator(name, state.eps, consts, h, richardson)(state)(k)
    scale = max(np.max(np.abs(ab)), np.max(np.abs(ba)), np.max(np.abs(rhs)))
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(ab - ba - rhs)) / scale)


def commutator_check(pair: str, state: PacketState, consts: PhysicalConstants = NATURAL,
                     h: float = 1e-3, richardson: bool = False, state_index: int = 0) -> dict:
    """Residual of ``[A, B] - expected`` on ``state`` at step ``h`` (in units
    of the packet width) and its convergence order from ``h`` and ``h/2``.

    The residual is relative to the largest of ``AB psi``, ``BA psi`` and the
    expected term on the probe points.  ``order`` is ``None`` when both
    residuals sit below the round-off floor.
    """
    a, b = pair.split(",")
    step = h * state.width * state.grid.dk
    r1 = _residual(a, b, state, consts, step, richardson)
    r2 = _residual(a, b, state, consts, step / 2, richardson)
    order = None if r1 < ROUNDOFF_FLOOR or r2 < ROUNDOFF_FLOOR else float(np.log2(r1 / r2))
    return {"pair": pair, "state": state_index, "residual": r1, "order": order}


def default_pairs() -> list:
    pairs = [f"S{i},S{j}" for i, j in ((1, 2), (2, 3), (3, 1))]
    for A, B in (("J", "J"), ("K", "K")):
        pairs += [f"{A}{i},{B}{j}" for i, j in ((1, 2), (2, 3), (3, 1))]
    for A, B in (("J", "K"), ("J", "P"), ("K", "P"), ("P", "P")):
        pairs += [f"{A}{i},{B}{j}" for i in (1, 2, 3) for j in (1, 2, 3)]
    pairs += [f"{A}{i},H" for A in ("J", "K", "P") for i in (1, 2, 3)]
    return sorted(pairs)


def default_states(grid: Grid) -> list:
    """Helicity packets on all four sheets, away from k = 0 and the lattice edge."""
    scale = (grid.n // 2 - 1) / 15
    centers = ((5, 3, 4), (-4, 5, 3), (4, -4, -5), (-3, -5, 4))
    sheets = ((1, 1), (1, -1), (-1, 1), (-1, -1))
    return [PacketState(grid, tuple(scale * np.asarray(c, dtype=float)), 1.5 * scale, e, l)
            for c, (e, l) in zip(centers, sheets)]


def run_suite(grid: Grid, consts: PhysicalConstants = NATURAL, pairs=None, states=None,
              h: float = 1e-3, richardson: bool = False) -> list:
    """Reports sorted by pair name and state index."""
    pairs = sorted(pairs or default_pairs())
    states = states if states is not None else default_states(grid)
    return [commutator_check(p, s, consts, h, richardson, i) for p in pairs for i, s in enumerate(states)]


def reports_to_json(reports: list) -> str:
    return json.dumps(reports, indent=2, sort_keys=True)
