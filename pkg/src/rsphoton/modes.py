"""Helicity plane waves and finite mode expansions on the box lattice.

A mode is labeled by a lattice wave vector, the frequency sign ``eps`` and
the helicity ``lam``.  Its electric field is

    E = a * N * e_lam(k_hat) * exp(-j eps w t + j k.x),   w = c|k|

with polarization ``e_lam = (e_theta + j lam e_phi)/sqrt(2)`` and
``cB = -j eps lam E``.  With ``normalized=True`` the factor ``N`` is the
one-photon field amplitude on a box of volume ``L^3``, chosen so that a unit
amplitude carries unit norm under both scalar products (see
:mod:`rsphoton.quantum`).  With ``normalized=False`` it is 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebra import Multivector
from .constants import PhysicalConstants
from .em.grid import Grid, fft3, ifft3
from .em.potentials import ModeField, RSField
from .errors import ExcludedPointError, NonTransverseError, OffLatticeError


def helicity_triad(khat):
    """Return ``(e_theta, e_phi)`` for unit vectors ``khat`` (axis 0 = xyz).

    At the poles ``phi`` is taken as 0, so ``e_theta = +-e1`` and
    ``e_phi = e2``.
    """
    khat = np.asarray(khat, dtype=float)
    norm = np.sqrt(np.sum(khat**2, axis=0))
    if np.any(norm == 0):
        raise ValueError("direction vector must be nonzero")
    kx, ky, kz = khat / norm
    s = np.hypot(kx, ky)
    pole = s < 1e-14
    safe = np.where(pole, 1.0, s)
    cphi = np.where(pole, 1.0, kx / safe)
    sphi = np.where(pole, 0.0, ky / safe)
    e_theta = np.stack([kz * cphi, kz * sphi, -s])
    e_phi = np.stack([-sphi, cphi, np.zeros_like(s)])
    return e_theta, e_phi


def helicity_vector(khat, lam):
    """Circular polarization ``e_lam(k_hat)``; complex, unit under the
    conjugated inner product and orthogonal to ``k_hat``."""
    lam = np.asarray(lam)
    if np.any(~np.isin(lam, (-1, 1))):
        raise ValueError("helicity must be +1 or -1")
    e_theta, e_phi = helicity_triad(khat)
    return (e_theta + 1j * lam * e_phi) / np.sqrt(2.0)


@dataclass(frozen=True)
class PlaneWaveMode:
    """One helicity plane wave; ``k`` in rad/m, ``a`` its complex amplitude."""

    k: tuple
    eps: int
    lam: int
    a: complex = 1.0

    def __post_init__(self):
        k = tuple(float(x) for x in self.k)
        if not any(k):
            raise ValueError("k = 0 carries no photon mode")
        if self.eps not in (-1, 1) or self.lam not in (-1, 1):
            raise ValueError("eps and lam must be +-1")
        object.__setattr__(self, "k", k)

    @property
    def kabs(self) -> float:
        return float(np.linalg.norm(self.k))

    def omega(self, consts: PhysicalConstants) -> float:
        return consts.c * self.kabs


def plane_wave_E(mode: PlaneWaveMode, x, t: float, consts: PhysicalConstants, amplitude=1.0):
    """Electric field of ``mode`` at points ``x`` (shape (3, ...))."""
    x = np.asarray(x, dtype=float)
    k = np.asarray(mode.k).reshape((3,) + (1,) * (x.ndim - 1))
    phase = np.exp(-1j * mode.eps * mode.omega(consts) * t + 1j * np.sum(k * x, axis=0))
    pol = helicity_vector(np.asarray(mode.k), mode.lam).reshape((3,) + (1,) * (x.ndim - 1))
    return mode.a * amplitude * pol * phase


def plane_wave_B(mode: PlaneWaveMode, x, t: float, consts: PhysicalConstants, amplitude=1.0):
    """``B = -j eps lam E / c``."""
    return -1j * mode.eps * mode.lam * plane_wave_E(mode, x, t, consts, amplitude) / consts.c


def plane_wave_F(mode: PlaneWaveMode, x, t: float, consts: PhysicalConstants, amplitude=1.0) -> Multivector:
    """RS vector ``E + I cB = (1 - I j eps lam) E`` as a multivector."""
    E = plane_wave_E(mode, x, t, consts, amplitude)
    return Multivector.from_parts(0.0, E, -1j * mode.eps * mode.lam * E, 0.0)


def potential_amplitude(kabs, grid: Grid, consts: PhysicalConstants):
    """One-photon vector-potential amplitude ``j sqrt(hbar/(2 eps0 w)) / L^3``."""
    w = consts.c * np.asarray(kabs, dtype=float)
    return 1j * np.sqrt(consts.hbar / (2 * consts.eps0 * w)) / grid.volume


def field_amplitude(kabs, eps, grid: Grid, consts: PhysicalConstants):
    """``E = -d_t A`` of the one-photon potential: ``-eps sqrt(hbar w/(2 eps0)) / L^3``."""
    w = consts.c * np.asarray(kabs, dtype=float)
    return 1j * np.asarray(eps) * w * potential_amplitude(kabs, grid, consts)


class ModeExpansion:
    """Finite set of lattice modes with distinct ``(k, eps, lam)`` keys.

    Stored as parallel arrays sorted by key: ``k`` (M, 3) integers, ``eps``,
    ``lam`` (M,) and complex amplitudes ``amp`` (M,).
    """

    def __init__(self, k, eps, lam, amp):
        k = np.asarray(k, dtype=int).reshape(-1, 3)
        eps = np.asarray(eps, dtype=int).reshape(-1)
        lam = np.asarray(lam, dtype=int).reshape(-1)
        amp = np.asarray(amp, dtype=complex).reshape(-1)
        if not (len(k) == len(eps) == len(lam) == len(amp)):
            raise ValueError("k, eps, lam and amp must have equal length")
        if np.any(~np.isin(eps, (-1, 1))) or np.any(~np.isin(lam, (-1, 1))):
            raise ValueError("eps and lam must be +-1")
        if np.any(np.all(k == 0, axis=1)):
            raise ExcludedPointError("k = 0 is excluded from photon states")
        order = np.lexsort((lam, eps, k[:, 2], k[:, 1], k[:, 0]))
        k, eps, lam, amp = k[order], eps[order], lam[order], amp[order]
        keys = np.column_stack([k, eps, lam])
        if len(keys) > 1 and np.any(np.all(keys[1:] == keys[:-1], axis=1)):
            raise ValueError("duplicate (k, eps, lam) key in mode expansion")
        for arr in (k, eps, lam, amp):
            arr.setflags(write=False)
        self.k, self.eps, self.lam, self.amp = k, eps, lam, amp

    def __len__(self):
        return len(self.amp)

    def __repr__(self):
        return f"ModeExpansion({len(self)} modes)"

    @classmethod
    def empty(cls):
        return cls(np.zeros((0, 3)), [], [], [])

    @classmethod
    def from_modes(cls, items):
        """Build from ``(k, eps, lam, amp)`` tuples with integer ``k``."""
        items = list(items)
        if not items:
            return cls.empty()
        k, eps, lam, amp = zip(*items)
        return cls(k, eps, lam, amp)

    def keys(self):
        return [(tuple(int(v) for v in kk), int(e), int(l))
                for kk, e, l in zip(self.k, self.eps, self.lam)]

    def as_dict(self) -> dict:
        return dict(zip(self.keys(), self.amp))

    def with_amplitudes(self, amp) -> "ModeExpansion":
        return ModeExpansion(self.k, self.eps, self.lam, amp)

    def select(self, mask) -> "ModeExpansion":
        mask = np.asarray(mask, dtype=bool)
        return ModeExpansion(self.k[mask], self.eps[mask], self.lam[mask], self.amp[mask])

    def positive_frequency(self) -> "ModeExpansion":
        return self.select(self.eps == 1)

    def __add__(self, other: "ModeExpansion") -> "ModeExpansion":
        merged = self.as_dict()
        for key, a in other.as_dict().items():
            merged[key] = merged.get(key, 0) + a
        return ModeExpansion.from_modes((k, e, l, a) for (k, e, l), a in merged.items())

    def wave_vectors(self, grid: Grid) -> np.ndarray:
        return grid.wave_vector(self.k)

    def kabs(self, grid: Grid) -> np.ndarray:
        return np.linalg.norm(self.wave_vectors(grid), axis=1)

    def omega(self, grid: Grid, consts: PhysicalConstants) -> np.ndarray:
        return consts.c * self.kabs(grid)

    def polarizations(self, grid: Grid) -> np.ndarray:
        """(3, M) helicity vectors of every mode."""
        return helicity_vector(self.wave_vectors(grid).T, self.lam)

    def mode(self, i: int, grid: Grid) -> PlaneWaveMode:
        return PlaneWaveMode(tuple(grid.wave_vector(self.k[i])), int(self.eps[i]),
                             int(self.lam[i]), complex(self.amp[i]))

    def check_lattice(self, grid: Grid):
        if len(self):
            grid.lattice_index(self.k)

    # serialization ------------------------------------------------------
    def to_records(self) -> list:
        return [{"k": [int(v) for v in kk], "eps": int(e), "lam": int(l),
                 "re": float(a.real), "im": float(a.imag)}
                for kk, e, l, a in zip(self.k, self.eps, self.lam, self.amp)]

    @classmethod
    def from_records(cls, records) -> "ModeExpansion":
        items = []
        for r in records:
            k = r["k"]
            if len(k) != 3 or any(int(v) != v for v in k):
                raise OffLatticeError(f"mode wave vector {k} is not an integer triple")
            items.append((tuple(int(v) for v in k), int(r["eps"]), int(r["lam"]),
                          complex(r["re"], r["im"])))
        return cls.from_modes(items)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_records(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "ModeExpansion":
        return cls.from_records(json.loads(text))


def _field_factor(exp: ModeExpansion, grid: Grid, consts: PhysicalConstants, normalized: bool):
    if normalized:
        return field_amplitude(exp.kabs(grid), exp.eps, grid, consts)
    return np.ones(len(exp), dtype=complex)


def expand_rs(exp: ModeExpansion, grid: Grid, t: float, consts: PhysicalConstants,
              normalized: bool = True) -> RSField:
    """Sample the superposition on the grid, with exact time derivatives."""
    exp.check_lattice(grid)
    n3 = grid.n**3
    Ek = np.zeros((3,) + grid.shape, dtype=complex)
    dEk = np.zeros_like(Ek)
    cBk = np.zeros_like(Ek)
    dcBk = np.zeros_like(Ek)
    if len(exp):
        w = exp.omega(grid, consts)
        s = -1j * exp.eps * w
        coef = exp.amp * _field_factor(exp, grid, consts, normalized) * np.exp(s * t)
        pol = exp.polarizations(grid) * coef
        polB = -1j * exp.eps * exp.lam * pol
        idx = grid.lattice_index(exp.k)
        for i in range(3):
            np.add.at(Ek[i], idx, pol[i])
            np.add.at(dEk[i], idx, s * pol[i])
            np.add.at(cBk[i], idx, polB[i])
            np.add.at(dcBk[i], idx, s * polB[i])
    E, dE, cB, dcB = (ifft3(a) * n3 for a in (Ek, dEk, cBk, dcBk))
    zero = np.zeros(grid.shape, dtype=complex)
    c = consts.c
    return RSField(grid, t, zero, E, cB / c, c, zero.copy(), dE, dcB / c)


def one_photon_potential(exp: ModeExpansion, grid: Grid, consts: PhysicalConstants) -> ModeField:
    """Coulomb-gauge potential (phi = 0) whose fields match :func:`expand_rs`.

    Each mode contributes ``j sqrt(hbar/(2 eps0 w)) / L^3 * a * e_lam``
    oscillating as ``exp(-j eps w t)``.
    """
    exp.check_lattice(grid)
    if not len(exp):
        return ModeField(grid, np.zeros((0, 3)), [], np.zeros((0, 4)), [])
    kabs = exp.kabs(grid)
    coef = exp.amp * potential_amplitude(kabs, grid, consts)
    amp4 = np.zeros((len(exp), 4), dtype=complex)
    amp4[:, 1:] = (exp.polarizations(grid) * coef).T
    return ModeField(grid, exp.k, exp.eps * consts.c * kabs, amp4, exp.eps)


def real_partner_amplitudes(exp: ModeExpansion, grid: Grid, consts: PhysicalConstants,
                            normalized: bool = True) -> ModeExpansion:
    """Modes ``(-k, -eps, lam)`` whose fields are the complex conjugates of
    the given ones.

    The partner keeps the helicity label because ``conj(e_lam(k_hat))`` is
    parallel to ``e_lam(-k_hat)``; the amplitude absorbs the triad phase
    between the two and the sign flip of the one-photon factor.
    """
    if not len(exp):
        return ModeExpansion.empty()
    kv = exp.wave_vectors(grid).T
    e_here = helicity_vector(kv, exp.lam)
    e_there = helicity_vector(-kv, exp.lam)
    overlap = np.sum(np.conj(e_there) * np.conj(e_here), axis=0)
    partner = ModeExpansion(-exp.k, -exp.eps, exp.lam, np.ones(len(exp)))
    n_here = _field_factor(exp, grid, consts, normalized)
    n_there = _field_factor(partner, grid, consts, normalized)
    # partner order differs after sorting; map through keys
    amp_by_key = {}
    for kk, e, l, a, nh, ov in zip(exp.k, exp.eps, exp.lam, exp.amp, n_here, overlap):
        amp_by_key[(tuple(-kk), -e, l)] = np.conj(nh * a) * ov
    ntab = dict(zip(partner.keys(), n_there))
    return ModeExpansion.from_modes((k, e, l, a / ntab[(k, e, l)]) for (k, e, l), a in amp_by_key.items())


def real_field_expansion(exp: ModeExpansion, grid: Grid, consts: PhysicalConstants,
                         normalized: bool = True) -> ModeExpansion:
    """Positive-frequency modes plus their conjugate partners (real E, B).

    Only ``eps = +1`` input modes are used.
    """
    pos = exp.positive_frequency()
    partners = real_partner_amplitudes(pos, grid, consts, normalized)
    return pos + partners


def project_modes(F: RSField, consts: PhysicalConstants, tol: float = 1e-8,
                  normalized: bool = True, drop: float = 1e-13) -> ModeExpansion:
    """Decompose a free transverse field into helicity/frequency-sign modes.

    ``conj(e_lam).E_hat`` gives ``c_+ + c_-`` and ``j lam conj(e_lam).cB_hat``
    gives ``c_+ - c_-``.  Content that is longitudinal, sits at ``k = 0`` or
    on Nyquist planes, or appears in the gauge scalar beyond ``tol`` (relative
    to the largest field coefficient) is rejected.
    """
    grid, c = F.grid, consts.c
    n3 = grid.n**3
    Ek = fft3(F.E) / n3
    Bk = fft3(c * F.B) / n3
    scale = max(np.max(np.abs(Ek)), np.max(np.abs(Bk)))
    if scale == 0:
        return ModeExpansion.empty()
    kvec, kabs = grid.kvec, grid.kabs
    bad = grid.nyquist.copy()
    bad[0, 0, 0] = True
    stray = max(np.max(np.abs(Ek[:, bad])), np.max(np.abs(Bk[:, bad])))
    if stray > tol * scale:
        raise NonTransverseError(f"field content at k = 0 or Nyquist: {stray / scale:.3e}")
    if np.max(np.abs(F.scalar)) > tol * scale * n3:
        raise NonTransverseError("gauge scalar Lambda is not zero")
    ok = ~bad
    khat = kvec[:, ok] / kabs[ok]
    long_E = np.abs(np.sum(khat * Ek[:, ok], axis=0))
    long_B = np.abs(np.sum(khat * Bk[:, ok], axis=0))
    worst = max(long_E.max(initial=0.0), long_B.max(initial=0.0))
    if worst > tol * scale:
        raise NonTransverseError(f"longitudinal content {worst / scale:.3e} of the field scale")
    m = np.stack(np.meshgrid(grid.lattice, grid.lattice, grid.lattice, indexing="ij"))[:, ok].T
    w = c * kabs[ok]
    items_k, items_e, items_l, items_a = [], [], [], []
    for lam in (1, -1):
        pol = np.conj(helicity_vector(khat, lam))
        u = np.sum(pol * Ek[:, ok], axis=0)
        v = 1j * lam * np.sum(pol * Bk[:, ok], axis=0)
        for eps, cc in ((1, (u + v) / 2), (-1, (u - v) / 2)):
            a = cc * np.exp(1j * eps * w * F.t)
            if normalized:
                a = a / field_amplitude(kabs[ok], eps, grid, consts)
            items_k.append(m)
            items_e.append(np.full(len(a), eps))
            items_l.append(np.full(len(a), lam))
            items_a.append(a)
    amp = np.concatenate(items_a)
    keep = np.abs(amp) > drop * np.max(np.abs(amp))
    return ModeExpansion(np.concatenate(items_k)[keep], np.concatenate(items_e)[keep],
                         np.concatenate(items_l)[keep], amp[keep])


def random_expansion(grid: Grid, rng, count: int = 8, kmax: int = 3,
                     eps=(1, -1), lam=(1, -1)) -> ModeExpansion:
    """Random modes with distinct keys inside ``|m_i| <= kmax``."""
    kmax = min(kmax, grid.n // 2 - 1)
    seen = {}
    while len(seen) < count:
        k = tuple(int(v) for v in rng.integers(-kmax, kmax + 1, size=3))
        if k == (0, 0, 0):
            continue
        key = (k, int(rng.choice(eps)), int(rng.choice(lam)))
        if key in seen:
            continue
        seen[key] = complex(rng.standard_normal(), rng.standard_normal())
    return ModeExpansion.from_modes((k, e, l, a) for (k, e, l), a in seen.items())
