"""Free evolution of mode expansions and the light-cone diagnostic for pulses.

Evolution is exact: every lattice mode advances by ``exp(-j eps w t)``.
The diagnostic compares a real pulse, built from both frequency signs, with
its positive-frequency part.  The real pulse stays inside the light cone of
its initial support.  The positive-frequency part is nonlocal from the start
and leaks energy outside the cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .algebra import I
from .constants import NATURAL, PhysicalConstants
from .em.grid import Grid, fft3, spectral_curl
from .em.maxwell import curl_mv
from .em.potentials import RSField
from .errors import MissingTimeDerivativeError, TruncationError
from .modes import ModeExpansion, expand_rs, project_modes
from .quantum.products import KSpaceState, scalar_product_k


@dataclass(frozen=True)
class EvolutionPlan:
    """Snapshot times ``t0 + i dt`` for ``i = 0, stride, ..., steps``.

    ``expansion`` holds the amplitudes at ``t0``.
    """

    expansion: ModeExpansion
    t0: float
    dt: float
    steps: int
    stride: int = 1

    def __post_init__(self):
        if self.dt <= 0 or self.steps < 1 or self.stride < 1:
            raise ValueError("need dt > 0, steps >= 1 and stride >= 1")

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(0, self.steps + 1, self.stride)


def advance(exp: ModeExpansion, grid: Grid, consts: PhysicalConstants, tau: float) -> ModeExpansion:
    """Amplitudes after free evolution over ``tau``: ``a exp(-j eps w tau)``."""
    w = exp.omega(grid, consts)
    return exp.with_amplitudes(exp.amp * np.exp(-1j * exp.eps * w * tau))


def evolve(plan: EvolutionPlan, grid: Grid, consts: PhysicalConstants) -> list:
    """Amplitudes at every snapshot time of ``plan``."""
    return [advance(plan.expansion, grid, consts, t - plan.t0) for t in plan.times()]


def render(plan: EvolutionPlan, grid: Grid, consts: PhysicalConstants, t: float,
           normalized: bool = True) -> RSField:
    """Grid field at time ``t`` with exact time derivatives."""
    F = expand_rs(plan.expansion, grid, t - plan.t0, consts, normalized)
    return replace(F, t=float(t))


def kspace_norm(state, grid: Grid | None = None) -> float:
    """Squared norm under the k-space product of a :class:`KSpaceState` or a
    :class:`ModeExpansion` on ``grid``."""
    if isinstance(state, ModeExpansion):
        if grid is None:
            raise ValueError("a mode expansion needs its grid")
        state = KSpaceState.from_expansion(state, grid)
    return float(scalar_product_k(state, state).real)


def field_energy(F: RSField, consts: PhysicalConstants) -> float:
    """``(eps0/2) int (|E|^2 + c^2 |B|^2) dx``."""
    return float(0.5 * consts.eps0 * F.grid.integrate(energy_density(F, consts)))


def energy_density(F: RSField, consts: PhysicalConstants) -> np.ndarray:
    """``|E|^2 + c^2 |B|^2`` without the ``eps0/2`` prefactor."""
    return np.sum(np.abs(F.E) ** 2, axis=0) + consts.c**2 * np.sum(np.abs(F.B) ** 2, axis=0)


def schrodinger_residual(F: RSField, consts: PhysicalConstants) -> float:
    """``max |I d_ct F - curl F|`` relative to ``max |curl F|``.

    Uses the time derivative carried by the snapshot.
    """
    if not F.has_time_backing:
        raise MissingTimeDerivativeError("snapshot carries no time derivative")
    lhs = I * (F.dt_bold() / consts.c)
    rhs = curl_mv(F.bold(), F.grid)
    scale = np.max(np.abs(rhs.coeffs))
    return float(np.max(np.abs((lhs - rhs).coeffs)) / (scale if scale else 1.0))


def schrodinger_residual_fd(exp: ModeExpansion, grid: Grid, consts: PhysicalConstants,
                            t: float, dt: float, normalized: bool = True) -> float:
    """Same residual with ``d_t F`` replaced by a central difference of
    snapshots at ``t +- dt``; converges as ``dt^2``."""
    before = expand_rs(exp, grid, t - dt, consts, normalized)
    now = expand_rs(exp, grid, t, consts, normalized)
    after = expand_rs(exp, grid, t + dt, consts, normalized)
    dE = (after.E - before.E) / (2 * dt)
    dB = (after.B - before.B) / (2 * dt)
    fd = RSField(grid, t, now.scalar, now.E, now.B, now.c, None, dE, dB)
    return schrodinger_residual(fd, consts)


CONSTRUCTIONS = ("real-conjugate-pair", "positive-frequency-only")


@dataclass(frozen=True)
class PulseScenario:
    """Localized transverse pulse ``E0 = curl(G p)``, ``B0 = 0``.

    ``G`` is a Gaussian of width ``sigma`` (length units) about ``center``
    (default: box centre), optionally times ``cos(k_c . (x - center))`` with
    a lattice carrier ``k_c``.  The light cone starts at radius
    ``support * sigma``.  ``spectral_tol`` bounds the envelope spectrum on
    the Nyquist planes relative to its peak; energy fractions feel the tail
    only quadratically.
    """

    n: int = 32
    L: float = 32.0
    sigma: float = 2.5
    support: float = 5.2
    center: tuple | None = None
    polarization: tuple = (0.0, 0.0, 1.0)
    carrier: tuple = (0, 0, 0)
    construction: str = "real-conjugate-pair"
    spectral_tol: float = 1e-8

    def __post_init__(self):
        if self.construction not in CONSTRUCTIONS:
            raise ValueError(f"unknown pulse construction {self.construction!r}")
        if self.sigma < 2 * self.grid.dx:
            raise ValueError("pulse width must be at least two grid spacings")
        if not np.any(self.polarization):
            raise ValueError("pulse polarization must be nonzero")

    @property
    def grid(self) -> Grid:
        return Grid(self.n, self.L)

    @property
    def radius(self) -> float:
        return self.support * self.sigma

    @property
    def origin(self) -> np.ndarray:
        if self.center is None:
            return np.full(3, self.L / 2)
        return np.asarray(self.center, dtype=float)

    def contact_time(self, c: float) -> float:
        """Time at which the cone ``r0 + c t`` reaches half the box."""
        return (self.L / 2 - self.radius) / c


def pulse_initial_field(sc: PulseScenario, consts: PhysicalConstants = NATURAL):
    """Real initial ``E0`` and the spectral tail of its envelope on the Nyquist planes."""
    g = sc.grid
    x0 = sc.origin
    G = np.exp(-g.periodic_distance(x0) ** 2 / (2 * sc.sigma**2))
    if any(sc.carrier):
        kc = g.wave_vector(np.asarray(sc.carrier))
        G = G * np.cos(np.tensordot(kc, g.coords - x0[:, None, None, None], axes=1))
    p = np.asarray(sc.polarization, dtype=float)
    # the tail is read off the envelope: odd spectral derivatives zero the
    # Nyquist planes, so E0 itself would always look resolved
    spec = np.abs(fft3(G))
    tail = float(np.max(spec[g.nyquist]) / np.max(spec))
    E0 = spectral_curl(G[None] * p[:, None, None, None], g).real
    return E0, tail


def build_pulse(sc: PulseScenario, consts: PhysicalConstants = NATURAL) -> ModeExpansion:
    """Mode expansion of the pulse (unnormalized amplitudes).

    The real-conjugate-pair construction holds both frequency signs and
    reproduces the real initial field; the positive-frequency-only one keeps
    the ``eps = +1`` half, whose real part at ``t = 0`` is half the field.
    """
    E0, tail = pulse_initial_field(sc, consts)
    if tail > sc.spectral_tol:
        raise ValueError(f"pulse is not band-limited on this lattice: spectral tail {tail:.2e} "
                         "at the Nyquist planes (too narrow, or too wide for the periodic box)")
    g = sc.grid
    zero = np.zeros(g.shape, dtype=complex)
    F0 = RSField(g, 0.0, zero, E0.astype(complex), np.zeros_like(E0, dtype=complex), consts.c)
    exp = project_modes(F0, consts, normalized=False)
    if sc.construction == "positive-frequency-only":
        return exp.positive_frequency()
    return exp


@dataclass
class CausalityReport:
    """Per-snapshot cone radius and interior/exterior energy fractions."""

    construction: str
    times: list
    radii: list
    interior: list
    exterior: list
    reality_error: list
    contact_time: float
    truncated: bool = False
    requested: list = field(default_factory=list)

    @property
    def initial_exterior(self) -> float:
        return self.exterior[0] if self.times and self.times[0] == 0 else float("nan")

    def as_dict(self) -> dict:
        return {
            "construction": self.construction,
            "contact_time": float(self.contact_time),
            "truncated": bool(self.truncated),
            "snapshots": [
                {"t": float(t), "radius": float(r), "interior": float(i), "exterior": float(e),
                 "reality_error": float(q)}
                for t, r, i, e, q in zip(self.times, self.radii, self.interior, self.exterior,
                                         self.reality_error)
            ],
        }


def exterior_fraction(F: RSField, consts: PhysicalConstants, center, radius: float) -> float:
    """Share of ``|E|^2 + c^2|B|^2`` at periodic distance beyond ``radius``."""
    u = energy_density(F, consts)
    d = F.grid.periodic_distance(center)
    total = np.sum(u)
    return float(np.sum(u[d > radius]) / total) if total else 0.0


def causality_scan(exp: ModeExpansion, sc: PulseScenario, times, consts: PhysicalConstants = NATURAL,
                   strict: bool = False, initial_tol: float | None = 1e-9) -> CausalityReport:
    """Energy outside the cone ``r0 + c t`` for each requested time.

    Times at or beyond cone-boundary contact are dropped and the report is
    flagged as truncated; with ``strict`` a :class:`TruncationError` is
    raised instead.  For the real construction the initial exterior
    fraction must be below ``initial_tol``.
    """
    g = sc.grid
    contact = sc.contact_time(consts.c)
    if contact <= 0:
        raise TruncationError("the initial support already reaches half the box")
    requested = [float(t) for t in times]
    kept = [t for t in requested if 0 <= t < contact]
    truncated = len(kept) < len(requested)
    if truncated and strict:
        raise TruncationError(f"cone exits the box at t = {contact:.4g}")
    if initial_tol is not None and sc.construction == "real-conjugate-pair":
        F0 = expand_rs(exp, g, 0.0, consts, normalized=False)
        init = exterior_fraction(F0, consts, sc.origin, sc.radius)
        if init >= initial_tol:
            raise ValueError(f"initial exterior fraction {init:.2e} exceeds {initial_tol:.0e}; enlarge the support radius")
    radii, inside, outside, real_err = [], [], [], []
    for t in kept:
        F = expand_rs(exp, g, t, consts, normalized=False)
        R = sc.radius + consts.c * t
        ext = exterior_fraction(F, consts, sc.origin, R)
        radii.append(R)
        outside.append(ext)
        inside.append(1.0 - ext)
        scale = max(np.max(np.abs(F.E)), consts.c * np.max(np.abs(F.B)))
        real_err.append(float(max(np.max(np.abs(F.E.imag)), consts.c * np.max(np.abs(F.B.imag))) / scale))
    return CausalityReport(sc.construction, kept, radii, inside, outside, real_err, contact,
                           truncated, requested)


def radial_profile(F: RSField, consts: PhysicalConstants, center, bins: int = 32,
                   rmax: float | None = None):
    """Enclosed share of ``|E|^2 + c^2|B|^2`` within spheres about ``center``.

    Returns ``(r, enclosed)`` at ``bins`` radii up to ``rmax`` (default L/2).
    """
    g = F.grid
    d = g.periodic_distance(center).ravel()
    u = energy_density(F, consts).ravel()
    rmax = g.L / 2 if rmax is None else rmax
    r = np.linspace(rmax / bins, rmax, bins)
    order = np.argsort(d)
    cum = np.cumsum(u[order])
    pos = np.searchsorted(d[order], r, side="right")
    total = cum[-1] if cum[-1] else 1.0
    enclosed = np.where(pos > 0, cum[np.maximum(pos - 1, 0)], 0.0) / total
    return r, enclosed
