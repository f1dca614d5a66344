"""Maxwell's equations in graded form and their classical split, the wave
equation for the potential, the Faraday tensor, Lagrangian densities and
conjugate momenta."""

from __future__ import annotations

import numpy as np

from ..algebra import BASIS, Multivector, Paravector, gp
from ..constants import PhysicalConstants
from ..errors import MissingTimeDerivativeError
from .grid import Grid, spectral_curl, spectral_div, spectral_grad, spectral_laplacian, spectral_partial
from .potentials import FourCurrent, ModeField, RSField, compute_rs

METRIC = np.array([1.0, -1.0, -1.0, -1.0])
LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0

GRADE_NAMES = ("scalar", "vector", "bivector", "trivector")


def mv_partial(M: Multivector, axis: int, grid: Grid) -> Multivector:
    return Multivector(spectral_partial(M.coeffs, axis, grid))


def nabla(M: Multivector, grid: Grid) -> Multivector:
    """Left action of the vector derivative, ``sum_k e_k d_k M``."""
    out = Multivector.zeros(M.shape)
    for axis in range(3):
        out = out + gp(BASIS[1 + axis], mv_partial(M, axis, grid))
    return out


def curl_mv(M: Multivector, grid: Grid) -> Multivector:
    """Curl of the vector and bivector parts of ``E + I cB`` style fields."""
    return Multivector.from_parts(0.0, spectral_curl(M.vector, grid),
                                  spectral_curl(M.bivector, grid), 0.0)


def _graded(M: Multivector) -> dict:
    c = M.coeffs
    return {"scalar": c[0], "vector": c[1:4], "bivector": c[4:7], "trivector": c[7]}


def maxwell_residual_rs(F: RSField, consts: PhysicalConstants, source: FourCurrent | None = None) -> dict:
    """Grades of ``d-bar F - Z0 J-bar_m`` with ``d-bar = d_ct + nabla``.

    ``F`` is the bold RS vector ``E + I cB``; the gauge scalar is not part of
    this equation.
    """
    if not F.has_time_backing:
        raise MissingTimeDerivativeError("maxwell residual needs d_ct F")
    g, c = F.grid, consts.c
    res = F.dt_bold() / c + nabla(F.bold(), g)
    if source is not None:
        g.check_same(source.grid)
        res = res - consts.Z0 * source.paravector(c).bar().to_multivector()
    return _graded(res)


def maxwell_split(F: RSField, consts: PhysicalConstants, source: FourCurrent | None = None) -> dict:
    """Residuals of the four classical Maxwell equations.

    ``div B``, ``d_t B + curl E``, ``div E - rho/eps0`` and
    ``d_t E - c^2 curl B + J/eps0``.
    """
    if not F.has_time_backing:
        raise MissingTimeDerivativeError("maxwell residual needs d_t E and d_t B")
    g, c = F.grid, consts.c
    gauss = spectral_div(F.E, g)
    ampere = F.dt_E - c**2 * spectral_curl(F.B, g)
    if source is not None:
        gauss = gauss - source.j0 / consts.eps0
        ampere = ampere + source.j / consts.eps0
    return {
        "div_B": spectral_div(F.B, g),
        "faraday": F.dt_B + spectral_curl(F.E, g),
        "gauss": gauss,
        "ampere": ampere,
    }


def graded_as_classical(graded: dict, consts: PhysicalConstants) -> dict:
    """Rescale graded residuals onto the classical ones they correspond to."""
    c = consts.c
    return {
        "gauss": graded["scalar"],
        "ampere": c * graded["vector"],
        "faraday": graded["bivector"],
        "div_B": graded["trivector"] / c,
    }


def wave_residual(A, consts: PhysicalConstants, t: float = 0.0,
                  source: FourCurrent | None = None) -> Paravector:
    """Residual of ``c box A-bar = c d-bar Lambda + Z0 J-bar_m``.

    Needs the second time derivative, so only mode-backed potentials qualify.
    """
    if not isinstance(A, ModeField):
        raise MissingTimeDerivativeError("wave equation needs a mode-backed potential")
    g, c = A.grid, consts.c
    a0, a1, a2 = (A.sample(t, o) for o in range(3))
    box = a2 / c**2 - spectral_laplacian(a0, g)
    lam = a1[0] / c + spectral_div(a0[1:], g)
    dlam = a2[0] / c + spectral_div(a1[1:], g)
    scalar = c * box[0] - dlam
    vector = -c * box[1:] - c * spectral_grad(lam, g)
    if source is not None:
        scalar = scalar - consts.Z0 * c * source.j0
        vector = vector + consts.Z0 * source.j
    return Paravector(scalar, vector)


def derivative_tensor(A, consts: PhysicalConstants, t: float = 0.0, order: int = 0) -> np.ndarray:
    """``D[mu, nu] = d^mu A^nu`` (time-differentiated ``order`` times)."""
    g, c = A.grid, consts.c
    a = A.sample(t, order)
    da = A.sample(t, order + 1)
    D = np.empty((4, 4) + g.shape, dtype=complex)
    D[0] = da / c
    for i in range(3):
        D[1 + i] = -spectral_partial(a, i, g)
    return D


def faraday(A, consts: PhysicalConstants, t: float = 0.0, order: int = 0) -> np.ndarray:
    """``F^{mu nu} = d^mu A^nu - d^nu A^mu``, shape (4, 4, n, n, n)."""
    D = derivative_tensor(A, consts, t, order)
    return D - np.swapaxes(D, 0, 1)


def faraday_from_fields(E, B, c: float) -> np.ndarray:
    """Faraday tensor from E and B: ``F^{i0} = E_i/c``, ``F^{ij} = -eps_ijk B_k``."""
    E, B = np.asarray(E), np.asarray(B)
    T = np.zeros((4, 4) + E.shape[1:], dtype=complex)
    T[1:, 0] = E / c
    T[0, 1:] = -E / c
    T[1:, 1:] = -np.einsum("ijk,k...->ij...", LEVI_CIVITA, B)
    return T


def _lower(T: np.ndarray) -> np.ndarray:
    g = METRIC.reshape((4,) + (1,) * (T.ndim - 1))
    return g * T


def _contract2(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """``X*_{mu nu} Y^{mu nu}`` with both indices lowered on the first factor."""
    w = np.outer(METRIC, METRIC).reshape((4, 4) + (1,) * (X.ndim - 2))
    return np.sum(w * np.conj(X) * Y, axis=(0, 1))


def lagrangian_density(kind: str, A=None, consts: PhysicalConstants = None, t: float = 0.0,
                       source: FourCurrent | None = None, fields: RSField | None = None) -> np.ndarray:
    """Pointwise Lagrangian density of the complexified theory.

    ``std``: ``eps0 (E*.E - c^2 B*.B)``; ``fermi``: ``std - eps0 c^2 |Lambda|^2``;
    ``cov``: ``-eps0 c^2 (d^mu A*_nu)(d_mu A^nu)``;
    ``int``: ``-J*^nu A_nu - J^nu A*_nu``.
    """
    c, eps0 = consts.c, consts.eps0
    if kind in ("std", "fermi"):
        if fields is None:
            if A is None:
                raise ValueError(f"{kind} density needs a potential or fields")
            fields = compute_rs(A, consts, t)
        E, B = fields.E, fields.B
        L = eps0 * (np.sum(np.conj(E) * E, axis=0) - c**2 * np.sum(np.conj(B) * B, axis=0))
        if kind == "fermi":
            lam = fields.scalar / c
            L = L - eps0 * c**2 * np.conj(lam) * lam
        return L
    if kind == "cov":
        if A is None:
            raise ValueError("cov density needs a potential")
        D = derivative_tensor(A, consts, t)
        return -eps0 * c**2 * _contract2(D, D)
    if kind == "int":
        if A is None or source is None:
            raise ValueError("int density needs a potential and a matter current")
        a = A.sample(t)
        J = source.four_vector(c)
        g = METRIC.reshape((4,) + (1,) * (a.ndim - 1))
        return -np.sum(g * (np.conj(J) * a + J * np.conj(a)), axis=0)
    raise ValueError(f"unknown Lagrangian kind {kind!r}")


def conjugate_momentum(kind: str, A, consts: PhysicalConstants, t: float = 0.0, order: int = 0) -> np.ndarray:
    """``Pi^{mu nu} = dL / d(d_mu A*_nu)``: ``-eps0 c^2 F`` (std) or
    ``-eps0 c^2 d^mu A^nu`` (cov)."""
    pref = -consts.eps0 * consts.c**2
    if kind == "std":
        return pref * faraday(A, consts, t, order)
    if kind == "cov":
        return pref * derivative_tensor(A, consts, t, order)
    raise ValueError(f"unknown momentum kind {kind!r}")


def lagrange_residual(kind: str, A, consts: PhysicalConstants, t: float = 0.0,
                      source: FourCurrent | None = None) -> np.ndarray:
    """``d_mu Pi^{mu nu} - dL/dA*_nu`` with the interaction term included
    when a matter current is given; shape (4, n, n, n)."""
    if not isinstance(A, ModeField):
        raise MissingTimeDerivativeError("Lagrange equation needs second time derivatives")
    g, c = A.grid, consts.c
    Pi = conjugate_momentum(kind, A, consts, t)
    dPi = conjugate_momentum(kind, A, consts, t, order=1)
    res = dPi[0] / c
    for i in range(3):
        res = res + spectral_partial(Pi[1 + i], i, g)
    if source is not None:
        res = res + source.four_vector(c)
    return res


def box_scalar(chi: ModeField, consts: PhysicalConstants, t: float = 0.0) -> np.ndarray:
    """``box chi = d_ct^2 chi - laplacian chi`` from time derivatives and a
    spectral Laplacian."""
    return chi.sample(t, 2)[0] / consts.c**2 - spectral_laplacian(chi.sample(t)[0], chi.grid)
