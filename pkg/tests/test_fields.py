import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsphoton import NATURAL, SI, Grid
from rsphoton.em import grid as gmod
from rsphoton.em.grid import (band_limited_random, fft3, ifft3, poisson_solve, spectral_curl,
                              spectral_div, spectral_grad, spectral_laplacian, spectral_partial)
from rsphoton.em.potentials import (FourCurrent, ModeField, RSField, SampledPotential, compute_rs,
                                    gauge_transform, plane_wave_potential)
from rsphoton.errors import GridMismatchError, MissingTimeDerivativeError, OffLatticeError


def test_grid_rejects_bad_sizes():
    for n in (3, 6, 12, 2):
        with pytest.raises(ValueError):
            Grid(n, 1.0)
    with pytest.raises(ValueError):
        Grid(8, 0.0)


def test_grid_geometry():
    g = Grid(8, 4.0)
    assert g.dx == 0.5 and g.volume == 64.0 and g.dV == 0.125
    assert g.dk == pytest.approx(np.pi / 2)
    assert list(g.lattice) == [0, 1, 2, 3, -4, -3, -2, -1]
    assert g.nyquist.sum() == 8**3 - 7**3


def test_lattice_index_bounds():
    g = Grid(8, 1.0)
    assert g.lattice_index((1, -1, 3)) == (1, 7, 3)
    with pytest.raises(OffLatticeError):
        g.lattice_index((4, 0, 0))
    with pytest.raises(OffLatticeError):
        g.lattice_index(np.array([0.5, 0.0, 0.0]))
    assert g.lattice_index(np.array([1.0, 2.0, 0.0])) == (1, 2, 0)


def test_periodic_distance_uses_minimum_image():
    g = Grid(8, 8.0)
    d = g.periodic_distance((0.0, 0.0, 0.0))
    assert d[7, 0, 0] == pytest.approx(1.0)
    assert d.max() == pytest.approx(np.sqrt(3) * 4)


@pytest.mark.parametrize("axis", [0, 1, 2])
def test_spectral_partial_of_sine_is_exact(axis, grid16):
    x = grid16.coords[axis]
    k = 3 * grid16.dk
    f = np.sin(k * x)
    np.testing.assert_allclose(spectral_partial(f, axis, grid16).real, k * np.cos(k * x), atol=1e-12)


def test_odd_derivatives_drop_the_nyquist_mode(grid16):
    x = grid16.coords[0]
    f = np.cos(grid16.n // 2 * grid16.dk * x)  # alternating sign on the grid
    assert np.max(np.abs(spectral_partial(f, 0, grid16))) < 1e-12
    # the Laplacian keeps it
    lap = spectral_laplacian(f, grid16)
    np.testing.assert_allclose(lap.real, -(grid16.n // 2 * grid16.dk) ** 2 * f, atol=1e-9)


def test_vector_identities(grid16, rng):
    v = band_limited_random(grid16, rng, (3,))
    f = band_limited_random(grid16, rng)
    assert np.max(np.abs(spectral_div(spectral_curl(v, grid16), grid16))) < 1e-12
    assert np.max(np.abs(spectral_curl(spectral_grad(f, grid16), grid16))) < 1e-12
    # curl curl = grad div - laplacian
    lhs = spectral_curl(spectral_curl(v, grid16), grid16)
    rhs = spectral_grad(spectral_div(v, grid16), grid16) - np.stack([spectral_laplacian(c, grid16) for c in v])
    np.testing.assert_allclose(lhs, rhs, atol=1e-11)


def test_poisson_inverse_of_laplacian(grid16, rng):
    f = band_limited_random(grid16, rng)
    f = f - f.mean()
    np.testing.assert_allclose(poisson_solve(spectral_laplacian(f, grid16), grid16), f, atol=1e-12)


def test_band_limited_random_support(grid16, rng):
    f = band_limited_random(grid16, rng, kmax=2)
    spec = np.abs(fft3(f))
    outside = np.max(np.abs(grid16.lattice)[:, None, None] * 0 + np.abs(grid16.kvec / grid16.dk), axis=0) > 2
    assert np.max(spec[outside]) < 1e-12 * np.max(spec)
    assert np.max(np.abs(f)) == pytest.approx(1.0)
    r = band_limited_random(grid16, rng, real=True)
    assert np.all(r.imag == 0)


def test_thread_count_env_is_honoured(monkeypatch, grid16, rng):
    f = band_limited_random(grid16, rng)
    ref = fft3(f)
    monkeypatch.setenv("RSPHOTON_THREADS", "2")
    assert gmod._workers() == 2
    np.testing.assert_allclose(fft3(f), ref, atol=1e-12)
    np.testing.assert_allclose(ifft3(ref), f, atol=1e-12)
    monkeypatch.setenv("RSPHOTON_THREADS", "nonsense")
    assert gmod._workers() == 1
    monkeypatch.setenv("RSPHOTON_THREADS", "0")
    assert gmod._workers() == 1
    monkeypatch.delenv("RSPHOTON_THREADS")
    assert gmod._workers() >= 1


# potentials -> fields ------------------------------------------------------
@given(st.tuples(*[st.integers(-3, 3)] * 3), st.floats(-3, 3), st.floats(0, 5))
def test_plane_wave_fields_match_hand_derivatives(m, wscale, t):
    g = Grid(8, 2 * np.pi)
    c = NATURAL.c
    amp = np.array([0.3 - 0.2j, 1.0, -0.5j, 0.25 + 0.1j])
    omega = wscale
    A = plane_wave_potential(g, m, amp, omega)
    F = compute_rs(A, NATURAL, t)
    k = g.wave_vector(m)
    phase = np.exp(1j * (np.tensordot(k, g.coords, axes=1) - omega * t))
    phi, vec = c * amp[0], amp[1:]
    # E = -grad phi - d_t A, B = curl A, Lambda = d_t phi / c^2 + div A
    E = (-1j * k * phi + 1j * omega * vec)[:, None, None, None] * phase
    B = (1j * np.cross(k, vec))[:, None, None, None] * phase
    lam = (-1j * omega * phi / c**2 + 1j * k @ vec) * phase
    np.testing.assert_allclose(F.E, E, atol=1e-11)
    np.testing.assert_allclose(F.B, B, atol=1e-11)
    np.testing.assert_allclose(F.scalar, c * lam, atol=1e-11)
    np.testing.assert_allclose(F.dt_E, -1j * omega * E, atol=1e-10)


def test_sampled_potential_limits(grid16, rng):
    now = band_limited_random(grid16, rng, (4,))
    later = band_limited_random(grid16, rng, (4,))
    A = SampledPotential(grid16, 0.5, 0.01, now, later)
    F = compute_rs(A, NATURAL, 0.5)
    assert not F.has_time_backing
    with pytest.raises(MissingTimeDerivativeError):
        A.sample(0.7)
    with pytest.raises(MissingTimeDerivativeError):
        A.sample(0.5, 2)
    with pytest.raises(MissingTimeDerivativeError):
        SampledPotential(grid16, 0.0, 0.0, now, now).sample(0.0, 1)
    with pytest.raises(MissingTimeDerivativeError):
        F.dt_bold()


def test_gauge_transform_keeps_fields(units, rng):
    consts, L = units
    g = Grid(16, L)
    c = consts.c
    A = ModeField(g, rng.integers(-3, 4, (5, 3)), rng.uniform(-2, 2, 5) * g.dk * c,
                  rng.standard_normal((5, 4)) + 1j * rng.standard_normal((5, 4)))
    chi = ModeField(g, rng.integers(-3, 4, (3, 3)), rng.uniform(-2, 2, 3) * g.dk * c,
                    rng.standard_normal(3) / g.dk)
    before, after = compute_rs(A, consts, 0.3 * L / c), compute_rs(gauge_transform(A, chi, consts), consts, 0.3 * L / c)
    scale = np.max(np.abs(before.E))
    assert np.max(np.abs(after.E - before.E)) < 1e-12 * scale
    assert np.max(np.abs(after.B - before.B)) < 1e-12 * scale / c
    # sampled backing shifts both slices
    S = SampledPotential(g, 0.0, 1e-3 * L / c, A.sample(0.0), A.sample(1e-3 * L / c))
    S2 = gauge_transform(S, chi, consts)
    assert isinstance(S2, SampledPotential)
    with pytest.raises(ValueError):
        gauge_transform(A, A, consts)


def test_mode_field_validation():
    g = Grid(8, 1.0)
    with pytest.raises(ValueError):
        ModeField(g, [[1, 0, 0]], [1.0, 2.0], [[1, 0, 0, 0]])
    with pytest.raises(OffLatticeError):
        ModeField(g, [[5, 0, 0]], [1.0], [[1, 0, 0, 0]])
    A = ModeField(g, [[1, 0, 0], [0, 1, 0]], [1.0, -1.0], np.eye(2, 4), [1, -1])
    assert len(A.sheet(1)) == 1 and A.ncomp == 4
    conj = A.conj()
    np.testing.assert_allclose(conj.sample(0.2), np.conj(A.sample(0.2)), atol=1e-14)


def test_rs_field_grid_mismatch():
    g1, g2 = Grid(8, 1.0), Grid(8, 2.0)
    z1, z2 = np.zeros(g1.shape), np.zeros((3,) + g1.shape)
    F1 = RSField(g1, 0.0, z1, z2, z2, 1.0)
    F2 = RSField(g2, 0.0, z1, z2, z2, 1.0)
    with pytest.raises(GridMismatchError):
        F1 + F2
    J = FourCurrent(g1, z1, z2)
    assert J.four_vector(2.0).shape == (4,) + g1.shape


def test_si_constants():
    assert SI.c == pytest.approx(299792458.0)
    assert SI.mu0 * SI.eps0 * SI.c**2 == pytest.approx(1.0)
    assert SI.Z0 == pytest.approx(376.730313, rel=1e-8)
    assert NATURAL.Z0 == 1.0
