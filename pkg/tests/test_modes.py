import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsphoton import NATURAL, Grid
from rsphoton.em.potentials import RSField, compute_rs
from rsphoton.errors import ExcludedPointError, NonTransverseError, OffLatticeError
from rsphoton.modes import (ModeExpansion, PlaneWaveMode, expand_rs, field_amplitude, helicity_triad,
                            helicity_vector, one_photon_potential, plane_wave_B, plane_wave_E,
                            plane_wave_F, project_modes, random_expansion, real_field_expansion,
                            real_partner_amplitudes)

DOCS = Path(__file__).resolve().parents[1] / "docs"

_direction = st.tuples(*[st.floats(-1, 1, allow_nan=False)] * 3).filter(lambda v: np.linalg.norm(v) > 1e-3)


@given(_direction)
def test_triad_is_right_handed_orthonormal(v):
    khat = np.array(v) / np.linalg.norm(v)
    et, ep = helicity_triad(khat)
    for a, b in ((et, et), (ep, ep)):
        assert np.dot(a, b) == pytest.approx(1.0)
    assert abs(np.dot(et, ep)) < 1e-12 and abs(np.dot(et, khat)) < 1e-12
    np.testing.assert_allclose(np.cross(et, ep), khat, atol=1e-12)


@given(_direction, st.sampled_from([1, -1]))
def test_helicity_vector_is_curl_eigenvector(v, lam):
    khat = np.array(v) / np.linalg.norm(v)
    e = helicity_vector(khat, lam)
    assert np.vdot(e, e).real == pytest.approx(1.0)
    assert abs(np.dot(khat, e)) < 1e-12
    # j k_hat x e = lam e
    np.testing.assert_allclose(1j * np.cross(khat, e), lam * e, atol=1e-12)
    # opposite helicities are orthogonal under the conjugated product
    assert abs(np.vdot(helicity_vector(khat, -lam), e)) < 1e-12


@given(_direction, st.sampled_from([1, -1]))
def test_conjugate_polarization_keeps_helicity_under_k_reversal(v, lam):
    khat = np.array(v) / np.linalg.norm(v)
    conj = np.conj(helicity_vector(khat, lam))
    same = helicity_vector(-khat, lam)
    flipped = helicity_vector(-khat, -lam)
    assert abs(abs(np.vdot(same, conj)) - 1.0) < 1e-12
    assert abs(np.vdot(flipped, conj)) < 1e-12


def test_triad_poles():
    et, ep = helicity_triad(np.array([0.0, 0.0, 1.0]))
    np.testing.assert_allclose(et, [1, 0, 0])
    np.testing.assert_allclose(ep, [0, 1, 0])
    et, ep = helicity_triad(np.array([0.0, 0.0, -2.0]))
    np.testing.assert_allclose(et, [-1, 0, 0])
    with pytest.raises(ValueError):
        helicity_triad(np.zeros(3))
    with pytest.raises(ValueError):
        helicity_vector(np.array([1.0, 0, 0]), 0)


def test_plane_wave_mode_validation():
    with pytest.raises(ValueError):
        PlaneWaveMode((0, 0, 0), 1, 1)
    with pytest.raises(ValueError):
        PlaneWaveMode((1, 0, 0), 2, 1)


@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("lam", [1, -1])
def test_plane_wave_relations(eps, lam):
    mode = PlaneWaveMode((0.3, -1.2, 0.7), eps, lam, 0.5 - 0.25j)
    x = np.random.default_rng(5).uniform(0, 3, (3, 10))
    E = plane_wave_E(mode, x, 0.8, NATURAL)
    B = plane_wave_B(mode, x, 0.8, NATURAL)
    np.testing.assert_allclose(B, -1j * eps * lam * E)
    F = plane_wave_F(mode, x, 0.8, NATURAL)
    np.testing.assert_allclose(F.vector, E)
    np.testing.assert_allclose(F.bivector, B)
    # time dependence exp(-j eps w t)
    later = plane_wave_E(mode, x, 0.8 + 0.1, NATURAL)
    np.testing.assert_allclose(later, E * np.exp(-1j * eps * mode.omega(NATURAL) * 0.1))


def test_grid_expansion_matches_pointwise_plane_waves(grid16):
    exp = ModeExpansion([(1, 2, -1), (0, -3, 2)], [1, -1], [-1, 1], [0.7, 0.2 + 0.4j])
    F = expand_rs(exp, grid16, 0.45, NATURAL, normalized=False)
    E = sum(plane_wave_E(exp.mode(i, grid16), grid16.coords, 0.45, NATURAL) for i in range(2))
    B = sum(plane_wave_B(exp.mode(i, grid16), grid16.coords, 0.45, NATURAL) for i in range(2))
    np.testing.assert_allclose(F.E, E, atol=1e-12)
    np.testing.assert_allclose(F.B, B, atol=1e-12)


def test_one_photon_potential_reproduces_normalized_fields(units, rng):
    consts, L = units
    g = Grid(16, L)
    exp = random_expansion(g, rng, 6)
    t = 0.2 * L / consts.c
    F = expand_rs(exp, g, t, consts)
    G = compute_rs(one_photon_potential(exp, g, consts), consts, t)
    scale = np.max(np.abs(F.E))
    assert np.max(np.abs(F.E - G.E)) < 1e-12 * scale
    assert np.max(np.abs(F.B - G.B)) * consts.c < 1e-12 * scale
    assert np.max(np.abs(G.scalar)) < 1e-12 * scale
    # magnitude of the one-photon field
    a = field_amplitude(np.array([1.0]), np.array([1]), Grid(8, 2.0), consts)
    assert abs(a[0]) == pytest.approx(np.sqrt(consts.hbar * consts.c / (2 * consts.eps0)) / 8.0)


def test_expansion_sorting_and_keys():
    exp = ModeExpansion([(2, 0, 0), (1, 0, 0), (1, 0, 0)], [1, -1, 1], [1, 1, 1], [3, 1, 2])
    assert exp.keys() == [((1, 0, 0), -1, 1), ((1, 0, 0), 1, 1), ((2, 0, 0), 1, 1)]
    np.testing.assert_array_equal(exp.amp, [1, 2, 3])
    with pytest.raises(ValueError):
        ModeExpansion([(1, 0, 0)] * 2, [1, 1], [1, 1], [1, 2])
    with pytest.raises(ExcludedPointError):
        ModeExpansion([(0, 0, 0)], [1], [1], [1])
    with pytest.raises(ValueError):
        ModeExpansion([(1, 0, 0)], [0], [1], [1])
    with pytest.raises(ValueError):
        ModeExpansion([(1, 0, 0)], [1], [1], [1, 2])
    summed = exp + exp.select([True, False, False])
    assert summed.as_dict()[((1, 0, 0), -1, 1)] == 2
    assert len(exp.positive_frequency()) == 2
    assert len(ModeExpansion.empty()) == 0


def test_records_roundtrip_and_schema():
    schema = json.loads((DOCS / "mode-expansion.schema.json").read_text())
    exp = ModeExpansion([(1, -2, 3), (0, 0, 1)], [1, -1], [-1, 1], [0.5 + 0.25j, -1j])
    records = exp.to_records()
    jsonschema.validate(records, schema)
    back = ModeExpansion.from_json(exp.to_json())
    assert back.keys() == exp.keys()
    np.testing.assert_array_equal(back.amp, exp.amp)
    with pytest.raises(OffLatticeError):
        ModeExpansion.from_records([{"k": [0.5, 0, 0], "eps": 1, "lam": 1, "re": 1, "im": 0}])
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate([{"k": [1, 0], "eps": 1, "lam": 1, "re": 1, "im": 0}], schema)
    with pytest.raises(OffLatticeError):
        ModeExpansion([(8, 0, 0)], [1], [1], [1]).check_lattice(Grid(16, 1.0))


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_projection_inverts_expansion(seed, normalized):
    g = Grid(8, 2 * np.pi)
    rng = np.random.default_rng(seed)
    exp = random_expansion(g, rng, 6)
    t = rng.uniform(0, 10)
    back = project_modes(expand_rs(exp, g, t, NATURAL, normalized), NATURAL, normalized=normalized)
    assert back.keys() == exp.keys()
    np.testing.assert_allclose(back.amp, exp.amp, atol=1e-12 * np.max(np.abs(exp.amp)))


def test_projection_rejects_non_photon_content(grid16, rng):
    F = expand_rs(random_expansion(grid16, rng, 4), grid16, 0.0, NATURAL)
    x = grid16.coords[0]
    long_E = F.E.copy()
    long_E[0] += 0.1 * np.max(np.abs(F.E)) * np.exp(1j * grid16.dk * x)  # along k = e1
    with pytest.raises(NonTransverseError):
        project_modes(RSField(grid16, 0.0, F.scalar, long_E, F.B, 1.0), NATURAL)
    uniform = F.E + 0.1 * np.max(np.abs(F.E))
    with pytest.raises(NonTransverseError):
        project_modes(RSField(grid16, 0.0, F.scalar, uniform, F.B, 1.0), NATURAL)
    nyq = F.E.copy()
    nyq[2] += 0.1 * np.max(np.abs(F.E)) * np.cos(np.pi * np.arange(16))[:, None, None]
    with pytest.raises(NonTransverseError):
        project_modes(RSField(grid16, 0.0, F.scalar, nyq, F.B, 1.0), NATURAL)
    with pytest.raises(NonTransverseError):
        project_modes(RSField(grid16, 0.0, F.scalar + np.max(np.abs(F.E)), F.E, F.B, 1.0), NATURAL)
    zero = RSField(grid16, 0.0, F.scalar * 0, F.E * 0, F.B * 0, 1.0)
    assert len(project_modes(zero, NATURAL)) == 0


@pytest.mark.parametrize("normalized", [True, False])
def test_real_partners_give_real_fields(units, rng, normalized):
    consts, L = units
    g = Grid(16, L)
    exp = random_expansion(g, rng, 6, eps=(1,))
    real = real_field_expansion(exp, g, consts, normalized)
    assert len(real) == 12
    for t in (0.0, 0.37 * L / consts.c):
        F = expand_rs(real, g, t, consts, normalized)
        assert np.max(np.abs(F.E.imag)) < 1e-13 * np.max(np.abs(F.E))
        assert np.max(np.abs(F.B.imag)) < 1e-13 * np.max(np.abs(F.B))
        half = expand_rs(exp, g, t, consts, normalized)
        np.testing.assert_allclose(F.E.real, 2 * half.E.real, atol=1e-13 * np.max(np.abs(F.E)))
    partners = real_partner_amplitudes(exp, g, consts, normalized)
    assert all(e == -1 for _, e, _ in partners.keys())
    assert sorted(l for *_, l in partners.keys()) == sorted(exp.lam)
    assert len(real_partner_amplitudes(ModeExpansion.empty(), g, consts)) == 0


@pytest.mark.parametrize("eps,lam", [(1, 1), (-1, -1), (1, -1), (-1, 1)])
def test_rotation_sense_about_k(eps, lam):
    # right-hand angle about e3 swept by Re E over a quarter period
    g = Grid(8, 8.0)
    exp = ModeExpansion([(0, 0, 1)], [eps], [lam], [1.0])
    period = 2 * np.pi / exp.omega(g, NATURAL)[0]
    a, b = (expand_rs(exp, g, t, NATURAL).E[:, 0, 0, 0].real for t in (0.0, period / 4))
    angle = np.degrees(np.arctan2(np.cross(a, b)[2], a @ b))
    assert angle == pytest.approx(90.0 * eps * lam, abs=1e-9)
