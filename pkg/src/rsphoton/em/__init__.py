"""Periodic-box electromagnetic fields, Maxwell residuals, Lagrangians and
Noether currents."""

from .currents import continuity_residual, continuity_source, noether_current, photon_number
from .grid import (Grid, band_limited_random, fft3, ifft3, poisson_solve, spectral_curl,
                   spectral_div, spectral_grad, spectral_laplacian, spectral_partial)
from .maxwell import (box_scalar, conjugate_momentum, curl_mv, derivative_tensor, faraday,
                      faraday_from_fields, graded_as_classical, lagrange_residual,
                      lagrangian_density, maxwell_residual_rs, maxwell_split, nabla, wave_residual)
from .potentials import (FourCurrent, ModeField, RSField, SampledPotential, compute_rs,
                         gauge_transform, plane_wave_potential)

__all__ = [
    "FourCurrent", "Grid", "ModeField", "RSField", "SampledPotential",
    "band_limited_random", "box_scalar", "compute_rs", "conjugate_momentum",
    "continuity_residual", "continuity_source", "curl_mv", "derivative_tensor",
    "faraday", "faraday_from_fields", "fft3", "gauge_transform", "graded_as_classical",
    "ifft3", "lagrange_residual", "lagrangian_density", "maxwell_residual_rs",
    "maxwell_split", "nabla", "noether_current", "photon_number", "plane_wave_potential",
    "poisson_solve", "spectral_curl", "spectral_div", "spectral_grad",
    "spectral_laplacian", "spectral_partial", "wave_residual",
]
