"""Free evolution of a few helicity modes.

Evolves a superposition of both frequency signs and both helicities, then
reports the k-space norm, the first-order (Schrodinger-form) residual and
the field energy at several times.  Each mode only picks up a phase, so all
three stay fixed.

    python3 demos/mode_evolution.py
"""

import numpy as np

from rsphoton import NATURAL, Grid, ModeExpansion, project_modes
from rsphoton.dynamics import EvolutionPlan, field_energy, kspace_norm, render, schrodinger_residual
from rsphoton.quantum.products import KSpaceState


def main():
    consts = NATURAL
    grid = Grid(16, 16.0)
    exp = ModeExpansion([(1, 0, 0), (0, 2, -1), (1, 1, 1)], [1, -1, 1], [1, -1, -1],
                        np.array([1.0, 0.4 + 0.3j, -0.2j]) * np.sqrt(grid.volume))
    period = grid.L / consts.c
    plan = EvolutionPlan(exp, 0.0, period / 8, steps=40, stride=8)
    print(f"{'t':>6} {'norm':>12} {'residual':>10} {'energy':>12}")
    for t in plan.times():
        F = render(plan, grid, consts, t)
        state = KSpaceState.from_expansion(project_modes(F, consts), grid)
        print(f"{t:6.2f} {kspace_norm(state):12.9f} {schrodinger_residual(F, consts):10.2e} "
              f"{field_energy(F, consts):12.9f}")


if __name__ == "__main__":
    main()
