"""Light-cone diagnostic for a localized pulse on a 32^3 periodic box.

Builds the same initial electric field twice: once keeping both frequency
signs (a real field) and once keeping only the positive-frequency half.
Prints the share of field energy outside the cone ``r0 + c t`` at each
snapshot up to cone-boundary contact.

    python3 demos/pulse_causality.py
"""

import numpy as np

from rsphoton import NATURAL
from rsphoton.dynamics import PulseScenario, build_pulse, causality_scan


def main():
    consts = NATURAL
    reports = {}
    for construction in ("real-conjugate-pair", "positive-frequency-only"):
        sc = PulseScenario(construction=construction)
        times = np.linspace(0.0, sc.contact_time(consts.c), 8, endpoint=False)
        reports[construction] = causality_scan(build_pulse(sc, consts), sc, times, consts,
                                               initial_tol=1e-9 if construction.startswith("real") else None)
    real, pos = reports["real-conjugate-pair"], reports["positive-frequency-only"]
    print(f"cone starts at r0 = {sc.radius:.2f}, touches the box edge at t = {real.contact_time:.2f}")
    print(f"{'t':>6} {'radius':>7} {'exterior (real)':>16} {'exterior (eps=+1)':>18}")
    for t, r, er, ep in zip(real.times, real.radii, real.exterior, pos.exterior):
        print(f"{t:6.2f} {r:7.2f} {er:16.3e} {ep:18.3e}")
    print(f"largest imaginary part of the real pulse: {max(real.reality_error):.1e} (relative)")


if __name__ == "__main__":
    main()
