"""Free oscillator: both pictures report the same constant vacuum moment.

With no charge and no drive the ground state is stationary, so the
second position moment must stay at hbar/(2 m omega0) = 0.5 in natural
units -- in the wavepacket engine (Schrodinger picture) and in the
operator engine (Heisenberg picture) alike.
"""

import numpy as np

import picture_lab as pl

params = pl.OscillatorParams(mass=1.0, omega0=1.0, charge=0.0, hbar=1.0)
print(f"ground-state width sigma = {pl.ground_state_width(params):.8f}")
print(f"sigma^2 (the vacuum moment) = {pl.ground_state_width(params)**2:.8f}")

scenario = pl.Scenario(
    name="free-demo",
    params=params,
    field=pl.FieldModel.zero(),
    ics=pl.InitialConditions(0.0, 0.0),
    time_grid=pl.TimeGrid(0.0, 3.0 * params.period, 60_000),
    record_every=60,
)
report = pl.run_equivalence(scenario)

print()
print("propagating the ground state for 3 periods:")
print(f"  max |<x^2>_S - 0.5| = {np.max(np.abs(report.x2_s - 0.5)):.3e}")
print(f"  max |<x^2>_H - 0.5| = {np.max(np.abs(report.x2_h - 0.5)):.3e}")
print(f"  sup |<x^2>_S - <x^2>_H| = {report.sup_discrepancy:.3e}")
print(f"  pictures equivalent: {report.equivalence_pass}")

# the moment decomposes into vacuum term + displacement^2 (here zero)
pgrid = pl.PositionGrid.for_state(params)
vacuum, shift = pl.decompose_x2(pl.ground_state(params, pgrid), 0.0)
print()
print(f"moment decomposition of the ground state: vacuum {vacuum:.6f} "
      f"+ shift {shift:.6f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(report.times, report.x2_s - 0.5, label=r"$\langle x^2\rangle_S - 1/2$")
    ax.plot(report.times, report.x2_h - 0.5, "--",
            label=r"$\langle x^2\rangle_H - 1/2$")
    ax.set_xlabel("t")
    ax.set_ylabel("deviation from the vacuum moment")
    ax.legend()
    ax.set_title("Free oscillator: both pictures sit on 0.5")
    fig.tight_layout()
    fig.savefig("01_free_oscillator.png", dpi=150)
    print("\nplot saved to 01_free_oscillator.png")
except ImportError:
    print("\n(matplotlib not available; skipping the plot)")
