"""Reproduce, then refute, the identification behind the factor-of-two claim.

The moment of a displaced ground state splits exactly as
<x^2>_S = vacuum + q_c^2.  Because <x_H(t)> and q_c(t) obey the same
equation of motion, it is tempting to identify q_c^2 with the full
Heisenberg moment <x_H^2(t)>.  That substitution is wrong: squaring an
operator is not squaring its mean.  The residual <x_H^2> - q_c^2 equals
the vacuum term (never zero), and pushing the substitution through the
decomposition manufactures a spurious doubled moment.  The e -> 0 limit
makes the failure obvious: q_c = 0 solves the equation of motion while
<x_H^2> stays at the vacuum value.
"""

import numpy as np

import picture_lab as pl

params = pl.OscillatorParams(mass=1.0, omega0=1.0, charge=1.0, hbar=1.0)
vacuum = pl.ground_state_width(params) ** 2
print(f"vacuum moment hbar/(2 m omega0) = {vacuum}")

# --- step 1: the flawed substitution, mechanically -----------------------
flawed_free = pl.flawed_pipeline_value(vacuum, vacuum)
print(f"\nflawed pipeline with free inputs: vacuum + <x_H^2> = {flawed_free}")
print(f"that is exactly twice the correct value {vacuum} -- the claimed "
      f"hbar/(m omega0)")

# --- step 2: the residual that the identification needs to vanish --------
scenario = pl.Scenario(
    name="flawed-demo",
    params=params,
    field=pl.FieldModel.monochromatic(amplitude=0.2, omega=0.5),
    ics=pl.InitialConditions(0.0, 0.0),
    time_grid=pl.TimeGrid(0.0, 3.0 * params.period, 30_000),
    record_every=30,
    fock_oracle=False,
)
report = pl.run_equivalence(scenario)
print(f"\ndriven run: residual <x_H^2> - q_c^2 stays in "
      f"[{report.residual_min:.9f}, {report.residual_max:.9f}]")
print(f"identification falsified: {report.eq51_falsified} "
      f"(the residual equals the vacuum term, not zero)")

t_mid = float(report.times[len(report.times) // 2])
print(f"residual at t={t_mid:.3f}: "
      f"{pl.flawed_identification_residual(report, t_mid):.9f}")

# --- step 3: the e -> 0 litmus test ---------------------------------------
print("\ncharge sweep (fixed drive, zero initial conditions):")
base = pl.Scenario(
    name="limit-demo",
    params=params,
    field=pl.FieldModel.monochromatic(amplitude=1.0, omega=0.5),
    ics=pl.InitialConditions(0.0, 0.0),
    time_grid=pl.TimeGrid(0.0, params.period, 40_000),
    record_every=40,
    fock_oracle=False,
)
for rep in pl.free_limit_sweep([0.0, 0.01, 0.1], base):
    e = rep.scenario.params.charge
    print(f"  e={e:<5g} max q_c^2={np.max(rep.q_c**2):.3e}  "
          f"max|<x^2>_S - 0.5|={np.max(np.abs(rep.x2_s - 0.5)):.3e}  "
          f"pictures agree to {rep.sup_discrepancy:.1e}")
print("the moment varies continuously with e; were the flawed result right,")
print("the factor of two would persist even at e=0, where q_c(t)=0 solves")
print("the equation of motion and the moment is plainly the vacuum value.")
