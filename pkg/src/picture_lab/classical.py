"""Classical trajectory of the driven, optionally damped oscillator.

Integrates m qdd = -m omega0^2 q - m gamma qd + e E(t) with a fixed-step
classic 4th-order Runge-Kutta scheme.  The classical action along the
trajectory is accumulated by the same integrator because the exact
Schrodinger-picture phase needs it.  A half-step force table derived
from a trajectory feeds both quantum engines, so all three share one
c-number drive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteState, NotDamped, StepTooCoarse
from .model import FieldModel, OscillatorParams, TimeGrid, evaluate_field


@dataclass(frozen=True)
class InitialConditions:
    """Initial position and velocity selecting a solution of the EOM."""

    q0: float = 0.0
    v0: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.q0) and math.isfinite(self.v0)):
            raise ValueError("initial conditions must be finite")


@dataclass(frozen=True, eq=False)
class ClassicalTrajectory:
    """Sampled (t, q, qdot) plus the accumulated classical action.

    ``action[i]`` is the integral of the Lagrangian
    m qd^2/2 - m omega0^2 q^2/2 + F(t) q from t0 to t_i, where F is the
    total c-number force including the damping back-action.
    """

    grid: TimeGrid
    q: np.ndarray
    qdot: np.ndarray
    action: np.ndarray
    params: OscillatorParams
    field: FieldModel
    ics: InitialConditions

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def energy(self) -> np.ndarray:
        """Mechanical energy m qd^2/2 + m omega0^2 q^2/2 at each sample."""
        m, w = self.params.mass, self.params.omega0
        return 0.5 * m * self.qdot**2 + 0.5 * m * w**2 * self.q**2


def _check_step(params: OscillatorParams, field: FieldModel, grid: TimeGrid):
    fastest = max(params.omega0, field.max_angular_frequency())
    dt_max = (2.0 * math.pi / fastest) / 50.0
    if grid.dt > dt_max:
        raise StepTooCoarse(
            f"dt={grid.dt:.3g} exceeds {dt_max:.3g} needed to resolve the fastest "
            f"angular frequency {fastest:.3g}")


def solve_trajectory(params: OscillatorParams, field: FieldModel,
                     ics: InitialConditions, grid: TimeGrid) -> ClassicalTrajectory:
    """Integrate the classical equation of motion on ``grid``.

    Raises StepTooCoarse if dt does not resolve the fastest drive or
    oscillator period by a factor of 50, and NonFiniteState if any sample
    overflows.
    """
    _check_step(params, field, grid)
    n = grid.n_steps
    dt = grid.dt
    m = params.mass
    w2 = params.omega0 * params.omega0
    g = float(field.gamma)
    e = params.charge
    c = e / m

    # Drive samples at every RK4 stage time live on the half-step lattice.
    E = evaluate_field(field, grid.half_times).tolist()

    q_out = np.empty(n + 1)
    v_out = np.empty(n + 1)
    s_out = np.empty(n + 1)
    q = float(ics.q0)
    v = float(ics.v0)
    s = 0.0
    q_out[0], v_out[0], s_out[0] = q, v, s

    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n):
        e0 = E[2 * i]
        em = E[2 * i + 1]
        e1 = E[2 * i + 2]

        a1 = -w2 * q - g * v + c * e0
        s1 = 0.5 * m * v * v - 0.5 * m * w2 * q * q + (e * e0 - m * g * v) * q

        qb = q + half * v
        vb = v + half * a1
        a2 = -w2 * qb - g * vb + c * em
        s2 = 0.5 * m * vb * vb - 0.5 * m * w2 * qb * qb + (e * em - m * g * vb) * qb

        qc = q + half * vb
        vc = v + half * a2
        a3 = -w2 * qc - g * vc + c * em
        s3 = 0.5 * m * vc * vc - 0.5 * m * w2 * qc * qc + (e * em - m * g * vc) * qc

        qd = q + dt * vc
        vd = v + dt * a3
        a4 = -w2 * qd - g * vd + c * e1
        s4 = 0.5 * m * vd * vd - 0.5 * m * w2 * qd * qd + (e * e1 - m * g * vd) * qd

        q = q + sixth * (v + 2.0 * (vb + vc) + vd)
        v = v + sixth * (a1 + 2.0 * (a2 + a3) + a4)
        s = s + sixth * (s1 + 2.0 * (s2 + s3) + s4)
        q_out[i + 1], v_out[i + 1], s_out[i + 1] = q, v, s

    if not (math.isfinite(q) and math.isfinite(v) and math.isfinite(s)):
        raise NonFiniteState("trajectory overflowed; check drive amplitude and parameters")
    return ClassicalTrajectory(grid=grid, q=q_out, qdot=v_out, action=s_out,
                               params=params, field=field, ics=ics)


def decay_certificate(traj: ClassicalTrajectory, threshold: float):
    """Earliest sample time after which |q| stays below ``threshold``.

    Scanned from the start with no re-entry allowed: the returned time is
    the first sample from which every later sample is below threshold.
    Returns None if |q| still exceeds the threshold at the end of the
    grid.  Raises NotDamped for trajectories produced with gamma = 0,
    where the certificate is meaningless.
    """
    if traj.field.gamma == 0:
        raise NotDamped("decay certificate requires gamma > 0")
    above = np.abs(traj.q) > threshold
    if not above.any():
        return float(traj.grid.t0)
    last = int(np.nonzero(above)[0][-1])
    if last == traj.grid.n_steps:
        return None
    return float(traj.times[last + 1])


@dataclass(frozen=True, eq=False)
class DriveTable:
    """Total c-number force on the half-step lattice of a time grid.

    F(t) = e E(t) - m gamma qdot_ref(t).  The damping back-action is a
    classical field evaluated along a reference trajectory, which keeps
    the quantum evolutions Hamiltonian (commutator-preserving) while the
    mean still follows the damped classical motion.
    """

    grid: TimeGrid
    values: np.ndarray  # length 2 n_steps + 1

    @property
    def midpoint_values(self) -> np.ndarray:
        return self.values[1::2]

    def is_zero(self) -> bool:
        return not np.any(self.values)


def build_drive_table(params: OscillatorParams, field: FieldModel, grid: TimeGrid,
                      reference: ClassicalTrajectory | None = None) -> DriveTable:
    """Sample the total drive force on the half-step lattice of ``grid``.

    For gamma > 0 a reference trajectory sampled on ``grid.refined(2)``
    supplies the velocity in the damping term; if none is given, the
    zero-IC solution of the damped equation of motion is used.
    """
    force = params.charge * evaluate_field(field, grid.half_times)
    if field.gamma > 0:
        if reference is None:
            reference = solve_trajectory(params, field, InitialConditions(0.0, 0.0),
                                         grid.refined(2))
        if reference.grid.n_steps != 2 * grid.n_steps or \
                reference.grid.t0 != grid.t0 or reference.grid.t1 != grid.t1:
            raise ValueError("reference trajectory must be sampled on grid.refined(2)")
        force = force - params.mass * field.gamma * reference.qdot
    return DriveTable(grid=grid, values=np.asarray(force, dtype=float))


def integrate_forced(params: OscillatorParams, drive: DriveTable) -> ClassicalTrajectory:
    """Zero-IC solution of m qdd = -m omega0^2 q + F(t) for a tabulated force.

    This is the c-number part of the Heisenberg operator evolution; the
    homogeneous part is undamped because damping enters only through the
    force table.
    """
    grid = drive.grid
    n = grid.n_steps
    dt = grid.dt
    m = params.mass
    w2 = params.omega0 * params.omega0
    F = drive.values.tolist()

    q_out = np.empty(n + 1)
    v_out = np.empty(n + 1)
    q = 0.0
    v = 0.0
    q_out[0], v_out[0] = q, v

    half = 0.5 * dt
    sixth = dt / 6.0
    inv_m = 1.0 / m
    for i in range(n):
        f0 = F[2 * i] * inv_m
        fm = F[2 * i + 1] * inv_m
        f1 = F[2 * i + 2] * inv_m

        a1 = -w2 * q + f0
        vb = v + half * a1
        a2 = -w2 * (q + half * v) + fm
        vc = v + half * a2
        a3 = -w2 * (q + half * vb) + fm
        vd = v + dt * a3
        a4 = -w2 * (q + dt * vc) + f1

        q = q + sixth * (v + 2.0 * (vb + vc) + vd)
        v = v + sixth * (a1 + 2.0 * (a2 + a3) + a4)
        q_out[i + 1], v_out[i + 1] = q, v

    if not (math.isfinite(q) and math.isfinite(v)):
        raise NonFiniteState("forced integration overflowed")
    zeros = np.zeros(n + 1)
    return ClassicalTrajectory(grid=grid, q=q_out, qdot=v_out, action=zeros,
                               params=params, field=FieldModel.zero(),
                               ics=InitialConditions(0.0, 0.0))
