"""Numerical laboratory for picture equivalence of a driven charged oscillator.

The package simulates a 1-D charged harmonic oscillator driven by a
classical electric field in both the Schrodinger picture (grid
wavepacket, split-operator propagation) and the Heisenberg picture
(truncated Fock-basis operator evolution), verifies that the two
pictures yield identical position moments, and mechanically reproduces
the flawed substitution that once suggested otherwise.
"""

from .classical import (ClassicalTrajectory, DriveTable, InitialConditions,
                        build_drive_table, decay_certificate, integrate_forced,
                        solve_trajectory)
from .errors import (ConfigInvalid, GridTooNarrow, NonFiniteState, NotDamped,
                     NotDisplacedGaussian, NotNormalized, PictureLabError,
                     StepTooCoarse, TruncationError)
from .heisenberg import (FockOperator, HeisenbergSolution, build_ladder_operators,
                         coherent_state_vector, commutator_error, evolve_heisenberg,
                         ground_moment_x2, ground_state_vector, moment_x, moment_x2,
                         moment_x2_series, moment_x_series)
from .lab import (EquivalenceReport, Scenario, flawed_identification_residual,
                  flawed_pipeline_value, free_limit_sweep, golden_scenarios,
                  observed_order, run_equivalence)
from .model import (FieldModel, OscillatorParams, TimeGrid, evaluate_field,
                    ground_state_width)
from .schrodinger import (GridWavefunction, PhaseRecord, PositionGrid,
                          PropagationRecord, decompose_x2, displaced_state,
                          exact_state, expectation_x, expectation_x2, ground_state,
                          phase_history, phase_record, propagate)

__version__ = "0.1.0"

__all__ = [
    "ClassicalTrajectory", "DriveTable", "InitialConditions", "build_drive_table",
    "decay_certificate", "integrate_forced", "solve_trajectory",
    "ConfigInvalid", "GridTooNarrow", "NonFiniteState", "NotDamped",
    "NotDisplacedGaussian", "NotNormalized", "PictureLabError", "StepTooCoarse",
    "TruncationError",
    "FockOperator", "HeisenbergSolution", "build_ladder_operators",
    "coherent_state_vector", "commutator_error", "evolve_heisenberg",
    "ground_moment_x2", "ground_state_vector", "moment_x", "moment_x2",
    "moment_x2_series", "moment_x_series",
    "EquivalenceReport", "Scenario", "flawed_identification_residual",
    "flawed_pipeline_value", "free_limit_sweep", "golden_scenarios",
    "observed_order", "run_equivalence",
    "FieldModel", "OscillatorParams", "TimeGrid", "evaluate_field",
    "ground_state_width",
    "GridWavefunction", "PhaseRecord", "PositionGrid", "PropagationRecord",
    "decompose_x2", "displaced_state", "exact_state", "expectation_x",
    "expectation_x2", "ground_state", "phase_history", "phase_record", "propagate",
]
