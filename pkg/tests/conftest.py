import pytest

import picture_lab as pl


@pytest.fixture(scope="session")
def golden_reports():
    """Run the four golden scenarios once and share across the session."""
    return {name: pl.run_equivalence(s)
            for name, s in pl.golden_scenarios().items()}


@pytest.fixture()
def natural():
    return pl.OscillatorParams(mass=1.0, omega0=1.0, charge=1.0, hbar=1.0)
