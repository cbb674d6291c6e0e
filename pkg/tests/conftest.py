"""Shared fixtures for the lgfmo test suite.

Conventions used throughout the tests:

- ``dt`` values passed to model-level entry points (propagate, correlator,
  lg_protocol, the experiment drivers) are quoted on the reference time axis.
- ``dt`` values passed to ``*_with`` helpers or the closed forms are in the
  inverse units of whatever generator they are handed.
- Random inputs are always seeded so every run of the suite sees the same
  data.
"""

import numpy as np
import pytest

from lgfmo import fmo_model


@pytest.fixture(scope="session")
def default_model():
    """Sink plus recombination, no dephasing."""
    return fmo_model.build_default_model()


@pytest.fixture(scope="session")
def coherent_model():
    """Closed-system model: all rates zero."""
    return fmo_model.build_coherent_model()


@pytest.fixture(scope="session")
def rt_model():
    """Room-temperature model: dephasing axis strength 9.1 on every site."""
    return fmo_model.build_default_model(
        fmo_model.dephasing_axis_rate(9.1)
    )


@pytest.fixture()
def rng():
    return np.random.default_rng(20260823)


def random_density(rng, dim):
    """Full-rank random density operator from a complex Ginibre draw."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2.0
