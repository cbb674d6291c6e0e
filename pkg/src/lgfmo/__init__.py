"""Leggett-Garg tests of excitation transfer in a nine-level FMO model.

The package layers cleanly: ``quantum_core`` (states, observables, unit
conventions), ``fmo_model`` (Hamiltonian and Lindblad rates), ``dynamics``
(coherent and dissipative propagation), ``leggett_garg`` (correlators and
the three-time protocol), ``experiments`` (sweep drivers and CSV emission),
and ``cli`` (the ``lgfmo`` command).
"""

from .quantum_core import (
    DIM,
    SITE_DIM,
    SITES,
    SPEED_OF_LIGHT_CM_PER_PS,
    TIME_AXIS_UNITS_PER_PS,
    DichotomicObservable,
    axis_time_to_ps,
    hermitian_eigendecomposition,
    make_exciton_observables,
    make_site_observable,
    make_state_observable,
    require_density_operator,
    wavenumber_to_angular_ps,
)
from .fmo_model import (
    DEPHASING_AXIS_TO_RATE,
    HAMILTONIAN_CM,
    INITIAL_STATE_LABELS,
    InitialState,
    LindbladModel,
    build_coherent_model,
    build_default_hamiltonian,
    build_default_model,
    build_model,
    dephasing_axis_rate,
    initial_state,
    perturb_hamiltonian,
)
from .dynamics import (
    CoherentPropagator,
    LindbladPropagator,
    build_liouvillian,
    lindblad_propagator_for,
    make_propagator,
    master_equation_rhs,
    propagate,
    propagator_for,
)
from .leggett_garg import (
    LGResult,
    NumericalConsistencyError,
    SignPattern,
    coherent_site_lg,
    coherent_survival_lg,
    correlator,
    find_strongest_violation,
    lg_protocol,
)
from .experiments import (
    SweepRecord,
    TemperatureAnchor,
    TEMPERATURE_ANCHORS,
    reference_intervals,
    run_coherent_scan,
    run_dephasing_sweep,
    run_robustness,
    run_table2,
    run_trapping_variants,
    temperature_for_gamma,
    write_records_csv,
)

__version__ = "0.1.0"

__all__ = [
    "DIM",
    "SITE_DIM",
    "SITES",
    "SPEED_OF_LIGHT_CM_PER_PS",
    "TIME_AXIS_UNITS_PER_PS",
    "DEPHASING_AXIS_TO_RATE",
    "HAMILTONIAN_CM",
    "INITIAL_STATE_LABELS",
    "TEMPERATURE_ANCHORS",
    "DichotomicObservable",
    "InitialState",
    "LindbladModel",
    "CoherentPropagator",
    "LindbladPropagator",
    "LGResult",
    "NumericalConsistencyError",
    "SignPattern",
    "SweepRecord",
    "TemperatureAnchor",
    "axis_time_to_ps",
    "build_coherent_model",
    "build_default_hamiltonian",
    "build_default_model",
    "build_liouvillian",
    "build_model",
    "coherent_site_lg",
    "coherent_survival_lg",
    "correlator",
    "dephasing_axis_rate",
    "find_strongest_violation",
    "hermitian_eigendecomposition",
    "initial_state",
    "lg_protocol",
    "lindblad_propagator_for",
    "make_exciton_observables",
    "make_propagator",
    "make_site_observable",
    "make_state_observable",
    "master_equation_rhs",
    "perturb_hamiltonian",
    "propagate",
    "propagator_for",
    "reference_intervals",
    "require_density_operator",
    "run_coherent_scan",
    "run_dephasing_sweep",
    "run_robustness",
    "run_table2",
    "run_trapping_variants",
    "temperature_for_gamma",
    "wavenumber_to_angular_ps",
    "write_records_csv",
]
