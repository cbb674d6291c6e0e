"""Model definition for the nine-level excitation-transfer system.

A seven-site tight-binding Hamiltonian (wavenumbers, relative to a 12230
cm^-1 offset) is embedded in a nine-level basis (G, 1..7, S) with the ground
and sink levels at zero energy.  Incoherent processes: recombination from
every site to G, trapping from site 3 to S, and pure dephasing on the sites.

Units: the Hamiltonian is stored in cm^-1 and exposed as a rad/ps generator
(2 pi c * E); incoherent rates are stored in ps^-1, with wavenumber inputs
converted once at construction.  Time values on the reference axes relate
to generator picoseconds through ``quantum_core.TIME_AXIS_UNITS_PER_PS``.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .quantum_core import (
    DIM,
    SITE_DIM,
    SITES,
    site_basis_index,
    wavenumber_to_angular_ps,
)

# Site energies and couplings in cm^-1, sites 1..7.
HAMILTONIAN_CM = np.array(
    [
        [215.0, -104.1, 5.1, -4.3, 4.7, -15.1, -7.8],
        [-104.1, 220.0, 32.6, 7.1, 5.4, 8.3, 0.8],
        [5.1, 32.6, 0.0, -46.8, 1.0, -8.1, 5.1],
        [-4.3, 7.1, -46.8, 125.0, -70.7, -14.7, -61.5],
        [4.7, 5.4, 1.0, -70.7, 450.0, 89.7, -2.5],
        [-15.1, 8.3, -8.1, -14.7, 89.7, 330.0, 32.7],
        [-7.8, 0.8, 5.1, -61.5, -2.5, 32.7, 280.0],
    ]
)
HAMILTONIAN_CM.setflags(write=False)

TRAPPING_SITE = 3

# Default incoherent rates in cm^-1 (converted to ps^-1 at construction):
# trapping 62.8/1.88 cm^-1 (about 6.29 ps^-1) and recombination 1/376 cm^-1
# (about 5.01e-4 ps^-1, a 1 ns exciton lifetime).
DEFAULT_SINK_RATE_CM = 62.8 / 1.88
DEFAULT_RECOMB_RATE_CM = 1.0 / (2.0 * 188.0)

# Uniform site dephasing rates anchored to bath temperatures.  Anchor values
# are quoted on the dephasing axis of the reference sweeps.
TEMPERATURE_ANCHORS_PER_PS = {77.0: 2.1, 298.0: 9.1}

# Generator dephasing rate (ps^-1) per unit of the reference dephasing axis.
# The reproduced room-temperature values fix this scale.
DEPHASING_AXIS_TO_RATE = 10.0


def dephasing_axis_rate(gamma_axis: float) -> float:
    """Generator dephasing rate in ps^-1 for a value on the reference axis."""
    g = float(gamma_axis)
    if g < 0.0:
        raise ValueError("dephasing axis value must be nonnegative")
    return DEPHASING_AXIS_TO_RATE * g


def build_default_hamiltonian() -> np.ndarray:
    """The default 7x7 site Hamiltonian in cm^-1 (writable copy)."""
    return HAMILTONIAN_CM.copy()


def embed_site_hamiltonian(hamiltonian7: np.ndarray) -> np.ndarray:
    """Embed a 7x7 site Hamiltonian into the nine-level basis (G, S at zero)."""
    h7 = np.asarray(hamiltonian7)
    if h7.shape != (SITE_DIM, SITE_DIM):
        raise ValueError(f"expected a 7x7 Hamiltonian, got shape {h7.shape}")
    h9 = np.zeros((DIM, DIM), dtype=h7.dtype)
    h9[1:8, 1:8] = h7
    return h9


def _rate_array(value, name: str) -> np.ndarray:
    rates = np.asarray(value, dtype=float)
    if rates.ndim == 0:
        rates = np.full(SITE_DIM, float(rates))
    if rates.shape != (SITE_DIM,):
        raise ValueError(f"{name} must be a scalar or 7 values, got shape {rates.shape}")
    if np.any(rates < 0.0):
        raise ValueError(f"{name} must be nonnegative")
    rates.setflags(write=False)
    return rates


@dataclass(frozen=True, eq=False)
class LindbladModel:
    """Immutable parameter set: site Hamiltonian (cm^-1) plus ps^-1 rates."""

    hamiltonian_cm: np.ndarray
    gamma_deph_per_ps: np.ndarray
    gamma_recomb_per_ps: np.ndarray
    gamma_sink_per_ps: float

    def __post_init__(self):
        h = np.asarray(self.hamiltonian_cm, dtype=float)
        if h.shape != (SITE_DIM, SITE_DIM):
            raise ValueError(f"Hamiltonian must be 7x7, got shape {h.shape}")
        if np.max(np.abs(h - h.T)) > 0.0:
            raise ValueError("Hamiltonian must be symmetric")
        h = h.copy()
        h.setflags(write=False)
        object.__setattr__(self, "hamiltonian_cm", h)
        object.__setattr__(
            self, "gamma_deph_per_ps", _rate_array(self.gamma_deph_per_ps, "gamma_deph_per_ps")
        )
        object.__setattr__(
            self,
            "gamma_recomb_per_ps",
            _rate_array(self.gamma_recomb_per_ps, "gamma_recomb_per_ps"),
        )
        sink = float(self.gamma_sink_per_ps)
        if sink < 0.0:
            raise ValueError("gamma_sink_per_ps must be nonnegative")
        object.__setattr__(self, "gamma_sink_per_ps", sink)

    @cached_property
    def hamiltonian_rad_per_ps(self) -> np.ndarray:
        """Nine-level Hamiltonian in rad/ps (ground and sink rows zero)."""
        h9 = embed_site_hamiltonian(wavenumber_to_angular_ps(self.hamiltonian_cm))
        h9.setflags(write=False)
        return h9

    @cached_property
    def site_hamiltonian_rad_per_ps(self) -> np.ndarray:
        """7x7 site Hamiltonian in rad/ps."""
        h7 = wavenumber_to_angular_ps(np.asarray(self.hamiltonian_cm))
        h7.setflags(write=False)
        return h7

    @property
    def is_coherent(self) -> bool:
        """True when every incoherent rate vanishes."""
        return (
            self.gamma_sink_per_ps == 0.0
            and not np.any(self.gamma_deph_per_ps)
            and not np.any(self.gamma_recomb_per_ps)
        )


def build_model(
    gamma_deph_per_ps=0.0,
    *,
    hamiltonian_cm: np.ndarray | None = None,
    gamma_sink_cm: float = DEFAULT_SINK_RATE_CM,
    gamma_recomb_cm: float = DEFAULT_RECOMB_RATE_CM,
) -> LindbladModel:
    """Build a model from wavenumber rate inputs.

    ``gamma_deph_per_ps`` is already a ps^-1 rate (scalar or per-site array);
    the trapping and recombination rates are wavenumbers and get converted.
    """
    h = HAMILTONIAN_CM if hamiltonian_cm is None else np.asarray(hamiltonian_cm, dtype=float)
    return LindbladModel(
        hamiltonian_cm=h,
        gamma_deph_per_ps=gamma_deph_per_ps,
        gamma_recomb_per_ps=wavenumber_to_angular_ps(float(gamma_recomb_cm)),
        gamma_sink_per_ps=wavenumber_to_angular_ps(float(gamma_sink_cm)),
    )


def build_default_model(gamma_deph_per_ps=0.0) -> LindbladModel:
    """Default model: standard Hamiltonian and rates, caller-supplied dephasing."""
    return build_model(gamma_deph_per_ps)


def build_coherent_model(hamiltonian_cm: np.ndarray | None = None) -> LindbladModel:
    """Model with every incoherent rate set to zero (unitary site dynamics)."""
    return build_model(0.0, hamiltonian_cm=hamiltonian_cm, gamma_sink_cm=0.0, gamma_recomb_cm=0.0)


def perturb_hamiltonian(hamiltonian_cm: np.ndarray, sigma2: float, seed: int) -> np.ndarray:
    """Add i.i.d. N(0, sigma2) noise to the upper triangle and mirror it.

    Each independent entry (diagonal included) receives one draw; symmetry is
    restored by mirroring, so off-diagonal partners stay equal.  The result is
    deterministic in ``seed``; ``sigma2 = 0`` returns the input unchanged.
    """
    h = np.asarray(hamiltonian_cm, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square Hamiltonian, got shape {h.shape}")
    if sigma2 < 0.0:
        raise ValueError("sigma2 must be nonnegative")
    n = h.shape[0]
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n)
    draws = rng.normal(0.0, np.sqrt(sigma2), size=rows.size)
    noise = np.zeros((n, n))
    noise[rows, cols] = draws
    noise = np.triu(noise) + np.triu(noise, 1).T
    return h + noise


INITIAL_STATE_LABELS = (
    "site1",
    "site2",
    "site3",
    "site4",
    "site5",
    "site6",
    "site7",
    "mix16",
    "maxmix7",
)


@dataclass(frozen=True)
class InitialState:
    """Named initial density operator with support on the seven sites only."""

    label: str

    def __post_init__(self):
        if self.label not in INITIAL_STATE_LABELS:
            raise ValueError(
                f"unknown initial state {self.label!r}; expected one of {INITIAL_STATE_LABELS}"
            )

    def site_weights(self) -> dict[int, float]:
        """Diagonal site populations (site -> weight) of the realized state."""
        if self.label.startswith("site"):
            return {int(self.label[4:]): 1.0}
        if self.label == "mix16":
            return {1: 0.5, 6: 0.5}
        return {site: 1.0 / SITE_DIM for site in SITES}

    def realize(self, dim: int = DIM) -> np.ndarray:
        """Density operator in dimension ``dim`` (9 by default, 7 for site-only work)."""
        if dim not in (DIM, SITE_DIM):
            raise ValueError(f"dim must be 7 or 9, got {dim}")
        rho = np.zeros((dim, dim), dtype=complex)
        for site, weight in self.site_weights().items():
            index = site_basis_index(site, dim)
            rho[index, index] = weight
        return rho


def initial_state(label: str) -> InitialState:
    """Look up one of the named initial states."""
    return InitialState(label)
