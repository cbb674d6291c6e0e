"""Propagation of density operators for the nine-level transfer model.

Two routes are provided.  Coherent evolution uses the Hamiltonian
eigensystem directly.  Open-system evolution builds the 81x81 generator of
the master equation

    drho/dt = -i [H, rho] + D_recomb(rho) + D_sink(rho) + D_deph(rho)

and exponentiates it (scaling-and-squaring Pade via scipy).  Vectorization
is column stacking: vec(rho) = rho.reshape(-1, order="F"), which maps
A rho B onto kron(B.T, A) vec(rho).

Each incoherent channel has the form rate * (2 A rho A+ - {A+A, rho}) with
jump operators |G><m| (recombination), |S><3| (trapping), and |m><m|
(dephasing); with uniform dephasing gamma every site coherence decays at
rate 2 gamma.

The propagator classes take time in the units of their generator (inverse
rad/ps, i.e. picoseconds).  :func:`propagate` instead takes time on the
reference axes and converts once via ``quantum_core.axis_time_to_ps``.
"""

import weakref

import numpy as np
from scipy.linalg import expm

from .quantum_core import (
    DIM,
    GROUND_INDEX,
    SINK_INDEX,
    SITES,
    axis_time_to_ps,
    hermitian_eigendecomposition,
    require_density_operator,
)
from .fmo_model import TRAPPING_SITE, LindbladModel


def vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(matrix).reshape(-1, order="F")


def unvec(vector: np.ndarray, dim: int = DIM) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(vector).reshape((dim, dim), order="F")


class CoherentPropagator:
    """Unitary evolution exp(-i H t) from a fixed Hermitian eigensystem.

    Propagation matrices are cached per time argument, so sweeps that revisit
    the same times pay for each unitary once.
    """

    def __init__(self, hamiltonian: np.ndarray):
        self.eigenvalues, self.eigenvectors = hermitian_eigendecomposition(hamiltonian)
        self._cache: dict[float, np.ndarray] = {}

    def unitary(self, t: float) -> np.ndarray:
        u = self._cache.get(t)
        if u is None:
            phases = np.exp(-1j * self.eigenvalues * t)
            u = (self.eigenvectors * phases) @ self.eigenvectors.conj().T
            self._cache[t] = u
        return u

    def apply_ket(self, psi: np.ndarray, t: float) -> np.ndarray:
        return self.unitary(t) @ np.asarray(psi, dtype=complex)

    def apply(self, matrix: np.ndarray, t: float) -> np.ndarray:
        u = self.unitary(t)
        return u @ np.asarray(matrix, dtype=complex) @ u.conj().T


def _require_nine_level(rho: np.ndarray) -> np.ndarray:
    m = np.asarray(rho, dtype=complex)
    if m.shape != (DIM, DIM):
        raise ValueError(f"expected a 9x9 matrix, got shape {m.shape}")
    return m


def apply_dissipator(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Recombination channel: every site relaxes to the ground level."""
    rho = _require_nine_level(rho)
    out = np.zeros_like(rho)
    for site, rate in zip(SITES, model.gamma_recomb_per_ps):
        if rate == 0.0:
            continue
        out[GROUND_INDEX, GROUND_INDEX] += 2.0 * rate * rho[site, site]
        out[site, :] -= rate * rho[site, :]
        out[:, site] -= rate * rho[:, site]
    return out


def apply_sink(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Trapping channel: the trapping site feeds the sink level."""
    rho = _require_nine_level(rho)
    out = np.zeros_like(rho)
    rate = model.gamma_sink_per_ps
    if rate != 0.0:
        out[SINK_INDEX, SINK_INDEX] += 2.0 * rate * rho[TRAPPING_SITE, TRAPPING_SITE]
        out[TRAPPING_SITE, :] -= rate * rho[TRAPPING_SITE, :]
        out[:, TRAPPING_SITE] -= rate * rho[:, TRAPPING_SITE]
    return out


def apply_dephasing(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Pure-dephasing channel on the sites (diagonal left untouched)."""
    rho = _require_nine_level(rho)
    out = np.zeros_like(rho)
    for site, rate in zip(SITES, model.gamma_deph_per_ps):
        if rate == 0.0:
            continue
        out[site, site] += 2.0 * rate * rho[site, site]
        out[site, :] -= rate * rho[site, :]
        out[:, site] -= rate * rho[:, site]
    return out


def master_equation_rhs(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Right-hand side of the master equation at state ``rho``."""
    rho = _require_nine_level(rho)
    h = model.hamiltonian_rad_per_ps
    out = -1j * (h @ rho - rho @ h)
    out += apply_dissipator(model, rho)
    out += apply_sink(model, rho)
    out += apply_dephasing(model, rho)
    return out


def _lindblad_terms(model: LindbladModel):
    """Yield (jump operator, rate) pairs for every active channel."""
    for site, rate in zip(SITES, model.gamma_recomb_per_ps):
        a = np.zeros((DIM, DIM))
        a[GROUND_INDEX, site] = 1.0
        yield a, rate
    a = np.zeros((DIM, DIM))
    a[SINK_INDEX, TRAPPING_SITE] = 1.0
    yield a, model.gamma_sink_per_ps
    for site, rate in zip(SITES, model.gamma_deph_per_ps):
        a = np.zeros((DIM, DIM))
        a[site, site] = 1.0
        yield a, rate


def build_liouvillian(model: LindbladModel) -> np.ndarray:
    """Dense 81x81 generator L with vec(drho/dt) = L vec(rho)."""
    h = model.hamiltonian_rad_per_ps
    eye = np.eye(DIM)
    liouvillian = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for a, rate in _lindblad_terms(model):
        if rate == 0.0:
            continue
        aa = a.conj().T @ a
        liouvillian += rate * (
            2.0 * np.kron(a.conj(), a) - np.kron(eye, aa) - np.kron(aa.T, eye)
        )
    return liouvillian


class LindbladPropagator:
    """Exact semigroup propagation via cached exponentials of the generator."""

    def __init__(self, model: LindbladModel):
        self.liouvillian = build_liouvillian(model)
        self._cache: dict[float, np.ndarray] = {}

    def step_matrix(self, t: float) -> np.ndarray:
        if t < 0.0:
            raise ValueError(f"propagation time must be nonnegative, got {t}")
        e = self._cache.get(t)
        if e is None:
            e = expm(self.liouvillian * t)
            self._cache[t] = e
        return e

    def apply(self, matrix: np.ndarray, t: float) -> np.ndarray:
        matrix = _require_nine_level(matrix)
        return unvec(self.step_matrix(t) @ vec(matrix))


def make_propagator(model: LindbladModel):
    """Fastest faithful propagator: unitary when all rates vanish, else expm."""
    if model.is_coherent:
        return CoherentPropagator(model.hamiltonian_rad_per_ps)
    return LindbladPropagator(model)


_FAST_PROPAGATORS: "weakref.WeakKeyDictionary[LindbladModel, object]" = weakref.WeakKeyDictionary()
_LINDBLAD_PROPAGATORS: "weakref.WeakKeyDictionary[LindbladModel, LindbladPropagator]" = (
    weakref.WeakKeyDictionary()
)


def propagator_for(model: LindbladModel):
    """Per-model memoized fast propagator (shared caches across calls)."""
    propagator = _FAST_PROPAGATORS.get(model)
    if propagator is None:
        propagator = make_propagator(model)
        _FAST_PROPAGATORS[model] = propagator
    return propagator


def lindblad_propagator_for(model: LindbladModel) -> LindbladPropagator:
    """Per-model memoized semigroup propagator (always the expm route)."""
    propagator = _LINDBLAD_PROPAGATORS.get(model)
    if propagator is None:
        propagator = LindbladPropagator(model)
        _LINDBLAD_PROPAGATORS[model] = propagator
    return propagator


def propagate(model: LindbladModel, rho: np.ndarray, t: float) -> np.ndarray:
    """Evolve a density operator forward by ``t`` on the reference time axes.

    Forward-only: negative times are rejected.  ``t = 0`` is the identity up
    to exponentiation roundoff.
    """
    if t < 0.0:
        raise ValueError(f"propagation time must be nonnegative, got {t}")
    rho = require_density_operator(rho)
    return lindblad_propagator_for(model).apply(rho, axis_time_to_ps(t))
