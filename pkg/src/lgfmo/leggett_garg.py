"""Temporal correlators and Leggett-Garg quantities.

The three-time protocol measures one dichotomic observable Q at t1 = 0,
t2 = dt, t3 = 2 dt.  Two-time correlators come from the anticommutator form

    C_ij = Re Tr[ Q N_(tj - ti)( {Q, rho(ti)} ) ] / 2,

equivalent to averaging the two projective branches of the first
measurement.  A macrorealist bound K >= 0 holds for

    K = s12 C12 + s23 C23 + s13 C13 + 1

for each of the four sign choices obtained by flipping outcome labels;
K < 0 at any of them certifies a violation.

Model-level entry points (:func:`correlator`, :func:`lg_protocol`,
:func:`find_strongest_violation`) quote dt on the reference time axes and
convert once via :func:`quantum_core.axis_time_to_ps`.  The ``*_with``
variants and the closed forms take time in the units of the propagator or
Hamiltonian they are handed.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .quantum_core import SITE_DIM, DichotomicObservable, axis_time_to_ps, site_ket
from .fmo_model import InitialState, LindbladModel
from .dynamics import CoherentPropagator, propagator_for

IMAG_RESIDUE_LIMIT = 1e-8


class NumericalConsistencyError(RuntimeError):
    """An internal cross-check failed beyond its tolerance."""


class SignPattern(Enum):
    """Sign assignments (s12, s23, s13) reachable by flipping outcome labels."""

    BASE = (1, 1, 1)
    FLIP1 = (-1, 1, -1)
    FLIP2 = (-1, -1, 1)
    FLIP3 = (1, -1, -1)

    @property
    def s12(self) -> int:
        return self.value[0]

    @property
    def s23(self) -> int:
        return self.value[1]

    @property
    def s13(self) -> int:
        return self.value[2]

    def combine(self, c12: float, c23: float, c13: float) -> float:
        return self.s12 * c12 + self.s23 * c23 + self.s13 * c13 + 1.0

    @classmethod
    def from_name(cls, name: str) -> "SignPattern":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown sign pattern {name!r}") from None


@dataclass(frozen=True)
class LGResult:
    """Correlators and the combined quantity for one protocol evaluation."""

    c12: float
    c23: float
    c13: float
    k: float
    pattern: SignPattern
    schedule: tuple[float, float, float]
    observable: str
    initial_state: str
    violation: bool = field(init=False)

    def __post_init__(self):
        limit = 1.0 + 1e-9
        for name, value in (("c12", self.c12), ("c23", self.c23), ("c13", self.c13)):
            if abs(value) > limit:
                raise NumericalConsistencyError(f"|{name}| = {abs(value):.12f} exceeds 1")
        object.__setattr__(self, "violation", self.k < 0.0)


def _real_part(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_RESIDUE_LIMIT:
        raise NumericalConsistencyError(
            f"{what} has imaginary residue {value.imag:.3e} beyond {IMAG_RESIDUE_LIMIT:.1e}"
        )
    return float(value.real)


def correlator_with(
    propagator,
    q1: DichotomicObservable,
    q2: DichotomicObservable,
    rho1: np.ndarray,
    dt: float,
) -> float:
    """Two-time correlator from a prebuilt propagator (any dimension)."""
    if dt < 0.0:
        raise ValueError(f"dt must be nonnegative, got {dt}")
    rho1 = np.asarray(rho1, dtype=complex)
    if rho1.shape != q1.projector.shape or rho1.shape != q2.projector.shape:
        raise ValueError(
            f"dimension mismatch: state {rho1.shape}, observables "
            f"{q1.projector.shape} and {q2.projector.shape}"
        )
    anticommutator = q1.matrix @ rho1 + rho1 @ q1.matrix
    evolved = propagator.apply(anticommutator, dt)
    value = 0.5 * np.trace(q2.matrix @ evolved)
    return _real_part(value, "correlator")


def correlator(
    model: LindbladModel,
    q1: DichotomicObservable,
    q2: DichotomicObservable,
    rho1: np.ndarray,
    dt: float,
) -> float:
    """Two-time correlator C = Tr[Q2 N_dt({Q1, rho1})] / 2 under ``model``.

    ``dt`` is quoted on the reference time axis.
    """
    return correlator_with(propagator_for(model), q1, q2, rho1, axis_time_to_ps(dt))


def _resolve_state(rho0) -> tuple[np.ndarray, str]:
    if isinstance(rho0, InitialState):
        return rho0.realize(), rho0.label
    return np.asarray(rho0, dtype=complex), "custom"


def lg_quantities_with(
    propagator,
    q: DichotomicObservable,
    rho0: np.ndarray,
    dt: float,
    pattern: SignPattern,
) -> tuple[float, float, float, float]:
    """(c12, c23, c13, k) for the uniform three-time schedule."""
    c12 = correlator_with(propagator, q, q, rho0, dt)
    rho2 = propagator.apply(rho0, dt)
    c23 = correlator_with(propagator, q, q, rho2, dt)
    c13 = correlator_with(propagator, q, q, rho0, 2.0 * dt)
    return c12, c23, c13, pattern.combine(c12, c23, c13)


def lg_protocol(
    model: LindbladModel,
    q: DichotomicObservable,
    rho0,
    dt: float,
    pattern: SignPattern = SignPattern.FLIP2,
) -> LGResult:
    """Run the three-time protocol for one observable, state, and interval.

    ``dt`` and the returned schedule are quoted on the reference time axis.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    rho, label = _resolve_state(rho0)
    c12, c23, c13, k = lg_quantities_with(
        propagator_for(model), q, rho, axis_time_to_ps(dt), pattern
    )
    return LGResult(
        c12=c12,
        c23=c23,
        c13=c13,
        k=k,
        pattern=pattern,
        schedule=(0.0, dt, 2.0 * dt),
        observable=q.label,
        initial_state=label,
    )


def ascending_dt_grid(grid) -> list[float]:
    """Validate a measurement-interval grid: nonempty, ascending, in (0, 5]."""
    grid = [float(dt) for dt in grid]
    if not grid:
        raise ValueError("dt grid must be nonempty")
    previous = 0.0
    for dt in grid:
        if dt <= previous:
            raise ValueError("dt grid must be strictly ascending and positive")
        previous = dt
    if grid[-1] > 5.0 + 1e-12:
        raise ValueError(f"dt grid must stay within (0, 5], got {grid[-1]}")
    return grid


def find_strongest_violation(
    model: LindbladModel,
    q: DichotomicObservable,
    rho0,
    grid,
    pattern: SignPattern = SignPattern.FLIP2,
) -> tuple[float, float]:
    """Minimum K over an ascending dt grid; ties keep the smallest dt.

    Returns ``(k_min, dt_star)``.  The grid is quoted on the reference time
    axis and must be nonempty, strictly ascending, and lie in (0, 5].
    """
    grid = ascending_dt_grid(grid)
    propagator = propagator_for(model)
    rho, _ = _resolve_state(rho0)
    k_min = math.inf
    dt_star = grid[0]
    for dt in grid:
        _, _, _, k = lg_quantities_with(propagator, q, rho, axis_time_to_ps(dt), pattern)
        if k < k_min:
            k_min = k
            dt_star = dt
    return k_min, dt_star


def coherent_survival_lg(hamiltonian: np.ndarray, psi: np.ndarray, dt: float) -> float:
    """Closed-form K (FLIP2 signs) for is-it-still-psi measurements under exp(-iHt).

    Equals 4 |<psi|psi_2dt>|^2 - 4 Re[(<psi|psi_dt>)^2 <psi_2dt|psi>] and is
    identically zero when ``psi`` is an eigenstate of the Hamiltonian.
    ``dt`` is in the inverse units of ``hamiltonian``.
    """
    propagator = CoherentPropagator(hamiltonian)
    psi = np.asarray(psi, dtype=complex)
    psi_dt = propagator.apply_ket(psi, dt)
    psi_2dt = propagator.apply_ket(psi, 2.0 * dt)
    a1 = np.vdot(psi, psi_dt)
    a2 = np.vdot(psi, psi_2dt)
    return 4.0 * abs(a2) ** 2 - 4.0 * (a1 * a1 * np.conj(a2)).real


def coherent_site_lg(
    site_hamiltonian: np.ndarray,
    initial: InitialState,
    site: int,
    dt: float,
) -> float:
    """Closed-form coherent K (FLIP2 signs) for a site observable.

    Expressed directly in transition amplitudes <a|b_t> with
    |b_t> = exp(-iHt)|b>, one expression per initial-state family
    (mix16, site1, site6, maxmix7).  This route never touches the
    correlator pipeline and is used to cross-check it.  ``dt`` is in
    the inverse units of ``site_hamiltonian``.
    """
    propagator = CoherentPropagator(site_hamiltonian)
    dim = propagator.eigenvalues.size
    m = site

    def ket(k: int) -> np.ndarray:
        return site_ket(k, dim)

    def evolved(k: int, t: float) -> np.ndarray:
        return propagator.apply_ket(ket(k), t)

    def ovl(bra: np.ndarray, kv: np.ndarray) -> complex:
        return complex(np.vdot(bra, kv))

    em = ket(m)
    label = initial.label
    if label == "mix16":
        one_dt, six_dt = evolved(1, dt), evolved(6, dt)
        one_2dt, six_2dt = evolved(1, 2.0 * dt), evolved(6, 2.0 * dt)
        bracket = ovl(em, one_dt) * ovl(one_2dt, em) + ovl(em, six_dt) * ovl(six_2dt, em)
        if m == 1:
            return 2.0 * (
                abs(ovl(em, six_dt)) ** 2
                + abs(ovl(em, one_2dt)) ** 2
                - (bracket * ovl(em, one_dt)).real
            )
        if m == 6:
            return 2.0 * (
                abs(ovl(em, one_dt)) ** 2
                + abs(ovl(em, six_2dt)) ** 2
                - (bracket * ovl(em, six_dt)).real
            )
        return 2.0 * (
            abs(ovl(em, one_dt)) ** 2
            + abs(ovl(em, six_dt)) ** 2
            - (bracket * ovl(em, evolved(m, dt))).real
        )
    if label in ("site1", "site6"):
        start = 1 if label == "site1" else 6
        start_dt, start_2dt = evolved(start, dt), evolved(start, 2.0 * dt)
        if m == start:
            a1 = ovl(em, start_dt)
            return 4.0 * abs(ovl(em, start_2dt)) ** 2 - 4.0 * (
                ovl(start_2dt, em) * a1 * a1
            ).real
        m_dt = evolved(m, dt)
        return (
            2.0 * abs(ovl(em, start_dt)) ** 2
            - 4.0 * (ovl(em, start_dt) * ovl(start_2dt, em) * ovl(em, m_dt)).real
            + 2.0 * (ovl(start_2dt, m_dt) * ovl(em, start_dt)).real
        )
    if label == "maxmix7":
        d = float(SITE_DIM)
        return (
            4.0 / d
            - 8.0 / d * abs(ovl(em, evolved(m, dt))) ** 2
            + 4.0 / d * abs(ovl(em, evolved(m, 2.0 * dt))) ** 2
        )
    raise ValueError(f"no closed form for initial state {label!r}")
