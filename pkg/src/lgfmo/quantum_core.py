"""Basis conventions, unit conversion, and dense Hermitian linear algebra.

The nine-level transfer model uses the ordered basis (G, 1, ..., 7, S): a
ground state that absorbs recombination losses, seven chromophore sites, and
a sink state that absorbs trapped excitations.  Site-only computations use
the seven-dimensional site subspace in the same order.

Energies enter in wavenumbers (cm^-1) and are converted once to angular
frequency in rad/ps; generators work in picoseconds with hbar = 1.

Time axis convention: measurement schedules, search grids, and CSV time
columns quote time in the units of the reference tables this package
reproduces.  Those tables advance 2*pi axis units per picosecond of
evolution under the rad/ps generators (the reproduced values fix this
ratio), so model-facing entry points divide axis times by
``TIME_AXIS_UNITS_PER_PS`` exactly once before propagating.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

SPEED_OF_LIGHT_CM_PER_PS = 0.0299792458
WAVENUMBER_TO_RAD_PER_PS = 2.0 * np.pi * SPEED_OF_LIGHT_CM_PER_PS

# Axis units per picosecond of generator evolution; see the module docstring.
TIME_AXIS_UNITS_PER_PS = 2.0 * np.pi

STATE_LABELS = ("G", "1", "2", "3", "4", "5", "6", "7", "S")
GROUND_INDEX = 0
SINK_INDEX = 8
SITES = tuple(range(1, 8))
DIM = 9
SITE_DIM = 7

# Tolerances used by the validators below.
HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-9
PROJECTOR_ATOL = 1e-12
NORMALIZATION_ATOL = 1e-12

# Eigenvalues closer than this (relative to scale) form a degenerate cluster.
DEGENERACY_RTOL = 1e-9


def wavenumber_to_angular_ps(energy_cm: float) -> float:
    """Convert an energy in cm^-1 to an angular frequency in rad/ps."""
    return WAVENUMBER_TO_RAD_PER_PS * energy_cm


def axis_time_to_ps(t: float) -> float:
    """Convert a time on the reference axes to picoseconds of evolution."""
    return t / TIME_AXIS_UNITS_PER_PS


def site_basis_index(site: int, dim: int = DIM) -> int:
    """Basis index of chromophore ``site`` (1..7) in dimension ``dim`` (7 or 9)."""
    if site not in SITES:
        raise ValueError(f"site must be one of 1..7, got {site!r}")
    if dim == DIM:
        return site
    if dim == SITE_DIM:
        return site - 1
    raise ValueError(f"dim must be 7 or 9, got {dim}")


def site_ket(site: int, dim: int = DIM) -> np.ndarray:
    """Unit vector for chromophore ``site`` in dimension ``dim``."""
    ket = np.zeros(dim, dtype=complex)
    ket[site_basis_index(site, dim)] = 1.0
    return ket


def embed_site_vector(psi7: np.ndarray) -> np.ndarray:
    """Lift a 7-dimensional site-space vector into the nine-level basis."""
    psi7 = np.asarray(psi7, dtype=complex)
    if psi7.shape != (SITE_DIM,):
        raise ValueError(f"expected shape (7,), got {psi7.shape}")
    psi9 = np.zeros(DIM, dtype=complex)
    psi9[1:8] = psi7
    return psi9


def _as_square_matrix(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Largest absolute deviation of ``matrix`` from its conjugate transpose."""
    m = _as_square_matrix(matrix)
    return float(np.max(np.abs(m - m.conj().T)))


def require_density_operator(rho: np.ndarray, *, name: str = "rho") -> np.ndarray:
    """Validate a density operator: Hermitian, unit trace, positive semidefinite.

    Returns the input as a complex ndarray.  Tolerances: Hermiticity defect
    <= 1e-10, |trace - 1| <= 1e-10, smallest eigenvalue >= -1e-9.
    """
    m = _as_square_matrix(rho)
    defect = hermiticity_defect(m)
    if defect > HERMITICITY_ATOL:
        raise ValueError(f"{name} is not Hermitian (defect {defect:.3e})")
    trace_err = abs(np.trace(m) - 1.0)
    if trace_err > TRACE_ATOL:
        raise ValueError(f"{name} trace deviates from 1 by {trace_err:.3e}")
    smallest = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0).min())
    if smallest < EIGENVALUE_FLOOR:
        raise ValueError(f"{name} has negative eigenvalue {smallest:.3e}")
    return m


def density_from_ket(psi: np.ndarray) -> np.ndarray:
    """Rank-1 density operator |psi><psi| for a normalized state vector."""
    psi = np.asarray(psi, dtype=complex)
    norm_err = abs(np.linalg.norm(psi) - 1.0)
    if norm_err > NORMALIZATION_ATOL:
        raise ValueError(f"state vector norm deviates from 1 by {norm_err:.3e}")
    return np.outer(psi, psi.conj())


@dataclass(frozen=True, eq=False)
class DichotomicObservable:
    """Two-outcome observable Q = 2P - I with P a rank-1 orthogonal projector.

    Eigenvalue +1 on the range of ``projector``, -1 on its complement; in the
    nine-level basis the -1 outcome therefore includes ground and sink.
    """

    projector: np.ndarray
    label: str

    def __post_init__(self):
        p = _as_square_matrix(self.projector)
        if hermiticity_defect(p) > PROJECTOR_ATOL:
            raise ValueError("projector is not Hermitian")
        idem = float(np.max(np.abs(p @ p - p)))
        if idem > PROJECTOR_ATOL:
            raise ValueError(f"projector is not idempotent (defect {idem:.3e})")
        if abs(np.trace(p) - 1.0) > PROJECTOR_ATOL:
            raise ValueError("projector must have rank 1 (unit trace)")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "projector", p)

    @property
    def dim(self) -> int:
        return self.projector.shape[0]

    @cached_property
    def matrix(self) -> np.ndarray:
        q = 2.0 * self.projector - np.eye(self.dim)
        q.setflags(write=False)
        return q


def make_site_observable(site: int, dim: int = DIM) -> DichotomicObservable:
    """Dichotomic observable asking: is the excitation on chromophore ``site``?

    Only sites 1..7 are measurable; the ground and sink levels are not valid
    measurement targets.
    """
    ket = site_ket(site, dim)
    return DichotomicObservable(np.outer(ket, ket.conj()), f"site{site}")


def make_state_observable(psi: np.ndarray, label: str = "state") -> DichotomicObservable:
    """Dichotomic observable asking: is the system in the pure state ``psi``?"""
    psi = np.asarray(psi, dtype=complex)
    return DichotomicObservable(density_from_ket(psi), label)


def make_exciton_observables(hamiltonian7: np.ndarray, dim: int = DIM) -> list[DichotomicObservable]:
    """Dichotomic observables for the seven energy eigenstates of a site Hamiltonian.

    Labels are exciton1..exciton7 in ascending eigenvalue order.  With
    ``dim=9`` the eigenvectors are embedded into the nine-level basis.
    """
    h = _as_square_matrix(hamiltonian7)
    if h.shape != (SITE_DIM, SITE_DIM):
        raise ValueError(f"expected a 7x7 site Hamiltonian, got shape {h.shape}")
    _, vectors = hermitian_eigendecomposition(h)
    observables = []
    for k in range(SITE_DIM):
        phi = vectors[:, k]
        if dim == DIM:
            phi = embed_site_vector(phi)
        elif dim != SITE_DIM:
            raise ValueError(f"dim must be 7 or 9, got {dim}")
        observables.append(make_state_observable(phi, f"exciton{k + 1}"))
    return observables


def _fix_column_phases(vectors: np.ndarray) -> np.ndarray:
    """Scale each column so its first entry of nonnegligible magnitude is real positive."""
    fixed = vectors.copy()
    for j in range(fixed.shape[1]):
        col = fixed[:, j]
        nonzero = np.flatnonzero(np.abs(col) > 1e-12)
        if nonzero.size == 0:
            continue
        pivot = col[nonzero[0]]
        fixed[:, j] = col * (pivot.conj() / abs(pivot))
    return fixed


def _degenerate_clusters(eigenvalues: np.ndarray) -> list[slice]:
    clusters = []
    start = 0
    for i in range(1, eigenvalues.size + 1):
        if i == eigenvalues.size:
            clusters.append(slice(start, i))
            break
        gap = abs(eigenvalues[i] - eigenvalues[i - 1])
        scale = max(1.0, abs(eigenvalues[i]), abs(eigenvalues[i - 1]))
        if gap > DEGENERACY_RTOL * scale:
            clusters.append(slice(start, i))
            start = i
    return clusters


def hermitian_eigendecomposition(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with a deterministic convention.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as columns.  Each column is phase-fixed so its first
    nonnegligible entry is real positive; within a degenerate cluster the
    columns are ordered so that standard basis vectors keep their natural
    index order.  Repeated calls on identical input are bitwise identical.
    """
    m = _as_square_matrix(matrix)
    defect = hermiticity_defect(m)
    if defect > HERMITICITY_ATOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    eigenvalues, vectors = np.linalg.eigh((m + m.conj().T) / 2.0)
    vectors = _fix_column_phases(vectors)
    for cluster in _degenerate_clusters(eigenvalues):
        if cluster.stop - cluster.start < 2:
            continue
        block = vectors[:, cluster]
        # Descending lexicographic order on (real, imag) entry pairs keeps
        # identity-like clusters in natural basis order.
        keys = sorted(
            range(block.shape[1]),
            key=lambda j: tuple(
                (-block[i, j].real, -block[i, j].imag) for i in range(block.shape[0])
            ),
        )
        vectors[:, cluster] = block[:, keys]
    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return eigenvalues, vectors
