"""Unit tests for basis conventions, unit conversion, and eigendecomposition."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgfmo import quantum_core as qc

from conftest import random_density, random_hermitian

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


class TestUnitConversion:
    def test_wavenumber_examples(self):
        # Sink and recombination rates from the model, quoted in cm^-1.
        assert qc.wavenumber_to_angular_ps(62.8 / 1.88) == pytest.approx(6.29, abs=5e-3)
        assert qc.wavenumber_to_angular_ps(1.0 / 376.0) == pytest.approx(5.01e-4, abs=1e-6)
        assert qc.wavenumber_to_angular_ps(0.0) == 0.0

    def test_wavenumber_factor(self):
        factor = 2.0 * np.pi * 0.0299792458
        assert qc.wavenumber_to_angular_ps(1.0) == pytest.approx(factor, rel=1e-15)

    @given(
        a=st.floats(-500.0, 500.0, allow_nan=False),
        b=st.floats(-500.0, 500.0, allow_nan=False),
    )
    @settings(max_examples=50, deadline=None)
    def test_wavenumber_linearity(self, a, b):
        lhs = qc.wavenumber_to_angular_ps(a + b)
        rhs = qc.wavenumber_to_angular_ps(a) + qc.wavenumber_to_angular_ps(b)
        assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_axis_time_to_ps(self):
        assert qc.TIME_AXIS_UNITS_PER_PS == 2.0 * np.pi
        assert qc.axis_time_to_ps(2.0 * np.pi) == pytest.approx(1.0, rel=1e-15)
        assert qc.axis_time_to_ps(0.0) == 0.0


class TestBasis:
    def test_state_labels(self):
        assert qc.STATE_LABELS == ("G", "1", "2", "3", "4", "5", "6", "7", "S")
        assert qc.DIM == 9
        assert qc.SITE_DIM == 7
        assert qc.SITES == (1, 2, 3, 4, 5, 6, 7)

    def test_site_basis_index(self):
        assert [qc.site_basis_index(m) for m in qc.SITES] == [1, 2, 3, 4, 5, 6, 7]
        assert [qc.site_basis_index(m, dim=7) for m in qc.SITES] == [0, 1, 2, 3, 4, 5, 6]

    @pytest.mark.parametrize("bad", [0, 8, -1, 9])
    def test_site_index_rejects_non_sites(self, bad):
        with pytest.raises(ValueError):
            qc.site_basis_index(bad)

    def test_site_ket(self):
        ket = qc.site_ket(3)
        assert ket.shape == (9,)
        assert ket[3] == 1.0
        assert np.count_nonzero(ket) == 1

    def test_embed_site_vector(self):
        psi7 = np.arange(1.0, 8.0) / np.linalg.norm(np.arange(1.0, 8.0))
        psi9 = qc.embed_site_vector(psi7)
        assert psi9[0] == 0.0 and psi9[8] == 0.0
        np.testing.assert_array_equal(psi9[1:8], psi7.astype(complex))

    def test_embed_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            qc.embed_site_vector(np.zeros(9))


class TestDensityValidation:
    def test_accepts_valid_density(self, rng):
        rho = random_density(rng, 9)
        out = qc.require_density_operator(rho)
        np.testing.assert_allclose(out, rho)

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            qc.require_density_operator(0.5 * np.eye(9) / 9.0)

    def test_rejects_non_hermitian(self):
        rho = np.eye(9, dtype=complex) / 9.0
        rho[0, 1] = 0.1
        with pytest.raises(ValueError, match="Hermitian"):
            qc.require_density_operator(rho)

    def test_rejects_negative_eigenvalue(self):
        rho = np.diag([1.2, -0.2] + [0.0] * 7).astype(complex)
        with pytest.raises(ValueError, match="eigenvalue"):
            qc.require_density_operator(rho)

    def test_density_from_ket(self):
        psi = (qc.site_ket(1) + qc.site_ket(6)) / np.sqrt(2.0)
        rho = qc.density_from_ket(psi)
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-14)
        with pytest.raises(ValueError, match="norm"):
            qc.density_from_ket(2.0 * psi)


class TestSiteObservable:
    def test_matrix_entries(self):
        q = qc.make_site_observable(1)
        expected = -np.eye(9)
        expected[1, 1] = 1.0
        np.testing.assert_array_equal(q.matrix, expected.astype(complex))
        assert q.label == "site1"

    @pytest.mark.parametrize("site", qc.SITES)
    def test_involution_and_spectrum(self, site):
        q = qc.make_site_observable(site)
        np.testing.assert_allclose(q.matrix @ q.matrix, np.eye(9), atol=1e-12)
        assert np.trace(q.matrix).real == pytest.approx(-7.0, abs=1e-12)
        eigs = np.sort(np.linalg.eigvalsh(q.matrix))
        np.testing.assert_allclose(eigs, [-1.0] * 8 + [1.0], atol=1e-12)

    def test_site_dim7(self):
        q = qc.make_site_observable(2, dim=7)
        assert q.dim == 7
        assert np.trace(q.matrix).real == pytest.approx(-5.0, abs=1e-12)

    @pytest.mark.parametrize("bad", [0, 8])
    def test_rejects_ground_and_sink(self, bad):
        with pytest.raises(ValueError):
            qc.make_site_observable(bad)


class TestStateObservable:
    def test_site_ket_matches_site_observable(self):
        via_state = qc.make_state_observable(qc.site_ket(4), "site4")
        via_site = qc.make_site_observable(4)
        np.testing.assert_array_equal(via_state.matrix, via_site.matrix)

    def test_superposition_projector(self):
        psi = (qc.site_ket(1) + qc.site_ket(6)) / np.sqrt(2.0)
        q = qc.make_state_observable(psi, "plus16")
        p = q.projector
        # Four equal entries of 1/2 at rows/cols 1 and 6, nothing else.
        assert np.count_nonzero(p) == 4
        for i, j in [(1, 1), (1, 6), (6, 1), (6, 6)]:
            assert p[i, j] == pytest.approx(0.5, abs=1e-15)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            qc.make_state_observable(np.ones(9))

    def test_projector_is_readonly(self):
        q = qc.make_site_observable(1)
        with pytest.raises(ValueError):
            q.projector[0, 0] = 5.0


class TestExcitonObservables:
    def test_commute_with_embedded_hamiltonian(self):
        from lgfmo import fmo_model

        h7 = fmo_model.build_default_hamiltonian()
        h9 = fmo_model.embed_site_hamiltonian(h7)
        observables = qc.make_exciton_observables(h7)
        assert [q.label for q in observables] == [f"exciton{k}" for k in range(1, 8)]
        for q in observables:
            comm = q.matrix @ h9 - h9 @ q.matrix
            assert np.max(np.abs(comm)) <= 1e-10 * max(1.0, np.max(np.abs(h9)))

    def test_site_space_variant(self):
        from lgfmo import fmo_model

        h7 = fmo_model.build_default_hamiltonian()
        observables = qc.make_exciton_observables(h7, dim=7)
        values, vectors = qc.hermitian_eigendecomposition(h7)
        for k, q in enumerate(observables):
            assert q.dim == 7
            phi = vectors[:, k]
            np.testing.assert_allclose(q.projector, np.outer(phi, phi.conj()), atol=1e-12)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            qc.make_exciton_observables(np.eye(9))


class TestEigendecomposition:
    def test_identity(self):
        values, vectors = qc.hermitian_eigendecomposition(np.eye(4))
        np.testing.assert_array_equal(values, np.ones(4))
        np.testing.assert_array_equal(vectors, np.eye(4).astype(complex))

    def test_sigma_x(self):
        values, vectors = qc.hermitian_eigendecomposition(SIGMA_X)
        np.testing.assert_allclose(values, [-1.0, 1.0], atol=1e-15)
        # Phase convention: first nonnegligible entry real positive.
        for j in range(2):
            pivot = vectors[:, j][np.flatnonzero(np.abs(vectors[:, j]) > 1e-12)[0]]
            assert pivot.real > 0.0 and abs(pivot.imag) <= 1e-15

    def test_reconstruction_random(self, rng):
        for _ in range(10):
            m = random_hermitian(rng, 8)
            values, vectors = qc.hermitian_eigendecomposition(m)
            rebuilt = (vectors * values) @ vectors.conj().T
            assert np.max(np.abs(rebuilt - m)) <= 1e-9 * max(1.0, np.max(np.abs(m)))
            assert np.all(np.diff(values) >= -1e-12)
            unitary_defect = np.max(np.abs(vectors.conj().T @ vectors - np.eye(8)))
            assert unitary_defect <= 1e-10

    def test_bitwise_deterministic(self, rng):
        m = random_hermitian(rng, 7)
        first = qc.hermitian_eigendecomposition(m)
        second = qc.hermitian_eigendecomposition(m.copy())
        assert first[0].tobytes() == second[0].tobytes()
        assert first[1].tobytes() == second[1].tobytes()

    def test_degenerate_cluster_natural_order(self):
        values, vectors = qc.hermitian_eigendecomposition(np.diag([2.0, 2.0, 3.0]))
        np.testing.assert_allclose(values, [2.0, 2.0, 3.0])
        np.testing.assert_array_equal(vectors, np.eye(3).astype(complex))

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            qc.hermitian_eigendecomposition(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            qc.hermitian_eigendecomposition(np.zeros((2, 3)))
