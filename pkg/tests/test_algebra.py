import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobosqueeze import algebra
from cobosqueeze.algebra import (
    LadderSpec,
    b_dagger_matrix,
    b_matrix,
    chi_normalization,
    chi_quadrature_matrix,
    commutator,
    d_matrix,
    f_coefficient,
    fock_normalization,
    pi_quadrature_matrix,
)
from cobosqueeze.exceptions import DomainError

N_S_RANGE = range(1, 65)


def spin_ladder_spectrum(n_s):
    # F_N**2 * n_s = N (n_s - N + 1): the raising coefficients of spin n_s/2,
    # so chi = sqrt(2/n_s) J_x has eigenvalues sqrt(2/n_s) * m, m = -n_s/2 .. n_s/2
    m = np.arange(n_s + 1) - n_s / 2
    return math.sqrt(2.0 / n_s) * m


class TestLadderCoefficients:
    def test_first_coefficient_is_one(self):
        assert f_coefficient(1, 5) == 1.0

    def test_pauli_blocking(self):
        assert f_coefficient(3, 2) == 0.0
        for n_s in N_S_RANGE:
            assert f_coefficient(n_s + 1, n_s) == 0.0
            assert f_coefficient(0, n_s) == 0.0

    def test_two_pairs(self):
        assert f_coefficient(2, 2) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("n, n_s", [(-1, 3), (5, 3), (1, 0)])
    def test_domain(self, n, n_s):
        with pytest.raises(DomainError):
            f_coefficient(n, n_s)

    def test_spec_matches_scalar(self):
        for n_s in (1, 2, 7, 64):
            spec = LadderSpec(n_s)
            expected = [f_coefficient(n, n_s) for n in range(1, n_s + 1)]
            np.testing.assert_allclose(spec.f, expected, rtol=1e-15)
            assert np.all(spec.f > 0)

    @pytest.mark.parametrize("bad", [0, -3, 2.5, True])
    def test_spec_rejects(self, bad):
        with pytest.raises(DomainError):
            LadderSpec(bad)

    def test_spec_is_immutable(self):
        spec = LadderSpec(4)
        with pytest.raises(ValueError):
            spec.f[0] = 2.0

    def test_ladder_commutator_consistency(self):
        for n_s in N_S_RANGE:
            f = np.concatenate(([0.0], LadderSpec(n_s).f, [0.0]))
            n = np.arange(n_s + 1)
            np.testing.assert_allclose(f[n + 1] ** 2 - f[n] ** 2, 1 - 2 * n / n_s, atol=1e-12)


class TestNormalization:
    def test_trivial_values(self):
        assert chi_normalization(0, 4) == 1.0
        assert chi_normalization(2, 2) == 0.5
        assert chi_normalization(2, 4) == pytest.approx(0.75, rel=1e-15)

    def test_factorial_form(self):
        for n_s in range(1, 20):
            for n in range(n_s + 1):
                exact = math.factorial(n_s) / (n_s ** n * math.factorial(n_s - n))
                assert chi_normalization(n, n_s) == pytest.approx(exact, rel=1e-12)

    def test_telescoping_identity(self):
        for n_s in N_S_RANGE:
            for n in range(n_s + 1):
                prod = math.prod(f_coefficient(k, n_s) ** 2 / k for k in range(1, n + 1))
                assert chi_normalization(n, n_s) == pytest.approx(prod, rel=1e-12)

    def test_vector_form_and_monotone(self):
        for n_s in (1, 2, 10, 64):
            chi = fock_normalization(n_s)
            np.testing.assert_allclose(chi, [chi_normalization(n, n_s) for n in range(n_s + 1)], rtol=1e-14)
            assert np.all((chi > 0) & (chi <= 1))
            if n_s > 1:
                assert np.all(np.diff(chi[1:]) < 0)

    def test_large_n_s_does_not_overflow(self):
        chi = fock_normalization(2000)
        assert np.all(np.isfinite(chi)) and chi[0] == 1.0

    def test_missing_state(self):
        with pytest.raises(DomainError):
            chi_normalization(5, 4)


class TestOperatorMatrices:
    def test_single_pair(self):
        np.testing.assert_array_equal(b_matrix(1), [[0, 1], [0, 0]])
        np.testing.assert_allclose(chi_quadrature_matrix(1), np.array([[0, 1], [1, 0]]) / math.sqrt(2))

    def test_annihilates_vacuum(self):
        e0 = np.eye(6)[0]
        np.testing.assert_array_equal(b_matrix(5) @ e0, 0)

    def test_entry_three_pairs(self):
        assert b_matrix(3)[1, 2] == pytest.approx(math.sqrt(4 / 3), rel=1e-15)

    def test_band_structure(self):
        for n_s in (1, 5, 12):
            b, bd, d = b_matrix(n_s), b_dagger_matrix(n_s), d_matrix(n_s)
            assert np.count_nonzero(b - np.diag(np.diag(b, 1), 1)) == 0
            assert np.count_nonzero(bd - np.diag(np.diag(bd, -1), -1)) == 0
            assert np.count_nonzero(d - np.diag(np.diag(d))) == 0

    def test_adjoint(self):
        for n_s in range(1, 11):
            np.testing.assert_array_equal(b_dagger_matrix(n_s), b_matrix(n_s).conj().T)

    def test_creator_blocks_top(self):
        bd = b_dagger_matrix(2)
        np.testing.assert_array_equal(bd @ np.eye(3)[2], 0)
        np.testing.assert_allclose(bd @ np.eye(3)[1], np.eye(3)[2], atol=1e-15)

    def test_d_diagonal(self):
        np.testing.assert_allclose(np.diag(d_matrix(4)), [0, 0.5, 1.0, 1.5, 2.0])
        for n_s in N_S_RANGE:
            assert d_matrix(n_s)[0, 0] == 0

    @pytest.mark.parametrize("n_s", N_S_RANGE)
    def test_commutation_rules(self, n_s):
        b, bd, d = b_matrix(n_s), b_dagger_matrix(n_s), d_matrix(n_s)
        eye = np.eye(n_s + 1)
        np.testing.assert_allclose(commutator(b, bd), eye - d, atol=1e-12, rtol=0)
        np.testing.assert_allclose(commutator(d, bd), (2 / n_s) * bd, atol=1e-12, rtol=0)
        np.testing.assert_allclose(commutator(d, b), -(2 / n_s) * b, atol=1e-12, rtol=0)
        chi, pi = chi_quadrature_matrix(n_s), pi_quadrature_matrix(n_s)
        np.testing.assert_allclose(commutator(chi, pi), 1j * (eye - d), atol=1e-12, rtol=0)

    @pytest.mark.parametrize("n_s", N_S_RANGE)
    def test_quadratures_hermitian(self, n_s):
        chi, pi = chi_quadrature_matrix(n_s), pi_quadrature_matrix(n_s)
        np.testing.assert_array_equal(chi, chi.T)
        np.testing.assert_array_equal(pi, pi.conj().T)
        f = LadderSpec(n_s).f
        np.testing.assert_allclose(np.diag(pi, 1), f / (math.sqrt(2) * 1j))
        np.testing.assert_allclose(np.diag(pi, -1), -f / (math.sqrt(2) * 1j))

    def test_small_quadrature_spectrum(self):
        w = np.linalg.eigvalsh(chi_quadrature_matrix(2))
        np.testing.assert_allclose(w, -w[::-1], atol=1e-15)
        assert np.min(np.abs(w)) < 1e-15
        np.testing.assert_allclose(w, [-1, 0, 1], atol=1e-14)

    @pytest.mark.parametrize("n_s", [1, 2, 3, 8, 33, 64])
    def test_quadrature_spectra(self, n_s):
        chi = np.linalg.eigvalsh(chi_quadrature_matrix(n_s))
        pi = np.linalg.eigvalsh(pi_quadrature_matrix(n_s))
        np.testing.assert_allclose(chi, spin_ladder_spectrum(n_s), atol=1e-12)
        np.testing.assert_allclose(pi, chi, atol=1e-12)
        np.testing.assert_allclose(chi, -chi[::-1], atol=1e-12)

    def test_phase_similarity_maps_chi_to_pi(self):
        n_s = 9
        u = np.diag((-1j) ** np.arange(n_s + 1))
        mapped = u.conj().T @ chi_quadrature_matrix(n_s) @ u
        np.testing.assert_allclose(mapped, pi_quadrature_matrix(n_s), atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=200))
def test_commutator_property(n_s):
    b, bd = b_matrix(n_s), b_dagger_matrix(n_s)
    np.testing.assert_allclose(commutator(b, bd), np.eye(n_s + 1) - d_matrix(n_s), atol=1e-12, rtol=0)


def test_accepts_int_or_spec():
    np.testing.assert_array_equal(algebra.b_matrix(LadderSpec(3)), algebra.b_matrix(3))
