import numpy as np
import pytest

import psdorder as po
from psdorder import sampling
from conftest import eig_scale, min_eig


def pos_part(m):
    dec = po.eig_hermitian(m)
    return dec.apply(lambda w: np.clip(w, 0.0, None))


class TestSupExists:
    def test_incomparable_projections(self):
        v = po.sup_exists(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        assert not v.exists
        assert v.sup is None

    def test_rank_one_bump(self, rng):
        a = sampling.random_psd(rng, 3)
        b = a + po.rank_one(sampling.random_vector(rng, 3))
        v = po.sup_exists(a, b)
        assert v.exists
        np.testing.assert_allclose(v.sup, b, atol=1e-12 * eig_scale(b))

    def test_incomparable_diagonals(self):
        assert not po.sup_exists(np.diag([2.0, 1.0]), np.diag([1.0, 2.0])).exists

    def test_refutation_witness(self):
        a, b = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
        t = np.eye(2) * 1.5
        v = po.sup_exists(a, b, refute=t)
        assert not v.exists
        assert v.witness is not None
        assert po.comparable(v.witness, t) is po.Comparison.INCOMPARABLE


class TestKadisonWitness:
    def test_fixed_2x2_fixture(self):
        a, b, t = np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), np.eye(2)
        s = po.kadison_witness(a, b, t)
        expected = np.eye(2) + np.array([[1.0, 2.0], [2.0, 1.0]]) / 3.0
        np.testing.assert_allclose(s, expected, atol=1e-12)
        # s - a is PSD and singular, s - b is PSD, s - t is indefinite
        assert po.is_psd(s - a)
        assert np.linalg.eigvalsh(s - a)[0] == pytest.approx(0.0, abs=1e-12)
        assert po.is_psd(s - b)
        w = np.linalg.eigvalsh(s - t)
        assert w[0] < -1e-9 and w[-1] > 1e-9

    def test_zero_pair_rank_one_bound(self, rng):
        f = sampling.random_vector(rng, 3)
        t = po.rank_one(f)
        zero = np.zeros((3, 3))
        s = po.kadison_witness(zero, zero, t)
        # the common strength direction is removed entirely, an orthogonal
        # rank-one bump appears
        assert po.is_psd(s)
        assert po.comparable(s, t) is po.Comparison.INCOMPARABLE
        assert np.max(np.abs(s @ f)) <= 1e-9 * max(1.0, np.linalg.norm(f) ** 2)

    def test_contracts_on_random_pairs(self, rng):
        for k in range(15):
            n = int(rng.integers(2, 7))
            a, b = sampling.incomparable_pair(rng, n, complex_entries=bool(k % 2))
            for t in (a + b + np.eye(n), a + pos_part(b - a)):
                s = po.kadison_witness(a, b, t)
                sc = eig_scale(a, b, t)
                assert min_eig(s) >= -1e-9 * sc
                assert min_eig(s - a) >= -1e-9 * sc
                assert min_eig(s - b) >= -1e-9 * sc
                diff = np.linalg.eigvalsh(s - t)
                assert diff[0] <= -1e-9 * sc and diff[-1] >= 1e-9 * sc

    def test_preconditions(self, rng):
        a = sampling.random_psd(rng, 2)
        with pytest.raises(po.MatrixError):
            po.kadison_witness(a, a, a)  # t coincides with a
        with pytest.raises(po.MatrixError):
            po.kadison_witness(a + np.eye(2), a, a)  # t >= a fails
        with pytest.raises(po.MatrixError):
            po.kadison_witness(np.ones((1, 1)), np.zeros((1, 1)), np.full((1, 1), 2.0))


class TestCompress:
    def test_equal_pair(self):
        comp = po.compress(np.eye(2), np.eye(2))
        np.testing.assert_allclose(comp.a_tilde, 0.5 * np.eye(2), atol=1e-12)

    def test_diagonal_closed_form(self):
        comp = po.compress(np.diag([2.0, 1.0]), np.diag([1.0, 2.0]))
        np.testing.assert_allclose(comp.a_tilde, np.diag([2 / 3, 1 / 3]), atol=1e-12)

    def test_disjoint_projections_flagged(self):
        a, b = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
        comp = po.compress(a, b)
        np.testing.assert_allclose(comp.a_tilde, np.diag([1.0, 0.0]), atol=1e-12)
        # the pair is not mutually AC, so the spectral route rejects it
        with pytest.raises(po.MatrixError):
            po.spectral_criterion(a, b)

    def test_invariants_random(self, rng):
        for k in range(15):
            n = int(rng.integers(1, 7))
            a = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)), complex_entries=bool(k % 2))
            b = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)), complex_entries=bool(k % 2))
            comp = po.compress(a, b)
            sc = eig_scale(a, b)
            assert np.max(np.abs(comp.a_tilde + comp.b_tilde - comp.range_proj)) <= 1e-10
            assert np.max(np.abs(comp.j @ comp.a_tilde @ comp.j - a)) <= 1e-9 * sc
            assert np.max(np.abs(comp.j @ comp.b_tilde @ comp.j - b)) <= 1e-9 * sc
            assert po.is_psd(comp.a_tilde)
            assert po.loewner_leq(comp.a_tilde, comp.range_proj)

    def test_zero_pair(self):
        comp = po.compress(np.zeros((2, 2)), np.zeros((2, 2)))
        assert np.max(np.abs(comp.range_proj)) == 0.0
        assert comp.range_basis.shape == (2, 0)

    def test_mutually_ac_pair_has_interior_spectrum(self, rng):
        for _ in range(5):
            a, b = sampling.shared_core_pair(rng, 5, 3)
            comp = po.compress(a, b)
            basis = comp.range_basis
            w = np.linalg.eigvalsh(basis.conj().T @ comp.a_tilde @ basis)
            assert np.all(w > 1e-8) and np.all(w < 1.0 - 1e-8)


class TestAndoCandidate:
    def test_equal_identity(self):
        np.testing.assert_allclose(po.ando_candidate(np.eye(2), np.eye(2)), np.eye(2), atol=1e-12)

    def test_diagonal_pair(self):
        got = po.ando_candidate(np.diag([2.0, 1.0]), np.diag([1.0, 2.0]))
        np.testing.assert_allclose(got, np.eye(2), atol=1e-12)

    def test_disjoint_projections(self):
        got = po.ando_candidate(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        assert np.max(np.abs(got)) <= 1e-12

    def test_always_lower_bound(self, rng):
        for k in range(15):
            n = int(rng.integers(1, 7))
            a = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)), complex_entries=bool(k % 2))
            b = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)), complex_entries=bool(k % 2))
            c = po.ando_candidate(a, b)
            assert po.loewner_leq(c, a)
            assert po.loewner_leq(c, b)


class TestSpectralCriterion:
    def test_equal_pair(self, rng):
        a = sampling.random_psd(rng, 3)
        assert po.spectral_criterion(a, a)

    def test_straddling_diagonals(self):
        assert not po.spectral_criterion(np.diag([2.0, 1.0]), np.diag([1.0, 2.0]))

    def test_one_sided_diagonals(self):
        assert po.spectral_criterion(np.diag([1.0, 1.0]), np.diag([2.0, 3.0]))


class TestInfExists:
    def test_comparable_pair(self):
        v = po.inf_exists(np.diag([1.0, 1.0]), np.diag([2.0, 1.0]))
        assert v.exists
        np.testing.assert_allclose(v.inf, np.diag([1.0, 1.0]), atol=1e-12)
        assert v.witness is None

    def test_disjoint_projections(self):
        v = po.inf_exists(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        assert v.exists
        assert np.max(np.abs(v.inf)) <= 1e-12

    def test_straddling_pair_has_witness(self):
        a, b = np.diag([2.0, 1.0]), np.diag([1.0, 2.0])
        v = po.inf_exists(a, b)
        assert not v.exists
        assert v.inf is None
        d = v.witness
        expected = np.array([[5 / 6, np.sqrt(2) / 6], [np.sqrt(2) / 6, 5 / 6]])
        np.testing.assert_allclose(d, expected, atol=1e-10)
        # reduced parts of full-rank pairs are the matrices themselves
        np.testing.assert_allclose(v.reduced_a, a, atol=1e-12)
        np.testing.assert_allclose(v.reduced_b, b, atol=1e-12)

    def test_inf_is_smaller_part_and_candidate(self, rng):
        for tails in (False, True):
            a, b = sampling.shared_core_pair(rng, 5, 2, tails=tails)
            v = po.inf_exists(a, b)
            sc = eig_scale(a, b)
            if v.exists:
                assert np.max(np.abs(v.inf - v.candidate)) <= 1e-8 * sc
                assert po.loewner_leq(v.inf, a)
                assert po.loewner_leq(v.inf, b)

    def test_reduction_identity(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 7))
            a = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            b = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            v = po.inf_exists(a, b)
            if v.exists:
                reduced = po.inf_exists(v.reduced_a, v.reduced_b)
                assert reduced.exists
                assert np.max(np.abs(reduced.inf - v.inf)) <= 1e-8 * eig_scale(a, b)


class TestAndoWitness:
    def test_fixture_matrix(self):
        d = po.ando_witness(np.diag([2.0, 1.0]), np.diag([1.0, 2.0]))
        expected = np.array([[5 / 6, np.sqrt(2) / 6], [np.sqrt(2) / 6, 5 / 6]])
        np.testing.assert_allclose(d, expected, atol=1e-10)

    def test_fixture_contracts(self):
        a, b = np.diag([2.0, 1.0]), np.diag([1.0, 2.0])
        d = po.ando_witness(a, b)
        cand = po.ando_candidate(a, b)
        assert po.is_psd(d)
        assert po.loewner_leq(d, a)
        assert po.loewner_leq(d, b)
        w = np.linalg.eigvalsh(cand - d)
        assert w[0] < -1e-9 and w[-1] > 1e-9

    def test_rejects_comparable_pair(self, rng):
        a = sampling.random_psd(rng, 3)
        with pytest.raises(po.MatrixError):
            po.ando_witness(a, a + sampling.random_psd(rng, 3))

    def test_contracts_on_rank_deficient_pairs(self, rng):
        found = 0
        for k in range(40):
            n = int(rng.integers(2, 7))
            rank = int(rng.integers(1, n + 1))
            tails = bool(k % 3 == 0) and rank + 2 <= n
            a, b = sampling.shared_core_pair(rng, n, rank, complex_entries=bool(k % 2), tails=tails)
            v = po.inf_exists(a, b)
            if v.exists:
                continue
            found += 1
            d = v.witness
            sc = eig_scale(a, b)
            assert min_eig(d) >= -1e-9 * sc
            assert min_eig(a - d) >= -1e-9 * sc
            assert min_eig(b - d) >= -1e-9 * sc
            w = np.linalg.eigvalsh(po.hermitian_part(v.candidate - d))
            assert w[0] <= -1e-9 * sc and w[-1] >= 1e-9 * sc
        assert found >= 10
