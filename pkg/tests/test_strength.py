import numpy as np
import pytest

import psdorder as po
from psdorder import sampling
from conftest import eig_scale


class TestStrengthExamples:
    def test_identity_basis_ray(self):
        res = po.strength(np.eye(2), [1.0, 0.0])
        assert res.value == pytest.approx(1.0)
        assert res.constant == pytest.approx(1.0)
        np.testing.assert_allclose(res.witness, [1.0, 0.0], atol=1e-14)

    def test_ray_outside_range(self):
        res = po.strength(np.diag([1.0, 0.0]), [0.0, 1.0])
        assert res.value == 0.0
        assert res.witness is None
        assert res.constant is None

    def test_hand_inverse_case(self):
        # f* A^{-1} f = 1 for A = [[2,1],[1,1]], f = (1,1)
        a = np.array([[2.0, 1.0], [1.0, 1.0]])
        f = np.array([1.0, 1.0])
        res = po.strength(a, f)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        oracle = po.strength_bisection(a, f)
        assert oracle == pytest.approx(res.value, abs=1e-6 * (1 + res.value))

    def test_rejects_zero_ray(self):
        with pytest.raises(po.MatrixError):
            po.strength(np.eye(2), [0.0, 0.0])
        with pytest.raises(po.MatrixError):
            po.strength_bisection(np.eye(2), [0.0, 0.0])

    def test_zero_matrix(self):
        assert po.strength(np.zeros((2, 2)), [1.0, 0.0]).value == 0.0


class TestStrengthInvariants:
    def test_result_certificates_consistent(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 7))
            a = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            f = sampling.random_ray_in_range(rng, a)
            res = po.strength(a, f)
            assert (res.value > 0) == (res.witness is not None) == (res.constant is not None)
            if res.value > 0:
                assert res.value * res.constant == pytest.approx(1.0, abs=1e-10)
                assert res.value * np.linalg.norm(res.witness) ** 2 == pytest.approx(1.0, abs=1e-9)
                image = po.sqrt_psd(a) @ res.witness
                assert np.linalg.norm(image - f) <= 1e-10 * eig_scale(a) * max(1.0, np.linalg.norm(f))

    def test_positive_homogeneity(self, rng):
        a = sampling.random_psd(rng, 4, rank=3)
        f = sampling.random_ray_in_range(rng, a)
        base = po.strength(a, f).value
        for alpha in (0.0, 0.5, 1.0, 2.0, 3.5):
            scaled = po.strength(alpha * a, f).value
            assert scaled == pytest.approx(alpha * base, rel=1e-12, abs=1e-12)

    def test_superadditivity(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 7))
            a = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            b = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            f = sampling.random_vector(rng, n)
            la = po.strength(a, f).value
            lb = po.strength(b, f).value
            lab = po.strength(a + b, f).value
            assert lab >= la + lb - 1e-8 * eig_scale(a, b)

    def test_concavity(self, rng):
        a = sampling.random_psd(rng, 3)
        b = sampling.random_psd(rng, 3)
        f = sampling.random_vector(rng, 3)
        la = po.strength(a, f).value
        lb = po.strength(b, f).value
        sc = eig_scale(a, b)
        for alpha in (0.0, 0.25, 0.5, 0.75, 1.0):
            left = (po.strength(alpha * a, f).value if alpha else 0.0) + (
                po.strength((1 - alpha) * b, f).value if alpha < 1 else 0.0
            )
            assert left >= alpha * la + (1 - alpha) * lb - 1e-8 * sc

    def test_supremum_property(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 7))
            a = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            f = sampling.random_ray_in_range(rng, a) if n % 2 else sampling.random_vector(rng, n)
            lam = po.strength(a, f).value
            ff = po.rank_one(f)
            delta = 1e-6 * (1.0 + lam)
            assert po.is_psd(a - lam * ff)
            assert not po.is_psd(a - (lam + delta) * ff)

    def test_bisection_matches_closed_form(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 7))
            a = sampling.random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            f = sampling.random_ray_in_range(rng, a) if n % 2 else sampling.random_vector(rng, n)
            lam = po.strength(a, f).value
            assert abs(po.strength_bisection(a, f) - lam) <= 1e-6 * (1.0 + lam)


class TestStrengthDominates:
    def test_ordered_diagonal(self):
        assert po.strength_dominates(np.diag([1.0, 1.0]), np.diag([2.0, 1.0]))

    def test_unordered_diagonal(self):
        assert not po.strength_dominates(np.diag([2.0, 1.0]), np.diag([1.0, 2.0]))

    def test_identity_pair(self, rng):
        a = sampling.random_psd(rng, 3)
        assert po.strength_dominates(a, a, samples=30, seed=5)

    def test_rejects_bad_samples(self):
        with pytest.raises(po.MatrixError):
            po.strength_dominates(np.eye(2), np.eye(2), samples=0)

    def test_equal_strengths_imply_equal_matrices(self, rng):
        # dominance in both directions pins the matrices together
        a = sampling.random_psd(rng, 3)
        assert po.strength_dominates(a, a.copy(), samples=20, seed=7)
        assert po.strength_dominates(a.copy(), a, samples=20, seed=8)
        assert po.comparable(a, a.copy()) is po.Comparison.EQUAL


class TestOrderWitness:
    def test_diagonal_witness_direction(self):
        a, b = np.diag([2.0, 1.0]), np.diag([1.0, 2.0])
        f = po.order_witness(a, b)
        assert f is not None
        # witness is supported on the first coordinate
        assert abs(f[1]) <= 1e-12 * abs(f[0])
        la = po.strength(a, f).value
        lb = po.strength(b, f).value
        assert la >= 1.0 - 1e-10
        assert la > lb
        assert la / lb == pytest.approx(2.0, rel=1e-9)
        # bisection confirms both values
        assert po.strength_bisection(a, f) == pytest.approx(la, abs=1e-6 * (1 + la))
        assert po.strength_bisection(b, f) == pytest.approx(lb, abs=1e-6 * (1 + lb))

    def test_absent_when_ordered(self, rng):
        a = sampling.random_psd(rng, 3)
        assert po.order_witness(a, a + sampling.random_psd(rng, 3)) is None

    def test_rank_one_bump(self):
        b = np.eye(2)
        a = b + po.rank_one([1.0, 0.0])
        f = po.order_witness(a, b)
        assert abs(f[1]) <= 1e-12 * abs(f[0])
        la = po.strength(a, f).value
        lb = po.strength(b, f).value
        assert la > lb
        assert la / lb == pytest.approx(2.0, rel=1e-9)

    def test_witness_normalization(self, rng):
        # strength along the witness is 1 by the x* a x = 1 normalization
        for _ in range(10):
            a, b = sampling.incomparable_pair(rng, 4)
            f = po.order_witness(a, b)
            assert po.strength(a, f).value == pytest.approx(1.0, abs=1e-8)
