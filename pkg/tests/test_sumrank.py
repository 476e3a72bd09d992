"""Weights, supports, error sampling and decomposition."""

import numpy as np
import pytest

from sumrankdec.linalg import Matrix, rank, row_space_basis
from sumrankdec.sumrank import (
    Infeasible,
    LengthPartition,
    decompose_error,
    hamming_support,
    random_profile,
    rank_support,
    sample_error,
    sum_rank_support,
    sum_rank_weight,
)


class TestLengthPartition:
    def test_basic(self):
        p = LengthPartition([2, 2, 2])
        assert p.n == 6 and p.ell == 3
        assert p.slices == [slice(0, 2), slice(2, 4), slice(4, 6)]

    def test_invalid(self):
        with pytest.raises(ValueError):
            LengthPartition([2, 0, 1])
        with pytest.raises(ValueError):
            LengthPartition([])

    def test_json_roundtrip(self):
        p = LengthPartition([3, 1, 2])
        assert LengthPartition.from_dict(p.to_dict()) == p

    def test_block_split(self, ref):
        blocks = ref.partition.blocks(ref.E)
        assert [b.shape for b in blocks] == [(3, 2)] * 3
        with pytest.raises(ValueError):
            LengthPartition([2, 2]).blocks(ref.E)


class TestWeights:
    def test_reference_weight(self, ref):
        assert sum_rank_weight(ref.tower, ref.E, ref.partition) == 3

    def test_zero(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        Z = Matrix.zeros(ref_tower.ext_field, 2, 6)
        assert sum_rank_weight(ref_tower, Z, part) == 0

    def test_hamming_reduction(self, ref_tower):
        rng = np.random.default_rng(0)
        part = LengthPartition.hamming(6)
        for _ in range(30):
            M = Matrix.random(ref_tower.ext_field, 2, 6, rng)
            nonzero_cols = int(np.count_nonzero(np.any(M.array != 0, axis=0)))
            assert sum_rank_weight(ref_tower, M, part) == nonzero_cols
            assert len(hamming_support(M)) == nonzero_cols

    def test_rank_reduction(self, ref_tower):
        rng = np.random.default_rng(1)
        part = LengthPartition.full(5)
        for _ in range(30):
            M = Matrix.random(ref_tower.ext_field, 2, 5, rng)
            assert sum_rank_weight(ref_tower, M, part) == rank(ref_tower.ext_matrix(M))

    def test_weight_zero_iff_zero(self, ref_tower):
        rng = np.random.default_rng(2)
        part = LengthPartition([2, 3])
        for _ in range(30):
            M = Matrix.random(ref_tower.ext_field, 2, 5, rng)
            assert (sum_rank_weight(ref_tower, M, part) == 0) == M.is_zero

    def test_triangle_inequality(self, ref_tower):
        rng = np.random.default_rng(3)
        part = LengthPartition([2, 3, 1])
        for _ in range(50):
            X = Matrix.random(ref_tower.ext_field, 2, 6, rng)
            Y = Matrix.random(ref_tower.ext_field, 2, 6, rng)
            wx = sum_rank_weight(ref_tower, X, part)
            wy = sum_rank_weight(ref_tower, Y, part)
            assert sum_rank_weight(ref_tower, X + Y, part) <= wx + wy

    def test_base_scalar_invariance(self, ref_tower):
        rng = np.random.default_rng(4)
        part = LengthPartition([2, 2, 2])
        for _ in range(30):
            M = Matrix.random(ref_tower.ext_field, 2, 6, rng)
            c = int(rng.integers(1, ref_tower.q))
            assert sum_rank_weight(ref_tower, M.scale(c), part) == sum_rank_weight(
                ref_tower, M, part
            )

    def test_upper_bound(self, ref_tower):
        rng = np.random.default_rng(5)
        part = LengthPartition([2, 3, 1])
        s = 2
        cap = sum(min(ni, ref_tower.m * s) for ni in part.parts)
        for _ in range(20):
            M = Matrix.random(ref_tower.ext_field, s, 6, rng)
            assert 0 <= sum_rank_weight(ref_tower, M, part) <= cap


class TestSupports:
    def test_reference_supports(self, ref):
        sup = sum_rank_support(ref.tower, ref.E, ref.partition)
        assert sup[0].tolist() == [[1, 2]]
        assert sup[1] == Matrix.identity(ref.tower.base_field, 2)
        assert sup[2].shape == (0, 2)

    def test_zero_block(self, ref_tower):
        blk = Matrix.zeros(ref_tower.ext_field, 3, 2)
        assert rank_support(ref_tower, blk).shape == (0, 2)

    def test_single_row_embedded(self, ref_tower):
        blk = Matrix(ref_tower.ext_field, [[1, 2]])
        assert rank_support(ref_tower, blk).tolist() == [[1, 2]]

    def test_product_support_equals_b(self, ref_tower):
        rng = np.random.default_rng(6)
        t = ref_tower
        for _ in range(20):
            B = Matrix.random(t.base_field, 2, 4, rng)
            while rank(B) < 2:
                B = Matrix.random(t.base_field, 2, 4, rng)
            A = Matrix.random(t.ext_field, 3, 2, rng)
            while rank(t.ext_matrix(A)) < 2:
                A = Matrix.random(t.ext_field, 3, 2, rng)
            E = A @ t.lift(B)
            assert rank_support(t, E) == row_space_basis(B)

    def test_hamming_support(self, ref_tower):
        f = ref_tower.ext_field
        assert hamming_support(Matrix.zeros(f, 2, 5)) == set()
        arr = np.zeros((2, 5), dtype=np.int64)
        arr[1, 4] = 3
        assert hamming_support(Matrix(f, arr)) == {4}


class TestSampleError:
    def test_zero_profile(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        em = sample_error(ref_tower, part, (0, 0, 0), s=3, seed=0)
        assert em.E.is_zero and em.A.shape == (3, 0) and em.B.shape == (0, 6)
        assert em.t == 0 and em.full_rank

    def test_reference_regime(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        em = sample_error(ref_tower, part, (1, 2, 0), s=3, seed=42)
        em.validate()
        assert rank(em.E) == 3
        profile = [rank(ref_tower.ext_matrix(b)) for b in part.blocks(em.E)]
        assert profile == [1, 2, 0]

    def test_weight_matches_profile(self, ref_tower):
        part = LengthPartition([2, 3, 1])
        rng = np.random.default_rng(7)
        for _ in range(20):
            prof = random_profile(rng, ref_tower, part, 3, 3)
            em = sample_error(ref_tower, part, prof, s=3, rng=rng)
            assert sum_rank_weight(ref_tower, em.E, part) == sum(prof)

    def test_deterministic(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        a = sample_error(ref_tower, part, (1, 1, 1), s=3, seed=5)
        b = sample_error(ref_tower, part, (1, 1, 1), s=3, seed=5)
        assert a.E == b.E and a.A == b.A and a.B == b.B

    def test_full_rank_infeasible(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        with pytest.raises(Infeasible):
            sample_error(ref_tower, part, (2, 2, 0), s=3, seed=0)

    def test_block_weight_infeasible(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        with pytest.raises(Infeasible):
            sample_error(ref_tower, part, (3, 0, 0), s=3, seed=0)

    def test_profile_length_mismatch(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        with pytest.raises(Infeasible):
            sample_error(ref_tower, part, (1, 1), s=3, seed=0)

    def test_rank_deficient_when_s_below_t(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        em = sample_error(ref_tower, part, (1, 2, 1), s=3, require_full_rank=False, seed=9)
        em.validate()
        assert em.t == 4 and rank(em.E) <= 3 and not em.full_rank

    def test_json_roundtrip(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        em = sample_error(ref_tower, part, (1, 2, 0), s=3, seed=11)
        from sumrankdec.sumrank import ErrorModel

        em2 = ErrorModel.from_dict(em.to_dict(), ref_tower, part)
        assert em2.E == em.E and em2.profile == em.profile


class TestDecompose:
    def test_reference_error(self, ref):
        A, B = decompose_error(ref.tower, ref.E, ref.partition)
        assert B.tolist() == [
            [1, 2, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
        ]
        assert A @ ref.tower.lift(B) == ref.E

    def test_zero(self, ref_tower):
        part = LengthPartition([2, 2, 2])
        A, B = decompose_error(ref_tower, Matrix.zeros(ref_tower.ext_field, 3, 6), part)
        assert A.shape == (3, 0) and B.shape == (0, 6)

    def test_random_reconstruction(self, ref_tower):
        rng = np.random.default_rng(8)
        part = LengthPartition([2, 3, 1])
        for _ in range(20):
            E = Matrix.random(ref_tower.ext_field, 3, 6, rng)
            A, B = decompose_error(ref_tower, E, part)
            assert A @ ref_tower.lift(B) == E
            assert B.rows == sum_rank_weight(ref_tower, E, part)
            assert rank(B) == B.rows


class TestRandomProfile:
    def test_sums_and_caps(self, ref_tower):
        rng = np.random.default_rng(9)
        part = LengthPartition([2, 3, 1])
        for t in range(0, 6):
            prof = random_profile(rng, ref_tower, part, t, s=3)
            assert sum(prof) == t
            assert all(ti <= min(ni, ref_tower.m * 3) for ti, ni in zip(prof, part.parts))

    def test_infeasible_total(self, ref_tower):
        rng = np.random.default_rng(10)
        with pytest.raises(Infeasible):
            random_profile(rng, ref_tower, LengthPartition([1, 1]), 3, s=1)
