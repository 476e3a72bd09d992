"""Skew-metric decoding through the diagonal isometry."""

import numpy as np
import pytest

from conftest import code_with_distance, make_instance
from sumrankdec.code import InterleavedCode, min_sum_rank_distance
from sumrankdec.decoder import decode
from sumrankdec.gf import FieldTower
from sumrankdec.linalg import Matrix, rank
from sumrankdec.skew import SkewIsometry, skew_code_from_sumrank, skew_decode, skew_weight
from sumrankdec.sumrank import LengthPartition, sum_rank_weight


class TestIsometry:
    def test_zero_diagonal_rejected(self, ref):
        with pytest.raises(ValueError, match="nonzero"):
            SkewIsometry(ref.tower, ref.partition, (1, 1, 0, 1, 1, 1))

    def test_wrong_length_rejected(self, ref):
        with pytest.raises(ValueError):
            SkewIsometry(ref.tower, ref.partition, (1, 1, 1))

    def test_inverse(self, ref):
        rng = np.random.default_rng(0)
        iso = SkewIsometry.random(ref.tower, ref.partition, rng)
        assert iso.D @ iso.D_inv == Matrix.identity(ref.tower.ext_field, 6)

    def test_apply_matches_matmul(self, ref):
        rng = np.random.default_rng(1)
        iso = SkewIsometry.random(ref.tower, ref.partition, rng)
        X = Matrix.random(ref.tower.ext_field, 3, 6, rng)
        assert iso.apply(X) == X @ iso.D
        assert iso.apply_inv(iso.apply(X)) == X

    def test_json_roundtrip(self, ref):
        rng = np.random.default_rng(2)
        iso = SkewIsometry.random(ref.tower, ref.partition, rng)
        assert SkewIsometry.from_dict(iso.to_dict(), ref.tower, ref.partition) == iso


class TestSkewWeight:
    def test_zero(self, ref):
        iso = SkewIsometry.identity(ref.tower, ref.partition)
        assert skew_weight(ref.tower, iso, Matrix.zeros(ref.tower.ext_field, 3, 6)) == 0

    def test_identity_isometry_reduces_to_sum_rank(self, ref):
        iso = SkewIsometry.identity(ref.tower, ref.partition)
        assert skew_weight(ref.tower, iso, ref.E) == sum_rank_weight(ref.tower, ref.E, ref.partition)

    def test_matches_direct_computation(self, ref):
        rng = np.random.default_rng(3)
        for _ in range(20):
            iso = SkewIsometry.random(ref.tower, ref.partition, rng)
            X = Matrix.random(ref.tower.ext_field, 2, 6, rng)
            assert skew_weight(ref.tower, iso, X) == sum_rank_weight(
                ref.tower, X @ iso.D, ref.partition
            )

    def test_rank_preserved_by_diagonal(self, ref):
        rng = np.random.default_rng(4)
        for _ in range(20):
            iso = SkewIsometry.random(ref.tower, ref.partition, rng)
            X = Matrix.random(ref.tower.ext_field, 3, 6, rng)
            assert rank(X @ iso.D) == rank(X)


class TestSkewCode:
    def test_identity_gives_same_parity(self, ref):
        iso = SkewIsometry.identity(ref.tower, ref.partition)
        desc = skew_code_from_sumrank(ref.icode, iso)
        assert desc.H_skew == ref.code.H
        assert desc.k == 2 and desc.s == 3 and desc.d == 5

    def test_transformed_codewords_annihilated(self, ref):
        rng = np.random.default_rng(5)
        iso = SkewIsometry.random(ref.tower, ref.partition, rng)
        desc = skew_code_from_sumrank(ref.icode, iso)
        for _ in range(10):
            M = Matrix.random(ref.tower.ext_field, 3, 2, rng)
            C = ref.icode.encode(M)
            assert desc.contains(iso.apply_inv(C))

    def test_min_skew_distance_matches(self, ref_tower):
        # enumerate the skew-side codewords and minimise the skew weight
        rng = np.random.default_rng(6)
        part = LengthPartition([2, 2])
        code = code_with_distance(ref_tower, part, 1, rng, d_min=2)
        iso = SkewIsometry.random(ref_tower, part, rng)
        G = code.generator
        best = None
        for c0 in range(1, ref_tower.order):
            cw = Matrix(ref_tower.ext_field, [[c0]]) @ G
            w = skew_weight(ref_tower, iso, iso.apply_inv(cw))
            best = w if best is None else min(best, w)
        assert best == min_sum_rank_distance(code)


class TestSkewDecode:
    def test_identity_matches_plain_decode(self, ref):
        iso = SkewIsometry.identity(ref.tower, ref.partition)
        rep = skew_decode(ref.icode, iso, ref.Y)
        plain = decode(ref.icode, ref.Y)
        assert rep.C_hat == plain.C_hat and rep.E_hat == plain.E_hat

    def test_composition_law(self, ref):
        rng = np.random.default_rng(7)
        for _ in range(20):
            iso = SkewIsometry.random(ref.tower, ref.partition, rng)
            inst = make_instance(ref.code, s=3, rng=rng, t=3)
            Y_skew = iso.apply_inv(inst.Y)
            rep = skew_decode(ref.icode, iso, Y_skew)
            plain = decode(ref.icode, inst.Y)
            assert rep.C_hat == iso.apply_inv(plain.C_hat)
            assert rep.E_hat == iso.apply_inv(plain.E_hat)
            assert rep.t_hat == plain.t_hat
            assert rep.C_hat == iso.apply_inv(inst.C)

    def test_forward_constructed_skew_instance(self):
        tower = FieldTower.standard(2, 3)
        part = LengthPartition([2, 2, 1])
        rng = np.random.default_rng(8)
        code = code_with_distance(tower, part, 2, rng, d_min=4)
        icode = InterleavedCode(code, 2)
        for _ in range(10):
            iso = SkewIsometry.random(tower, part, rng)
            inst = make_instance(code, s=2, rng=rng, t=2)
            rep = skew_decode(icode, iso, iso.apply_inv(inst.Y))
            assert rep.C_hat == iso.apply_inv(inst.C)

    def test_failure_propagates(self, ref):
        from sumrankdec.decoder import DecodingFailure
        from sumrankdec.linalg import Inconsistent, NonUniqueSolution

        rng = np.random.default_rng(9)
        iso = SkewIsometry.random(ref.tower, ref.partition, rng)
        # weight 4 exceeds d - 2 = 3 and s = 3, so rank(E) < t: typed failure
        inst = make_instance(ref.code, s=3, rng=rng, profile=(2, 1, 1), require_full_rank=False)
        with pytest.raises((DecodingFailure, NonUniqueSolution, Inconsistent)):
            skew_decode(ref.icode, iso, iso.apply_inv(inst.Y))

    def test_mismatched_partition_rejected(self, ref):
        iso = SkewIsometry.identity(ref.tower, LengthPartition([3, 3]))
        with pytest.raises(ValueError):
            skew_code_from_sumrank(ref.icode, iso)
