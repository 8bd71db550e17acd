"""Graded 1PS block bookkeeping and unipotent Lie stabilizers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagstab import (
    GradedOnePS,
    HomogeneousIdeal,
    OnePS,
    Polynomial,
    block_profile,
    configuration_unipotent_stabilizer_dim,
    lie_unipotent_stabilizer_dim,
    stage_data,
)

from conftest import V


G211 = GradedOnePS((2, -1, -3), (2, 1, 1))  # size 4, ell 3
G21 = GradedOnePS((1, -2), (2, 1))  # size 3, ell 2


class TestGradedOnePS:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            GradedOnePS((1, 1), (1, 1))  # not strictly decreasing
        with pytest.raises(ValueError):
            GradedOnePS((1, -1), (1, 2))  # weighted sum nonzero
        with pytest.raises(ValueError):
            GradedOnePS((1,), (1,))  # ell < 2

    def test_expand_and_blocks(self):
        assert G211.expand() == (2, 2, -1, -3)
        assert [G211.block_of(i) for i in range(4)] == [0, 0, 1, 2]
        assert G211.block_starts() == [0, 2, 3]

    def test_standard_default(self):
        g = GradedOnePS.standard((2, 1))
        assert g.multiplicities == (2, 1)
        assert sum(w * m for w, m in zip(g.weights, g.multiplicities)) == 0
        assert g.weights[0] > g.weights[1]


class TestStageData:
    def test_stage_one(self):
        sd = stage_data(G211, 1)
        assert (sd.beta_le, sd.beta_gt) == (2, -2)
        assert sd.lambda_bracket.weights == (2, 2, -2, -2)

    def test_stage_two(self):
        sd = stage_data(G211, 2)
        assert (sd.beta_le, sd.beta_gt) == (1, -3)
        assert sd.lambda_bracket.weights == (1, 1, 1, -3)
        assert sd.lambda_paren.weights == (2, 2, -1, -3)
        assert sd.scale == 1

    def test_two_block_grading_is_its_own_stage(self):
        sd = stage_data(G21, 1)
        assert sd.lambda_bracket.weights == G21.expand()

    def test_sl_balance_every_stage(self):
        for g in [G211, G21, GradedOnePS((3, 1, -1, -2), (1, 2, 3, 1))]:
            for i in range(1, g.ell):
                sd = stage_data(g, i)
                assert sd.m_le * sd.beta_le + sd.m_gt * sd.beta_gt == 0
                assert len(set(sd.lambda_bracket.weights)) == 2
                assert len(set(sd.lambda_paren.weights)) == i + 1

    def test_stage_out_of_range(self):
        with pytest.raises(ValueError):
            stage_data(G211, 3)


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


class TestBlockProfile:
    def test_identity_in_everything(self):
        bp = block_profile(_identity(4), G211)
        assert bp.in_p and bp.in_l and bp.in_t and bp.in_r and bp.in_u
        assert all(bp.in_u_bracket.values())
        assert all(bp.in_u_paren.values())

    def test_elementary_matrix(self):
        # entry in block (1,2) (rows block 1, columns block 2, 1-based)
        m = _identity(4)
        m[0][2] = 7
        bp = block_profile(m, G211)
        assert bp.in_u
        assert bp.in_u_bracket == {1: True, 2: False}
        # entry in block (2,3): in U^[2] only
        m = _identity(4)
        m[2][3] = 5
        bp = block_profile(m, G211)
        assert bp.in_u
        assert bp.in_u_bracket == {1: False, 2: True}
        assert bp.in_u_paren == {1: False, 2: True}

    def test_block_diagonal_det_one(self):
        m = _identity(4)
        m[0][0], m[0][1], m[1][0], m[1][1] = 2, 1, 1, 1  # det 1 in the W block
        bp = block_profile(m, G211)
        assert bp.in_r and bp.in_l and bp.in_p
        assert not bp.in_u
        assert not bp.in_t  # diagonal blocks are not scalar

    def test_containments(self):
        samples = [_identity(4)]
        m = _identity(4)
        m[1][3] = 2
        samples.append(m)
        m = [[1, 2, 3, 4], [0, 1, 5, 6], [0, 0, 1, 7], [0, 0, 0, 1]]
        samples.append(m)
        for m in samples:
            bp = block_profile(m, G211)
            for i in (1, 2):
                assert not bp.in_u_bracket[i] or bp.in_u
                assert not bp.in_u_paren[i] or bp.in_u
            assert not bp.in_l or bp.in_p
            assert not bp.in_t or bp.in_l

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            block_profile(_identity(3), G211)


class TestLieStabilizer:
    def test_cone_over_three_points_is_rigid(self):
        # three distinct points on the line P(W), coned to the vertex:
        # nothing in Lie U^[1] fixes the ideal
        x, y = V(3, 0), V(3, 1)
        cone = HomogeneousIdeal(3, [x * y * (x + y)])
        assert lie_unipotent_stabilizer_dim(cone, G21, 1) == 0

    def test_ideal_from_late_blocks_is_annihilated(self):
        # generators involve only variables of blocks > 1: every
        # derivation of Lie U^[1] kills them
        ideal = HomogeneousIdeal(3, [V(3, 2) ** 2])
        assert lie_unipotent_stabilizer_dim(ideal, G21, 1) == 2

    def test_zero_ideal(self):
        assert lie_unipotent_stabilizer_dim(HomogeneousIdeal(3, []), G21, 1) == 2
        assert lie_unipotent_stabilizer_dim(HomogeneousIdeal(4, []), G211, 1) == 4
        assert lie_unipotent_stabilizer_dim(HomogeneousIdeal(4, []), G211, 2) == 3

    def test_partial_stabilizer_detected(self):
        # <x> is moved by nu_{02} but fixed by nu_{12}: dimension 1
        ideal = HomogeneousIdeal(3, [V(3, 0)])
        assert lie_unipotent_stabilizer_dim(ideal, G21, 1) == 1

    def test_configuration_intersects_stabilizers(self):
        x, y = V(3, 0), V(3, 1)
        cone = HomogeneousIdeal(3, [x * y * (x + y)])
        free = HomogeneousIdeal(3, [])
        assert configuration_unipotent_stabilizer_dim([free, cone], G21, 1) == 0

    def test_stage_out_of_range(self):
        with pytest.raises(ValueError):
            lie_unipotent_stabilizer_dim(HomogeneousIdeal(3, []), G21, 2)


@settings(deadline=None, max_examples=50)
@given(
    entries=st.lists(
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3)),
        max_size=4,
    )
)
def test_unipotent_membership_random(entries):
    m = _identity(4)
    blk = [0, 0, 1, 2]
    for r, c, v in entries:
        if r < c and blk[r] != blk[c]:
            m[r][c] = v
    bp = block_profile(m, G211)
    assert bp.in_u  # strictly-upper block entries, unit diagonal
    assert bp.in_p
