"""Hypothesis machinery: p-values, profiles, permissibility, enumeration."""

from __future__ import annotations

import numpy as np
import pytest

from mbdecide.hypotheses import (
    AlphaLadder,
    Hypothesis,
    MeaningfulRange,
    PermissibleDecision,
    PValueQuad,
    TrialSummary,
    coherent_closure,
    enumerate_permissible,
    is_permissible,
    one_sided_p_values,
    rejection_profile,
)

H1M, H1P = Hypothesis.H1_MINUS, Hypothesis.H1_PLUS
H2M, H2P = Hypothesis.H2_MINUS, Hypothesis.H2_PLUS


class TestTypes:
    def test_range_validation(self):
        with pytest.raises(ValueError, match="strictly less"):
            MeaningfulRange(0.2, 0.2)
        assert MeaningfulRange.symmetric(0.2) == MeaningfulRange(-0.2, 0.2)

    def test_ladder_validation(self):
        with pytest.raises(ValueError, match="strictly decreasing"):
            AlphaLadder((0.05, 0.25))
        with pytest.raises(ValueError, match="between 0 and 1"):
            AlphaLadder((1.5, 0.2))
        ladder = AlphaLadder()
        assert ladder.levels == (0.25, 0.05, 0.005)
        assert ladder.labels == ("likely", "very likely", "most likely")

    def test_summary_validation(self):
        with pytest.raises(ValueError, match="se must be positive"):
            TrialSummary("x", 0.1, 0.0, 18)
        with pytest.raises(ValueError, match="df must be positive"):
            TrialSummary("x", 0.1, 0.1, 0)


class TestPValues:
    def test_effect_at_lower_bound(self):
        q = one_sided_p_values(TrialSummary("a", -0.2, 0.37, 18), MeaningfulRange())
        assert q.p_h1_minus == pytest.approx(0.5, abs=1e-14)
        assert q.p_h1_plus == pytest.approx(0.5, abs=1e-14)

    def test_known_quantile_offset(self):
        # effect = theta2 + 1.7341*se puts H2- right at the 0.05 boundary
        q = one_sided_p_values(TrialSummary("a", 0.2 + 1.7341 * 0.1, 0.1, 18), MeaningfulRange())
        assert q.p_h2_minus == pytest.approx(0.05, abs=1e-3)

    def test_large_effect_limits(self):
        q = one_sided_p_values(TrialSummary("a", 50.0, 0.5, 18), MeaningfulRange())
        assert q.p_h1_minus < 1e-12
        assert q.p_h2_plus > 1.0 - 1e-12

    def test_complement_identity(self):
        rng_ = np.random.default_rng(3)
        mr = MeaningfulRange()
        for _ in range(200):
            s = TrialSummary("r", rng_.normal(0, 1), rng_.uniform(0.01, 2), rng_.uniform(2, 60))
            q = one_sided_p_values(s, mr)
            assert abs(q.p_h1_minus + q.p_h1_plus - 1.0) < 1e-12
            assert abs(q.p_h2_minus + q.p_h2_plus - 1.0) < 1e-12
            # nesting from theta1 < theta2
            assert q.p_h1_minus <= q.p_h2_minus + 1e-15
            assert q.p_h2_plus <= q.p_h1_plus + 1e-15


class TestRejectionProfile:
    def test_direct_comparisons(self):
        ladder = AlphaLadder()
        q = PValueQuad(0.03, 0.97, 0.5, 0.004)
        prof = rejection_profile(q, ladder)
        assert prof[H1M] == 1
        assert prof[H2M] == -1
        assert prof[H2P] == 2
        assert prof[H1P] == -1

    def test_boundary_is_rejected(self):
        # closed inequality: p == alpha counts as rejected
        prof = rejection_profile(PValueQuad(0.05, 0.95, 0.25, 0.005), AlphaLadder())
        assert prof[H1M] == 1
        assert prof[H2M] == 0
        assert prof[H2P] == 2

    def test_coherence_automatic(self):
        rng_ = np.random.default_rng(11)
        mr = MeaningfulRange()
        ladder = AlphaLadder()
        for _ in range(300):
            s = TrialSummary("r", rng_.normal(0, 0.6), rng_.uniform(0.01, 1.0), 18)
            prof = rejection_profile(one_sided_p_values(s, mr), ladder)
            assert prof[H1M] >= prof[H2M]
            assert prof[H2P] >= prof[H1P]


class TestClosure:
    def test_adds_weaker_levels_only(self):
        closed = coherent_closure({(H1M, 2)})
        assert closed == {(H1M, 0), (H1M, 1), (H1M, 2)}

    def test_containment_across_bounds(self):
        closed = coherent_closure({(H2M, 1)})
        assert (H1M, 1) in closed
        assert (H1M, 0) in closed
        assert closed == {(H2M, 0), (H2M, 1), (H1M, 0), (H1M, 1)}

    def test_plus_side(self):
        closed = coherent_closure({(H1P, 0)})
        assert closed == {(H1P, 0), (H2P, 0)}

    def test_idempotent(self):
        s = coherent_closure({(H2M, 2), (H2P, 0)})
        assert coherent_closure(s) == s


class TestPermissible:
    def test_unclosed_set_rejected(self):
        # superiority at the weak level without the implied non-inferiority
        assert not is_permissible({(H2M, 0)}, AlphaLadder(), MeaningfulRange())

    def test_equivalence_pair_permissible(self):
        assert is_permissible({(H1M, 0), (H2P, 0)}, AlphaLadder(), MeaningfulRange())

    def test_opposing_same_bound_infeasible(self):
        # closed set whose rejection half-planes cannot intersect for se > 0
        rejected = coherent_closure({(H2M, 0), (H2P, 0)})
        assert not is_permissible(rejected, AlphaLadder(), MeaningfulRange())

    def test_realized_profiles_are_permissible(self):
        rng_ = np.random.default_rng(5)
        mr = MeaningfulRange()
        ladder = AlphaLadder()
        for _ in range(200):
            s = TrialSummary("r", rng_.normal(0, 0.6), rng_.uniform(0.01, 1.0), 18)
            prof = rejection_profile(one_sided_p_values(s, mr), ladder)
            assert is_permissible(prof.rejected_set(), ladder, mr)

    def test_invalid_level(self):
        with pytest.raises(ValueError, match="out of range"):
            is_permissible({(H1M, 7)}, AlphaLadder(), MeaningfulRange())


class TestEnumerate:
    @pytest.mark.parametrize("depth,count", [(1, 6), (2, 14), (3, 27)])
    def test_counts(self, depth, count):
        decisions = enumerate_permissible(depth)
        assert len(decisions) == count

    def test_no_duplicates(self):
        decisions = enumerate_permissible(3)
        keys = [(d.range, d.key()) for d in decisions]
        assert len(keys) == len(set(keys))

    def test_depth_one_ranges(self):
        ranges = sorted(d.range for d in enumerate_permissible(1))
        assert ranges == sorted(
            ["negative", "possibly_negative", "trivial", "possibly_positive", "positive", "unclear"]
        )

    def test_counts_other_ladders(self):
        # any strictly decreasing ladder with small alphas gives the same counts
        ladder = AlphaLadder((0.2, 0.1, 0.01), ("a", "b", "c"))
        assert len(enumerate_permissible(2, ladder)) == 14
        assert len(enumerate_permissible(3, ladder)) == 27

    def test_members_are_permissible(self):
        ladder = AlphaLadder()
        mr = MeaningfulRange()
        for dec in enumerate_permissible(3):
            rejected = coherent_closure(
                (h, m_max)
                for h, m_max in dec.levels.items()
            )
            assert is_permissible(rejected, ladder, mr)

    def test_depth_validation(self):
        with pytest.raises(ValueError, match="depth"):
            enumerate_permissible(4)
