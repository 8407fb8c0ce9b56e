import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobcalc.criterion import (
    CandidateFamily,
    aggregate_passed,
    global_criterion,
    mgl_criterion,
    msp_criterion,
    odd_primes_up_to,
    required_valuation_mgl,
    required_valuation_msp,
    stong_family,
)


class TestRequiredValuations:
    def test_mgl(self):
        assert required_valuation_mgl(2, 3) == 1
        assert required_valuation_mgl(8, 3) == 1
        assert required_valuation_mgl(1, 3) == 0
        assert required_valuation_mgl(4, 5) == 1

    def test_msp(self):
        assert required_valuation_msp(1, 3) == 1  # 2d = 2 = 3 - 1
        assert required_valuation_msp(4, 3) == 1  # 2d = 8
        assert required_valuation_msp(2, 3) == 0
        assert required_valuation_msp(2, 5) == 1  # 2d = 4 = 5 - 1


class TestMglCriterion:
    def test_passing_example(self):
        fam = CandidateFamily("mgl", {1: 1, 2: 3})
        assert mgl_criterion(fam, 3, 2).passed

    def test_observed_zero_valuation_fails_at_exceptional_degree(self):
        fam = CandidateFamily("mgl", {1: 1, 2: 1})
        verdict = mgl_criterion(fam, 3, 2)
        assert not verdict.passed
        assert [r.d for r in verdict.failures()] == [2]

    def test_observed_two_fails(self):
        fam = CandidateFamily("mgl", {1: 1, 2: 9})
        verdict = mgl_criterion(fam, 3, 2)
        assert [(r.d, r.observed, r.required) for r in verdict.failures()] == [(2, 2, 1)]

    def test_kind_checked(self):
        with pytest.raises(ValueError):
            mgl_criterion(CandidateFamily("msp", {1: 1}), 3, 1)


class TestMspCriterion:
    def test_construction_family_passes(self):
        fam = stong_family(3, 13)
        assert msp_criterion(fam, 3, 13).passed

    def test_single_scaled_entry_fails_there(self):
        fam = stong_family(3, 13)
        scaled = fam.with_entry(1, fam.entries[1] * 3)
        verdict = msp_criterion(scaled, 3, 13)
        assert [r.d for r in verdict.failures()] == [1]
        assert verdict.failures()[0].observed == 2

    def test_all_ones_family_fails_at_d1(self):
        fam = CandidateFamily("msp", {d: 1 for d in range(1, 5)})
        verdict = msp_criterion(fam, 3, 4)
        assert not verdict.passed
        assert 1 in [r.d for r in verdict.failures()]

    def test_zero_entry_hard_failure(self):
        fam = CandidateFamily("msp", {1: 3, 2: 0})
        verdict = msp_criterion(fam, 3, 2)
        row = verdict.rows[1]
        assert not row.passed
        assert row.observed is None
        assert row.reason == "zero characteristic number"

    def test_missing_degrees_rejected(self):
        fam = CandidateFamily("msp", {1: 3, 3: 1})
        with pytest.raises(ValueError):
            msp_criterion(fam, 3, 3)

    @pytest.mark.parametrize("ell", [3, 5, 7])
    def test_end_to_end_up_to_20(self, ell):
        fam = stong_family(ell, 20)
        assert msp_criterion(fam, ell, 20).passed
        for d in range(1, 21):
            perturbed = fam.with_entry(d, fam.entries[d] * ell)
            verdict = msp_criterion(perturbed, ell, 20)
            assert [r.d for r in verdict.failures()] == [d]

    @given(
        st.integers(min_value=1, max_value=12),
        st.sampled_from([3, 5, 7]),
        st.integers(min_value=1, max_value=10**6),
    )
    @settings(max_examples=100, deadline=None)
    def test_unit_multiples_never_change_verdict(self, d, ell, unit):
        if unit % ell == 0:
            unit += 1
        fam = stong_family(ell, 12)
        scaled = fam.with_entry(d, fam.entries[d] * unit)
        assert msp_criterion(scaled, ell, 12).passed


class TestGlobalCriterion:
    def test_two_prime_pass(self):
        fam = CandidateFamily("msp", {1: 3, 2: 5, 3: 1, 4: 3, 5: 1, 6: 1})
        verdicts = global_criterion(fam, prime_bound=5, d_max=6)
        assert sorted(verdicts) == [3, 5]
        assert aggregate_passed(verdicts)

    def test_failure_located(self):
        fam = CandidateFamily("msp", {1: 3, 2: 1, 3: 1, 4: 3, 5: 1, 6: 1})
        verdicts = global_criterion(fam, prime_bound=5, d_max=6)
        assert verdicts[3].passed
        assert not verdicts[5].passed
        assert [r.d for r in verdicts[5].failures()] == [2]

    def test_excluded_primes_absent(self):
        fam = CandidateFamily("msp", {1: 15, 2: 5, 3: 1, 4: 1})
        verdicts = global_criterion(fam, prime_bound=7, d_max=4, excluded=(2, 3, 7))
        assert sorted(verdicts) == [5]

    def test_prime_list(self):
        assert odd_primes_up_to(13) == [3, 5, 7, 11, 13]
        assert odd_primes_up_to(13, excluded=(5, 11)) == [3, 7, 13]


class TestConsistencyAcrossGradings:
    @pytest.mark.parametrize("ell", [3, 5])
    def test_msp_matches_mgl_under_reindexing(self, ell):
        # an msp family indexed by d sits in mgl degree 2d; odd mgl degrees
        # are never exceptional (prime powers minus one are even), so they
        # can be filled with units
        d_max = 10
        msp_fam = stong_family(ell, d_max)
        entries = {2 * d: v for d, v in msp_fam.entries.items()}
        for n in range(1, 2 * d_max + 1, 2):
            entries[n] = 1
        mgl_fam = CandidateFamily("mgl", entries)
        mgl_verdict = mgl_criterion(mgl_fam, ell, 2 * d_max)
        msp_verdict = msp_criterion(msp_fam, ell, d_max)
        mgl_by_degree = {r.d: r for r in mgl_verdict.rows}
        for row in msp_verdict.rows:
            twin = mgl_by_degree[2 * row.d]
            assert (row.required, row.observed, row.passed) == (
                twin.required,
                twin.observed,
                twin.passed,
            )
