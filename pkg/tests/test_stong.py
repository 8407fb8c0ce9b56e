import pytest

from cobcalc.chow import ProjProduct
from cobcalc.stong import (
    build_X,
    bruteforce_cap,
    congruence_check,
    exceptional_exponent,
    s_number,
    s_number_bruteforce,
    sign_exponent,
    signed_char_number,
    valuation_table,
)
from cobcalc.valuation import ladic_digits, nu


class TestBuildX:
    def test_examples(self):
        assert build_X(1, 3) == ProjProduct((1, 1, 1, 1))
        assert build_X(2, 3) == ProjProduct((3, 3))
        assert build_X(4, 3) == ProjProduct((1, 3, 3, 3))

    def test_exceptional_vs_generic_split(self):
        assert exceptional_exponent(1, 3) == 1
        assert exceptional_exponent(4, 3) == 2
        assert exceptional_exponent(2, 3) is None
        assert exceptional_exponent(2, 5) == 1

    @pytest.mark.parametrize("ell", [3, 5, 7])
    @pytest.mark.parametrize("d", range(1, 31))
    def test_construction_invariants(self, d, ell):
        X = build_X(d, ell)
        assert X.total_dimension == 2 * d + 2
        assert all(n % 2 == 1 for n in X.dims)
        assert X.factor_count % 2 == 0

    def test_generic_matches_digits(self):
        for d in (2, 3, 5, 6, 7, 9):
            for ell in (3, 5):
                if exceptional_exponent(d, ell) is not None:
                    continue
                X = build_X(d, ell)
                digits = ladic_digits(2 * d + 2, ell).digits
                want = []
                for i, a in enumerate(digits):
                    want += [ell**i] * a
                assert X == ProjProduct(tuple(want))

    def test_rejects_d_zero(self):
        with pytest.raises(ValueError):
            build_X(0, 3)


class TestSNumber:
    def test_examples(self):
        assert s_number(ProjProduct((1, 1, 1, 1))) == -48
        assert s_number(ProjProduct((3, 3))) == -40
        assert s_number(ProjProduct((1, 3, 3, 3))) == -33600

    def test_parity_violations(self):
        with pytest.raises(ValueError):
            s_number(ProjProduct((2, 2)))  # even factor dimension
        with pytest.raises(ValueError):
            s_number(ProjProduct((1, 1, 1)))  # odd factor count

    def test_bruteforce_examples(self):
        assert s_number_bruteforce(ProjProduct((1, 1, 1, 1))) == -48
        assert s_number_bruteforce(ProjProduct((3, 3))) == -40
        assert s_number_bruteforce(ProjProduct((1, 1))) == -4

    def test_bruteforce_cap(self):
        with pytest.raises(ValueError):
            s_number_bruteforce(ProjProduct((7, 7, 1, 1)), cap=14)

    def test_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("COBCALC_BRUTEFORCE_CAP", "6")
        assert bruteforce_cap() == 6
        with pytest.raises(ValueError):
            s_number_bruteforce(ProjProduct((3, 3, 1, 1)))
        monkeypatch.setenv("COBCALC_BRUTEFORCE_CAP", "99")
        with pytest.raises(ValueError):
            bruteforce_cap()

    @pytest.mark.parametrize("ell", [3, 5, 7])
    def test_closed_form_equals_expansion_for_construction(self, ell):
        for d in range(1, 6):
            X = build_X(d, ell)
            if X.total_dimension <= 12:
                assert s_number(X) == s_number_bruteforce(X)


class TestCongruence:
    def test_example_d2(self):
        assert congruence_check(2, 3) == (1, 1, True)

    def test_example_d3(self):
        assert congruence_check(3, 3) == (2, 2, True)

    def test_exceptional_rejected(self):
        with pytest.raises(ValueError):
            congruence_check(1, 3)
        with pytest.raises(ValueError):
            congruence_check(4, 3)

    @pytest.mark.parametrize("ell", [3, 5, 7])
    def test_generic_d_up_to_30(self, ell):
        for d in range(1, 31):
            if exceptional_exponent(d, ell) is not None:
                continue
            lhs, rhs, equal = congruence_check(d, ell)
            assert equal
            # digits are below the prime, so the right side is a unit
            assert rhs != 0


class TestSignedCharNumber:
    def test_example_p1_four(self):
        assert signed_char_number(ProjProduct((1, 1, 1, 1))) == -48

    def test_sign_exponent(self):
        assert sign_exponent(ProjProduct((1, 1, 1, 1))) == 5
        assert sign_exponent(ProjProduct((3, 3))) == 1 + 2 + 2

    def test_identity_path(self):
        # the direct truncated-ring computation must match the closed form
        # with the twist sign
        for dims in [(1, 1), (1, 1, 1, 1), (3, 3), (3, 1, 1, 1), (5, 3, 1, 1), (3, 3, 3, 3)]:
            X = ProjProduct(dims)
            if X.total_dimension - 2 < 1:
                continue
            want = (-1) ** (sign_exponent(X) + 1) * s_number(X)
            assert signed_char_number(X) == want

    def test_example_p3_squared(self):
        assert abs(signed_char_number(ProjProduct((3, 3)))) == 40

    @pytest.mark.parametrize("ell", [3, 5])
    def test_valuation_invariance(self, ell):
        for dims in [(1, 1, 1, 1), (3, 3), (3, 1, 1, 1)]:
            X = ProjProduct(dims)
            assert nu(abs(signed_char_number(X)), ell) == nu(abs(s_number(X)), ell)


class TestValuationTable:
    def test_single_row(self):
        rows = valuation_table(3, 1)
        assert len(rows) == 1
        row = rows[0]
        assert row.d == 1
        assert row.factors == ProjProduct((1, 1, 1, 1))
        assert row.s_number == -48
        assert row.valuation == 1
        assert row.expected == 1
        assert row.matches

    def test_d2_row(self):
        row = valuation_table(3, 2)[1]
        assert row.s_number == -40
        assert row.valuation == 0

    def test_prime_5_exceptional(self):
        row = valuation_table(5, 2)[1]
        assert row.factors == ProjProduct((1, 1, 1, 1, 1, 1))
        assert row.s_number == -1440
        assert row.valuation == 1

    @pytest.mark.parametrize("ell", [3, 5, 7])
    def test_dichotomy_up_to_30(self, ell):
        for row in valuation_table(ell, 30):
            want = 1 if exceptional_exponent(row.d, ell) is not None else 0
            assert row.valuation == want
            assert row.expected == want
            assert row.matches

    def test_valuation_matches_direct_nu(self):
        for row in valuation_table(3, 12):
            assert row.valuation == nu(abs(row.s_number), 3)
