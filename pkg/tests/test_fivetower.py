import pytest

from crankparity.fivetower import (
    BudgetExceededError,
    HauptmodulPoly,
    NotHauptmodulPolynomialError,
    compute_transfer_matrices,
    five_adic,
    hauptmodul,
    ladder,
    ladder_multiplier,
    ladder_subsequence_check,
    ladder_vectors,
    multiplier_newton_power_u5,
    newton_power_u5,
    newton_quotient,
    newton_sigma_polys,
    reduce_to_hauptmodul,
    required_multiplier_trunc,
    u_matrix_rows,
)
from crankparity.series import apply_U


class TestEtaQuotients:
    def test_expansions_start_at_q(self):
        assert ladder_multiplier(20).offset == 1
        assert hauptmodul(20).offset == 1
        assert newton_quotient(20).offset == 3

    def test_hauptmodul_negative_powers(self):
        g = hauptmodul(60)
        ginv = g.reciprocal()
        assert [ginv.coeff(e) for e in (-1, 0, 1, 2)] == [1, 2, 1, 2]
        g2inv = ginv * ginv
        assert [g2inv.coeff(e) for e in (-2, -1, 0)] == [1, 4, 6]


class TestKeystone:
    def test_multiplier_u5_is_five_hauptmodul(self):
        lhs = apply_U(5, ladder_multiplier(1501))
        assert lhs.eq_to_order(hauptmodul(300) * 5, 300)


class TestReduce:
    def test_identity(self):
        g = hauptmodul(60)
        assert reduce_to_hauptmodul(g, 1, 1).as_dict() == {1: 1}

    def test_keystone_reduction(self):
        image = apply_U(5, ladder_multiplier(251))
        poly = reduce_to_hauptmodul(image.truncate(50), 0, 6)
        assert poly.as_dict() == {1: 5}

    def test_negative_window(self):
        poly = reduce_to_hauptmodul(newton_power_u5(-2, 40), -2, 0)
        assert poly.as_dict() == {-1: 2, 0: -1}

    def test_non_polynomial_rejected(self):
        # the multiplier itself lives on level 50 and is not a polynomial
        # in the level-10 hauptmodul
        with pytest.raises(NotHauptmodulPolynomialError):
            reduce_to_hauptmodul(ladder_multiplier(120), 0, 5)

    def test_window_start_enforced(self):
        with pytest.raises(NotHauptmodulPolynomialError):
            reduce_to_hauptmodul(newton_power_u5(-2, 40), 0, 3)

    def test_evaluate_roundtrip(self):
        poly = HauptmodulPoly({-1: 2, 0: -1, 3: 7})
        series = poly.evaluate(40)
        assert reduce_to_hauptmodul(series, -1, 3).as_dict() == poly.as_dict()


class TestNewtonQuotientPowers:
    @pytest.mark.parametrize("mu,want", [
        (1, {0: 1}),
        (2, {-1: 2, 0: -1}),
        (3, {-1: 6, 0: -5}),
        (4, {-2: 6, 0: -5}),
    ])
    def test_negative_power_closed_forms(self, mu, want):
        poly = reduce_to_hauptmodul(newton_power_u5(-mu, 40),
                                    -(3 * mu // 5) - 1, 0)
        assert poly.as_dict() == want

    @pytest.mark.parametrize("mu,want", [
        (1, {0: -1}),
        (2, {-1: 1}),
        (3, {0: -5}),
        (4, {-2: 1, -1: 5, 0: -25}),
    ])
    def test_multiplier_weighted_closed_forms(self, mu, want):
        poly = reduce_to_hauptmodul(multiplier_newton_power_u5(-mu, 40),
                                    -(3 * mu // 5) - 2, 1)
        assert poly.as_dict() == want


class TestNewtonSigmas:
    def test_integral_and_validated(self):
        # newton_sigma_polys raises if the degree-5 recurrence fails to
        # reproduce phi^mu|U_5 at mu = 5, 6, 7, -5, -6
        sigmas = newton_sigma_polys()
        assert len(sigmas) == 5
        for k, sigma in enumerate(sigmas, start=1):
            d = sigma.as_dict()
            assert all(isinstance(c, int) for c in d.values())
            assert max(d) <= 3 * k

    def test_recurrence_reproduces_explicitly(self):
        sigmas = newton_sigma_polys()
        order = 30
        lhs = newton_power_u5(5, order)
        from crankparity.series import IntLaurentSeries
        rhs = IntLaurentSeries.zero(order)
        for i, sigma in enumerate(sigmas, start=1):
            term = sigma.evaluate(order) * newton_power_u5(5 - i, order)
            rhs = rhs + (term if i % 2 else -term)
        assert lhs.eq_to_order(rhs, min(lhs.trunc, rhs.trunc))


class TestTransferMatrices:
    def test_row_one_against_keystone(self):
        a_rows, b_rows = compute_transfer_matrices(2)
        # L_1 = 5G means the V-image of the constant is (5,0,0,...); row 1
        # of A is the image of G itself
        image = apply_U(5, hauptmodul(301))
        assert reduce_to_hauptmodul(image.truncate(60), 0, 5).as_dict() \
            == a_rows[1]
        assert max(b_rows[1]) <= 6

    def test_degrees_and_no_constants(self):
        a_rows, b_rows = compute_transfer_matrices(6)
        for i in range(1, 7):
            assert 0 not in a_rows[i] and max(a_rows[i]) <= 5 * i
            assert 0 not in b_rows[i] and max(b_rows[i]) <= 5 * i + 1

    def test_valuation_lower_bounds(self):
        a_rows, b_rows = compute_transfer_matrices(6)
        for rows in (a_rows, b_rows):
            for i, row in rows.items():
                for j, c in row.items():
                    assert five_adic(c) >= (5 * j - i - 1) // 6, (i, j, c)
        for i, row in b_rows.items():
            if i % 5 == 1:
                for j, c in row.items():
                    assert five_adic(c) >= 1, (i, j, c)

    def test_wider_rows_keep_lemma_a(self):
        # the ladder consistency check computes rows up to i = 26; the
        # valuation bound is stated for all i, so spot-check beyond 6
        rows = u_matrix_rows(10)
        for i, row in rows.items():
            for j, c in row.items():
                assert five_adic(c) >= (5 * j - i - 1) // 6, (i, j, c)


class TestLadder:
    def test_budget_recursion(self):
        assert required_multiplier_trunc(2, 12) == 33726
        assert required_multiplier_trunc(0, 200) == 996

    def test_budget_guard(self):
        with pytest.raises(BudgetExceededError):
            ladder(4, jmax=11, ceiling=10 ** 6)

    def test_first_rung_is_five_hauptmodul(self):
        states = ladder(1)
        assert states[1].gpoly.as_dict() == {1: 5}

    def test_series_and_matrix_routes_agree(self):
        # ladder() raises LadderConsistencyError internally on mismatch;
        # also compare explicitly here
        states = ladder(2)
        vectors = ladder_vectors(2)
        for state in states:
            if state.nu == 0:
                continue
            top = min(11, state.series.trunc - 1)
            got = state.gpoly.as_dict()
            want = vectors[state.nu]
            for j in range(1, top + 1):
                assert got.get(j, 0) == want.get(j, 0), (state.nu, j)

    def test_odd_rung_valuations(self):
        for state in ladder(2):
            if state.nu % 2 == 0:
                continue
            a = (state.nu - 1) // 2
            for j, c in state.gpoly.as_dict().items():
                assert five_adic(c) >= a + 1 + (j - 1) // 2, (state.nu, j)

    def test_even_rung_valuations(self):
        for state in ladder(2):
            if state.nu % 2 or state.nu == 0:
                continue
            a = (state.nu - 2) // 2
            for j, c in state.gpoly.as_dict().items():
                assert five_adic(c) >= a + 1 + j // 2, (state.nu, j)

    def test_divisibility_theorem(self):
        # entries of L_(2a+1) are divisible by 5^(a+1)
        for state in ladder(2):
            if state.nu % 2 == 0:
                continue
            a = (state.nu - 1) // 2
            for c in state.gpoly.as_dict().values():
                assert c % 5 ** (a + 1) == 0


class TestLadderSubsequence:
    def test_alpha0_matches_5n4_form(self):
        # at depth 0 the identity is the 5n+4 closed form reindexed
        assert ladder_subsequence_check(0, 200)

    def test_alpha1(self):
        assert ladder_subsequence_check(1, 40)

    def test_budget_guard(self):
        with pytest.raises(BudgetExceededError):
            ladder_subsequence_check(3, 400)

    def test_first_coefficient_is_five(self):
        states = ladder(0)
        assert states[1].series.coeff(1) == 5


class TestFiveAdic:
    def test_values(self):
        assert five_adic(75) == 2
        assert five_adic(-125) == 3
        assert five_adic(7) == 0
        with pytest.raises(ValueError):
            five_adic(0)
