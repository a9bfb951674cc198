from fractions import Fraction
from math import gcd

import mpmath
import pytest

from crankparity.circle import (
    AsymptoticReport,
    InvalidPairError,
    dedekind_sum,
    eta_transformation_check,
    kloosterman_sum,
    main_term,
    partition_gf_value,
    verify_error_bound,
)
from crankparity.cranks import crank_parity_series


class TestDedekindSum:
    def test_empty_sum(self):
        assert dedekind_sum(1, 1) == 0

    def test_small_values(self):
        # direct sawtooth sums: ((1/3))((1/3)) + ((2/3))((2/3)) = 1/18
        assert dedekind_sum(1, 3) == Fraction(1, 18)
        assert dedekind_sum(2, 3) == Fraction(-1, 18)

    def test_closed_form_for_h_one(self):
        for k in (2, 3, 7, 12, 50):
            assert dedekind_sum(1, k) == Fraction((k - 1) * (k - 2), 12 * k)

    def test_negation_symmetry(self):
        for h, k in ((2, 5), (3, 8), (7, 30)):
            assert dedekind_sum(k - h, k) == -dedekind_sum(h, k)

    def test_reciprocity_exhaustive_to_200(self):
        for k in range(1, 201):
            for h in range(1, k):
                if gcd(h, k) != 1:
                    continue
                lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
                rhs = Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)
                assert lhs == rhs, (h, k)

    def test_non_coprime_rejected(self):
        with pytest.raises(InvalidPairError):
            dedekind_sum(2, 4)
        with pytest.raises(InvalidPairError):
            dedekind_sum(1, 0)


class TestKloostermanSum:
    def test_k1_is_parity_sign(self):
        # only h = 1 contributes and both Dedekind sums vanish
        for n in range(12):
            want = -1 if n % 2 else 1
            assert abs(kloosterman_sum(1, n) - want) < mpmath.mpf(2) ** -100

    def test_k2_at_zero_by_direct_evaluation(self):
        # independent route: raw mpmath formula with exact Dedekind sums
        with mpmath.workprec(140):
            total = mpmath.mpc(0)
            for h in (1, 3):
                theta = 2 * dedekind_sum(h, 2) - 3 * dedekind_sum(h, 4)
                total += mpmath.expjpi(
                    mpmath.mpf(theta.numerator) / theta.denominator)
            want = total.real
        got = kloosterman_sum(2, 0)
        assert abs(got - want) < mpmath.mpf(2) ** -100

    def test_real_to_precision(self):
        # conjugate pairing of h and 2k-h keeps the sum real; the
        # implementation raises if the imaginary residue survives
        for k in range(1, 31):
            for n in range(0, 101):
                kloosterman_sum(k, n)


class TestMainTerm:
    def test_n4_close_to_five(self):
        m = main_term(4)
        assert abs(m - 5) < 194 * mpmath.mpf(4) ** 0.25
        assert abs(m - 5) < 1

    def test_sign_tracks_parity(self):
        for n in range(20, 40):
            m = main_term(n)
            assert (m > 0) == (n % 2 == 0), n

    def test_precision_invariance(self):
        for n in (7, 60, 150):
            lo = main_term(n, 128)
            hi = main_term(n, 256)
            assert abs(lo - hi) < mpmath.mpf(2) ** -90


class TestErrorBound:
    def test_sweep_1_200(self):
        reports = verify_error_bound(1, 200)
        assert len(reports) == 200
        assert all(r.passed for r in reports)

    def test_bound_column(self):
        r = verify_error_bound(16, 16)[0]
        assert abs(r.bound - 388) < mpmath.mpf("1e-30")

    def test_exact_column_is_series_coefficient(self):
        g = crank_parity_series(25)
        for r in verify_error_bound(20, 24):
            assert r.exact == g.coeff(r.n)

    def test_relative_error_trend(self):
        reports = {r.n: r for r in verify_error_bound(1, 200)}
        rel = {n: abs(reports[n].abs_error / reports[n].exact)
               for n in (50, 100, 150, 200)}
        assert rel[50] > rel[100] > rel[150] > rel[200]
        assert all(abs(r.abs_error / r.exact) < 0.05
                   for r in reports.values() if r.n >= 100)

    def test_report_invariant(self):
        r = AsymptoticReport.build(10, 5, mpmath.mpf(7))
        assert r.passed == (r.abs_error < r.bound)


class TestEtaTransformation:
    def test_identity_point(self):
        # h = k = 1, z = 1 makes both sides literally equal
        assert eta_transformation_check(1, 1, 1) < mpmath.mpf("1e-12")

    def test_sample_points(self):
        assert eta_transformation_check(1, 2, mpmath.mpc(0.7, 0.2)) \
            < mpmath.mpf("1e-10")
        assert eta_transformation_check(1, 5, 1.3) < mpmath.mpf("1e-10")
        assert eta_transformation_check(2, 5, mpmath.mpc(1.0, -0.4)) \
            < mpmath.mpf("1e-10")

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            eta_transformation_check(1, 2, mpmath.mpc(-0.5, 0.1))
        with pytest.raises(InvalidPairError):
            eta_transformation_check(2, 4, 1.0)

    def test_gf_value_diverges_outside_disc(self):
        with pytest.raises(ValueError):
            partition_gf_value(mpmath.mpf(1.01))
