"""Closed-form bounds against a high-precision oracle, plus domain checks.

Expected values were computed independently with mpmath at 50 decimal
digits, evaluating each displayed formula directly, and are frozen here.
"""

import math

import pytest

from relfrag.bounds import (
    BoundDomainError,
    classical_vc_expected,
    classical_vc_tail,
    classical_vc_tail_log10,
    expected_error_bound,
    floor_block_count,
    hoeffding_block_bound,
    hoeffding_block_bound_log10,
    mgf_bound,
    tail_bound,
    tail_bound_log10,
    tail_bound_simplified,
    tail_bound_simplified_log10,
)

REL = 1e-12


class TestExpectedErrorBound:
    def test_oracle_values(self):
        assert expected_error_bound(1, 200, 2) == pytest.approx(
            0.7098347619860857, rel=REL
        )
        assert expected_error_bound(1, 1, 1) == pytest.approx(
            3.6803773508268908, rel=REL
        )
        assert expected_error_bound(1, 10**6, 1) == pytest.approx(
            0.011138638242989749, rel=REL
        )
        assert expected_error_bound(3, 150, 3) == pytest.approx(
            1.4707643559433956, rel=REL
        )

    def test_m_is_floor_n_over_k(self):
        assert expected_error_bound(2, 11, 3) == classical_vc_expected(2, 3)

    def test_equals_classical_form_exactly(self):
        for d in (1, 2, 3):
            for n in (7, 50, 192):
                for k in (1, 2, 3):
                    assert expected_error_bound(d, n, k) == classical_vc_expected(
                        d, n // k
                    )

    def test_strictly_increasing_in_d(self):
        # holds while 2em/d > e, i.e. d < 2m
        for m in (5, 10, 50, 100):
            values = [classical_vc_expected(d, m) for d in range(1, 2 * m - 1)]
            assert all(a < b for a, b in zip(values, values[1:]))

    def test_log_domain_violation(self):
        with pytest.raises(BoundDomainError, match="log argument"):
            classical_vc_expected(100, 1)

    def test_integer_validation(self):
        with pytest.raises(BoundDomainError):
            expected_error_bound(0, 10, 1)
        with pytest.raises(BoundDomainError):
            expected_error_bound(1, 10, 0)
        with pytest.raises(BoundDomainError):
            classical_vc_expected(1.5, 10)

    def test_floor_block_count(self):
        assert floor_block_count(7, 2) == 3
        with pytest.raises(BoundDomainError):
            floor_block_count(2, 3)


class TestTailBound:
    def test_oracle_values(self):
        assert tail_bound(1, 6, 1, 1.0) == pytest.approx(189.43589053147901, rel=REL)
        assert tail_bound(1, 10**4, 1, 0.1) == pytest.approx(
            10.156951615608384, rel=REL
        )
        assert tail_bound(2, 100, 2, 0.4) == pytest.approx(
            96360.717229257678, rel=REL
        )

    def test_epsilon_to_zero_limit_is_one(self):
        assert tail_bound(1, 100, 1, 1e-12) == pytest.approx(1.0, abs=1e-9)

    def test_epsilon_domain(self):
        for bad in (0.0, -0.1, 1.5):
            with pytest.raises(BoundDomainError):
                tail_bound(1, 10, 1, bad)

    def test_decay_underflows_to_zero(self):
        value = tail_bound(1, 10**6, 1, 0.1)
        assert value == 0.0 and value < 1e-100

    def test_log10_matches_oracle_below_underflow(self):
        assert tail_bound_log10(1, 10**6, 1, 0.1) == pytest.approx(
            -533.43265797165451, rel=1e-10
        )

    def test_log10_consistent_with_value_when_representable(self):
        v = tail_bound(1, 6, 1, 1.0)
        assert tail_bound_log10(1, 6, 1, 1.0) == pytest.approx(math.log10(v), rel=1e-12)


class TestTailBoundSimplified:
    def test_oracle_value(self):
        assert tail_bound_simplified(1, 100, 1, 0.5) == pytest.approx(
            1197.5401576554891, rel=REL
        )

    def test_looser_than_tail_everywhere(self):
        # full 0.01 grid over (0,1] for (d, m) in {1,2,3} x {5,10,50,100,10^4}
        for d in (1, 2, 3):
            for m in (5, 10, 50, 100, 10**4):
                for i in range(1, 101):
                    eps = i / 100
                    assert tail_bound_simplified(d, m, 1, eps) >= tail_bound(
                        d, m, 1, eps
                    ), (d, m, eps)

    def test_epsilon_to_zero_limit(self):
        d, m = 1, 6
        want = 1 + math.sqrt(8 * math.pi * m) * (2 * math.e * m / d)
        assert tail_bound_simplified(d, m, 1, 1e-12) == pytest.approx(want, rel=1e-6)

    def test_log10_companion(self):
        v = tail_bound_simplified(1, 100, 1, 0.5)
        assert tail_bound_simplified_log10(1, 100, 1, 0.5) == pytest.approx(
            math.log10(v), rel=1e-12
        )


class TestClassicalVcTail:
    def test_oracle_values(self):
        assert classical_vc_tail(1, 100, 0.3) == pytest.approx(
            705.99752206767632, rel=REL
        )
        assert classical_vc_tail(1, 100, 0.8) == pytest.approx(
            0.72950557244361297, rel=REL
        )

    def test_log10(self):
        v = classical_vc_tail(1, 100, 0.8)
        assert classical_vc_tail_log10(1, 100, 0.8) == pytest.approx(
            math.log10(v), rel=1e-12
        )

    def test_domain(self):
        with pytest.raises(BoundDomainError):
            classical_vc_tail(1, 100, 0.0)


class TestHoeffdingBlockBound:
    def test_epsilon_zero_gives_two(self):
        assert hoeffding_block_bound(100, 0.0) == 2.0

    def test_oracle_values(self):
        assert hoeffding_block_bound(100, 0.1) == pytest.approx(
            0.27067056647322538, rel=REL
        )
        assert hoeffding_block_bound(500, 0.1) == pytest.approx(
            9.0799859524969703e-05, rel=REL
        )

    def test_log10(self):
        assert hoeffding_block_bound_log10(500, 0.1) == pytest.approx(
            math.log10(9.0799859524969703e-05), rel=1e-12
        )

    def test_domain(self):
        with pytest.raises(BoundDomainError):
            hoeffding_block_bound(0, 0.1)
        with pytest.raises(BoundDomainError):
            hoeffding_block_bound(10, -0.1)


class TestMgfBound:
    def test_oracle_values(self):
        assert mgf_bound(math.e, 1.0, 1.0) == pytest.approx(
            7.1864718159341885, rel=REL
        )
        assert mgf_bound(2 * math.e, 0.5, 0.25) == pytest.approx(
            2.7167906935794491, rel=REL
        )

    def test_lambda_to_zero_limit_is_one(self):
        assert mgf_bound(math.e, 1.0, 1e-12) == pytest.approx(1.0, abs=1e-9)

    def test_monotone_in_lambda(self):
        assert mgf_bound(math.e, 1.0, 2.0) > mgf_bound(math.e, 1.0, 1.0)

    def test_hypothesis_constants_enforced(self):
        with pytest.raises(BoundDomainError, match="at least e"):
            mgf_bound(2.0, 1.0, 1.0)  # c < e violates the tail hypothesis
        with pytest.raises(BoundDomainError):
            mgf_bound(math.e, 0.0, 1.0)
        with pytest.raises(BoundDomainError):
            mgf_bound(math.e, 1.0, 0.0)


class TestOverflowBehaviour:
    def test_huge_capacity_term_gives_inf_not_error(self):
        v = tail_bound(500, 10**6, 1, 0.01)
        assert v == math.inf
        assert tail_bound_log10(500, 10**6, 1, 0.01) > 300
