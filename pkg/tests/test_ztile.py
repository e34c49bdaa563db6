import random

import pytest

from tilekit import ztile as Zt
from tilekit.errors import InputError


class TestMaskPolynomial:
    def test_shifted_set(self):
        assert Zt.mask_polynomial({2, 3, 5}).coeffs == (1, 1, 0, 1)

    def test_singleton(self):
        assert Zt.mask_polynomial({0}).coeffs == (1,)

    def test_progression(self):
        assert Zt.mask_polynomial({0, 1, 2}).coeffs == (1, 1, 1)

    def test_shift_invariance(self):
        rng = random.Random(3)
        for _ in range(50):
            a = tuple(sorted(rng.sample(range(0, 30), rng.randrange(2, 7))))
            t = rng.randrange(-50, 50)
            shifted = tuple(x + t for x in a)
            assert Zt.mask_polynomial(a) == Zt.mask_polynomial(shifted)

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            Zt.mask_polynomial(set())


class TestCyclotomic:
    def test_small(self):
        assert Zt.cyclotomic(1) == (-1, 1)
        assert Zt.cyclotomic(2) == (1, 1)
        assert Zt.cyclotomic(3) == (1, 1, 1)
        assert Zt.cyclotomic(4) == (1, 0, 1)
        assert Zt.cyclotomic(6) == (1, -1, 1)

    def test_twelve(self):
        assert Zt.cyclotomic(12) == (1, 0, -1, 0, 1)

    def test_degree_is_phi(self):
        for d in range(1, 40):
            assert len(Zt.cyclotomic(d)) - 1 == Zt.euler_phi(d)

    def test_product_over_divisors(self):
        for n in range(1, 31):
            prod = (1,)
            for d in range(1, n + 1):
                if n % d == 0:
                    prod = Zt.poly_mul(prod, Zt.cyclotomic(d))
            expected = tuple([-1] + [0] * (n - 1) + [1])
            assert prod == expected

    def test_coefficients_beyond_unit_range(self):
        # first index with a coefficient outside {-1, 0, 1}
        assert min(Zt.cyclotomic(105)) == -2

    def test_bad_index(self):
        with pytest.raises(InputError):
            Zt.cyclotomic(0)


class TestIndexSets:
    def test_progression_three(self):
        sets = Zt.compute_index_sets({0, 1, 2})
        assert sets.r_set == (3,)
        assert sets.s_set == (3,)

    def test_even_pair(self):
        sets = Zt.compute_index_sets({0, 2})
        assert sets.r_set == (4,)
        assert sets.s_set == (4,)

    def test_non_tile_triple(self):
        sets = Zt.compute_index_sets({0, 1, 3})
        assert sets.r_set == ()
        assert sets.s_set == ()


class TestConditions:
    def test_t1_examples(self):
        assert Zt.check_T1({0, 1, 2}) is True
        assert Zt.check_T1({0, 1, 3}) is False
        assert Zt.check_T1({0, 2}) is True

    def test_t2_examples(self):
        assert Zt.check_T2({0, 1, 2}) is True
        assert Zt.check_T2({0, 1, 2, 3, 4, 5}) is True
        assert Zt.check_T2({0, 1, 3}) is True  # vacuous: S empty

    def test_interval_six_index_sets(self):
        sets = Zt.compute_index_sets({0, 1, 2, 3, 4, 5})
        assert sets.r_set == (2, 3, 6)
        assert sets.s_set == (2, 3)


class TestNewman:
    def test_progression(self):
        assert Zt.newman_prime_test({0, 1, 2}) is True

    def test_non_tile(self):
        assert Zt.newman_prime_test({0, 1, 3}) is False

    def test_spread_triple(self):
        assert Zt.newman_prime_test({0, 1, 5}) is True

    def test_composite_cardinality_rejected(self):
        with pytest.raises(InputError):
            Zt.newman_prime_test({0, 1, 2, 3})


class TestAnalyze:
    def test_report_fields(self):
        report = Zt.analyze([0, 1, 5])
        assert report["set"] == [0, 1, 5]
        assert report["T1"] is True
        assert report["newman"] is True

    def test_no_newman_for_composite(self):
        report = Zt.analyze([0, 1, 2, 3])
        assert "newman" not in report
