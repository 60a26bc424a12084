from fractions import Fraction as Q
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfspecies.exactalg import (BadConstantTerm, CycleIndexPoly, Echelon,
                                  QMatrix, TruncatedSeries, ZeroConstantTerm,
                                  binomial_transform, egf_from_counts,
                                  inverse_binomial_transform, nonneg_prefix,
                                  ogf_from_counts, span_contains)

BELL = [1, 1, 2, 5, 15, 52]
PIPRIME = [1, 1, 1, 4, 5, 16]


def exp_by_powers(a: TruncatedSeries) -> TruncatedSeries:
    # independent oracle: sum a^k / k! term by term
    out = TruncatedSeries.one(a.order)
    power = TruncatedSeries.one(a.order)
    for k in range(1, a.order + 1):
        power = power * a
        out = out + power * Q(1, factorial(k))
    return out


def naive_quotient(num, den, order):
    # independent oracle: solve the convolution for q directly
    q = [Q(0)] * (order + 1)
    for n in range(order + 1):
        acc = Q(num[n]) if n < len(num) else Q(0)
        for i in range(n):
            d = Q(den[n - i]) if n - i < len(den) else Q(0)
            acc -= q[i] * d
        q[n] = acc / Q(den[0])
    return q


class TestSeriesArithmetic:
    def test_binomial_square(self):
        one_plus_x = TruncatedSeries([1, 1], 4)
        assert (one_plus_x * one_plus_x).coeffs[:3] == (1, 2, 1)

    def test_mul_identity(self):
        s = TruncatedSeries([3, Q(1, 7), 0, 2], 3)
        assert s * TruncatedSeries.one(3) == s

    def test_truncation_to_min_order(self):
        a = TruncatedSeries([1, 1, 1, 1, 1], 4)
        b = TruncatedSeries([1, 2], 1)
        assert (a * b).order == 1
        assert (a + b).order == 1

    def test_submonoid_example_product_roundtrip(self):
        # E of the partition monoid equals the distinct-size part times the
        # quotient, exactly to order 5
        bell = egf_from_counts(BELL)
        pp = egf_from_counts(PIPRIME)
        assert pp * (bell / pp) == bell

    def test_quotient_golden_distinct_block_sizes(self):
        bell = egf_from_counts(BELL)
        pp = egf_from_counts(PIPRIME)
        quot = bell / pp
        assert quot.coeffs == (1, 0, Q(1, 2), Q(-1, 3), Q(1, 2), Q(-11, 30))

    def test_quotient_golden_type_series(self):
        num = ogf_from_counts([1, 1, 2, 3, 5, 7, 11])
        den = ogf_from_counts([1, 1, 1, 2, 2, 3, 4])
        assert (num / den).coeffs == (1, 0, 1, 0, 2, 0, 3)

    def test_self_quotient(self):
        s = TruncatedSeries([2, 5, Q(-1, 3), 7], 3)
        assert (s / s) == TruncatedSeries.one(3)

    def test_division_against_naive_oracle(self):
        num = [1, 4, 9, 16, 25, 36]
        den = [2, 1, 1, 3, 5, 8]
        got = ogf_from_counts(num) / ogf_from_counts(den)
        assert list(got.coeffs) == naive_quotient(num, den, 5)

    def test_zero_constant_term_rejected(self):
        with pytest.raises(ZeroConstantTerm):
            TruncatedSeries.one(3) / TruncatedSeries([0, 1], 3)

    def test_nonunit_constant_term_allowed(self):
        num = TruncatedSeries([6, 2], 3)
        den = TruncatedSeries([2, 0], 3)
        assert (num / den).coeffs == (3, 1, 0, 0)


class TestExpLog:
    def test_exp_bell_golden(self):
        expm1 = TruncatedSeries([Q(1, factorial(n)) if n else 0
                                 for n in range(5)], 4)
        assert expm1.exp().coeffs == (1, 1, 1, Q(5, 6), Q(5, 8))

    def test_exp_zero(self):
        assert TruncatedSeries.zero(5).exp() == TruncatedSeries.one(5)

    def test_log_exp_inverse_golden(self):
        s = TruncatedSeries([0, 0, Q(1, 2), Q(1, 6)], 3)
        assert s.exp().log() == s

    def test_exp_matches_power_sum_oracle(self):
        s = TruncatedSeries([0, 1, Q(-1, 2), Q(2, 3), 0, Q(1, 5)], 5)
        assert s.exp() == exp_by_powers(s)

    def test_bad_constant_terms(self):
        with pytest.raises(BadConstantTerm):
            TruncatedSeries([1, 1], 2).exp()
        with pytest.raises(BadConstantTerm):
            TruncatedSeries([0, 1], 2).log()

    @given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=6))
    @settings(max_examples=60, deadline=None)
    def test_exp_log_roundtrip_property(self, tail):
        s = TruncatedSeries([0] + tail)
        assert s.exp().log() == s

    @given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=6),
           st.lists(st.fractions(max_denominator=20), min_size=1, max_size=6))
    @settings(max_examples=60, deadline=None)
    def test_mul_div_roundtrip_property(self, a_tail, b_tail):
        a = TruncatedSeries([1] + a_tail)
        b = TruncatedSeries([1] + b_tail)
        n = min(a.order, b.order)
        assert (a * b) / b == a.truncate(n)


class TestNonnegPrefix:
    def test_fail_at_cubic(self):
        quot = egf_from_counts(BELL) / egf_from_counts(PIPRIME)
        rep = nonneg_prefix(quot)
        assert not rep.ok
        assert rep.first_violation == 3
        assert rep.witness["coefficient"] == Q(-1, 3)

    def test_pass_type_quotient(self):
        s = TruncatedSeries([1, 0, 1, 0, 2, 0, 3], 6)
        assert nonneg_prefix(s).ok

    def test_zero_series_passes(self):
        assert nonneg_prefix(TruncatedSeries.zero(4)).ok


class TestBinomialTransform:
    def test_distinct_block_sizes_golden(self):
        a = [1, 1, 1, 4, 5, 16, 82, 169, 541]
        assert binomial_transform(a) == [1, 0, 0, 3, -8, 25, -9, -119, 736]

    def test_constant_sequence(self):
        assert binomial_transform([1] * 6) == [1, 0, 0, 0, 0, 0]

    def test_powers_of_two(self):
        # direct summation oracle: sum C(n,i)(-1)^i 2^(n-i) telescopes to 1
        assert binomial_transform([2 ** n for n in range(8)]) == [1] * 8

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=10))
    @settings(max_examples=80, deadline=None)
    def test_involution_property(self, a):
        assert inverse_binomial_transform(binomial_transform(a)) == a


class TestCountSeries:
    def test_egf_factorials_geometric(self):
        assert egf_from_counts([1, 1, 2, 6]).coeffs == (1, 1, 1, 1)

    def test_egf_bell(self):
        assert egf_from_counts([1, 1, 2, 5, 15]).coeffs == (1, 1, 1, Q(5, 6), Q(5, 8))

    def test_ogf_unit(self):
        assert ogf_from_counts([1, 0, 0]).coeffs == (1, 0, 0)


class TestCycleIndexPoly:
    def exp_species_prefix(self):
        # Z for the one-structure species, weighted degree <= 3:
        # 1 + x1 + (x1^2/2 + x2/2) + (x1^3/6 + x1 x2/2 + x3/3)
        return CycleIndexPoly({
            (): 1, (1,): 1, (2,): Q(1, 2), (0, 1): Q(1, 2),
            (3,): Q(1, 6), (1, 1): Q(1, 2), (0, 0, 1): Q(1, 3)}, 3)

    def test_specializations_golden(self):
        z = self.exp_species_prefix()
        assert z.specialize("exp").coeffs == (1, 1, Q(1, 2), Q(1, 6))
        assert z.specialize("type").coeffs == (1, 1, 1, 1)

    def test_mul_div_roundtrip(self):
        z = self.exp_species_prefix()
        w = CycleIndexPoly({(): 1, (1,): 2, (0, 1): Q(1, 3)}, 3)
        assert (z * w).div(w) == z

    def test_div_requires_unit_constant(self):
        z = self.exp_species_prefix()
        with pytest.raises(BadConstantTerm):
            z.div(CycleIndexPoly({(1,): 1}, 3))

    def test_specialize_is_ring_homomorphism(self):
        z = self.exp_species_prefix()
        w = CycleIndexPoly({(): 1, (1,): Q(3, 2), (2,): 1, (0, 1): Q(-1, 2)}, 3)
        for mode in ("exp", "type"):
            assert (z * w).specialize(mode) == z.specialize(mode) * w.specialize(mode)

    def test_weighted_truncation(self):
        z = CycleIndexPoly({(0, 0, 0, 1): 1}, 3)  # x4 has weighted degree 4 > 3
        assert z.terms == {}


class TestQMatrix:
    def test_identity(self):
        m = QMatrix.identity(3)
        assert m.rank() == 3
        assert m.kernel() == []

    def test_zero(self):
        m = QMatrix.zero(2, 5)
        assert m.rank() == 0
        assert len(m.kernel()) == 5

    def test_kernel_vectors_annihilate(self):
        m = QMatrix([[1, 2, 3, 1], [2, 4, 6, 2], [0, 1, 1, 0]])
        ker = m.kernel()
        assert len(ker) == 4 - m.rank()
        for v in ker:
            assert m.apply(v) == (0,) * 3

    def test_kernel_deterministic_reduced_form(self):
        m = QMatrix([[1, 1, 0], [0, 0, 1]])
        assert m.kernel() == [(Q(-1), Q(1), Q(0))]

    def test_span_contains(self):
        basis = [[1, 0, 1], [0, 1, 1]]
        assert span_contains(basis, [2, 3, 5])
        assert not span_contains(basis, [0, 0, 1])

    @given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                    min_size=1, max_size=5))
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity_property(self, rows):
        m = QMatrix(rows)
        assert m.rank() + len(m.kernel()) == m.cols
        for v in m.kernel():
            assert all(x == 0 for x in m.apply(v))


class TestEchelon:
    def test_contains_after_adding(self):
        ech = Echelon()
        ech.add({0: 1, 1: 2})
        ech.add({1: 1, 2: 1})
        assert ech.contains({0: 1, 1: 3, 2: 1})
        assert not ech.contains({2: 5, 3: 1})
        assert ech.rank == 2

    def test_kernel_matches_dense(self):
        rows = [{0: 1, 1: 2, 2: 3}, {1: 1, 2: 1}]
        ech = Echelon()
        ech.add_all(rows)
        dense = QMatrix([[1, 2, 3], [0, 1, 1]])
        assert ech.kernel(3) == dense.kernel()


class TestSerialization:
    def test_series_json_roundtrip(self):
        s = TruncatedSeries([1, Q(-1, 3), 0, Q(7, 2)], 5)
        data = s.to_json()
        assert data["order"] == 5
        assert data["coeffs"][1] == "-1/3"
        assert TruncatedSeries.from_json(data) == s
