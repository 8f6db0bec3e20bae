from fractions import Fraction

import pytest

from igusa.ratfun import FactoredRationalFunction as FRF


def F(q, num, den=None):
    return FRF(q, {k: Fraction(v) for k, v in num.items()}, den or {})


class TestConstruction:
    def test_zero_coefficients_dropped(self):
        r = F(5, {0: 0, 2: 3})
        assert r.num == {2: Fraction(3)}

    def test_b_zero_factor_folds_to_scalar(self):
        # 1 / (1 - q^{-1}) = q/(q-1)
        r = FRF(5, {0: 1}, {(-1, 0): 1})
        assert r == F(5, {0: Fraction(5, 4)})

    def test_zero_factor_rejected(self):
        with pytest.raises(ValueError):
            FRF(5, {0: 1}, {(0, 0): 1})

    def test_cancellation_exact(self):
        # (1 - q^2 t) / (1 - q^2 t) = 1
        r = FRF(3, {0: 1, 1: -9}, {(2, 1): 1})
        assert r.den == {}
        assert r == FRF.one(3)

    def test_partial_cancellation_kept(self):
        # numerator (1 - q t) does not divide (1 - q^2 t^2) fully
        r = FRF(3, {0: 1, 1: -3}, {(2, 2): 1})
        assert dict(r.den) == {(2, 2): 1}


class TestArithmetic:
    def test_add_zero(self):
        r = FRF.geometric_factor(5, -1, 2)
        assert r + FRF.zero(5) == r

    def test_telescoping(self):
        # 1/(1-q^{-1}t) + (-q^{-1}t)/(1-q^{-1}t) = 1
        a = FRF(5, {0: 1}, {(-1, 1): 1})
        b = FRF(5, {1: Fraction(-1, 5)}, {(-1, 1): 1})
        assert a + b == FRF.one(5)

    def test_shared_factor_sum(self):
        # three identical golden-row terms add coefficients
        p = 5
        term = FRF(
            p,
            {14: Fraction((p - 1) ** 2, p**2) * Fraction(1, p**5)},
            {(-3, 8): 1, (-2, 6): 1},
        )
        total = term + term + term
        expected = term.scaled(3)
        assert total == expected
        assert dict(total.den) == {(-3, 8): 1, (-2, 6): 1}

    def test_golden_row_product(self):
        # (1-p^{-1})^2 * [p^{-1}/(1-p^{-1})] * [p^{-3}t^8/(1-p^{-3}t^8)]
        p = 5
        l_part = F(p, {0: Fraction((p - 1) ** 2, p**2)})
        e_ray = FRF.geometric_factor(p, -1, 0)
        p1_ray = FRF.geometric_factor(p, -3, 8)
        product = l_part * e_ray * p1_ray
        expected = FRF(p, {8: Fraction(p - 1, p) * Fraction(1, p) * Fraction(1, p**3)}, {(-3, 8): 1})
        assert product == expected

    def test_mul_identity_and_inverse_factor(self):
        r = FRF(7, {0: 1, 3: Fraction(2, 7)}, {(-2, 3): 2})
        assert r * FRF.one(7) == r
        factor = FRF(7, {0: 1, 1: -Fraction(7)}, {})  # (1 - q t)
        inv = FRF(7, {0: 1}, {(1, 1): 1})
        assert factor * inv == FRF.one(7)

    def test_mixed_primes_rejected(self):
        with pytest.raises(ValueError):
            FRF.one(3) + FRF.one(5)


class TestTaylor:
    def test_geometric(self):
        r = FRF(5, {0: Fraction(4, 5)}, {(-1, 1): 1})
        assert r.taylor(2) == [Fraction(4, 5), Fraction(4, 25), Fraction(4, 125)]

    def test_growing_coefficients(self):
        r = FRF(3, {0: 1}, {(2, 1): 1})
        assert r.taylor(2) == [1, 9, 81]

    def test_t_squared_over_one_minus_t_squared(self):
        r = FRF(5, {2: 1}, {(0, 2): 1})
        assert r.taylor(5) == [0, 0, 1, 0, 1, 0]

    def test_additive(self):
        a = FRF(3, {1: Fraction(1, 3)}, {(-1, 2): 1})
        b = FRF(3, {0: 2}, {(1, 1): 1, (-1, 2): 1})
        lhs = (a + b).taylor(8)
        rhs = [x + y for x, y in zip(a.taylor(8), b.taylor(8))]
        assert lhs == rhs

    def test_multiplicative_cauchy(self):
        a = FRF(3, {1: Fraction(1, 3)}, {(-1, 2): 1})
        b = FRF(3, {0: 2, 2: -1}, {(1, 1): 1})
        lhs = (a * b).taylor(8)
        ta, tb = a.taylor(8), b.taylor(8)
        rhs = [sum(ta[i] * tb[k - i] for i in range(k + 1)) for k in range(9)]
        assert lhs == rhs


class TestPoles:
    def test_single_line(self):
        r = FRF(5, {0: Fraction(4, 5)}, {(-1, 1): 1})
        lines = r.poles()
        assert len(lines) == 1
        assert (lines[0].re, lines[0].period, lines[0].multiplicity) == (Fraction(-1), 1, 1)

    def test_grouped_lines(self):
        r = FRF(5, {0: 1}, {(-1, 1): 1, (-2, 2): 1, (-3, 8): 1})
        lines = {l.re: l for l in r.poles()}
        assert set(lines) == {Fraction(-1), Fraction(-3, 8)}
        assert lines[Fraction(-1)].multiplicity == 2
        assert lines[Fraction(-1)].period == 2
        assert lines[Fraction(-3, 8)].period == 8

    def test_invariant_under_redundant_factor(self):
        r = FRF(5, {6: Fraction(12, 625)}, {(-2, 6): 1})
        padded = FRF(
            5,
            {k + 0: c for k, c in r.num.items()},
            {(-2, 6): 1},
        )
        extra = FRF(5, {0: 1, 3: -Fraction(1, 25)}, {})  # (1 - q^{-2} t^3)
        same = (r * extra) * FRF(5, {0: 1}, {(-2, 3): 1})
        assert [(l.re, l.period, l.multiplicity) for l in same.poles()] == [
            (l.re, l.period, l.multiplicity) for l in padded.poles()
        ]
