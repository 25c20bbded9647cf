import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logent.surd import Surd

pos = st.fractions(min_value=F(1, 30), max_value=5, max_denominator=30)


class TestSurd:
    def test_perfect_square_collapses(self):
        s = Surd.sqrt(F(9, 4))
        assert s.is_rational() and s.to_fraction() == F(3, 2)

    def test_square_factors_extracted(self):
        s = Surd.sqrt(12)
        assert (s.coef, s.rad) == (2, 3)
        assert Surd.sqrt(F(1, 12)) == Surd(F(1, 6), 3)

    def test_zero(self):
        assert Surd(0, 7) == 0
        assert Surd(3, 0) == Surd(0)
        assert not Surd(0)

    @given(pos, pos)
    def test_product_of_roots(self, a, b):
        assert Surd.sqrt(a) * Surd.sqrt(b) == Surd.sqrt(a * b)
        assert (Surd.sqrt(a) * Surd.sqrt(a)).to_fraction() == a

    @given(pos, pos)
    def test_float_agrees(self, a, b):
        assert float(Surd.sqrt(a) * Surd(b)) == pytest.approx(math.sqrt(a) * float(b))

    def test_add_like_terms(self):
        assert Surd.sqrt(2) + Surd.sqrt(8) == Surd(3, 2)
        assert Surd.sqrt(2) - Surd.sqrt(2) == 0

    def test_add_commensurable_radicands(self):
        # 1/sqrt(2) and sqrt(2) share the squarefree part 2
        assert Surd.sqrt(F(1, 2)) + Surd.sqrt(2) == Surd(F(3, 2), 2)

    def test_add_incommensurable_raises(self):
        with pytest.raises(ValueError):
            Surd.sqrt(2) + Surd.sqrt(3)

    def test_mixed_with_rationals(self):
        assert Surd(F(1, 2)) + F(1, 2) == 1
        assert 1 - Surd(F(1, 4)) == F(3, 4)
        assert 2 * Surd.sqrt(3) == Surd(2, 3)

    def test_division(self):
        assert Surd(1) / Surd.sqrt(2) == Surd.sqrt(F(1, 2))

    def test_ordering(self):
        assert Surd.sqrt(2) < Surd(F(3, 2))
        assert -Surd.sqrt(2) < 0 < Surd.sqrt(2)
        assert -Surd.sqrt(3) < -Surd.sqrt(2)

    def test_hash_consistent_with_fraction(self):
        assert hash(Surd(F(1, 3))) == hash(F(1, 3))

    def test_json_round_trip(self):
        for s in (Surd(F(2, 3)), Surd.sqrt(F(3, 100)), -Surd.sqrt(5)):
            assert Surd.from_json(s.to_json()) == s
        assert Surd.sqrt(F(3, 100)).to_json() == {"num": 3, "den": 100, "sqrt": True}

    def test_str(self):
        assert str(Surd.sqrt(F(3, 100))) == "sqrt(3/100)"
        assert str(Surd(F(1, 4))) == "1/4"
