import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detloci.arith import (
    CycloElem,
    TorsionAngle,
    angle_roots,
    cyclotomic_poly,
    euler_phi,
    rpoly_divmod,
    rpoly_mul,
    unit_root_multiplicity,
)

angles = st.builds(
    lambda num, den: TorsionAngle.make(num, den),
    st.integers(-30, 30),
    st.integers(1, 24),
)


def oracle_cyclotomic(n: int) -> tuple[int, ...]:
    """Quotient recursion: divide t^n - 1 by the product of lower-order factors."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    den: list[Fraction] = [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            den = list(rpoly_mul(den, oracle_cyclotomic_frac(d)))
    quot, rem = rpoly_divmod(num, den)
    assert not rem
    return tuple(int(c) for c in quot)


def oracle_cyclotomic_frac(n: int) -> list[Fraction]:
    return [Fraction(c) for c in oracle_cyclotomic(n)]


class TestTorsionAngle:
    def test_reduced_storage(self):
        a = TorsionAngle.make(4, 6)
        assert (a.num, a.den) == (2, 3)
        assert TorsionAngle.make(-1, 3) == TorsionAngle(2, 3)
        assert TorsionAngle.make(7, 7) == TorsionAngle(0, 1)

    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            TorsionAngle(2, 4)
        with pytest.raises(ValueError):
            TorsionAngle(1, 0)

    @given(angles, angles)
    def test_product_closed(self, a, b):
        c = a * b
        assert 0 <= c.num < c.den or (c.num, c.den) == (0, 1)
        assert math.gcd(c.num, c.den) == 1

    @given(angles)
    def test_inverse(self, a):
        assert (a * a.inverse()).is_one()


class TestCyclotomic:
    @pytest.mark.parametrize(
        "n,expected",
        [
            (1, (-1, 1)),
            (2, (1, 1)),
        ],
    )
    def test_trivial(self, n, expected):
        assert cyclotomic_poly(n) == expected

    def test_derived_against_quotient_oracle(self):
        assert cyclotomic_poly(4) == oracle_cyclotomic(4) == (1, 0, 1)
        assert cyclotomic_poly(6) == oracle_cyclotomic(6) == (1, -1, 1)
        for n in range(1, 31):
            assert cyclotomic_poly(n) == oracle_cyclotomic(n)

    def test_product_identity_up_to_64(self):
        for n in range(1, 65):
            total = [Fraction(1)]
            for d in range(1, n + 1):
                if n % d == 0:
                    total = list(
                        rpoly_mul(total, [Fraction(c) for c in cyclotomic_poly(d)])
                    )
            expected = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
            assert total == expected

    def test_degree_is_phi(self):
        for n in range(1, 40):
            assert len(cyclotomic_poly(n)) - 1 == euler_phi(n)


class TestAngleRoots:
    def test_square_roots_of_one(self):
        assert angle_roots(TorsionAngle.make(0, 1), 2) == [
            TorsionAngle.make(0, 1),
            TorsionAngle.make(1, 2),
        ]

    def test_identity(self):
        assert angle_roots(TorsionAngle.make(1, 3), 1) == [TorsionAngle.make(1, 3)]

    def test_derived_by_enumeration(self):
        # enumerate all sixth roots and keep the ones whose square is e(1/3)
        xi = TorsionAngle.make(1, 3)
        expected = sorted(
            (
                a
                for a in (TorsionAngle.make(k, 6) for k in range(6))
                if a * a == xi
            ),
            key=lambda a: a.as_fraction(),
        )
        assert angle_roots(xi, 2) == expected
        assert [str(a) for a in expected] == ["1/6", "2/3"]

    @given(angles, st.integers(1, 12))
    @settings(max_examples=150)
    def test_cardinality_and_power(self, xi, g):
        roots = angle_roots(xi, g)
        assert len(set(roots)) == g
        for eta in roots:
            assert eta**g == xi


class TestUnitRootMultiplicity:
    def test_examples(self):
        # (t-1)^2 at angle 0
        assert unit_root_multiplicity([1, -2, 1], TorsionAngle.make(0, 1)) == 2
        # t^4+1 at 1/8; the oracle is the cyclotomic polynomial itself
        assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)
        assert unit_root_multiplicity([1, 0, 0, 0, 1], TorsionAngle.make(1, 8)) == 1
        # (t^2-t+1)(t-1) at 1/6
        prod = rpoly_mul([Fraction(1), Fraction(-1), Fraction(1)], [Fraction(-1), Fraction(1)])
        assert cyclotomic_poly(6) == (1, -1, 1)
        assert unit_root_multiplicity(prod, TorsionAngle.make(1, 6)) == 1

    def test_zero_rejected(self):
        with pytest.raises(ValueError, match="infinite"):
            unit_root_multiplicity([], TorsionAngle.make(0, 1))

    def test_additive_on_products(self):
        rng = random.Random(7)
        dens = [1, 2, 3, 4, 6, 8]
        for _ in range(40):
            xi = TorsionAngle.make(rng.randrange(12), rng.choice(dens))
            p = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))] + [
                Fraction(1)
            ]
            q = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))] + [
                Fraction(1)
            ]
            left = unit_root_multiplicity(rpoly_mul(p, q), xi)
            assert left == unit_root_multiplicity(p, xi) + unit_root_multiplicity(q, xi)


class TestCycloElem:
    def test_coeff_length_enforced(self):
        with pytest.raises(ValueError):
            CycloElem(12, (Fraction(1),))

    def test_field_ops_in_q_zeta_12(self):
        rng = random.Random(12)
        d = euler_phi(12)
        elems = []
        while len(elems) < 40:
            coeffs = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d))
            e = CycloElem(12, coeffs)
            elems.append(e)
        pairs = [(rng.choice(elems), rng.choice(elems)) for _ in range(200)]
        one = CycloElem.one(12)
        for a, b in pairs:
            if not b.is_zero():
                assert (a * b) / b == a
        for _ in range(50):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert a * (b + c) == a * b + a * c

    def test_lift_compatible(self):
        a = CycloElem.from_angle(3, TorsionAngle.make(1, 3))
        b = a.lift(12)
        assert b == CycloElem.from_angle(12, TorsionAngle.make(1, 3))
        assert a == b  # comparison lifts to the common field

    def test_from_angle_requires_divisibility(self):
        with pytest.raises(ValueError):
            CycloElem.from_angle(4, TorsionAngle.make(1, 3))
