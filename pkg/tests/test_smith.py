import itertools

import pytest

from detloci.arith import CycloElem, TorsionAngle
from detloci.complexes import FreeComplex, matrix_make
from detloci.poly import (
    LaurentPoly,
    Ring,
    exact_divide,
    parse_poly,
    u_divmod,
    u_gcd,
)
from detloci.smith import (
    NonTorsionError,
    annihilator_generator,
    cohomology_presentation,
    determinantal_factors,
    fitting_generator,
    laurent_canonical,
    max_jordan_size,
    smith_normal_form,
)

from conftest import oracle_det, random_torsion_complex

R1 = Ring(1, False, 1)
R1L = Ring(1, True, 1)


def P(text: str, ring: Ring = R1) -> LaurentPoly:
    return parse_poly(text, ring)


def angle(num, den):
    return TorsionAngle.make(num, den)


class TestSmithNormalForm:
    def test_identity(self):
        one = LaurentPoly.one(1)
        zero = LaurentPoly.zero(1)
        form = smith_normal_form([[one, zero], [zero, one]])
        assert [str(d.terms) for d in form.diagonal] == [str(one.terms)] * 2

    def test_nilpotent_shape(self):
        # [[t, 1], [0, t]] reduces to diag(1, t^2) by hand row/column moves
        t = P("t1")
        one = LaurentPoly.one(1)
        zero = LaurentPoly.zero(1)
        form = smith_normal_form([[t, one], [zero, t]])
        assert form.diagonal[0].is_one()
        assert form.diagonal[1] == P("t1^2")

    def test_already_chained(self):
        a, b = P("t1-1"), P("t1^2-3*t1+2")
        zero = LaurentPoly.zero(1)
        form = smith_normal_form([[a, zero], [zero, b]])
        assert form.diagonal == (a, b)

    def test_transform_determinants_constant(self, rng):
        for _ in range(10):
            size = rng.randint(1, 3)
            mat = [
                [
                    P("t1") ** rng.randint(0, 2)
                    if rng.random() < 0.7
                    else LaurentPoly.zero(1)
                    for _ in range(size)
                ]
                for _ in range(size)
            ]
            form = smith_normal_form(mat)
            for transform in (form.u, form.v):
                det = oracle_det([list(r) for r in transform], R1)
                assert not det.is_zero()
                exps, _ = det.leading()
                assert exps == (0,)

    def test_laurent_entries_rejected(self):
        with pytest.raises(ValueError, match="clear units"):
            smith_normal_form([[parse_poly("t1^-1", R1L)]])


class TestFitting:
    def test_examples(self):
        t = P("t1")
        zero = LaurentPoly.zero(1)
        pres = matrix_make([[t, zero], [zero, t * t]])
        assert fitting_generator(pres, 0) == P("t1^3")
        assert fitting_generator(pres, 1) == P("t1")
        assert fitting_generator(pres, 2).is_one()
        assert fitting_generator(pres, 5).is_one()

    def test_nontorsion_gives_zero(self):
        zero = LaurentPoly.zero(1)
        pres = matrix_make([[zero]])
        assert fitting_generator(pres, 0).is_zero()


def oracle_determinantal_factors(phi, order):
    """gcd of all (m-k)-minors of t*id - phi, by direct enumeration."""
    m = len(phi)
    t = LaurentPoly.variable(1, 0, 1, order)
    char = [
        [
            (t if i == j else LaurentPoly.zero(1, order))
            + LaurentPoly.constant(1, -phi[i][j].lift(order))
            for j in range(m)
        ]
        for i in range(m)
    ]
    out = []
    for k in range(m + 1):
        size = m - k
        if size <= 0:
            out.append(LaurentPoly.one(1, order))
            continue
        gcd = LaurentPoly.zero(1, order)
        for rows in itertools.combinations(range(m), size):
            for cols in itertools.combinations(range(m), size):
                sub = [[char[i][j] for j in cols] for i in rows]
                det = oracle_det(sub, Ring(1, False, order))
                if det.is_zero():
                    continue
                gcd = det if gcd.is_zero() else u_gcd(gcd, det)
        out.append(gcd.monic())
    return out


class TestDeterminantalFactors:
    def test_jordan_block_pair(self):
        lam = CycloElem.from_angle(6, angle(1, 6))
        one, zero = CycloElem.one(6), CycloElem.zero(6)
        phi = [[lam, one], [zero, lam]]
        factors = determinantal_factors(phi)
        oracle = oracle_determinantal_factors(phi, 6)
        assert list(factors.b) == oracle
        assert factors.b[1].is_one()
        linear = parse_poly("t1-e(1/6)", Ring(1, False, 6))
        assert factors.b[0] == linear * linear

    def test_scalar_matrix(self):
        lam = CycloElem.from_angle(6, angle(1, 6))
        zero = CycloElem.zero(6)
        factors = determinantal_factors([[lam, zero], [zero, lam]])
        linear = parse_poly("t1-e(1/6)", Ring(1, False, 6))
        assert factors.b[0] == linear * linear
        assert factors.b[1] == linear

    def test_three_by_three(self):
        lam = CycloElem.from_angle(6, angle(1, 6))
        one, zero = CycloElem.one(6), CycloElem.zero(6)
        phi = [[lam, one, zero], [zero, lam, zero], [zero, zero, lam]]
        factors = determinantal_factors(phi)
        assert list(factors.b) == oracle_determinantal_factors(phi, 6)
        linear = parse_poly("t1-e(1/6)", Ring(1, False, 6))
        assert factors.b[0] == linear**3
        assert factors.b[1] == linear
        assert factors.b[2].is_one()

    def test_divisibility_chain(self):
        lam = CycloElem.from_angle(4, angle(1, 4))
        one, zero = CycloElem.one(4), CycloElem.zero(4)
        phi = [[lam, one], [zero, CycloElem.one(4)]]
        factors = determinantal_factors(phi)
        for upper, lower in zip(factors.b, factors.b[1:]):
            _, rem = u_divmod(upper, lower)
            assert rem.is_zero()


class TestMaxJordanSize:
    def test_examples(self):
        lam = CycloElem.from_angle(6, angle(1, 6))
        one, zero = CycloElem.one(6), CycloElem.zero(6)
        block_pair = [
            [lam, one, zero],
            [zero, lam, zero],
            [zero, zero, lam],
        ]
        assert max_jordan_size(block_pair, angle(1, 6)) == 2
        identity = [[CycloElem.one(1)]]
        assert max_jordan_size(identity, angle(0, 1)) == 1
        j2 = [[lam, one], [zero, lam]]
        assert max_jordan_size(j2, angle(1, 3)) == 0


class TestCohomologyPresentation:
    def test_two_term_square(self):
        F = FreeComplex.make(R1L, (0, 1), {0: 1, 1: 1}, {0: [[parse_poly("t1^2", R1L)]]})
        pres = cohomology_presentation(F, 1)
        assert len(pres) == 1 and pres[0][0] == parse_poly("t1^2", R1L)

    def test_diag_presentation(self):
        ring = Ring(1, True, 3)
        h = parse_poly("t1^3-e(1/3)", ring)
        zero = LaurentPoly.zero(1, 3)
        F = FreeComplex.make(ring, (0, 1), {0: 2, 1: 2}, {0: [[h * h, zero], [zero, h]]})
        pres = cohomology_presentation(F, 1)
        b0 = laurent_canonical(fitting_generator(pres, 0))
        assert b0 == laurent_canonical(h * h * h)

    def test_koszul_kernel_quotient(self):
        # brute-force oracle: the kernel of (g, -f) is spanned by (1, t+1)
        # and the image of (f, g)^T is (t-1) times it, so Fitt_0 = (t-1)
        f, g = parse_poly("t1-1", R1L), parse_poly("t1^2-1", R1L)
        F = FreeComplex.make(
            R1L,
            (0, 2),
            {0: 1, 1: 2, 2: 1},
            {0: [[f], [g]], 1: [[g, parse_poly("-1", R1L) * f]]},
        )
        pres = cohomology_presentation(F, 1)
        assert laurent_canonical(fitting_generator(pres, 0)) == parse_poly("t1-1", R1L)

    def test_nontorsion_named_degree(self):
        zero = LaurentPoly.zero(1)
        F = FreeComplex.make(R1L, (0, 1), {0: 1, 1: 1}, {0: [[zero]]})
        with pytest.raises(NonTorsionError) as info:
            cohomology_presentation(F, 1)
        assert info.value.degree == 0

    def test_annihilator_law(self, rng):
        for _ in range(15):
            t = LaurentPoly.variable(1, 0, 1, 6)
            eigen = [angle(0, 1), angle(1, 2), angle(1, 6)]
            factors = []
            planted = []
            for _ in range(rng.randint(1, 3)):
                lam_angle = rng.choice(eigen)
                lam = CycloElem.from_angle(6, lam_angle)
                power = rng.randint(1, 2)
                factors.append((t + LaurentPoly.constant(1, -lam)) ** power)
                planted.append(lam_angle)
            zero = LaurentPoly.zero(1, 6)
            size = len(factors)
            pres = matrix_make(
                [
                    [factors[i] if i == j else zero for j in range(size)]
                    for i in range(size)
                ]
            )
            ann = annihilator_generator(pres)
            # annihilates every cyclic summand: each diagonal entry divides ann
            for i in range(size):
                assert exact_divide(ann, factors[i].monic(), laurent=False) is not None
            # minimality: dropping any planted linear factor stops annihilating
            for lam_angle in set(planted):
                lam = CycloElem.from_angle(6, lam_angle)
                linear = t + LaurentPoly.constant(1, -lam)
                reduced = exact_divide(ann, linear, laurent=False)
                assert reduced is not None
                assert any(
                    exact_divide(reduced, f.monic(), laurent=False) is None
                    for f in factors
                )


class TestPidEquivalenceSample:
    def test_cdf_matches_fitting(self, rng):
        from detloci.complexes import cdf_ideal
        from detloci.smith import principal_generator

        ring = Ring(1, True, 6)
        for _ in range(10):
            F = random_torsion_complex(rng, ring)
            for i in F.degrees():
                pres = cohomology_presentation(F, i)
                for k in range(0, 5):
                    lhs = principal_generator(cdf_ideal(F, i, k))
                    rhs = laurent_canonical(fitting_generator(pres, k))
                    assert lhs == rhs
                assert cdf_ideal(F, i, -1).is_zero()
                assert not cdf_ideal(F, i, 0).is_zero()
