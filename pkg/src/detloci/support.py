"""Determinantal-factor divisors, minimal divisors, and specialization orders.

Consumes user-supplied free complexes over the r-variable Laurent ring as
stand-ins for stalk complexes, locates their codimension-one support among
binomial prime divisors, assembles the divisor tables per degree, and runs
the one-parameter specialization pipeline comparing divisor orders with
maximal Jordan block sizes at unit-root eigenvalues.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence

from .arith import CycloElem, TorsionAngle, angle_roots, lcm
from .complexes import FreeComplex, base_change, cdf_ideal
from .poly import IdealGens, LaurentPoly, exact_divide, gcd_generators, ideal_valuation, linear_factor_multiplicity
from .smith import annihilator_generator, cohomology_presentation
from .torus import PrimeTorusDivisor, TorusDivisor

logger = logging.getLogger(__name__)


class NonTorsionComplexError(ValueError):
    """Some degree of the complex has vanishing top minors ideal."""

    def __init__(self, degree: int):
        super().__init__(
            f"complex is not torsion: the top minors ideal vanishes in degree {degree}"
        )
        self.degree = degree


def _primitive_vectors(r: int, bound: int) -> list[tuple[int, ...]]:
    out = []
    for u in itertools.product(range(bound + 1), repeat=r):
        if all(x == 0 for x in u):
            continue
        g = 0
        for x in u:
            g = math.gcd(g, x)
        if g == 1:
            out.append(u)
    return sorted(out)


def _angles_up_to(max_den: int) -> list[TorsionAngle]:
    out = []
    for den in range(1, max_den + 1):
        for num in range(den):
            if math.gcd(num, den) == 1 or (num == 0 and den == 1):
                if num == 0 and den > 1:
                    continue
                out.append(TorsionAngle(num, den))
    return sorted(out, key=lambda a: (a.den, a.num))


def candidate_divisors(complex_: FreeComplex, bound: int = 4) -> list[PrimeTorusDivisor]:
    """Binomial prime divisors dividing the gcd of some degree's top minors.

    Searches supports with sup-norm at most the bound and torsion angles with
    denominator at most bound times the largest cleared entry degree; complete
    for loci planted within those limits, a declared search budget otherwise.
    """
    if bound < 1:
        raise ValueError("search bound must be positive")
    r = complex_.ring.nvars
    top_ideals: dict[int, IdealGens] = {}
    for i in complex_.degrees():
        ideal = cdf_ideal(complex_, i, 0)
        if ideal.is_zero():
            raise NonTorsionComplexError(i)
        top_ideals[i] = ideal
    max_degree = 1
    for mat in complex_.diffs.values():
        for row in mat:
            for entry in row:
                if not entry.is_zero():
                    max_degree = max(max_degree, entry.max_total_degree())
    gcds = []
    for i in sorted(top_ideals):
        ideal = top_ideals[i]
        if ideal.contains_one():
            continue
        gcds.append(gcd_generators(ideal))
    found = []
    for u in _primitive_vectors(r, bound):
        for xi in _angles_up_to(bound * max_degree):
            divisor = PrimeTorusDivisor(u, xi)
            binomial = LaurentPoly.binomial_divisor(r, divisor)
            if any(
                exact_divide(g, binomial, laurent=True) is not None for g in gcds
            ):
                found.append(divisor)
    return sorted(found, key=lambda d: d.sort_key())


@dataclass(frozen=True)
class SupportReport:
    """Per-degree divisor data over a fixed candidate list."""

    candidates: tuple[PrimeTorusDivisor, ...]
    delta0: dict[int, TorusDivisor]
    delta1: dict[int, TorusDivisor]
    minimal: dict[int, TorusDivisor]

    def ord_table(self) -> dict[int, dict[PrimeTorusDivisor, int]]:
        return {
            i: {c: div.multiplicity(c) for c in self.candidates}
            for i, div in self.minimal.items()
        }


def support_report(
    complex_: FreeComplex, candidates: Sequence[PrimeTorusDivisor]
) -> SupportReport:
    """Valuations of the first two minor ideals along each candidate, per degree.

    The minimal divisor in each degree is the difference of the two divisor
    rows and is checked to be effective.
    """
    unique = list(dict.fromkeys(candidates))
    if len(unique) != len(list(candidates)):
        raise ValueError("candidate divisors must be distinct")
    delta0: dict[int, TorusDivisor] = {}
    delta1: dict[int, TorusDivisor] = {}
    minimal: dict[int, TorusDivisor] = {}
    for i in complex_.degrees():
        ideal0 = cdf_ideal(complex_, i, 0)
        if ideal0.is_zero():
            raise NonTorsionComplexError(i)
        ideal1 = cdf_ideal(complex_, i, 1)
        row0: dict[PrimeTorusDivisor, int] = {}
        row1: dict[PrimeTorusDivisor, int] = {}
        for c in unique:
            v0 = ideal_valuation(ideal0, c)
            v1 = ideal_valuation(ideal1, c)
            if v0 is math.inf or v1 is math.inf:
                raise NonTorsionComplexError(i)
            row0[c] = v0
            row1[c] = v1
        delta0[i] = TorusDivisor(row0)
        delta1[i] = TorusDivisor(row1)
        diff = delta0[i] - delta1[i]
        if not diff.is_effective():
            raise ArithmeticError(
                f"minimal divisor in degree {i} is not effective; "
                "the candidate list is inconsistent"
            )
        minimal[i] = diff
    return SupportReport(tuple(unique), delta0, delta1, minimal)


def generic_point_on_divisor(
    divisor: PrimeTorusDivisor,
    avoid: Sequence[PrimeTorusDivisor],
    bound: int = 8,
) -> tuple[TorsionAngle, tuple[int, ...]]:
    """A torsion point (lambda^{b_1}, ..., lambda^{b_r}) on the divisor only.

    Enumerates exponent vectors b by total size then lexicographically, and
    for each solves lambda^{u . b} = xi, taking the smallest root of unity
    different from 1 that avoids every listed divisor.
    """
    if divisor in avoid:
        raise ValueError("the divisor itself may not be in the avoid list")
    r = divisor.nvars
    vectors = sorted(
        itertools.product(range(1, bound + 1), repeat=r),
        key=lambda b: (sum(b), b),
    )
    for b in vectors:
        w = sum(ui * bi for ui, bi in zip(divisor.u, b))
        for lam in angle_roots(divisor.xi, w):
            if lam.is_one():
                continue
            if any(
                TorsionAngle.from_fraction(
                    lam.as_fraction() * sum(ui * bi for ui, bi in zip(d.u, b))
                )
                == d.xi
                for d in avoid
            ):
                continue
            return lam, b
    raise ValueError("no generic point within bound; increase bound")


def point_on_divisor(
    divisor: PrimeTorusDivisor, lam: TorsionAngle, b: Sequence[int]
) -> bool:
    total = lam.as_fraction() * sum(ui * bi for ui, bi in zip(divisor.u, b))
    return TorsionAngle.from_fraction(total) == divisor.xi


@dataclass(frozen=True)
class SpecializationRecord:
    """Outcome of the one-parameter specialization at a chosen torsion point."""

    ord: int
    jordan: int
    lam: TorsionAngle
    b: tuple[int, ...]
    generic: bool


def specialization_multiplicity(
    complex_: FreeComplex,
    divisor: PrimeTorusDivisor,
    i: int,
    bound: int = 4,
    candidates: Sequence[PrimeTorusDivisor] | None = None,
    point: tuple[TorsionAngle, Sequence[int]] | None = None,
) -> SpecializationRecord:
    """Divisor order versus maximal Jordan size along a one-parameter point.

    The order comes from the minimal divisor of the support report; the Jordan
    size is the eigenvalue multiplicity in the annihilator of the cohomology
    of the substituted one-variable complex.  The two agree at generic points;
    a non-generic choice is reported (generic=False) rather than rejected.
    """
    if candidates is None:
        candidates = candidate_divisors(complex_, bound)
    all_candidates = sorted(set(candidates) | {divisor}, key=lambda d: d.sort_key())
    report = support_report(complex_, all_candidates)
    order_at = report.minimal.get(i, TorusDivisor()).multiplicity(divisor)
    avoid = [d for d in all_candidates if d != divisor]
    if point is None:
        lam, b = generic_point_on_divisor(divisor, avoid, max(bound, 8))
        generic = True
    else:
        lam, b_raw = point
        b = tuple(int(x) for x in b_raw)
        if any(x <= 0 for x in b):
            raise ValueError("point exponents must be positive")
        generic = point_on_divisor(divisor, lam, b) and not any(
            point_on_divisor(d, lam, b) for d in avoid
        )
    specialized = base_change(complex_, b)
    presentation = cohomology_presentation(specialized, i)
    annihilator = annihilator_generator(presentation)
    order = lcm(annihilator.order, lam.den)
    value = CycloElem.from_angle(order, lam)
    jordan = linear_factor_multiplicity(annihilator.lift(order), value)
    if not generic or jordan != order_at:
        logger.info(
            "non-generic specialization at lambda=%s b=%s: ord=%d jordan=%d",
            lam,
            b,
            order_at,
            jordan,
        )
    return SpecializationRecord(
        ord=order_at, jordan=jordan, lam=lam, b=tuple(b), generic=generic
    )
