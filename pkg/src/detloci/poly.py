"""Multivariate Laurent polynomials over Q(zeta_N) and ideal generator lists.

Sparse term maps from integer exponent vectors to cyclotomic coefficients,
with a graded-lexicographic canonical order.  Exact division, valuation along
binomial prime divisors, and a recursive content/primitive-part gcd are the
workhorses for everything downstream; no Groebner machinery anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .arith import CycloElem, TorsionAngle, lcm, lcm_all, zeta_power
from .torus import PrimeTorusDivisor


@dataclass(frozen=True)
class Ring:
    """Descriptor of the ambient ring: variable count, Laurent flag, Q(zeta_N)."""

    nvars: int
    laurent: bool
    cyclotomic_order: int = 1

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("ring needs at least one variable")
        if self.cyclotomic_order < 1:
            raise ValueError("cyclotomic order must be positive")

    def with_order(self, order: int) -> "Ring":
        return Ring(self.nvars, self.laurent, lcm(self.cyclotomic_order, order))

    def univariate(self) -> "Ring":
        return Ring(1, self.laurent, self.cyclotomic_order)


def term_key(exps: tuple[int, ...]) -> tuple:
    """Graded-lexicographic key: total degree first, then lex on exponents."""
    return (sum(exps), exps)


class LaurentPoly:
    """Sparse polynomial with exponents in Z^nvars and Q(zeta_order) coefficients."""

    __slots__ = ("nvars", "order", "terms", "_key")

    def __init__(self, nvars: int, order: int, terms: dict[tuple[int, ...], CycloElem]):
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly values are immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def make(
        nvars: int, order: int, terms: Mapping[tuple[int, ...], CycloElem]
    ) -> "LaurentPoly":
        top = order
        for c in terms.values():
            top = lcm(top, c.order)
        cleaned: dict[tuple[int, ...], CycloElem] = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise ValueError("exponent width does not match nvars")
            c = c.lift(top)
            if not c.is_zero():
                cleaned[tuple(int(x) for x in e)] = c
        return LaurentPoly(nvars, top, cleaned)

    @staticmethod
    def zero(nvars: int, order: int = 1) -> "LaurentPoly":
        return LaurentPoly(nvars, order, {})

    @staticmethod
    def constant(nvars: int, value: CycloElem) -> "LaurentPoly":
        return LaurentPoly.make(nvars, value.order, {(0,) * nvars: value})

    @staticmethod
    def one(nvars: int, order: int = 1) -> "LaurentPoly":
        return LaurentPoly.constant(nvars, CycloElem.one(order))

    @staticmethod
    def from_rational(nvars: int, q, order: int = 1) -> "LaurentPoly":
        return LaurentPoly.constant(nvars, CycloElem.from_rational(order, q))

    @staticmethod
    def variable(nvars: int, index: int, power: int = 1, order: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[index] = power
        return LaurentPoly.make(nvars, order, {tuple(e): CycloElem.one(order)})

    @staticmethod
    def monomial(exps: Sequence[int], coeff: CycloElem) -> "LaurentPoly":
        return LaurentPoly.make(len(exps), coeff.order, {tuple(exps): coeff})

    @staticmethod
    def binomial_divisor(
        nvars: int, divisor: PrimeTorusDivisor, order: int = 1
    ) -> "LaurentPoly":
        """The defining equation t^u - xi of a prime torus divisor."""
        if divisor.nvars != nvars:
            raise ValueError("divisor lives in a different torus")
        top = lcm(order, divisor.xi.den)
        root = CycloElem.from_angle(top, divisor.xi)
        return LaurentPoly.make(
            nvars,
            top,
            {tuple(divisor.u): CycloElem.one(top), (0,) * nvars: -root},
        )

    # -- basics -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def lift(self, order: int) -> "LaurentPoly":
        if order == self.order:
            return self
        return LaurentPoly.make(self.nvars, order, self.terms)

    def _pair(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")
        top = lcm(self.order, other.order)
        return self.lift(top), other.lift(top)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self._pair(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return LaurentPoly(a.nvars, a.order, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self._pair(other)
        out: dict[tuple[int, ...], CycloElem] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                if e in out:
                    s = out[e] + prod
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                elif not prod.is_zero():
                    out[e] = prod
        return LaurentPoly(a.nvars, a.order, out)

    def scale(self, c: CycloElem) -> "LaurentPoly":
        if c.is_zero():
            return LaurentPoly.zero(self.nvars, self.order)
        top = lcm(self.order, c.order)
        c = c.lift(top)
        return LaurentPoly(
            self.nvars, top, {e: v.lift(top) * c for e, v in self.terms.items()}
        )

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = LaurentPoly.one(self.nvars, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        a, b = self._pair(other)
        if set(a.terms) != set(b.terms):
            return False
        return all(a.terms[e] == b.terms[e] for e in a.terms)

    __hash__ = None

    def sort_key(self) -> tuple:
        cached = self._key
        if cached is None:
            items = sorted(
                self.terms.items(), key=lambda kv: term_key(kv[0]), reverse=True
            )
            cached = tuple(
                (
                    e,
                    c.order,
                    tuple((q.numerator, q.denominator) for q in c.coeffs),
                )
                for e, c in items
            )
            object.__setattr__(self, "_key", cached)
        return cached

    # -- structure --------------------------------------------------------

    def leading(self) -> tuple[tuple[int, ...], CycloElem]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=term_key)
        return e, self.terms[e]

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        mins = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        return tuple(mins)

    def shift(self, offset: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(
            self.nvars,
            self.order,
            {tuple(x + o for x, o in zip(e, offset)): c for e, c in self.terms.items()},
        )

    def clear_units(self) -> "LaurentPoly":
        """Divide out the monomial content so every variable hits exponent 0."""
        if self.is_zero():
            return self
        mins = self.min_exponents()
        if all(m == 0 for m in mins):
            return self
        return self.shift(tuple(-m for m in mins))

    def monic(self) -> "LaurentPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        if self.is_zero():
            return self
        _, lead = self.leading()
        return self.scale(lead.inverse())

    def normalized(self, laurent: bool) -> "LaurentPoly":
        """Canonical generator form: unit content removed, leading coeff 1."""
        if self.is_zero():
            return self
        p = self.clear_units() if laurent else self
        return p.monic()

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        return all(x == 0 for x in e) and c == CycloElem.one(c.order)

    def max_total_degree(self) -> int:
        """Largest term degree after removing the monomial unit content."""
        if self.is_zero():
            return 0
        cleared = self.clear_units()
        return max(sum(e) for e in cleared.terms)

    def substitute_powers(self, b: Sequence[int]) -> "LaurentPoly":
        """Apply t_i -> t^{b_i}, landing in the one-variable ring."""
        if len(b) != self.nvars:
            raise ValueError("substitution vector has wrong length")
        out: dict[tuple[int, ...], CycloElem] = {}
        for e, c in self.terms.items():
            k = sum(x * bi for x, bi in zip(e, b))
            key = (k,)
            if key in out:
                s = out[key] + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = c
        return LaurentPoly(1, self.order, out)

    def evaluate(self, point: Sequence[TorsionAngle], order: int) -> CycloElem:
        """Exact value at a torsion point of the torus, inside Q(zeta_order)."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        for a in point:
            if order % a.den != 0:
                raise ValueError("field order does not contain the point")
        powers = [(order // a.den) * a.num for a in point]
        total = CycloElem.zero(order)
        for e, c in self.terms.items():
            k = 0
            for x, p in zip(e, powers):
                if x:
                    k += x * p
            total = total + c.lift(order) * zeta_power(order, k % order)
        return total

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self, laurent=True)})"


# ---------------------------------------------------------------------------
# Exact division and valuations


def exact_divide(f: LaurentPoly, g: LaurentPoly, laurent: bool = True) -> LaurentPoly | None:
    """The quotient f/g when it exists in the (Laurent) polynomial ring.

    In the Laurent ring, monomials are units, so both sides are first cleared
    to honest polynomials; divisibility is then decided by leading-term
    reduction, which is exact for a single divisor.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.nvars, f.order)
    f, g = f._pair(g)
    if laurent:
        mf, mg = f.min_exponents(), g.min_exponents()
        offset = tuple(a - b for a, b in zip(mf, mg))
        quotient = _reduce_by_single(f.clear_units(), g.clear_units())
        if quotient is None:
            return None
        return quotient.shift(offset)
    return _reduce_by_single(f, g)


def _reduce_by_single(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly | None:
    eg, cg = g.leading()
    cg_inv = cg.inverse()
    tail = [(e, c) for e, c in g.terms.items() if e != eg]
    quot: dict[tuple[int, ...], CycloElem] = {}
    rem = dict(f.terms)
    while rem:
        ef = max(rem, key=term_key)
        diff = tuple(a - b for a, b in zip(ef, eg))
        if any(d < 0 for d in diff):
            return None
        ratio = rem.pop(ef) * cg_inv
        quot[diff] = ratio
        for e2, c2 in tail:
            key = tuple(a + b for a, b in zip(diff, e2))
            sub = ratio * c2
            current = rem.get(key)
            if current is None:
                rem[key] = -sub
            else:
                updated = current - sub
                if updated.is_zero():
                    del rem[key]
                else:
                    rem[key] = updated
    return LaurentPoly.make(f.nvars, f.order, quot)


@lru_cache(maxsize=None)
def _lattice_transform(u: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Rows of a unimodular integer matrix sending the primitive vector u to e_1.

    Used to change monomial coordinates so the binomial t^u - xi becomes
    linear in the first new variable.
    """
    r = len(u)
    rows = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    vec = list(u)
    for i in range(1, r):
        a, b = vec[0], vec[i]
        if b == 0:
            continue
        g, x, y = _ext_gcd(a, b)
        row0 = [x * p + y * q for p, q in zip(rows[0], rows[i])]
        rowi = [(-b // g) * p + (a // g) * q for p, q in zip(rows[0], rows[i])]
        rows[0], rows[i] = row0, rowi
        vec[0], vec[i] = g, 0
    if vec[0] != 1:
        raise ValueError("divisor support must be primitive")
    return tuple(tuple(row) for row in rows)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _root_multiplicity_sparse(coeffs: dict[int, CycloElem], value: CycloElem) -> int:
    """Multiplicity of a root in a sparse one-variable Laurent polynomial."""
    low = min(coeffs)
    high = max(coeffs)
    dense = [coeffs.get(k) for k in range(low, high + 1)]
    zero = CycloElem.zero(value.order)
    dense = [zero if c is None else c.lift(value.order) for c in dense]
    count = 0
    while True:
        # synthetic division by (x - value), descending Horner
        remainder = zero
        quotient: list[CycloElem] = []
        for coeff in reversed(dense):
            remainder = coeff + value * remainder
            quotient.append(remainder)
        if not remainder.is_zero():
            return count
        quotient = quotient[::-1][1:]
        count += 1
        dense = quotient if quotient else [zero]
        if all(c.is_zero() for c in dense):
            raise ArithmeticError("root multiplicity chain hit the zero polynomial")


def valuation_along(f: LaurentPoly, divisor: PrimeTorusDivisor) -> int:
    """Largest m with (t^u - xi)^m dividing f in the Laurent ring.

    A unimodular monomial change of coordinates turns the binomial into
    x - xi for the first new variable; the valuation is then the minimum,
    over the groups of terms sharing the remaining exponents, of the root
    multiplicity of xi in the group's one-variable part.  Agrees with
    repeated exact division, which the tests use as the oracle.
    """
    if f.is_zero():
        raise ValueError("infinite valuation: zero polynomial")
    if f.nvars != divisor.nvars:
        raise ValueError("divisor lives in a different torus")
    order = lcm(f.order, divisor.xi.den)
    value = CycloElem.from_angle(order, divisor.xi)
    transform = _lattice_transform(divisor.u)
    groups: dict[tuple[int, ...], dict[int, CycloElem]] = {}
    for e, c in f.terms.items():
        w = tuple(sum(row[j] * e[j] for j in range(f.nvars)) for row in transform)
        groups.setdefault(w[1:], {})[w[0]] = c
    return min(
        _root_multiplicity_sparse(coeffs, value) for coeffs in groups.values()
    )


@dataclass(frozen=True)
class IdealGens:
    """A canonical finite generator list for an ideal of the (Laurent) ring.

    Zero generators are dropped, each generator is unit-normalized (monomial
    content removed in the Laurent case, leading coefficient 1), and the list
    is deduplicated and sorted.  (0) is the empty list and (1) is [1].
    Generators are deliberately not reduced against each other.
    """

    ring: Ring
    gens: tuple[LaurentPoly, ...]

    @staticmethod
    def make(ring: Ring, gens: Iterable[LaurentPoly]) -> "IdealGens":
        order = ring.cyclotomic_order
        normalized = []
        for g in gens:
            if g.nvars != ring.nvars:
                raise ValueError("generator has wrong number of variables")
            if g.is_zero():
                continue
            n = g.normalized(ring.laurent)
            normalized.append(n)
            order = lcm(order, n.order)
        normalized = [g.lift(order) for g in normalized]
        seen = set()
        unique = []
        for g in sorted(normalized, key=lambda p: p.sort_key()):
            key = g.sort_key()
            if key not in seen:
                seen.add(key)
                unique.append(g)
        return IdealGens(ring.with_order(order), tuple(unique))

    @staticmethod
    def zero_ideal(ring: Ring) -> "IdealGens":
        return IdealGens(ring, ())

    @staticmethod
    def unit_ideal(ring: Ring) -> "IdealGens":
        return IdealGens.make(ring, [LaurentPoly.one(ring.nvars, ring.cyclotomic_order)])

    def is_zero(self) -> bool:
        return not self.gens

    def contains_one(self) -> bool:
        return any(g.is_one() for g in self.gens)

    def vanishes_at(self, point: Sequence[TorsionAngle]) -> bool:
        order = lcm_all(
            [self.ring.cyclotomic_order] + [a.den for a in point]
        )
        return all(g.evaluate(point, order).is_zero() for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealGens):
            return NotImplemented
        if self.ring.nvars != other.ring.nvars or self.ring.laurent != other.ring.laurent:
            return False
        if len(self.gens) != len(other.gens):
            return False
        return all(a == b for a, b in zip(self.gens, other.gens))

    __hash__ = None


def ideal_valuation(ideal: IdealGens, divisor: PrimeTorusDivisor):
    """min of valuation_along over the generators; infinity exactly for (0)."""
    if ideal.is_zero():
        return math.inf
    return min(valuation_along(g, divisor) for g in ideal.gens)


def gcd_generators(ideal: IdealGens) -> LaurentPoly:
    """A gcd of the generators, normalized; exact at desk scale."""
    if ideal.is_zero():
        raise ValueError("gcd of the zero ideal is undefined")
    laurent = ideal.ring.laurent
    current = ideal.gens[0].normalized(laurent)
    for g in ideal.gens[1:]:
        if current.is_one():
            break
        current = mv_gcd(current, g).normalized(laurent)
    return current.normalized(laurent)


# ---------------------------------------------------------------------------
# Multivariate gcd via recursive content / primitive part


def mv_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """gcd of two nonzero polynomials over Q(zeta), up to unit normalization."""
    if f.is_zero() or g.is_zero():
        raise ValueError("gcd of zero polynomial is undefined here")
    f = f.clear_units().monic()
    g = g.clear_units().monic()
    return _mv_gcd_poly(f, g).clear_units().monic()


def _active_vars(f: LaurentPoly) -> list[int]:
    return [i for i in range(f.nvars) if any(e[i] for e in f.terms)]


def _mv_gcd_poly(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if len(f.terms) == 1 or len(g.terms) == 1:
        # a monomial is a unit after clearing; over a field the gcd is 1
        return LaurentPoly.one(f.nvars, lcm(f.order, g.order))
    active = sorted(set(_active_vars(f)) | set(_active_vars(g)))
    if not active:
        return LaurentPoly.one(f.nvars, lcm(f.order, g.order))
    var = active[-1]
    if len(active) == 1:
        return _euclid_univariate(f, g, var)
    cont_f, pp_f = _content_pp(f, var)
    cont_g, pp_g = _content_pp(g, var)
    cont_gcd = _mv_gcd_poly(cont_f, cont_g) if not (
        cont_f.is_one() or cont_g.is_one()
    ) else LaurentPoly.one(f.nvars, lcm(f.order, g.order))
    a, b = pp_f, pp_g
    while not b.is_zero():
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            a, b = b, r
            break
        _, r = _content_pp(r.clear_units(), var)
        a, b = b, r
    _, pp_gcd = _content_pp(a.clear_units(), var)
    return cont_gcd * pp_gcd


def _deg_in(f: LaurentPoly, var: int) -> int:
    if f.is_zero():
        return -1
    return max(e[var] for e in f.terms)


def _coeff_in(f: LaurentPoly, var: int, k: int) -> LaurentPoly:
    out = {}
    for e, c in f.terms.items():
        if e[var] == k:
            key = list(e)
            key[var] = 0
            out[tuple(key)] = c
    return LaurentPoly(f.nvars, f.order, out)


def _content_pp(f: LaurentPoly, var: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Content and primitive part of f viewed as univariate in var."""
    degrees = sorted({e[var] for e in f.terms})
    coeffs = [_coeff_in(f, var, k) for k in degrees if not _coeff_in(f, var, k).is_zero()]
    content = coeffs[0]
    for c in coeffs[1:]:
        if content.is_one():
            break
        content = _mv_gcd_poly(content.clear_units().monic(), c.clear_units().monic())
    content = content.clear_units().monic()
    if content.is_one():
        return content, f
    pp = exact_divide(f, content, laurent=False)
    if pp is None:
        raise ArithmeticError("content failed to divide its polynomial")
    return content, pp


def _pseudo_rem(a: LaurentPoly, b: LaurentPoly, var: int) -> LaurentPoly:
    db = _deg_in(b, var)
    lead_b = _coeff_in(b, var, db)
    rem = a
    while not rem.is_zero():
        da = _deg_in(rem, var)
        if da < db:
            break
        lead_a = _coeff_in(rem, var, da)
        shift = [0] * rem.nvars
        shift[var] = da - db
        rem = rem * lead_b - b * lead_a.shift(tuple(shift))
    return rem


def _euclid_univariate(f: LaurentPoly, g: LaurentPoly, var: int) -> LaurentPoly:
    a, b = f, g
    while not b.is_zero():
        _, r = upoly_divmod_in(a, b, var)
        a, b = b, r
    return a.monic()


def upoly_divmod_in(
    f: LaurentPoly, g: LaurentPoly, var: int
) -> tuple[LaurentPoly, LaurentPoly]:
    """Long division treating both inputs as univariate in the given variable."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    f, g = f._pair(g)
    db = _deg_in(g, var)
    lead_b = _coeff_in(g, var, db)
    if len(lead_b.terms) != 1 or any(
        e != (0,) * f.nvars for e in lead_b.terms
    ):
        raise ValueError("divisor is not univariate in the chosen variable")
    inv = next(iter(lead_b.terms.values())).inverse()
    quot = LaurentPoly.zero(f.nvars, f.order)
    rem = f
    while not rem.is_zero() and _deg_in(rem, var) >= db:
        da = _deg_in(rem, var)
        lead_a = _coeff_in(rem, var, da)
        shift = [0] * f.nvars
        shift[var] = da - db
        piece = lead_a.scale(inv).shift(tuple(shift))
        quot = quot + piece
        rem = rem - piece * g
    return quot, rem


# ---------------------------------------------------------------------------
# Univariate helpers on one-variable polynomials (exponents >= 0)


def u_degree(f: LaurentPoly) -> int:
    return _deg_in(f, 0)

def u_divmod(f: LaurentPoly, g: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    return upoly_divmod_in(f, g, 0)


def u_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    a, b = f, g
    while not b.is_zero():
        _, r = u_divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


def linear_factor_multiplicity(f: LaurentPoly, value: CycloElem) -> int:
    """Multiplicity of the exact linear factor (t - value) in a 1-variable poly."""
    if f.is_zero():
        raise ValueError("zero polynomial has infinite multiplicity")
    order = lcm(f.order, value.order)
    factor = LaurentPoly.make(
        1, order, {(1,): CycloElem.one(order), (0,): -value.lift(order)}
    )
    count = 0
    current = f.lift(order)
    while True:
        q, r = u_divmod(current, factor)
        if not r.is_zero():
            return count
        count += 1
        current = q


# ---------------------------------------------------------------------------
# Text grammar: sums of terms, e(a/b) constants, s/t variable spellings


class ParseError(ValueError):
    """Malformed polynomial text; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_terms(
    text: str, nvars: int, laurent: bool
) -> list[tuple[Fraction, TorsionAngle, tuple[int, ...]]]:
    """Parse the grammar into (rational, angle, exponents) triples."""
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial", 0)
    terms = []
    pos = 0
    n = len(s)
    while pos < n:
        sign = 1
        while pos < n and s[pos] in "+-":
            if s[pos] == "-":
                sign = -sign
            pos += 1
        if pos >= n:
            raise ParseError("dangling sign", pos)
        coeff = Fraction(sign)
        angle = TorsionAngle.zero()
        exps = [0] * nvars
        saw_factor = False
        while True:
            if pos < n and s[pos].isdigit():
                num, pos = _read_int(s, pos)
                if pos < n and s[pos] == "/":
                    den, pos2 = _read_int(s, pos + 1)
                    if den <= 0:
                        raise ParseError("denominator must be positive", pos + 1)
                    coeff *= Fraction(num, den)
                    pos = pos2
                else:
                    coeff *= num
                saw_factor = True
            elif pos < n and s[pos] == "e" and pos + 1 < n and s[pos + 1] == "(":
                close = s.find(")", pos)
                if close < 0:
                    raise ParseError("unterminated unit-root constant", pos)
                body = s[pos + 2 : close]
                if "/" not in body:
                    raise ParseError("unit root must be written e(a/b)", pos)
                a_str, b_str = body.split("/", 1)
                try:
                    a, b = int(a_str), int(b_str)
                except ValueError:
                    raise ParseError("bad unit-root constant", pos) from None
                if b <= 0:
                    raise ParseError("unit-root denominator must be positive", pos)
                angle = angle * TorsionAngle.make(a, b)
                pos = close + 1
                saw_factor = True
            elif pos < n and s[pos] in "st":
                var_letter = s[pos]
                idx, pos = _read_int(s, pos + 1)
                if not 1 <= idx <= nvars:
                    raise ParseError(f"variable index out of range 1..{nvars}", pos)
                power = 1
                if pos < n and s[pos] == "^":
                    neg = False
                    p2 = pos + 1
                    if p2 < n and s[p2] == "-":
                        neg = True
                        p2 += 1
                    power, pos = _read_int(s, p2)
                    if neg:
                        power = -power
                if power < 0 and (not laurent or var_letter == "s"):
                    raise ParseError(
                        "negative exponents need the Laurent flag and a t-variable",
                        pos,
                    )
                exps[idx - 1] += power
                saw_factor = True
            elif pos < n and s[pos] == "(":
                raise ParseError("parenthesized subexpressions are not allowed", pos)
            else:
                raise ParseError("expected a factor", pos)
            if pos < n and s[pos] == "*":
                pos += 1
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", pos)
        terms.append((coeff, angle, tuple(exps)))
    return terms


def _read_int(s: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(s) and s[pos].isdigit():
        pos += 1
    if start == pos:
        raise ParseError("expected an integer", start)
    return int(s[start:pos]), pos


def denominators_in(text: str, nvars: int, laurent: bool) -> list[int]:
    return [angle.den for _, angle, _ in parse_terms(text, nvars, laurent)]


def parse_poly(text: str, ring: Ring) -> LaurentPoly:
    """Parse text in the given ring, lifting the field to cover all unit roots."""
    triples = parse_terms(text, ring.nvars, ring.laurent)
    order = lcm_all([ring.cyclotomic_order] + [a.den for _, a, _ in triples])
    out: dict[tuple[int, ...], CycloElem] = {}
    for q, angle, exps in triples:
        c = CycloElem.from_angle(order, angle).scale(q)
        if exps in out:
            s = out[exps] + c
            if s.is_zero():
                del out[exps]
            else:
                out[exps] = s
        elif not c.is_zero():
            out[exps] = c
    return LaurentPoly(ring.nvars, order, out)


def format_poly(p: LaurentPoly, laurent: bool = True) -> str:
    """Canonical string in the text grammar; round-trips through parse_poly."""
    if p.is_zero():
        return "0"
    letter = "t" if laurent else "s"
    pieces: list[str] = []
    for e in sorted(p.terms, key=term_key, reverse=True):
        c = p.terms[e]
        for j, q in enumerate(c.coeffs):
            if q == 0:
                continue
            factors: list[str] = []
            if abs(q) != 1:
                factors.append(str(abs(q)))
            if j > 0:
                angle = TorsionAngle.make(j, c.order)
                factors.append(f"e({angle})")
            for i, x in enumerate(e):
                if x == 0:
                    continue
                factors.append(f"{letter}{i + 1}" + (f"^{x}" if x != 1 else ""))
            if not factors:
                factors.append("1")
            body = "*".join(factors)
            if abs(q) == 1 and factors and factors[0] == "1" and len(factors) > 1:
                body = "*".join(factors[1:])
            sign = "-" if q < 0 else "+"
            pieces.append(sign + body)
    text = "".join(pieces)
    return text[1:] if text.startswith("+") else text
