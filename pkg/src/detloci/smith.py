"""Smith normal form over Q(zeta_N)[t] and the data it extracts.

Covers the diagonalization with tracked unimodular transforms, Fitting-ideal
generators of torsion modules, determinantal factors b_k of a square matrix
over the field (with b_0/b_1 the minimal polynomial), maximal Jordan block
sizes at unit-root eigenvalues, and presentations of the cohomology of
one-variable complexes with torsion cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import CycloElem, TorsionAngle, lcm
from .complexes import FreeComplex, Matrix, empty_matrix, matrix_make, matrix_mul, matrix_shape
from .poly import (
    IdealGens,
    LaurentPoly,
    linear_factor_multiplicity,
    u_degree,
    u_divmod,
    u_gcd,
)


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = D with unimodular U, V and a divisibility-chained diagonal."""

    u: Matrix
    v: Matrix
    v_inv: Matrix
    d: Matrix
    diagonal: tuple[LaurentPoly, ...]

    @property
    def rank(self) -> int:
        return sum(1 for entry in self.diagonal if not entry.is_zero())


def _identity(n: int, order: int) -> list[list[LaurentPoly]]:
    one = LaurentPoly.one(1, order)
    zero = LaurentPoly.zero(1, order)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Matrix | Sequence[Sequence[LaurentPoly]]) -> SmithForm:
    """Smith normal form over Q(zeta)[t] with degree-minimal deterministic pivoting.

    Entries must be one-variable polynomials without negative exponents
    (Laurent matrices are unit-cleared by the callers first).
    """
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    order = 1
    for row in rows:
        for entry in row:
            if entry.nvars != 1:
                raise ValueError("Smith form needs one-variable entries")
            if not entry.is_zero() and entry.min_exponents()[0] < 0:
                raise ValueError("Smith form needs polynomial entries; clear units first")
            order = lcm(order, entry.order)
    d = [[entry.lift(order) for entry in row] for row in rows]
    u = _identity(nrows, order)
    v = _identity(ncols, order)
    v_inv = _identity(ncols, order)

    def row_op(i_target: int, i_source: int, q: LaurentPoly):
        for j in range(ncols):
            d[i_target][j] = d[i_target][j] - q * d[i_source][j]
        for j in range(nrows):
            u[i_target][j] = u[i_target][j] - q * u[i_source][j]

    def col_op(j_target: int, j_source: int, q: LaurentPoly):
        for i in range(nrows):
            d[i][j_target] = d[i][j_target] - q * d[i][j_source]
        for i in range(ncols):
            v[i][j_target] = v[i][j_target] - q * v[i][j_source]
        # inverse op applied on the left of v_inv: row j_source += q * row j_target
        for j in range(ncols):
            v_inv[j_source][j] = v_inv[j_source][j] + q * v_inv[j_target][j]

    def swap_rows(a: int, b: int):
        if a != b:
            d[a], d[b] = d[b], d[a]
            u[a], u[b] = u[b], u[a]

    def swap_cols(a: int, b: int):
        if a != b:
            for i in range(nrows):
                d[i][a], d[i][b] = d[i][b], d[i][a]
            for i in range(ncols):
                v[i][a], v[i][b] = v[i][b], v[i][a]
            v_inv[a], v_inv[b] = v_inv[b], v_inv[a]

    limit = min(nrows, ncols)
    for idx in range(limit):
        while True:
            pivot = None
            best = None
            for i in range(idx, nrows):
                for j in range(idx, ncols):
                    entry = d[i][j]
                    if entry.is_zero():
                        continue
                    deg = u_degree(entry)
                    if best is None or deg < best:
                        best = deg
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(idx, pivot[0])
            swap_cols(idx, pivot[1])
            dirty = False
            for i in range(nrows):
                if i != idx and not d[i][idx].is_zero():
                    q, _ = u_divmod(d[i][idx], d[idx][idx])
                    row_op(i, idx, q)
                    if not d[i][idx].is_zero():
                        dirty = True
            for j in range(ncols):
                if j != idx and not d[idx][j].is_zero():
                    q, _ = u_divmod(d[idx][j], d[idx][idx])
                    col_op(j, idx, q)
                    if not d[idx][j].is_zero():
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(idx + 1, nrows):
                for j in range(idx + 1, ncols):
                    if d[i][j].is_zero():
                        continue
                    _, rem = u_divmod(d[i][j], d[idx][idx])
                    if not rem.is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            minus_one = LaurentPoly.from_rational(1, -1, order)
            row_op(idx, offender, minus_one)  # add offending row to the pivot row
        entry = d[idx][idx]
        if not entry.is_zero():
            _, lead = entry.leading()
            inv = lead.inverse()
            for j in range(ncols):
                d[idx][j] = d[idx][j].scale(inv)
            for j in range(nrows):
                u[idx][j] = u[idx][j].scale(inv)

    form = SmithForm(
        u=matrix_make(u),
        v=matrix_make(v),
        v_inv=matrix_make(v_inv),
        d=matrix_make(d),
        diagonal=tuple(d[i][i] for i in range(limit)),
    )
    _verify_smith(form, rows, order)
    return form


def _verify_smith(form: SmithForm, original: Sequence[Sequence[LaurentPoly]], order: int):
    nrows = len(original)
    if nrows == 0:
        return
    lifted = matrix_make([[e.lift(order) for e in row] for row in original])
    left = matrix_mul(form.u, lifted, 1, order)
    both = matrix_mul(left, form.v, 1, order)
    for i in range(nrows):
        for j in range(len(original[0])):
            if both[i][j] != form.d[i][j]:
                raise ArithmeticError("Smith verification failed: U*M*V != D")
    for a, b in zip(form.diagonal, form.diagonal[1:]):
        if a.is_zero() and not b.is_zero():
            raise ArithmeticError("Smith diagonal has a zero before a nonzero entry")
        if not a.is_zero() and not b.is_zero():
            _, rem = u_divmod(b, a)
            if not rem.is_zero():
                raise ArithmeticError("Smith diagonal is not divisibility-chained")


def fitting_generator(presentation: Matrix, k: int) -> LaurentPoly:
    """Monic generator of the k-th Fitting ideal of coker(presentation), or zero.

    Rows index the module generators and columns the relations; the generator
    is the gcd of the (n-k)-minors, read off the Smith diagonal as the product
    of its first n-k invariants.
    """
    nrows, ncols = matrix_shape(presentation)
    size = nrows - k
    order = 1
    for row in presentation:
        for entry in row:
            order = lcm(order, entry.order)
    if size <= 0:
        return LaurentPoly.one(1, order)
    if size > min(nrows, ncols):
        return LaurentPoly.zero(1, order)
    form = smith_normal_form(presentation)
    result = LaurentPoly.one(1, order)
    for idx in range(size):
        entry = form.diagonal[idx]
        if entry.is_zero():
            return LaurentPoly.zero(1, order)
        result = result * entry
    return result


@dataclass(frozen=True)
class DeterminantalFactors:
    """Monic generators b_0, b_1, ... of the minor-gcd chain of t*id - phi."""

    b: tuple[LaurentPoly, ...]

    def minimal_polynomial(self) -> LaurentPoly:
        from .poly import exact_divide

        quotient = exact_divide(self.b[0], self.b[1], laurent=False)
        if quotient is None:
            raise ArithmeticError("determinantal factors failed divisibility")
        return quotient


def characteristic_matrix(phi: Sequence[Sequence[CycloElem]]) -> Matrix:
    m = len(phi)
    order = 1
    for row in phi:
        for entry in row:
            order = lcm(order, entry.order)
    t = LaurentPoly.variable(1, 0, 1, order)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            entry = LaurentPoly.constant(1, -phi[i][j].lift(order))
            if i == j:
                entry = entry + t
            row.append(entry)
        rows.append(row)
    return matrix_make(rows)


def determinantal_factors(phi: Sequence[Sequence[CycloElem]]) -> DeterminantalFactors:
    """The b_k chain for a square matrix over the coefficient field."""
    m = len(phi)
    if any(len(row) != m for row in phi):
        raise ValueError("determinantal factors need a square matrix")
    char = characteristic_matrix(phi)
    form = smith_normal_form(char)
    order = char[0][0].order if m else 1
    factors = []
    for k in range(m + 1):
        result = LaurentPoly.one(1, order)
        for idx in range(m - k):
            result = result * form.diagonal[idx]
        factors.append(result)
    return DeterminantalFactors(tuple(factors))


def max_jordan_size(phi: Sequence[Sequence[CycloElem]], xi: TorsionAngle) -> int:
    """Multiplicity of e^{2*pi*i*xi} in b_0/b_1, the largest invariant factor."""
    if not phi:
        return 0
    factors = determinantal_factors(phi)
    minimal = factors.minimal_polynomial()
    order = lcm(minimal.order, xi.den)
    value = CycloElem.from_angle(order, xi)
    return linear_factor_multiplicity(minimal.lift(order), value)


# ---------------------------------------------------------------------------
# Cohomology of one-variable complexes


class NonTorsionError(ValueError):
    """A one-variable complex has non-torsion cohomology in some degree."""

    def __init__(self, degree: int):
        super().__init__(f"cohomology in degree {degree} is not torsion")
        self.degree = degree


def _cleared_polynomial_matrix(mat: Matrix, order: int) -> Matrix:
    """Scale the whole matrix by a t-power so all entries are polynomial."""
    low = 0
    for row in mat:
        for entry in row:
            if not entry.is_zero():
                low = min(low, entry.min_exponents()[0])
    if low >= 0:
        return matrix_make([[e.lift(order) for e in row] for row in mat])
    shift = (-low,)
    return matrix_make(
        [
            [e.shift(shift).lift(order) if not e.is_zero() else e.lift(order) for e in row]
            for row in mat
        ]
    )


def _poly_rank(mat: Matrix) -> int:
    nrows, ncols = matrix_shape(mat)
    if nrows == 0 or ncols == 0:
        return 0
    return smith_normal_form(mat).rank


def cohomology_presentation(complex_: FreeComplex, i: int) -> Matrix:
    """Presentation matrix of H^i of a one-variable complex with torsion cohomology.

    The kernel of d^i is split off with the Smith column transform of d^i and
    the image of d^{i-1} is rewritten in that basis; the result presents H^i
    over Q(zeta)[t] and, after inverting t, over the Laurent ring.
    """
    if complex_.ring.nvars != 1:
        raise ValueError("cohomology presentations need a one-variable complex")
    order = complex_.ring.cyclotomic_order
    cleared = {
        j: _cleared_polynomial_matrix(complex_.differential(j), order)
        for j in range(complex_.imin - 1, complex_.imax + 1)
    }
    ranks = {j: _poly_rank(mat) for j, mat in cleared.items()}
    for j in complex_.degrees():
        if complex_.rank(j) != ranks[j] + ranks[j - 1]:
            raise NonTorsionError(j)
    if not complex_.imin <= i <= complex_.imax:
        return empty_matrix(0, 0, 1, order)
    d2 = cleared[i]
    d1 = cleared[i - 1]
    n_i = complex_.rank(i)
    form2 = smith_normal_form(d2) if matrix_shape(d2)[0] else None
    if form2 is None:
        rank2 = 0
        expressed = d1
    else:
        rank2 = form2.rank
        expressed = matrix_mul(form2.v_inv, d1, 1, order)
        for row in expressed[:rank2]:
            for entry in row:
                if not entry.is_zero():
                    raise ArithmeticError(
                        "image of the previous differential escapes the kernel"
                    )
    presentation = expressed[rank2:] if n_i else empty_matrix(0, 0, 1, order)
    return matrix_make(presentation)


def principal_generator(ideal: IdealGens) -> LaurentPoly:
    """Monic generator of a one-variable ideal given by its generator list.

    Over the univariate (Laurent) principal ideal domain this is the gcd of
    the generators, with monomial units stripped when the ring is Laurent.
    """
    if ideal.ring.nvars != 1:
        raise ValueError("principal generators only exist in one variable")
    if ideal.is_zero():
        return LaurentPoly.zero(1, ideal.ring.cyclotomic_order)
    current = ideal.gens[0].normalized(True)
    for g in ideal.gens[1:]:
        if current.is_one():
            break
        current = u_gcd(current, g.clear_units())
    return current.normalized(True)


def laurent_canonical(p: LaurentPoly) -> LaurentPoly:
    """Strip monomial units and scale monic: canonical form modulo units."""
    return p.normalized(True)


def annihilator_generator(presentation: Matrix) -> LaurentPoly:
    """Monic generator of the annihilator of coker(presentation): Fitt_0/Fitt_1."""
    from .poly import exact_divide

    b0 = fitting_generator(presentation, 0)
    b1 = fitting_generator(presentation, 1)
    if b0.is_zero():
        raise ValueError("annihilator of a non-torsion module is zero")
    quotient = exact_divide(b0, b1, laurent=False)
    if quotient is None:
        raise ArithmeticError("Fitting chain failed divisibility")
    return quotient
