"""Zero-locus calculus for Bernstein-Sato-type ideals and polar-locus models.

Loci are stored intensionally: a multiset of affine hyperplanes with natural
normals plus a list of higher-codimension linear pieces, each given by its
defining hyperplanes.  All operations are set-theoretic on this data; there
is no polynomial ideal representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .torus import AffineHyperplane, PrimeTorusDivisor, exp_hyperplane, is_oblique, slope

Piece = tuple[AffineHyperplane, ...]


def _piece_make(hyperplanes: Sequence[AffineHyperplane], r: int) -> Piece:
    if len(hyperplanes) < 2:
        raise ValueError("a linear piece needs at least two defining hyperplanes")
    for h in hyperplanes:
        if h.nvars != r:
            raise ValueError("piece member has wrong dimension")
    rows = [[Fraction(x) for x in h.c] for h in hyperplanes]
    if _row_rank(rows) != len(rows):
        raise ValueError("piece normals must be linearly independent")
    return tuple(sorted(hyperplanes, key=lambda h: h.sort_key()))


def _row_rank(rows: list[list[Fraction]]) -> int:
    mat = [row[:] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class HyperplaneLocus:
    """Finite union of hyperplanes (with multiplicities) and linear pieces."""

    r: int
    hyperplanes: tuple[tuple[AffineHyperplane, int], ...]
    pieces: tuple[Piece, ...] = ()

    @staticmethod
    def make(
        r: int,
        hyperplanes: Iterable[tuple[AffineHyperplane, int]] | Iterable[AffineHyperplane],
        pieces: Iterable[Sequence[AffineHyperplane]] = (),
    ) -> "HyperplaneLocus":
        merged: dict[AffineHyperplane, int] = {}
        for item in hyperplanes:
            if isinstance(item, AffineHyperplane):
                h, mult = item, 1
            else:
                h, mult = item
            if h.nvars != r:
                raise ValueError("hyperplane has wrong dimension")
            if mult < 1:
                raise ValueError("hyperplane multiplicity must be >= 1")
            merged[h] = merged.get(h, 0) + mult
        piece_set = {_piece_make(p, r) for p in pieces}
        return HyperplaneLocus(
            r,
            tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key())),
            tuple(sorted(piece_set, key=lambda p: tuple(h.sort_key() for h in p))),
        )

    def members(self) -> list[AffineHyperplane]:
        return [h for h, _ in self.hyperplanes]

    def multiplicity(self, h: AffineHyperplane) -> int:
        for member, mult in self.hyperplanes:
            if member == h:
                return mult
        return 0

    def without_multiplicities(self) -> "HyperplaneLocus":
        return HyperplaneLocus.make(self.r, [(h, 1) for h, _ in self.hyperplanes], self.pieces)

    def set_canonical(self) -> tuple:
        """Scale-invariant description of the underlying point set."""
        hs = sorted({h.set_canonical() for h, _ in self.hyperplanes})
        ps = sorted(
            {tuple(sorted(h.set_canonical() for h in piece)) for piece in self.pieces}
        )
        return (tuple(hs), tuple(ps))

    def contains_rational_point(self, point: Sequence[Fraction]) -> bool:
        for h, _ in self.hyperplanes:
            if h.contains(point):
                return True
        for piece in self.pieces:
            if all(h.contains(point) for h in piece):
                return True
        return False


PolarModel = HyperplaneLocus
"""A locus whose hyperplane multiplicities are read as polar orders."""


def translate_locus(locus: HyperplaneLocus, v: Sequence[int]) -> HyperplaneLocus:
    """Image of the locus under alpha -> alpha - v (c0 gains c . v memberwise)."""
    if len(v) != locus.r:
        raise ValueError("translation vector has wrong length")
    return HyperplaneLocus.make(
        locus.r,
        [(h.shifted(v), mult) for h, mult in locus.hyperplanes],
        [tuple(h.shifted(v) for h in piece) for piece in locus.pieces],
    )


def combine_bm(
    components: Mapping[int, HyperplaneLocus],
    m: Sequence[int],
    pi: Sequence[int] | None = None,
) -> HyperplaneLocus:
    """Union of translated single-exponent loci along a permutation ordering.

    For each j (in permutation order) with m_j > 0, the j-th component locus
    enters translated by the accumulated earlier shifts plus k e_j for
    k = 0 .. m_j - 1.  Multiplicities are dropped; any permutation yields the
    same locus.
    """
    r = len(m)
    if all(x == 0 for x in m):
        raise ValueError("the exponent vector must be nonzero")
    if pi is None:
        pi = tuple(range(1, r + 1))
    if sorted(pi) != list(range(1, r + 1)):
        raise ValueError("pi must be a permutation of 1..r")
    for j, locus in components.items():
        if locus.r != r:
            raise ValueError(f"component {j} has mismatched dimension")
    hyperplanes: set[AffineHyperplane] = set()
    pieces: set[Piece] = set()
    accumulated = [0] * r
    for j in pi:
        mj = m[j - 1]
        if mj > 0:
            if j not in components:
                raise ValueError(f"missing component locus for coordinate {j}")
            for k in range(mj):
                v = list(accumulated)
                v[j - 1] += k
                shifted = translate_locus(components[j], v)
                hyperplanes.update(shifted.members())
                pieces.update(shifted.pieces)
            accumulated[j - 1] += mj
    return HyperplaneLocus.make(r, [(h, 1) for h in hyperplanes], pieces)


# ---------------------------------------------------------------------------
# Containment with rational witnesses


def _piece_rows(piece: Piece) -> list[list[Fraction]]:
    return [[Fraction(x) for x in h.c] + [Fraction(h.c0)] for h in piece]


def _in_row_span(rows: list[list[Fraction]], target: list[Fraction]) -> bool:
    mat = [row[:] for row in rows]
    width = len(target)
    vec = target[:]
    pivot_cols = []
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivot_cols.append(col)
        rank += 1
    residual = vec[:]
    for row, col in zip(mat[:rank], pivot_cols):
        f = residual[col]
        if f != 0:
            residual = [x - f * y for x, y in zip(residual, row)]
    return all(x == 0 for x in residual)


def piece_in_hyperplane(piece: Piece, h: AffineHyperplane) -> bool:
    """Whether the common zero set of the piece satisfies the hyperplane equation."""
    target = [Fraction(x) for x in h.c] + [Fraction(h.c0)]
    return _in_row_span(_piece_rows(piece), target)


def piece_in_piece(inner: Piece, outer: Piece) -> bool:
    return all(piece_in_hyperplane(inner, h) for h in outer)


def _grid_values() -> Iterable[Fraction]:
    yield Fraction(0)
    for k in range(1, 65):
        yield Fraction(k)
        yield Fraction(-k)


def _point_on_hyperplane_avoiding(
    h: AffineHyperplane, locus: HyperplaneLocus
) -> list[Fraction]:
    pivot = next(i for i, ci in enumerate(h.c) if ci != 0)
    free = [i for i in range(h.nvars) if i != pivot]
    for assignment in itertools.product(_grid_values(), repeat=len(free)):
        point = [Fraction(0)] * h.nvars
        for i, value in zip(free, assignment):
            point[i] = value
        rest = sum(Fraction(h.c[i]) * point[i] for i in free)
        point[pivot] = Fraction(-(h.c0) - rest, h.c[pivot])
        if not locus.contains_rational_point(point):
            return point
    raise ArithmeticError("witness search exhausted its grid")


def _point_on_piece_avoiding(piece: Piece, locus: HyperplaneLocus) -> list[Fraction]:
    rows = [[Fraction(x) for x in h.c] for h in piece]
    rhs = [Fraction(-h.c0) for h in piece]
    n = len(rows[0])
    mat = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    pivot_cols: list[int] = []
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivot_cols.append(col)
        rank += 1
    free = [i for i in range(n) if i not in pivot_cols]
    for assignment in itertools.product(_grid_values(), repeat=len(free)):
        point = [Fraction(0)] * n
        for i, value in zip(free, assignment):
            point[i] = value
        for row, col in zip(mat[:rank], pivot_cols):
            point[col] = row[n] - sum(row[i] * point[i] for i in free)
        if not locus.contains_rational_point(point):
            return point
    raise ArithmeticError("witness search exhausted its grid")


def containment_check(
    inner: HyperplaneLocus, outer: HyperplaneLocus
) -> tuple[bool, list[Fraction] | None]:
    """Set-theoretic containment of unions; returns a rational witness on failure.

    Hyperplanes are irreducible, so a hyperplane member must coincide (up to
    scaling) with an outer member; a piece may land inside an outer hyperplane
    (checked by exact linear algebra on its affine span) or an outer piece.
    """
    if inner.r != outer.r:
        raise ValueError("loci live in different dimensions")
    outer_canonicals = {h.set_canonical() for h in outer.members()}
    for h in inner.members():
        if h.set_canonical() not in outer_canonicals:
            return False, _point_on_hyperplane_avoiding(h, outer)
    for piece in inner.pieces:
        inside = any(piece_in_hyperplane(piece, h) for h in outer.members()) or any(
            piece_in_piece(piece, other) for other in outer.pieces
        )
        if not inside:
            return False, _point_on_piece_avoiding(piece, outer)
    return True, None


# ---------------------------------------------------------------------------
# Oblique parts, slopes, Exp comparisons


def oblique_part(locus: HyperplaneLocus) -> HyperplaneLocus:
    """Codimension-one components whose slopes have every coordinate nonzero."""
    return HyperplaneLocus.make(
        locus.r, [(h, mult) for h, mult in locus.hyperplanes if is_oblique(h)], ()
    )


def exp_divisors(locus: HyperplaneLocus) -> set[PrimeTorusDivisor]:
    return {exp_hyperplane(h) for h, _ in locus.hyperplanes}


def exp_oblique_equal(a: HyperplaneLocus, b: HyperplaneLocus) -> bool:
    return exp_divisors(oblique_part(a)) == exp_divisors(oblique_part(b))


def slope_set(locus: HyperplaneLocus) -> set[tuple[int, ...]]:
    return {slope(h) for h, _ in locus.hyperplanes}


# ---------------------------------------------------------------------------
# Polar-locus arithmetic


def polar_candidate_filter(
    candidate: AffineHyperplane, zbf: HyperplaneLocus
) -> dict:
    """Box position and translate test for a would-be polar hyperplane.

    m = floor(c0 / sum(c)) locates the unique half-open box (-m-1, -m]^r the
    hyperplane meets; the candidate survives if some translate by k*(1,..,1)
    with 0 <= k <= m is a member of the zero locus.
    """
    if candidate.c0 <= 0:
        raise ValueError("polar candidates need a positive constant term")
    total = sum(candidate.c)
    m = candidate.c0 // total
    members = {h.set_canonical() for h in zbf.members()}
    found = None
    for k in range(m + 1):
        shifted = AffineHyperplane(candidate.c, candidate.c0 - k * total)
        if shifted.set_canonical() in members:
            found = k
            break
    return {"m": m, "k": found}


def propagate_polar(model: PolarModel, steps: int) -> PolarModel:
    """Closure under the unit translates H -> H - e_i, orders kept as lower bounds."""
    if steps < 0:
        raise ValueError("steps must be a natural number")
    orders: dict[AffineHyperplane, int] = {h: mult for h, mult in model.hyperplanes}
    frontier = dict(orders)
    for _ in range(steps):
        new_frontier: dict[AffineHyperplane, int] = {}
        for h, order in frontier.items():
            for i in range(model.r):
                e_i = [0] * model.r
                e_i[i] = 1
                image = h.shifted(e_i)
                if orders.get(image, 0) < order:
                    orders[image] = max(orders.get(image, 0), order)
                    new_frontier[image] = max(new_frontier.get(image, 0), order)
        if not new_frontier:
            break
        frontier = new_frontier
    return HyperplaneLocus.make(model.r, list(orders.items()), model.pieces)


def specialize_slice(model: PolarModel, b: Sequence[int]) -> list[dict]:
    """Pole data of the restriction to the line s -> (b_1 s, ..., b_r s).

    Hyperplanes sharing the intersection point with the line are grouped;
    order_sum adds their polar orders and generic marks singleton groups (the
    arrangement-collision half of genericity; the analytic zero-locus half is
    not decidable from this data and is flagged by the field name).
    """
    if len(b) != model.r:
        raise ValueError("direction vector has wrong length")
    if any(x <= 0 for x in b):
        raise ValueError("direction entries must be positive")
    groups: dict[Fraction, dict] = {}
    for h, mult in model.hyperplanes:
        denom = sum(ci * bi for ci, bi in zip(h.c, b))
        pole = Fraction(-h.c0, denom)
        entry = groups.setdefault(pole, {"order_sum": 0, "count": 0})
        entry["order_sum"] += mult
        entry["count"] += 1
    out = []
    for pole in sorted(groups):
        entry = groups[pole]
        out.append(
            {
                "pole": pole,
                "order_sum": entry["order_sum"],
                "generic": entry["count"] == 1,
            }
        )
    return out


def ord_sum_check(
    divisor: PrimeTorusDivisor, zbf: HyperplaneLocus, target: int
) -> bool:
    """Whether some diagonal-translation class mapping to the divisor has
    total multiplicity at least the target.

    Hyperplanes H and H' are in the same class when H' = H - k*(1,...,1) for
    some integer k; class sums aggregate the locus multiplicities.
    """
    sums: dict[tuple, int] = {}
    for h, mult in zbf.hyperplanes:
        if exp_hyperplane(h) != divisor:
            continue
        c_hat, c0_hat = h.set_canonical()
        key = (c_hat, c0_hat % sum(c_hat))
        sums[key] = sums.get(key, 0) + mult
    if not sums:
        return target <= 0
    return max(sums.values()) >= target
