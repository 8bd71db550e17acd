"""Flat limits, joins, linear sections, tangent spaces and the smoothness
and non-degeneracy predicates.

Weight-vector sign convention: `flat_limit` keeps the terms of minimal
weight under the stored weights. When a degeneration is specified by
weights on *vectors* (a on U, b on W, with a < b pulling the limit onto
the join), the corresponding stored weights are the negatives; the
helpers here perform that negation at the call site.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Echelon, rank_of_rows, row_from_fractions
from .groebner import (
    buchberger,
    canonical_generators,
    degree_columns,
    degree_echelon,
    eliminate,
    ideal_equal,
    poly_to_row,
    restrict_to_variables,
)
from .hilbert import InternalLimitError, PreconditionError, hilbert_data, hilbert_function
from .poly import (
    GRLEX,
    HomogeneousIdeal,
    OnePS,
    Polynomial,
    initial_part,
    monomials_of_degree,
    weight_order,
)


@dataclass(frozen=True)
class Splitting:
    """Decomposition of the variable index set into U- and W-blocks."""

    nvars: int
    u_vars: tuple[int, ...]
    w_vars: tuple[int, ...]

    def __post_init__(self) -> None:
        u, w = set(self.u_vars), set(self.w_vars)
        if not u or not w:
            raise ValueError("both blocks of a splitting must be nonempty")
        if u & w or u | w != set(range(self.nvars)):
            raise ValueError("splitting blocks must partition the variables")


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, coords) -> "ProjectivePoint":
        vals = tuple(Fraction(c) for c in coords)
        lead = next((v for v in vals if v != 0), None)
        if lead is None:
            raise ValueError("zero vector is not a projective point")
        return cls(tuple(v / lead for v in vals))


def flat_limit(ideal: HomogeneousIdeal, lam: OnePS) -> HomogeneousIdeal:
    """Ideal of the limit subscheme: initial parts of a Groebner basis
    under the weight-refined order, in canonical form."""
    if ideal.is_zero:
        return ideal
    gb = buchberger(ideal, weight_order(lam))
    gens = [initial_part(g, lam) for g in gb.basis]
    return canonical_generators(HomogeneousIdeal(ideal.nvars, gens))


def flat_limit_oracle(
    ideal: HomogeneousIdeal, lam: OnePS, degree_bound: int
) -> HomogeneousIdeal:
    """Groebner-free degreewise ground truth for flat_limit.

    For each degree, row-reduces I_d with columns sorted by ascending
    weight; the initial parts of the fully reduced rows span the
    degree-d slice of the initial ideal.
    """
    if degree_bound < ideal.max_generator_degree():
        raise ValueError("degree bound below the maximum generator degree")
    gens = []
    for d in range(degree_bound + 1):
        colkey = lambda m: (lam.weight(m), GRLEX.key(m))
        columns = degree_columns(ideal.nvars, d, colkey=colkey)
        by_index = {i: m for m, i in columns.items()}
        _, ech = degree_echelon(ideal, d, columns=columns)
        for row in ech.reduced_rows():
            poly = Polynomial(ideal.nvars, {by_index[c]: Fraction(v) for c, v in row.items()})
            gens.append(initial_part(poly, lam))
    return HomogeneousIdeal(ideal.nvars, gens)


def join_ideal(ideal_y: HomogeneousIdeal, split: Splitting) -> HomogeneousIdeal:
    """Ideal of the join of Y in P(W) with the linear space P(U):
    the generators of Y, reinterpreted in the full ring."""
    if ideal_y.nvars != len(split.w_vars):
        raise ValueError("ideal of Y must live in the W-variables")
    mapping = {i: v for i, v in enumerate(split.w_vars)}
    gens = [g.map_variables(mapping, split.nvars) for g in ideal_y.generators]
    return HomogeneousIdeal(split.nvars, gens)


def projection_dominant(ideal: HomogeneousIdeal, split: Splitting) -> bool:
    """True iff the projection away from P(W) onto P(U) is dominant,
    i.e. the ideal meets the U-subring trivially."""
    if ideal.is_zero:
        return True
    return eliminate(ideal, keep=split.u_vars).is_zero


def linear_section(ideal: HomogeneousIdeal, forms) -> HomogeneousIdeal:
    """Cut by linear forms: the ideal generated by I and the forms."""
    for f in forms:
        if f.is_zero or f.degree() != 1:
            raise ValueError("section forms must be nonzero linear forms")
    return HomogeneousIdeal(ideal.nvars, list(ideal.generators) + list(forms))


def coordinate_section(
    ideal: HomogeneousIdeal, cut_vars
) -> tuple[HomogeneousIdeal, HomogeneousIdeal]:
    """Cut by coordinate hyperplanes x_i = 0 for i in cut_vars.

    Returns (full, image): the section ideal in the full ring, and its
    image in the subring of the remaining variables. For coordinate
    forms the image is exact, obtained by substituting the cut
    variables by zero in each generator.
    """
    cut = sorted(set(cut_vars))
    forms = [Polynomial.variable(ideal.nvars, i) for i in cut]
    substituted = [g.substitute_zero(cut) for g in ideal.generators]
    full = HomogeneousIdeal(ideal.nvars, substituted + forms)
    keep = [i for i in range(ideal.nvars) if i not in cut]
    image = restrict_to_variables(HomogeneousIdeal(ideal.nvars, substituted), keep)
    return full, image


@dataclass(frozen=True)
class JoinCheckReport:
    ok: bool
    dominant: bool
    limit: HomogeneousIdeal | None
    join: HomogeneousIdeal | None
    reason: str


def verify_limit_is_join(
    ideal: HomogeneousIdeal, split: Splitting, a: int, b: int
) -> JoinCheckReport:
    """Check that the two-weight flat limit equals the join of the
    W-section with P(U).

    a and b are the weights on vectors of U and W; a < b makes the limit
    collapse onto the join, so the degeneration order stores -a and -b.
    """
    if a >= b:
        return JoinCheckReport(False, False, None, None, "requires a < b")
    if not projection_dominant(ideal, split):
        return JoinCheckReport(
            False, False, None, None, "projection onto P(U) is not dominant"
        )
    _, y_ideal = coordinate_section(ideal, split.u_vars)
    join = canonical_generators(join_ideal(y_ideal, split))
    stored = [0] * split.nvars
    for i in split.u_vars:
        stored[i] = -a
    for i in split.w_vars:
        stored[i] = -b
    limit = flat_limit(ideal, OnePS(tuple(stored)))
    ok = ideal_equal(limit, join)
    return JoinCheckReport(ok, True, limit, join, "" if ok else "limit differs from join")


def tangent_space_dim(ideal: HomogeneousIdeal, p: ProjectivePoint) -> int:
    """Dimension of the projective tangent space at a point of the scheme."""
    if len(p.coords) != ideal.nvars:
        raise ValueError("point length mismatch")
    for g in ideal.generators:
        if g.evaluate(p.coords) != 0:
            raise PreconditionError("point does not lie on the subscheme")
    rows = []
    for g in ideal.generators:
        row = {
            j: g.partial(j).evaluate(p.coords) for j in range(ideal.nvars)
        }
        rows.append({j: v for j, v in row.items() if v != 0})
    return (ideal.nvars - 1) - rank_of_rows(rows)


def _jacobian_minors(ideal: HomogeneousIdeal, c: int) -> list[Polynomial]:
    """All c x c minors of the Jacobian matrix of the generators."""
    from itertools import combinations

    gens = ideal.generators
    jac = [[g.partial(j) for j in range(ideal.nvars)] for g in gens]
    minors = []
    for rows in combinations(range(len(gens)), c):
        for cols in combinations(range(ideal.nvars), c):
            minors.append(_poly_det([[jac[r][j] for j in cols] for r in rows]))
    return [m for m in minors if not m.is_zero]


def _poly_det(matrix: list[list[Polynomial]]) -> Polynomial:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    nvars = matrix[0][0].nvars
    total = Polynomial.zero(nvars)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero:
            continue
        sub = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        cofactor = entry * _poly_det(sub)
        total = total + (cofactor if j % 2 == 0 else -cofactor)
    return total


def singular_locus_empty(ideal: HomogeneousIdeal, expected_dim: int) -> bool | None:
    """Jacobian criterion; three-valued.

    True: the ideal of c x c minors plus I cuts out the empty scheme
    (some graded piece of the quotient vanishes). False: its Hilbert
    polynomial is nonzero, so the singular locus is nonempty. None: the
    degree search was inconclusive.
    """
    hd = hilbert_data(ideal)
    if hd.dimension != expected_dim:
        raise PreconditionError(
            f"ideal has dimension {hd.dimension}, expected {expected_dim}"
        )
    c = (ideal.nvars - 1) - expected_dim
    minors = _jacobian_minors(ideal, c)
    j_ideal = HomogeneousIdeal(ideal.nvars, list(ideal.generators) + minors)
    bound = 4 * max(sum(g.degree() for g in ideal.generators), 1)
    for m in range(1, bound + 1):
        if hilbert_function(j_ideal, m) == 0:
            return True
    try:
        jd = hilbert_data(j_ideal)
    except InternalLimitError:
        return None
    return True if jd.dimension < 0 else False


def is_nondegenerate(ideal: HomogeneousIdeal) -> bool:
    """True iff the ideal contains no nonzero linear form."""
    _, ech = degree_echelon(ideal, 1)
    return ech.rank == 0
