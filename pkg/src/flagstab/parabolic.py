"""Block bookkeeping for graded one-parameter subgroups of SL(V):
the parabolic P and its subgroups as block patterns, the staged
two-weight 1PS data, and infinitesimal unipotent stabilizers of ideals.

Weights of a `GradedOnePS` are weights on basis *vectors*; block 1
carries the largest weight. Staged weight averages are exact rationals,
cleared to integers (with the scaling factor recorded) whenever an
integer weight vector is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .linalg import determinant, rank_of_rows
from .groebner import degree_echelon, poly_to_row
from .poly import HomogeneousIdeal, OnePS, Polynomial


@dataclass(frozen=True)
class GradedOnePS:
    """Distinct integer weights with multiplicities, summing to zero."""

    weights: tuple[int, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.multiplicities):
            raise ValueError("weights and multiplicities differ in length")
        if len(self.weights) < 2:
            raise ValueError("need at least two distinct weights")
        if any(self.weights[i] <= self.weights[i + 1] for i in range(len(self.weights) - 1)):
            raise ValueError("weights must be strictly decreasing")
        if any(m <= 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if sum(w * m for w, m in zip(self.weights, self.multiplicities)) != 0:
            raise ValueError("weighted sum of the grading must vanish")

    @property
    def ell(self) -> int:
        return len(self.weights)

    @property
    def size(self) -> int:
        return sum(self.multiplicities)

    def block_starts(self) -> list[int]:
        starts, acc = [], 0
        for m in self.multiplicities:
            starts.append(acc)
            acc += m
        return starts

    def block_of(self, index: int) -> int:
        acc = 0
        for b, m in enumerate(self.multiplicities):
            acc += m
            if index < acc:
                return b
        raise IndexError(index)

    def expand(self) -> tuple[int, ...]:
        """Full vector-weight list, one entry per basis vector."""
        out: list[int] = []
        for w, m in zip(self.weights, self.multiplicities):
            out.extend([w] * m)
        return tuple(out)

    @classmethod
    def standard(cls, multiplicities) -> "GradedOnePS":
        """Default grading for given multiplicities: tail weights
        -2*m1, -3*m1, ... with the head weight balancing the sum."""
        mults = tuple(int(m) for m in multiplicities)
        m1 = mults[0]
        tail = [-j * m1 for j in range(2, len(mults) + 1)]
        head = -sum(t * m for t, m in zip(tail, mults[1:])) // m1
        weights = [head] + tail
        g = 0
        for w in weights:
            g = gcd(g, w)
        weights = [w // g for w in weights]
        return cls(tuple(weights), mults)


@dataclass(frozen=True)
class StageData:
    """Averaged two-weight data for one stage of quotienting-in-stages."""

    stage: int
    beta_le: Fraction
    beta_gt: Fraction
    m_le: int
    m_gt: int
    scale: int  # denominator clearing factor applied to the 1PS below
    lambda_bracket: OnePS  # two distinct integer weights (scaled vector weights)
    lambda_paren: OnePS  # stage+1 distinct integer weights


def stage_data(g: GradedOnePS, i: int) -> StageData:
    """Averages below/above stage i and the derived staged 1PS."""
    if not 1 <= i < g.ell:
        raise ValueError(f"stage must satisfy 1 <= i < {g.ell}")
    m_le = sum(g.multiplicities[:i])
    m_gt = sum(g.multiplicities[i:])
    beta_le = Fraction(
        sum(w * m for w, m in zip(g.weights[:i], g.multiplicities[:i])), m_le
    )
    beta_gt = Fraction(
        sum(w * m for w, m in zip(g.weights[i:], g.multiplicities[i:])), m_gt
    )
    scale = lcm(beta_le.denominator, beta_gt.denominator)
    bracket = [int(beta_le * scale)] * m_le + [int(beta_gt * scale)] * m_gt
    paren: list[int] = []
    for w, m in zip(g.weights[:i], g.multiplicities[:i]):
        paren.extend([w * scale] * m)
    paren.extend([int(beta_gt * scale)] * m_gt)
    return StageData(
        i, beta_le, beta_gt, m_le, m_gt, scale, OnePS(tuple(bracket)), OnePS(tuple(paren))
    )


@dataclass(frozen=True)
class BlockProfile:
    """Membership of a matrix in the block-pattern subgroups of SL(V)."""

    in_p: bool
    in_l: bool
    in_t: bool
    in_r: bool
    in_u: bool
    in_u_bracket: dict[int, bool]
    in_u_paren: dict[int, bool]


def block_profile(matrix, g: GradedOnePS) -> BlockProfile:
    """Classify a square rational matrix against the parabolic block patterns."""
    n = g.size
    m = [[Fraction(v) for v in row] for row in matrix]
    if len(m) != n or any(len(row) != n for row in m):
        raise ValueError(f"matrix must be {n} x {n}")
    blk = [g.block_of(k) for k in range(n)]
    det1 = determinant(m) == 1

    def zero_block(pred) -> bool:
        return all(
            m[r][c] == 0 for r in range(n) for c in range(n) if pred(blk[r], blk[c])
        )

    def diag_identity() -> bool:
        return all(
            m[r][c] == (1 if r == c else 0)
            for r in range(n)
            for c in range(n)
            if blk[r] == blk[c]
        )

    block_upper = zero_block(lambda p, q: p > q)
    block_diag = zero_block(lambda p, q: p != q)
    in_p = block_upper and det1
    in_l = block_diag and det1
    in_u = block_upper and diag_identity()

    in_t = in_l
    if in_t:
        starts = g.block_starts()
        for b, (s, mult) in enumerate(zip(starts, g.multiplicities)):
            t = m[s][s]
            if any(
                m[s + r][s + c] != (t if r == c else 0)
                for r in range(mult)
                for c in range(mult)
            ):
                in_t = False
                break

    in_r = block_diag
    if in_r:
        starts = g.block_starts()
        for s, mult in zip(starts, g.multiplicities):
            sub = [[m[s + r][s + c] for c in range(mult)] for r in range(mult)]
            if determinant(sub) != 1:
                in_r = False
                break

    in_u_bracket = {}
    in_u_paren = {}
    for i in range(1, g.ell):
        in_u_bracket[i] = in_u and zero_block(
            lambda p, q, i=i: p < q and not (p < i <= q)
        )
        in_u_paren[i] = in_u and zero_block(lambda p, q, i=i: p < q and p >= i)
    return BlockProfile(in_p, in_l, in_t, in_r, in_u, in_u_bracket, in_u_paren)


def _bracket_entries(g: GradedOnePS, j: int) -> list[tuple[int, int]]:
    """Matrix entry positions spanning Lie U^[j]: rows in blocks <= j,
    columns in blocks > j (1-based block stage j)."""
    n = g.size
    blk = [g.block_of(k) for k in range(n)]
    return [
        (r, c)
        for r in range(n)
        for c in range(n)
        if blk[r] < j <= blk[c]
    ]


def configuration_unipotent_stabilizer_dim(ideals, g: GradedOnePS, j: int) -> int:
    """Dimension of the common Lie-algebra stabilizer in Lie U^[j] of a
    tuple of homogeneous ideals.

    An element nu of the Lie algebra moves the basis vector v_c by
    sum_r nu_rc v_r; on coordinate functions this is the derivation
    sending x_r to -sum_c nu_rc x_c. The stabilizer condition is that
    the derivation maps every generator into the ideal, which is exact
    linear algebra degree by degree. In characteristic zero the group
    stabilizer is trivial iff this dimension is zero.
    """
    if not 1 <= j < g.ell:
        raise ValueError(f"stage must satisfy 1 <= j < {g.ell}")
    entries = _bracket_entries(g, j)
    entry_index = {e: k for k, e in enumerate(entries)}
    constraint_rows: list[dict[int, Fraction]] = []
    for ideal in ideals:
        if ideal.nvars != g.size:
            raise ValueError("ideal ring size must match the grading")
        cache: dict[int, tuple] = {}
        for f in ideal.generators:
            d = f.degree()
            if d not in cache:
                cache[d] = degree_echelon(ideal, d)
            columns, ech = cache[d]
            residuals = {}
            for (r, c) in entries:
                moved = Polynomial.variable(g.size, c) * f.partial(r)
                if moved.is_zero:
                    continue
                res = ech.reduce_exact(poly_to_row(moved, columns))
                if res:
                    residuals[(r, c)] = res
            # one linear constraint on nu per monomial left unexplained
            monos = sorted({m for res in residuals.values() for m in res})
            for mono in monos:
                row = {
                    entry_index[e]: res[mono]
                    for e, res in residuals.items()
                    if mono in res
                }
                if row:
                    constraint_rows.append(row)
    return len(entries) - rank_of_rows(constraint_rows)


def lie_unipotent_stabilizer_dim(
    ideal: HomogeneousIdeal, g: GradedOnePS, j: int
) -> int:
    """Lie-algebra stabilizer dimension in Lie U^[j] of a single ideal."""
    return configuration_unipotent_stabilizer_dim([ideal], g, j)
