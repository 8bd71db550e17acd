"""Hilbert functions and polynomials, weighted slice weights, Chow-weight
extraction and Chow stability of point configurations.

Hilbert data is computed without a priori regularity bounds: the
candidate polynomial is interpolated on a window of consecutive degrees
and then verified exactly on further samples, shifting the window until
verification succeeds or a degree cap is hit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .linalg import Echelon, row_from_fractions
from .groebner import buchberger, degree_echelon
from .poly import (
    HomogeneousIdeal,
    Monomial,
    OnePS,
    Polynomial,
    monomial_divides,
    monomials_of_degree,
    weight_order,
)


class InternalLimitError(RuntimeError):
    """A degreewise search hit its cap without stabilizing."""


class PreconditionError(ValueError):
    """An operation was called outside its stated hypotheses."""


def max_search_degree() -> int:
    """Cap on internal degree searches; override with FLAGSTAB_MAX_DEGREE."""
    return int(os.environ.get("FLAGSTAB_MAX_DEGREE", "60"))


def hilbert_function(ideal: HomogeneousIdeal, m: int) -> int:
    """dim (S/I)_m, computed from the rank of the membership-oracle matrix."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    _, ech = degree_echelon(ideal, m)
    return comb(m + ideal.nvars - 1, ideal.nvars - 1) - ech.rank


def _interpolate(xs: list[int], ys: list[Fraction]) -> tuple[Fraction, ...]:
    """Newton interpolation; returns coefficients, ascending powers."""
    n = len(xs)
    table = [Fraction(y) for y in ys]
    coeffs = [table[0]]
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(len(table) - 1)
        ]
        coeffs.append(table[0])
    # expand the Newton form into monomial coefficients
    poly = [Fraction(0)] * n
    acc = [Fraction(1)]  # product (t - x_0)...(t - x_{k-1})
    for k, c in enumerate(coeffs):
        for i, a in enumerate(acc):
            poly[i] += c * a
        if k < n - 1:
            new = [Fraction(0)] * (len(acc) + 1)
            for i, a in enumerate(acc):
                new[i] -= a * xs[k]
                new[i + 1] += a
            acc = new
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def eval_poly(coeffs: tuple[Fraction, ...], t: int) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * t + c
    return total


@dataclass(frozen=True)
class HilbertData:
    hilbert_function: dict[int, int]
    coefficients: tuple[Fraction, ...]  # Hilbert polynomial, ascending powers
    stabilization_degree: int
    dimension: int
    degree: int

    def polynomial_value(self, t: int) -> Fraction:
        return eval_poly(self.coefficients, t)


def _fit_eventual_polynomial(sample, start: int, fit_degree: int, extra: int):
    """Interpolate on fit_degree+1 consecutive points from `start` and verify
    on `extra` more, shifting the window until the tail is polynomial."""
    cap = max_search_degree()
    values: dict[int, Fraction] = {}

    def get(m: int) -> Fraction:
        if m not in values:
            values[m] = Fraction(sample(m))
        return values[m]

    s = start
    while s + fit_degree + extra <= cap:
        xs = list(range(s, s + fit_degree + 1))
        coeffs = _interpolate(xs, [get(x) for x in xs])
        check = range(s + fit_degree + 1, s + fit_degree + 1 + extra)
        if all(eval_poly(coeffs, m) == get(m) for m in check):
            return coeffs, s, values
        s += fit_degree + 1
    raise InternalLimitError(
        f"no polynomial tail found below degree cap {cap} (window start {start})"
    )


def hilbert_data(ideal: HomogeneousIdeal) -> HilbertData:
    """Hilbert function samples, Hilbert polynomial, dimension and degree."""
    n_extra = 2 * (ideal.nvars + 1)
    gen_degs = [g.degree() for g in ideal.generators]
    start = max(sum(gen_degs), 2 * max(gen_degs, default=0), 1)
    coeffs, s, values = _fit_eventual_polynomial(
        lambda m: hilbert_function(ideal, m), start, ideal.nvars - 1, n_extra
    )
    if coeffs == (Fraction(0),):
        dim, deg = -1, 0
    else:
        dim = len(coeffs) - 1
        lead = coeffs[-1] * factorial(dim)
        if lead.denominator != 1 or lead <= 0:
            raise InternalLimitError(f"leading coefficient {coeffs[-1]} is not d/dim!")
        deg = int(lead)
    # walk the stabilization point down as far as the samples allow
    stab = s
    m = s - 1
    while m >= 0:
        hf = values.get(m)
        if hf is None:
            hf = Fraction(hilbert_function(ideal, m))
            values[m] = hf
        if hf != eval_poly(coeffs, m):
            break
        stab = m
        m -= 1
    hf_map = {m: int(v) for m, v in sorted(values.items())}
    return HilbertData(hf_map, coeffs, stab, dim, deg)


# -- weighted slice weights and Chow weights ---------------------------


def standard_monomials(
    ideal: HomogeneousIdeal, lam: OnePS, m: int
) -> list[Monomial]:
    """Degree-m monomials outside the initial ideal for the lam-refined order."""
    gb = buchberger(ideal, weight_order(lam))
    leads = gb.leading_monomials()
    return [
        mono
        for mono in monomials_of_degree(ideal.nvars, m)
        if not any(monomial_divides(l, mono) for l in leads)
    ]


def weighted_slice_weight(
    ideal: HomogeneousIdeal, lam: OnePS, m: int, _leads=None
) -> int:
    """Weight of the degree-m slice of the coordinate ring.

    The basis is the set of standard monomials; coordinate functions
    dual to weight-r basis vectors carry weight -r, whence the sign.
    """
    if len(lam) != ideal.nvars:
        raise ValueError("weight vector length mismatch")
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if _leads is None:
        _leads = buchberger(ideal, weight_order(lam)).leading_monomials()
    total = 0
    for mono in monomials_of_degree(ideal.nvars, m):
        if not any(monomial_divides(l, mono) for l in _leads):
            total += lam.weight(mono)
    return -total


def _weight_block_factors(
    ideal: HomogeneousIdeal, lam: OnePS
) -> list[tuple[int, HomogeneousIdeal]]:
    """Per-weight-space factors of the coordinate ring.

    For each weight c of lam, the other weight spaces' variables are set
    to zero and the ideal is pushed into the subring of the weight-c
    variables; the coordinate ring of a subscheme cut out by equations
    living within single weight spaces is the (degreewise) tensor
    product of these factors.
    """
    from .groebner import restrict_to_variables

    factors = []
    for c in sorted(set(lam.weights), reverse=True):
        block = [i for i, w in enumerate(lam.weights) if w == c]
        others = [i for i in range(ideal.nvars) if i not in block]
        gens = [g.substitute_zero(others) for g in ideal.generators]
        sub = restrict_to_variables(HomogeneousIdeal(ideal.nvars, gens), block)
        factors.append((c, sub))
    return factors


def block_slice_weight(ideal: HomogeneousIdeal, lam: OnePS, m: int) -> int:
    """Slice weight computed blockwise through the tensor decomposition.

    The degree-m slice splits over weight-space degree distributions
    (i_1, ..., i_s); each nonzero component contributes the sum of its
    factors' weights, a factor of block degree i and weight c
    contributing -i*c*h(i) with h the factor's Hilbert function. For a
    subscheme in a single weight space this is -m*c*h(m); for joins it
    reproduces the closed-form Chow weights.
    """
    return _block_weight_fn(ideal, lam)(m)


def _block_weight_fn(ideal: HomogeneousIdeal, lam: OnePS):
    """Closure computing block_slice_weight with factor-wise caching."""
    factors = _weight_block_factors(ideal, lam)
    cache: dict[tuple[int, int], int] = {}

    def h(t: int, i: int) -> int:
        if (t, i) not in cache:
            cache[(t, i)] = hilbert_function(factors[t][1], i)
        return cache[(t, i)]

    def weight(m: int) -> int:
        total = 0
        dim_check = 0

        def rec(t: int, rem: int, acc_w: int, acc_dim: int) -> None:
            nonlocal total, dim_check
            c = factors[t][0]
            if t == len(factors) - 1:
                ht = h(t, rem)
                if ht:
                    total += acc_w + rem * c * ht
                    dim_check += acc_dim * ht
                return
            for i in range(rem + 1):
                ht = h(t, i)
                if ht:
                    rec(t + 1, rem - i, acc_w + i * c * ht, acc_dim * ht)

        rec(0, m, 0, 1)
        if dim_check != hilbert_function(ideal, m):
            raise PreconditionError(
                "ideal is not cut out within the weight spaces of the 1PS"
            )
        return -total

    return weight


def chow_weight_numeric(ideal: HomogeneousIdeal, lam: OnePS) -> Fraction:
    """Chow weight a_X of a lam-fixed subscheme, from the weighted slices.

    Fits the degree-(n+1) blockwise weight polynomial past stabilization
    and returns -(n+1)! times its leading coefficient.
    """
    from .geometry import flat_limit  # local import, geometry depends on us

    if not lam.sl_normalized:
        raise PreconditionError("weight vector must sum to zero")
    if flat_limit(ideal, lam) != ideal:
        raise PreconditionError("ideal is not fixed by the weight vector")
    hd = hilbert_data(ideal)
    n = hd.dimension
    if n < 0:
        raise PreconditionError("empty subscheme has no Chow weight")
    coeffs, _, _ = _fit_eventual_polynomial(
        _block_weight_fn(ideal, lam),
        hd.stabilization_degree,
        n + 1,
        2 * (ideal.nvars + 1),
    )
    if len(coeffs) - 1 > n + 1:
        raise InternalLimitError("weight series grows faster than degree n+1")
    lead = coeffs[n + 1] if len(coeffs) > n + 1 else Fraction(0)
    return -factorial(n + 1) * lead


def chow_weight_single_space(b: int, d: int, r: int) -> int:
    """Chow weight of an r-dimensional degree-d subvariety lying in the
    weight-b summand of a two-weight splitting: b*d*(r+1)."""
    if b == 0:
        raise PreconditionError("weight b must be nonzero")
    if d <= 0:
        raise PreconditionError("degree must be positive")
    if r < 0:
        raise PreconditionError("dimension must be nonnegative")
    return b * d * (r + 1)


def chow_weight_join(a: int, b: int, d: int, dim_y: int, dim_pu: int) -> int:
    """Closed-form Chow weight of the join of Y (dim_y, degree d, in the
    weight-b summand) with the linear space P(U) (dim_pu, weight a)."""
    if a == 0 or b == 0:
        raise PreconditionError("weights a, b must be nonzero")
    if d <= 0:
        raise PreconditionError("degree must be positive")
    if dim_y < 0 or dim_pu < 0:
        raise PreconditionError("dimensions must be nonnegative")
    if dim_y < dim_pu:
        return a * (dim_pu + 1)
    if dim_y > dim_pu:
        return b * d * (dim_y + 1)
    if a + b * d == 0:
        raise PreconditionError("equal-dimension case requires a + b*d != 0")
    return (a + b * d) * (dim_y + 1)


# -- Chow stability of point configurations ---------------------------


def normalize_point(coords) -> tuple[Fraction, ...]:
    vals = tuple(Fraction(c) for c in coords)
    lead = next((v for v in vals if v != 0), None)
    if lead is None:
        raise ValueError("zero coordinate vector is not a projective point")
    return tuple(v / lead for v in vals)


@dataclass(frozen=True)
class PointConfiguration:
    """Multiset of points of P(W) with exact rational coordinates."""

    dim_w: int
    points: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_coords(cls, coords) -> "PointConfiguration":
        pts = tuple(normalize_point(p) for p in coords)
        if not pts:
            raise ValueError("a point configuration needs at least one point")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise ValueError("points of different coordinate lengths")
        (dim_w,) = dims
        if dim_w < 2:
            raise ValueError("ambient space must have dim W >= 2")
        return cls(dim_w, pts)

    @property
    def length(self) -> int:
        return len(self.points)

    def support(self) -> list[tuple[int, tuple[Fraction, ...]]]:
        """Distinct points with the index of their first occurrence."""
        seen = {}
        for i, p in enumerate(self.points):
            if p not in seen:
                seen[p] = i
        return [(i, p) for p, i in seen.items()]


def _point_row(p: tuple[Fraction, ...]):
    return row_from_fractions({i: c for i, c in enumerate(p) if c != 0})


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: str  # "stable" | "strictly_semistable" | "unstable"
    witness_indices: tuple[int, ...]
    witness_dim: int  # projective dimension of the witness subspace
    witness_count: int  # points of the configuration in the subspace
    margin: Fraction  # count/d - (dim+1)/dim W for the witness


def chow_points_stability(cfg: PointConfiguration) -> StabilityVerdict:
    """Chow (semi)stability of a zero cycle of points.

    Stability holds iff every proper linear subspace Z satisfies
    #(Y cap Z)/d < (dim Z + 1)/dim W; the maximum of the left side at
    fixed dimension is attained on spans of configuration points, so
    spans of support subsets are enumerated. Points are counted with
    multiplicity. Ties in the witness break toward the lexicographically
    smallest index subset.
    """
    d = cfg.length
    support = cfg.support()
    best: tuple[Fraction, tuple[int, ...], int, int] | None = None
    seen_spans: set[frozenset] = set()
    max_size = min(len(support), cfg.dim_w - 1)
    for size in range(1, max_size + 1):
        for subset in combinations(range(len(support)), size):
            ech = Echelon()
            for k in subset:
                ech.insert(_point_row(support[k][1]))
            rank = ech.rank
            if rank > cfg.dim_w - 1:
                continue  # not a proper subspace
            signature = frozenset(
                (c, tuple(sorted(row.items()))) for c, row in ech.pivots.items()
            )
            if signature in seen_spans:
                continue
            seen_spans.add(signature)
            count = sum(1 for p in cfg.points if ech.contains(_point_row(p)))
            margin = Fraction(count, d) - Fraction(rank, cfg.dim_w)
            indices = tuple(support[k][0] for k in subset)
            cand = (margin, indices, rank - 1, count)
            if best is None or margin > best[0]:
                best = cand
    assert best is not None
    margin, indices, dim_z, count = best
    if margin > 0:
        verdict = "unstable"
    elif margin == 0:
        verdict = "strictly_semistable"
    else:
        verdict = "stable"
    return StabilityVerdict(verdict, indices, dim_z, count, margin)
