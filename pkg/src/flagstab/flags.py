"""Hyperplanar admissible flags, their validation, flag limits under the
staged degenerations, stage weights, and the per-stage stability checks.

A flag is stored by its top ideal together with the standard coordinate
flag: the last n variables of the ring are the flag coordinates
v_1, ..., v_n, and the i-th stratum is cut out by v_{i+1} = ... = v_n = 0.
Lower strata are always derived from the top ideal, never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import is_nondegenerate, singular_locus_empty
from .groebner import canonical_generators, ideal_equal, restrict_to_variables
from .hilbert import (
    PointConfiguration,
    chow_points_stability,
    chow_weight_numeric,
    hilbert_data,
)
from .parabolic import GradedOnePS, configuration_unipotent_stabilizer_dim, stage_data
from .poly import HomogeneousIdeal, OnePS, Polynomial


class FlagLimitMismatch(RuntimeError):
    """The join construction and the flat-limit computation disagreed."""


@dataclass(frozen=True)
class HyperplanarFlag:
    """Chain X^0 subset ... subset X^n cut from X^n by coordinate
    hyperplanes; the last n variables are the flag coordinates."""

    n: int
    dim_v: int
    top_ideal: HomogeneousIdeal
    points0: PointConfiguration | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("flag length must be at least 1")
        if self.n + 1 >= self.dim_v:
            raise ValueError("requires n + 1 < dim V")
        if self.top_ideal.nvars != self.dim_v:
            raise ValueError("top ideal must live in dim V variables")
        if self.points0 is not None and self.points0.dim_w != self.dim_v - self.n:
            raise ValueError("points of X^0 must have dim W coordinates")

    @property
    def dim_w(self) -> int:
        return self.dim_v - self.n

    def cut_vars(self, i: int) -> tuple[int, ...]:
        """Variable indices of v_{i+1}, ..., v_n."""
        return tuple(range(self.dim_w + i, self.dim_v))

    def stratum_ideal(self, i: int) -> HomogeneousIdeal:
        """I(X^i) in the full ring: the top generators with the high flag
        coordinates set to zero, plus those coordinates themselves."""
        if not 0 <= i <= self.n:
            raise ValueError(f"stratum must satisfy 0 <= i <= {self.n}")
        cut = self.cut_vars(i)
        if not cut:
            return self.top_ideal
        gens = [g.substitute_zero(cut) for g in self.top_ideal.generators]
        gens += [Polynomial.variable(self.dim_v, v) for v in cut]
        return HomogeneousIdeal(self.dim_v, gens)

    def stratum_subring_ideal(self, i: int) -> HomogeneousIdeal:
        """I(X^i) as an ideal of the coordinate ring of P(Z^i)."""
        cut = self.cut_vars(i)
        gens = [g.substitute_zero(cut) for g in self.top_ideal.generators]
        keep = [v for v in range(self.dim_v) if v not in cut]
        return restrict_to_variables(HomogeneousIdeal(self.dim_v, gens), keep)

    def configuration(self) -> "FlagConfiguration":
        return FlagConfiguration(
            tuple(
                canonical_generators(self.stratum_ideal(i)) for i in range(self.n + 1)
            )
        )


@dataclass(frozen=True)
class FlagConfiguration:
    """A tuple of n+1 stratum ideals in the full ring; limits of flags
    live here, since they are generally no longer of the derived form."""

    strata: tuple[HomogeneousIdeal, ...]

    def __post_init__(self) -> None:
        if len(self.strata) < 2:
            raise ValueError("a configuration needs at least two strata")
        if len({s.nvars for s in self.strata}) != 1:
            raise ValueError("strata must share one ambient ring")

    @property
    def n(self) -> int:
        return len(self.strata) - 1

    def equals(self, other: "FlagConfiguration") -> bool:
        return self.n == other.n and all(
            ideal_equal(a, b) for a, b in zip(self.strata, other.strata)
        )


@dataclass(frozen=True)
class AdmissibilityResult:
    ok: bool
    reasons: tuple[str, ...]
    excluded: tuple[Fraction, ...]


def degree_admissible(n: int, d: int, dim_v: int) -> AdmissibilityResult:
    """d must exceed dim V - n and avoid the finitely many ratios
    (dim V - n - 1 + i)/(n + 1 - i) for i = 1..n."""
    if n < 1:
        raise ValueError("flag length must be at least 1")
    if dim_v < n + 2:
        raise ValueError("requires dim V >= n + 2")
    excluded = tuple(
        sorted({Fraction(dim_v - n - 1 + i, n + 1 - i) for i in range(1, n + 1)})
    )
    reasons = []
    if d <= dim_v - n:
        reasons.append(f"d = {d} must exceed dim V - n = {dim_v - n}")
    if Fraction(d) in excluded:
        reasons.append(f"d = {d} lies in the excluded set {[str(e) for e in excluded]}")
    return AdmissibilityResult(not reasons, tuple(reasons), excluded)


def standard_grading(flag: HyperplanarFlag) -> GradedOnePS:
    return GradedOnePS.standard((flag.dim_w,) + (1,) * flag.n)


def flag_limit(
    flag: HyperplanarFlag,
    i: int,
    g: GradedOnePS | None = None,
    check: bool = False,
) -> FlagConfiguration:
    """Limit configuration at stage i: strata below i are unchanged,
    stratum j >= i becomes the join of X^{i-1} with the coordinate span
    of v_i, ..., v_j.

    With check=True each stratum is recomputed as a flat limit under the
    stage-i two-weight degeneration; a mismatch is a hard error.
    """
    if not 1 <= i <= flag.n:
        raise ValueError(f"stage must satisfy 1 <= i <= {flag.n}")
    base = flag.stratum_ideal
    strata: list[HomogeneousIdeal] = [
        canonical_generators(base(j)) for j in range(i)
    ]
    section = [g_.substitute_zero(flag.cut_vars(i - 1)) for g_ in flag.top_ideal.generators]
    for j in range(i, flag.n + 1):
        gens = section + [Polynomial.variable(flag.dim_v, v) for v in flag.cut_vars(j)]
        strata.append(canonical_generators(HomogeneousIdeal(flag.dim_v, gens)))
    limit = FlagConfiguration(tuple(strata))
    if check:
        from .geometry import flat_limit as geometric_limit

        if g is None:
            g = standard_grading(flag)
        sd = stage_data(g, i)
        # vector weights b on Z^{i-1} and a on the v's, a < b; the
        # degeneration order stores the negatives
        lam = OnePS(tuple(-w for w in sd.lambda_bracket.weights))
        for j in range(flag.n + 1):
            recomputed = geometric_limit(base(j), lam)
            if not ideal_equal(recomputed, limit.strata[j]):
                raise FlagLimitMismatch(
                    f"stage {i}, stratum {j}: flat limit disagrees with the join"
                )
    return limit


def flag_stage_weight(n: int, d: int, g: GradedOnePS, i: int, a0: int) -> Fraction:
    """Closed-form stage-i weight of any flag with these parameters."""
    if a0 <= 0:
        raise ValueError("a0 must be positive")
    adm = degree_admissible(n, d, g.size)
    if not adm.ok:
        raise ValueError("inadmissible degree: " + "; ".join(adm.reasons))
    sd = stage_data(g, i)
    b_le, b_gt = sd.beta_le, sd.beta_gt

    def caseweight(j: int) -> Fraction:
        if j > 2 * i - 1:
            return b_gt * (j - i + 1)
        if j < 2 * i - 1:
            return b_le * d * i
        return i * (b_gt + d * b_le)

    total = a0 * b_le * d
    total += sum((b_le * d * (j + 1) for j in range(1, i)), Fraction(0))
    total += sum((caseweight(j) for j in range(i, n + 1)), Fraction(0))
    return total


@dataclass(frozen=True)
class FlagValidationReport:
    degree: int
    dimensions_ok: bool
    nondegenerate: bool
    smooth: dict[int, bool | None]  # strata 1..n, three-valued
    points_reduced: bool | None  # None: no point certificate supplied
    point_stability: str | None  # verdict, or None when inconclusive
    connectedness: str  # always "unchecked"
    hilbert_type: tuple[tuple[Fraction, ...], ...]
    ok: bool | None


def validate_flag(flag: HyperplanarFlag) -> FlagValidationReport:
    """Check the defining predicates of an admissible flag stratumwise."""
    data = [hilbert_data(flag.stratum_subring_ideal(i)) for i in range(flag.n + 1)]
    degree = data[-1].degree
    dimensions_ok = all(hd.dimension == i for i, hd in enumerate(data)) and all(
        hd.degree == degree for hd in data
    )
    nondeg = all(
        is_nondegenerate(flag.stratum_subring_ideal(i)) for i in range(flag.n + 1)
    )
    smooth: dict[int, bool | None] = {}
    for i in range(1, flag.n + 1):
        if data[i].dimension != i:
            smooth[i] = False
            continue
        smooth[i] = singular_locus_empty(flag.stratum_subring_ideal(i), i)

    points_reduced: bool | None = None
    point_stability: str | None = None
    if data[0].dimension != 0:
        points_reduced = False
    elif flag.points0 is not None:
        pts = flag.points0
        ideal0 = flag.stratum_subring_ideal(0)
        on_scheme = all(
            g.evaluate(p) == 0 for g in ideal0.generators for p in pts.points
        )
        distinct = len(set(pts.points)) == pts.length
        points_reduced = on_scheme and distinct and pts.length == degree
        if points_reduced:
            point_stability = chow_points_stability(pts).verdict

    hilbert_type = tuple(hd.coefficients for hd in data)
    legs = [dimensions_ok, nondeg, *smooth.values(), points_reduced]
    if point_stability is not None:
        legs.append(point_stability == "stable")
    if any(leg is False for leg in legs):
        ok: bool | None = False
    elif any(leg is None for leg in legs) or point_stability is None:
        ok = None
    else:
        ok = True
    return FlagValidationReport(
        degree,
        dimensions_ok,
        nondeg,
        smooth,
        points_reduced,
        point_stability,
        "unchecked",
        hilbert_type,
        ok,
    )


@dataclass(frozen=True)
class StageCheck:
    stage: int
    weight: Fraction
    expected_weight: Fraction
    weight_matches_family_constant: bool
    lie_stabilizer_dim: int
    point_stability: str | None  # only consulted at stage 1
    sweep_excluded: bool
    passed: bool | None


@dataclass(frozen=True)
class StabilityReport:
    stages: tuple[StageCheck, ...]
    verdict: str  # "stable" | "unstable" | "inconclusive"


def nrgit_stage_check(
    flag: HyperplanarFlag,
    i: int,
    g: GradedOnePS | None = None,
    a0: int | None = None,
    check: bool = False,
) -> StageCheck:
    """The three stage-i conditions: the limit's weight matches the
    family constant; the limit configuration has trivial infinitesimal
    unipotent stabilizer (and, at stage 1, X^0 is a Chow-stable cycle);
    and the flag is not fixed by the stage retraction."""
    if g is None:
        g = standard_grading(flag)
    if g.size != flag.dim_v or g.multiplicities != (flag.dim_w,) + (1,) * flag.n:
        raise ValueError("grading multiplicities must be (dim W, 1, ..., 1)")
    d = hilbert_data(flag.stratum_subring_ideal(0)).degree
    if a0 is None:
        a0 = 10 * flag.n * d
    sd = stage_data(g, i)
    limit = flag_limit(flag, i, g, check=check)
    lam = sd.lambda_bracket
    numeric = a0 * chow_weight_numeric(limit.strata[0], lam)
    for j in range(1, flag.n + 1):
        numeric += chow_weight_numeric(limit.strata[j], lam)
    numeric = Fraction(numeric, sd.scale)
    expected = flag_stage_weight(flag.n, d, g, i, a0)
    weight_ok = numeric == expected

    stab_dim = configuration_unipotent_stabilizer_dim(limit.strata, g, i)

    point_stability: str | None = None
    if i == 1:
        if flag.points0 is not None:
            point_stability = chow_points_stability(flag.points0).verdict

    base = flag.configuration()
    sweep_excluded = not limit.equals(base)

    legs = [weight_ok, stab_dim == 0, sweep_excluded]
    if i == 1:
        legs.append(None if point_stability is None else point_stability == "stable")
    if any(leg is False for leg in legs):
        passed: bool | None = False
    elif any(leg is None for leg in legs):
        passed = None
    else:
        passed = True
    return StageCheck(
        i, numeric, expected, weight_ok, stab_dim, point_stability, sweep_excluded, passed
    )


def check_flag_stability(
    flag: HyperplanarFlag,
    g: GradedOnePS | None = None,
    a0: int | None = None,
    check: bool = False,
) -> StabilityReport:
    """Run every stage check; the verdict is their conjunction."""
    stages = tuple(
        nrgit_stage_check(flag, i, g, a0, check=check) for i in range(1, flag.n + 1)
    )
    if any(s.passed is False for s in stages):
        verdict = "unstable"
    elif any(s.passed is None for s in stages):
        verdict = "inconclusive"
    else:
        verdict = "stable"
    return StabilityReport(stages, verdict)
