"""Transmission schemes for a symmetric binary source over a two-state BSC.

Four scheme families are evaluated analytically, each yielding a per-state
distortion pair (d1 good state, d2 bad state), the state-averaged expected
distortion, and the number of bits per source symbol crossing the
transmitter/receiver source-channel interfaces (kt, kr):

- broadcast: superposition channel code plus a two-layer refinable source
  code; the single-rate (Shannon) and outage-only codes are its beta = 0 and
  beta = 1/2 endpoints;
- systematic (per target state): source bits sent uncoded on a secondary
  subchannel as decoder side information, plus a side-information-aware
  source code on the remaining uses;
- quantization residue splitting: broadcast layering with part of the base
  quantization residue sent uncoded on a reserved subchannel (broadcast is
  its rho = 0 special case, reproduced bit-exactly).

Distortion regions are convex hulls of swept parameter families, so the
frontier and region computations include time sharing.  All rates here are
in bits per channel use and all distortions are Hamming fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from . import specfn
from .channels import CompositeBsc, bsc_bc_rate_region

__all__ = [
    "Scheme",
    "SchemeEvaluation",
    "WynerZivCurve",
    "FrontierPoint",
    "Crossover",
    "FrontierResult",
    "wyner_ziv_curve",
    "wyner_ziv_turning_point",
    "wyner_ziv_rate",
    "wyner_ziv_distortion",
    "broadcast_scheme",
    "shannon_scheme",
    "outage_scheme",
    "systematic_scheme_good",
    "systematic_scheme_bad",
    "residue_splitting_scheme",
    "sweep_broadcast",
    "sweep_residue_splitting",
    "distortion_region",
    "best_expected_distortion",
    "expected_distortion_frontier",
    "interface_tradeoff",
]

RHO_MAX = 1.0 - 1e-6


class Scheme(str, Enum):
    BROADCAST = "broadcast"
    SHANNON = "shannon"
    OUTAGE = "outage"
    SYSTEMATIC_GOOD = "systematic_good"
    SYSTEMATIC_BAD = "systematic_bad"
    RESIDUE_SPLITTING = "residue_splitting"


@dataclass(frozen=True)
class SchemeEvaluation:
    """One scheme at one parameter point."""

    scheme: Scheme
    params: dict[str, float] = field(compare=False)
    d1: float = field(compare=True)
    d2: float = field(compare=True)
    expected: float = field(compare=True)
    kt: float = field(compare=True)
    kr: float = field(compare=True)

    def __post_init__(self) -> None:
        # a violated ordering indicates a formula transcription bug upstream
        if not -1e-12 <= self.d1 <= self.d2 <= 0.5 + 1e-12:
            raise AssertionError(
                f"distortions out of order for {self.scheme}: d1={self.d1}, d2={self.d2}"
            )
        if self.kt < 0.0 or self.kr < 0.0:
            raise AssertionError(f"negative interface complexity for {self.scheme}")


@dataclass(frozen=True)
class WynerZivCurve:
    """Side-information rate-distortion curve data for one BSC crossover.

    ``dc`` is the time-sharing turning point: the tangent to
    g(d) = h(alpha conv d) - h(d) at dc passes through (alpha, 0).
    """

    alpha: float
    dc: float

    def __post_init__(self) -> None:
        if not 0.0 < self.dc < self.alpha:
            raise ValueError(f"turning point {self.dc} outside (0, {self.alpha})")


def _g(d: float, alpha: float) -> float:
    if d >= alpha:
        return 0.0
    return specfn.binary_entropy(specfn.binary_convolve(alpha, d)) - specfn.binary_entropy(d)


def _g_prime(d: float, alpha: float) -> float:
    """Analytic derivative of _g on (0, alpha); matches central differences.

    d/dd [h(alpha conv d)] = (1 - 2 alpha) log2((1-a*d)/(a*d)) with
    a*d = alpha conv d, and d/dd [h(d)] = log2((1-d)/d).
    """
    conv = specfn.binary_convolve(alpha, d)
    return (1.0 - 2.0 * alpha) * math.log2((1.0 - conv) / conv) - math.log2((1.0 - d) / d)


@lru_cache(maxsize=None)
def wyner_ziv_turning_point(alpha: float) -> float:
    """The unique dc in (0, alpha) where g(dc)/(dc - alpha) = g'(dc)."""
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"crossover must lie in (0, 1/2), got {alpha}")

    def tangent_gap(d: float) -> float:
        return _g(d, alpha) + _g_prime(d, alpha) * (alpha - d)

    return specfn.find_root(tangent_gap, 1e-9, alpha - 1e-9, tol=1e-12)


def wyner_ziv_curve(alpha: float) -> WynerZivCurve:
    curve = WynerZivCurve(alpha=alpha, dc=wyner_ziv_turning_point(alpha))
    residual = _g(curve.dc, alpha) / (curve.dc - alpha) - _g_prime(curve.dc, alpha)
    if abs(residual) > 1e-8:
        raise ArithmeticError(f"turning-point identity residual {residual} too large")
    return curve


def wyner_ziv_rate(d: float, alpha: float) -> float:
    """Rate (bits/symbol) to hit Hamming distortion d with side information.

    The side information is the source through a BSC(alpha).  Below the
    turning point the rate is g(d); beyond it, the time-sharing chord
    g(dc) * (alpha - d) / (alpha - dc) down to zero rate at d = alpha.
    """
    if not 0.0 <= d <= alpha:
        raise ValueError(f"distortion must lie in [0, alpha={alpha}], got {d}")
    dc = wyner_ziv_turning_point(alpha)
    if d <= dc:
        return _g(d, alpha)
    return _g(dc, alpha) * (alpha - d) / (alpha - dc)


def wyner_ziv_distortion(r: float, alpha: float) -> float:
    """Inverse of wyner_ziv_rate: the distortion reached at rate r."""
    top = _g(0.0, alpha)  # = h(alpha)
    if not 0.0 <= r <= top:
        raise ValueError(f"rate must lie in [0, h(alpha)={top}], got {r}")
    if r == 0.0:
        return alpha
    if r == top:
        return 0.0
    return specfn.find_root(lambda d: wyner_ziv_rate(d, alpha) - r, 0.0, alpha, tol=1e-10)


def _evaluate_layered(ch: CompositeBsc, beta: float, rho: float, scheme: Scheme) -> SchemeEvaluation:
    """Shared evaluation of broadcast (rho = 0) and residue splitting.

    With rho of the source symbols' channel budget reserved for uncoded
    residue transmission, the primary channel has bandwidth ratio (b - rho):
    base layer at rate (b-rho)*r2, refinement at ((b-rho)/(1-rho))*r1 over
    the first (1-rho) fraction of the source.
    """
    rates = bsc_bc_rate_region(ch, beta)
    b = ch.b
    d2 = specfn.bss_distortion_rate((b - rho) * rates.r2)
    if rho < 1.0:
        d1 = specfn.bss_distortion_rate((b - rho) / (1.0 - rho) * rates.r1 + (b - rho) * rates.r2)
    else:
        d1 = 0.0  # weighted out below
    big_d1 = (1.0 - rho) * d1 + rho * min(d2, ch.alpha1)
    big_d2 = (1.0 - rho) * d2 + rho * min(d2, ch.alpha2)
    kt = (b - rho) * (rates.r1 + rates.r2) + rho
    kr = (b - rho) * ((1.0 - ch.p) * rates.r1 + rates.r2)
    # uncoded residue is forwarded in state i only when it beats the base layer
    if d2 > ch.alpha2:
        kr += rho
    elif d2 > ch.alpha1:
        kr += (1.0 - ch.p) * rho
    params = {"beta": beta} if scheme in (Scheme.BROADCAST, Scheme.SHANNON, Scheme.OUTAGE) else {
        "beta": beta,
        "rho": rho,
    }
    return SchemeEvaluation(
        scheme=scheme,
        params=params,
        d1=big_d1,
        d2=big_d2,
        expected=(1.0 - ch.p) * big_d1 + ch.p * big_d2,
        kt=kt,
        kr=kr,
    )


def broadcast_scheme(ch: CompositeBsc, beta: float) -> SchemeEvaluation:
    """Superposition broadcast code with a two-layer refinable source code.

    d1 = D(b*(r1+r2)), d2 = D(b*r2); kt = b*(r1+r2),
    kr = b*((1-p)*r1 + r2).
    """
    return _evaluate_layered(ch, beta, 0.0, Scheme.BROADCAST)


def shannon_scheme(ch: CompositeBsc) -> SchemeEvaluation:
    """Single-rate code serving both states: broadcast at beta = 0."""
    return _evaluate_layered(ch, 0.0, 0.0, Scheme.SHANNON)


def outage_scheme(ch: CompositeBsc) -> SchemeEvaluation:
    """Good-state-only code, bad state written off: broadcast at beta = 1/2."""
    return _evaluate_layered(ch, 0.5, 0.0, Scheme.OUTAGE)


def residue_splitting_scheme(ch: CompositeBsc, beta: float, rho: float) -> SchemeEvaluation:
    """Broadcast layering with a rho fraction of residue sent uncoded.

    rho = 0 reproduces broadcast_scheme(beta) field for field; rho = 1 is the
    all-uncoded limit where only the base quantizer and the uncoded residue
    matter.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    return _evaluate_layered(ch, beta, rho, Scheme.RESIDUE_SPLITTING)


def systematic_scheme_good(ch: CompositeBsc) -> SchemeEvaluation:
    """Systematic code tuned to the good state.

    Source bits go uncoded on n of the m channel uses; the remaining budget
    carries a side-information-aware code sized for side information through
    BSC(alpha1).  In the bad state that code is undecodable and the
    reconstruction is the raw secondary output (distortion alpha2).  When the
    coded budget exceeds h(alpha1), the refinement is lossless and d1 clamps
    to zero.
    """
    rate = (ch.b - 1.0) * (1.0 - specfn.binary_entropy(ch.alpha1))
    top = specfn.binary_entropy(ch.alpha1)
    d1 = 0.0 if rate >= top else wyner_ziv_distortion(rate, ch.alpha1)
    d2 = ch.alpha2
    kt = 1.0 + rate
    kr = 1.0 + (1.0 - ch.p) * rate
    return SchemeEvaluation(
        scheme=Scheme.SYSTEMATIC_GOOD,
        params={},
        d1=d1,
        d2=d2,
        expected=(1.0 - ch.p) * d1 + ch.p * d2,
        kt=kt,
        kr=kr,
    )


def systematic_scheme_bad(ch: CompositeBsc) -> SchemeEvaluation:
    """Systematic code tuned to the bad state.

    d2 comes from inverting the side-information curve for alpha2 at the
    coded budget.  In the good state the receiver uses whichever of the
    side-information decoding and the raw secondary output is better,
    honouring the time-sharing split when d2 sits past the turning point:

    - d1 = alpha1            when alpha1 <= min(d2, dc2);
    - d1 = d2                when d2 <= dc2 and d2 < alpha1;
    - d1 = th*dc2 + (1-th)*alpha1  otherwise, with th from
      d2 = th*dc2 + (1-th)*alpha2.

    The coded stream is worth forwarding in the good state only when
    alpha1 > min(d2, dc2), which is what the kr cases encode.
    """
    rate = (ch.b - 1.0) * (1.0 - specfn.binary_entropy(ch.alpha2))
    top = specfn.binary_entropy(ch.alpha2)
    d2 = 0.0 if rate >= top else wyner_ziv_distortion(rate, ch.alpha2)
    dc2 = wyner_ziv_turning_point(ch.alpha2)
    params: dict[str, float] = {}
    if ch.alpha1 <= min(d2, dc2):
        d1 = ch.alpha1
        kr = 1.0 + ch.p * rate
    else:
        kr = 1.0 + rate
        if d2 <= dc2:
            d1 = d2
        else:
            theta = (ch.alpha2 - d2) / (ch.alpha2 - dc2)
            d1 = theta * dc2 + (1.0 - theta) * ch.alpha1
            params["theta"] = theta
    return SchemeEvaluation(
        scheme=Scheme.SYSTEMATIC_BAD,
        params=params,
        d1=d1,
        d2=d2,
        expected=(1.0 - ch.p) * d1 + ch.p * d2,
        kt=1.0 + rate,
        kr=kr,
    )


def sweep_broadcast(ch: CompositeBsc, grid: int) -> list[SchemeEvaluation]:
    """Broadcast evaluations on a uniform beta grid over [0, 1/2]."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    return [broadcast_scheme(ch, 0.5 * i / (grid - 1)) for i in range(grid)]


def sweep_residue_splitting(ch: CompositeBsc, grid: int) -> list[SchemeEvaluation]:
    """Residue-splitting evaluations on a uniform (beta, rho) grid."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    betas = [0.5 * i / (grid - 1) for i in range(grid)]
    rhos = [RHO_MAX * j / (grid - 1) for j in range(grid)]
    return [residue_splitting_scheme(ch, be, ro) for be in betas for ro in rhos]


_SINGLETON_FAMILIES = {
    Scheme.SHANNON: shannon_scheme,
    Scheme.OUTAGE: outage_scheme,
    Scheme.SYSTEMATIC_GOOD: systematic_scheme_good,
    Scheme.SYSTEMATIC_BAD: systematic_scheme_bad,
}


def _family_evaluations(ch: CompositeBsc, family: Scheme, grid: int) -> list[SchemeEvaluation]:
    if family == Scheme.BROADCAST:
        return sweep_broadcast(ch, grid)
    if family == Scheme.RESIDUE_SPLITTING:
        return sweep_residue_splitting(ch, grid)
    return [_SINGLETON_FAMILIES[family](ch)]


def distortion_region(
    ch: CompositeBsc, family: Scheme, grid: int
) -> list[tuple[float, float]]:
    """Achievable (d1, d2) region boundary of a scheme family.

    Parametric families are swept on the given grid and closed under time
    sharing (convex hull); the systematic families are single points.
    """
    evals = _family_evaluations(ch, family, grid)
    if family in _SINGLETON_FAMILIES:
        return [(evals[0].d1, evals[0].d2)]
    return specfn.pareto_lower_hull([(e.d1, e.d2) for e in evals])


def _hull_with_params(
    evals: Sequence[SchemeEvaluation],
) -> list[tuple[float, float, dict[str, float]]]:
    hull = specfn.pareto_lower_hull([(e.d1, e.d2) for e in evals])
    lookup: dict[tuple[float, float], dict[str, float]] = {}
    for e in evals:
        lookup.setdefault((e.d1, e.d2), e.params)
    return [(x, y, lookup[(x, y)]) for x, y in hull]


def best_expected_distortion(
    ch: CompositeBsc, family: Scheme, p: float, grid: int
) -> tuple[float, dict[str, float]]:
    """Minimum expected distortion of a family at bad-state probability p.

    The expectation (1-p)*d1 + p*d2 is linear, so over the time-sharing
    closure it is minimized at a hull vertex; singleton families evaluate
    directly.  Returns (expected distortion, parameters of the minimizer).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"state probability must lie in [0, 1], got {p}")
    if family in _SINGLETON_FAMILIES:
        e = _SINGLETON_FAMILIES[family](ch)
        return (1.0 - p) * e.d1 + p * e.d2, dict(e.params)
    hull = _hull_with_params(_family_evaluations(ch, family, grid))
    best_val, best_params = math.inf, {}
    for d1, d2, params in hull:
        val = (1.0 - p) * d1 + p * d2
        if val < best_val:
            best_val, best_params = val, params
    return best_val, dict(best_params)


@dataclass(frozen=True)
class FrontierPoint:
    p: float
    scheme: Scheme
    expected: float
    params: dict[str, float] = field(compare=False)
    family_expected: dict[Scheme, float] = field(compare=False)


@dataclass(frozen=True)
class Crossover:
    scheme_low: Scheme  # best just below p
    scheme_high: Scheme  # best just above p
    p: float


@dataclass(frozen=True)
class FrontierResult:
    points: list[FrontierPoint]
    crossovers: list[Crossover]


_FRONTIER_FAMILIES = (
    Scheme.RESIDUE_SPLITTING,
    Scheme.SYSTEMATIC_GOOD,
    Scheme.SYSTEMATIC_BAD,
    Scheme.BROADCAST,
)


def expected_distortion_frontier(
    ch: CompositeBsc, p_grid: Iterable[float], grid: int = 129
) -> FrontierResult:
    """Best scheme per bad-state probability, with refined crossover points.

    Parametric families are swept once (their hulls do not depend on p);
    per-p minimization is then a scan over hull vertices.  Wherever the
    winning family changes between consecutive grid probabilities, the
    crossover is refined by bisecting the difference of the two families'
    best expected distortions to 1e-4.
    """
    hulls: dict[Scheme, list[tuple[float, float, dict[str, float]]]] = {
        Scheme.BROADCAST: _hull_with_params(sweep_broadcast(ch, grid)),
        Scheme.RESIDUE_SPLITTING: _hull_with_params(sweep_residue_splitting(ch, grid)),
    }
    singles = {
        fam: _SINGLETON_FAMILIES[fam](ch)
        for fam in (Scheme.SYSTEMATIC_GOOD, Scheme.SYSTEMATIC_BAD)
    }

    def family_best(fam: Scheme, p: float) -> tuple[float, dict[str, float]]:
        if fam in singles:
            e = singles[fam]
            return (1.0 - p) * e.d1 + p * e.d2, dict(e.params)
        best_val, best_params = math.inf, {}
        for d1, d2, params in hulls[fam]:
            val = (1.0 - p) * d1 + p * d2
            if val < best_val:
                best_val, best_params = val, params
        return best_val, dict(best_params)

    points: list[FrontierPoint] = []
    for p in p_grid:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"state probability must lie in [0, 1], got {p}")
        per_family = {fam: family_best(fam, p)[0] for fam in _FRONTIER_FAMILIES}
        winner = min(_FRONTIER_FAMILIES, key=lambda f: per_family[f])
        points.append(
            FrontierPoint(
                p=p,
                scheme=winner,
                expected=per_family[winner],
                params=family_best(winner, p)[1],
                family_expected=per_family,
            )
        )

    crossovers: list[Crossover] = []
    for left, right in zip(points, points[1:]):
        if left.scheme == right.scheme:
            continue
        fam_a, fam_b = left.scheme, right.scheme

        def gap(p: float) -> float:
            return family_best(fam_a, p)[0] - family_best(fam_b, p)[0]

        lo, hi = left.p, right.p
        if gap(lo) < 0.0 <= gap(hi):
            crossovers.append(
                Crossover(fam_a, fam_b, specfn.find_root(gap, lo, hi, tol=1e-4))
            )
        else:
            # winner changed without a clean pairwise sign change (three-way
            # tie region); report the midpoint unrefined
            crossovers.append(Crossover(fam_a, fam_b, 0.5 * (lo + hi)))
    return FrontierResult(points=points, crossovers=crossovers)


def _staircase(series: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Lower staircase: minimum De at or below each swept complexity."""
    out: list[tuple[float, float]] = []
    running = math.inf
    for k, de in sorted(series):
        running = min(running, de)
        if out and out[-1][0] == k:
            out[-1] = (k, running)
        else:
            out.append((k, running))
    return out


def interface_tradeoff(
    ch: CompositeBsc, p: float, grid: int
) -> dict[Scheme, dict[str, list[tuple[float, float]]]]:
    """Distortion vs interface-complexity staircases for every family.

    For each family the parameter sweep yields (kt, expected) and
    (kr, expected) series at the given bad-state probability p; the reported
    series are lower staircases sorted by complexity.
    """
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    ch_at_p = CompositeBsc(alpha1=ch.alpha1, alpha2=ch.alpha2, p=p, b=ch.b)
    result: dict[Scheme, dict[str, list[tuple[float, float]]]] = {}
    for family in (
        Scheme.BROADCAST,
        Scheme.RESIDUE_SPLITTING,
        Scheme.SYSTEMATIC_GOOD,
        Scheme.SYSTEMATIC_BAD,
    ):
        evals = _family_evaluations(ch_at_p, family, grid)
        result[family] = {
            "kt": _staircase([(e.kt, e.expected) for e in evals]),
            "kr": _staircase([(e.kr, e.expected) for e in evals]),
        }
    return result
