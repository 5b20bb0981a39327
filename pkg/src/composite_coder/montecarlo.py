"""Desk-scale Monte Carlo validation of the analytic scheme evaluations.

Reproducibility design: every random draw comes from a Philox counter-based
generator keyed by (seed, trial index, stream id).  Trials therefore share
no generator state, results are bit-identical regardless of execution order
or thread count, and re-running with the same TrialConfig reproduces the
same numbers exactly.  The environment variable COMPOSITE_CODER_THREADS
caps how many trials run concurrently (default: sequential).

Finite-blocklength caveat: the codebook constructions follow the random
coding recipes (Bernoulli codebooks, superposition by XOR), but typicality
decoding is replaced by within-radius and nearest-codeword rules.  At desk
blocklengths these only support trend and one-sided assertions, which is
all the accompanying tests claim.  Decoding ties, and multiple candidates
inside a decoding ball, are conservatively counted as errors.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import specfn
from .channels import CompositeBsc, RatePair, RayleighSystem

__all__ = [
    "BudgetError",
    "TrialConfig",
    "TrialReport",
    "CODEBOOK_CAP",
    "simulate_uncoded_bsc",
    "simulate_uncoded_gaussian",
    "simulate_random_quantizer",
    "simulate_msvq",
    "simulate_superposition_bc",
]

log = logging.getLogger(__name__)

CODEBOOK_CAP = 2**24

# decoding-ball slack added to the nominal noise levels; keeps the true
# codeword inside its ball often enough at small blocklengths while staying
# below the rate margin that unique-in-ball decoding can absorb
RADIUS_SLACK_BASE = 0.004
RADIUS_SLACK_GOOD = 0.03

_MASK64 = 2**64 - 1


class BudgetError(ValueError):
    """A requested codebook exceeds the desk-scale entry cap."""


@dataclass(frozen=True)
class TrialConfig:
    """Blocklength, trial count and base seed of one experiment."""

    blocklength: int
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if self.blocklength < 1:
            raise ValueError(f"blocklength must be >= 1, got {self.blocklength}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class TrialReport:
    """Empirical mean with a 95% normal-approximation half-width."""

    mean: float
    half_width_95: float
    trials: int
    seed: int


def _generator(seed: int, trial: int, stream: int) -> np.random.Generator:
    """Counter-based generator for one (trial, stream) pair."""
    key = [seed & _MASK64, ((trial << 32) | stream) & _MASK64]
    return np.random.Generator(np.random.Philox(key=key))


def _thread_cap() -> int:
    raw = os.environ.get("COMPOSITE_CODER_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_trials(trials: int, fn: Callable[[int], float]) -> np.ndarray:
    """Evaluate fn(trial_index) for every trial, results keyed by index."""
    out = np.empty(trials, dtype=np.float64)
    workers = _thread_cap()
    if workers == 1 or trials < 4:
        for t in range(trials):
            out[t] = fn(t)
        return out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for t, value in enumerate(pool.map(fn, range(trials))):
            out[t] = value
    return out


def _report(values: np.ndarray, cfg: TrialConfig) -> TrialReport:
    mean = float(values.mean())
    if len(values) > 1:
        half = 1.96 * float(values.std(ddof=1)) / math.sqrt(len(values))
    else:
        half = 0.0
    return TrialReport(mean=mean, half_width_95=half, trials=cfg.trials, seed=cfg.seed)


def simulate_uncoded_bsc(cfg: TrialConfig, alpha: float) -> TrialReport:
    """Hamming distortion of uncoded Bernoulli(1/2) words through a BSC."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"crossover must lie in [0, 1], got {alpha}")
    n = cfg.blocklength

    def one(t: int) -> float:
        rng = _generator(cfg.seed, t + 1, 0)
        source = rng.random(n) < 0.5
        received = source ^ (rng.random(n) < alpha)
        return float(np.count_nonzero(source ^ received)) / n

    return _report(_run_trials(cfg.trials, one), cfg)


def simulate_uncoded_gaussian(cfg: TrialConfig, sys: RayleighSystem, gamma: float) -> TrialReport:
    """MSE of linear transmission plus linear-MMSE estimation at gain gamma.

    X = sqrt(power/sigma2) * V over Y = sqrt(gamma) * X + N with unit noise;
    the analytic target is sigma2 / (1 + power * gamma).
    """
    if gamma < 0.0:
        raise ValueError(f"channel gain must be nonnegative, got {gamma}")
    n = cfg.blocklength
    scale = math.sqrt(sys.power / sys.sigma2)
    snr = sys.power * gamma
    mmse_gain = math.sqrt(gamma) * scale * sys.sigma2 / (1.0 + snr)

    def one(t: int) -> float:
        rng = _generator(cfg.seed, t + 1, 0)
        v = rng.standard_normal(n) * math.sqrt(sys.sigma2)
        y = math.sqrt(gamma) * scale * v + rng.standard_normal(n)
        return float(np.mean((v - mmse_gain * y) ** 2))

    return _report(_run_trials(cfg.trials, one), cfg)


def _codebook_size(rate: float, n: int) -> int:
    if rate < 0.0:
        raise ValueError(f"rate must be nonnegative, got {rate}")
    if rate * n > math.log2(CODEBOOK_CAP):
        raise BudgetError(
            f"codebook of 2^({rate}*{n}) entries exceeds the cap of {CODEBOOK_CAP}"
        )
    return int(math.ceil(2.0 ** (rate * n)))


def _exhaustive_codebook(n: int) -> np.ndarray:
    ints = np.arange(2**n, dtype=np.uint32)
    return ((ints[:, None] >> np.arange(n, dtype=np.uint32)[None, :]) & 1).astype(bool)


def simulate_random_quantizer(cfg: TrialConfig, rate: float) -> TrialReport:
    """Nearest-codeword quantization of Bernoulli(1/2) words.

    The codebook holds ceil(2^(n*rate)) Bernoulli(1/2) words, except that
    rates at or above one bit per symbol enumerate all 2^n words (every word
    is then a codeword, matching the lossless regime exactly).
    """
    n = cfg.blocklength
    size = _codebook_size(rate, n)
    if size >= 2**n:
        codebook = _exhaustive_codebook(n)
    else:
        codebook = _generator(cfg.seed, 0, 0).random((size, n)) < 0.5

    def one(t: int) -> float:
        rng = _generator(cfg.seed, t + 1, 1)
        source = rng.random(n) < 0.5
        distances = np.count_nonzero(codebook ^ source, axis=1)
        return float(distances.min()) / n

    return _report(_run_trials(cfg.trials, one), cfg)


def simulate_msvq(cfg: TrialConfig, r2: float, r1: float) -> tuple[TrialReport, TrialReport]:
    """Two-stage additive-refinement vector quantizer.

    Stage 2 quantizes the source with a Bernoulli(1/2) codebook at rate r2;
    stage 1 quantizes the stage-2 residue with a Bernoulli(lambda) codebook
    at rate r1, where lambda = (D(r2) - D(r1+r2)) / (1 - 2 D(r1+r2)) is the
    refinement density of the ideal two-layer test channel.  Returns
    (base report, refined report) of Hamming distortions.
    """
    n = cfg.blocklength
    if (r1 + r2) * n > math.log2(CODEBOOK_CAP):
        raise BudgetError(f"combined codebooks 2^(({r1}+{r2})*{n}) exceed {CODEBOOK_CAP}")
    size2 = _codebook_size(r2, n)
    size1 = _codebook_size(r1, n)
    d2_target = specfn.bss_distortion_rate(r2)
    d1_target = specfn.bss_distortion_rate(r1 + r2)
    if 1.0 - 2.0 * d1_target <= 0.0:
        lam = 0.0
    else:
        lam = (d2_target - d1_target) / (1.0 - 2.0 * d1_target)
    base_book = (
        _exhaustive_codebook(n) if size2 >= 2**n else _generator(cfg.seed, 0, 0).random((size2, n)) < 0.5
    )
    refine_book = _generator(cfg.seed, 0, 1).random((size1, n)) < lam

    def one(t: int) -> tuple[float, float]:
        rng = _generator(cfg.seed, t + 1, 2)
        source = rng.random(n) < 0.5
        base_dist = np.count_nonzero(base_book ^ source, axis=1)
        idx = int(base_dist.argmin())
        residue = source ^ base_book[idx]
        refine_dist = np.count_nonzero(refine_book ^ residue, axis=1)
        return float(base_dist[idx]) / n, float(refine_dist.min()) / n

    pairs = [one(t) for t in range(cfg.trials)]
    base = np.array([p[0] for p in pairs])
    refined = np.array([p[1] for p in pairs])
    return _report(base, cfg), _report(refined, cfg)


def _unique_in_ball(distances: np.ndarray, radius_count: int) -> int:
    """Index of the unique codeword within the ball, or -1 (none/ambiguous)."""
    inside = np.flatnonzero(distances <= radius_count)
    if len(inside) == 1:
        return int(inside[0])
    return -1


def simulate_superposition_bc(
    cfg: TrialConfig,
    ch: CompositeBsc,
    beta: float,
    rates: RatePair,
    slack_base: float = RADIUS_SLACK_BASE,
    slack_good: float = RADIUS_SLACK_GOOD,
) -> tuple[TrialReport, TrialReport]:
    """Block-error rates of the two-layer superposition code, per state.

    Codebooks: base layer U of ceil(2^(m*r2)) Bernoulli(1/2) words, cloud
    layer Q of ceil(2^(m*r1)) Bernoulli(beta) words; the channel input is
    Q[w1] XOR U[w2].  The base-layer codebook is redrawn every trial: at
    desk rates it holds only a handful of words, so a single draw would pin
    the error rate to the luck of one codeword pair instead of the ensemble
    average the error-trend assertions are about.  The cloud codebook is
    drawn once per run; its many codewords self-average.

    Decoding (ties and ambiguities count as errors; a single-codeword layer
    decodes trivially since it carries no information):

    - bad state: w2 is the unique U-index within fractional radius
      (alpha2 conv beta) + slack_base of the output;
    - good state: w2 as above at radius (alpha1 conv beta) + slack_good,
      then the U word is stripped and w1 is the nearest Q-codeword.  Nearest
      rather than within-radius decoding is used for the cloud layer because
      a plain Hamming ball cannot support the cloud rate, even
      asymptotically; minimum distance is the ML rule for the stripped
      channel.

    The fraction of trials where no or multiple candidates fell inside a
    decoding ball is logged at debug level for diagnostics.
    """
    if not 0.0 <= beta <= 0.5:
        raise ValueError(f"beta must lie in [0, 1/2], got {beta}")
    m = cfg.blocklength
    size_u = _codebook_size(rates.r2, m)
    size_q = _codebook_size(rates.r1, m)
    book_q = _generator(cfg.seed, 0, 1).random((size_q, m)) < beta

    radius_bad = int(math.floor((specfn.binary_convolve(ch.alpha2, beta) + slack_base) * m + 1e-9))
    radius_good = int(math.floor((specfn.binary_convolve(ch.alpha1, beta) + slack_good) * m + 1e-9))

    ball_failures = {"bad_u": 0, "good_u": 0, "good_q_tie": 0}

    def one(t: int) -> tuple[float, float]:
        rng = _generator(cfg.seed, t + 1, 2)
        book_u = _generator(cfg.seed, t + 1, 3).random((size_u, m)) < 0.5
        w1 = int(rng.integers(size_q))
        w2 = int(rng.integers(size_u))
        x = book_q[w1] ^ book_u[w2]
        z_good = x ^ (rng.random(m) < ch.alpha1)
        z_bad = x ^ (rng.random(m) < ch.alpha2)

        # bad state: base layer only
        if size_u == 1:
            err_bad = 0.0
        else:
            got = _unique_in_ball(np.count_nonzero(book_u ^ z_bad, axis=1), radius_bad)
            if got < 0:
                ball_failures["bad_u"] += 1
            err_bad = 0.0 if got == w2 else 1.0

        # good state: base layer, then stripped cloud layer
        if size_u == 1:
            w2_hat = 0
        else:
            w2_hat = _unique_in_ball(np.count_nonzero(book_u ^ z_good, axis=1), radius_good)
            if w2_hat < 0:
                ball_failures["good_u"] += 1
        if w2_hat < 0:
            err_good = 1.0
        elif size_q == 1:
            err_good = 0.0 if w2_hat == w2 else 1.0
        else:
            stripped = z_good ^ book_u[w2_hat]
            dist_q = np.count_nonzero(book_q ^ stripped, axis=1)
            nearest = np.flatnonzero(dist_q == dist_q.min())
            if len(nearest) != 1:
                ball_failures["good_q_tie"] += 1
                err_good = 1.0
            else:
                err_good = 0.0 if (int(nearest[0]) == w1 and w2_hat == w2) else 1.0
        return err_good, err_bad

    pairs = [one(t) for t in range(cfg.trials)]
    if any(ball_failures.values()):
        log.debug(
            "superposition decode diagnostics (m=%d, trials=%d): %s",
            m,
            cfg.trials,
            {k: v / cfg.trials for k, v in ball_failures.items()},
        )
    err1 = np.array([p[0] for p in pairs])
    err2 = np.array([p[1] for p in pairs])
    return _report(err1, cfg), _report(err2, cfg)
