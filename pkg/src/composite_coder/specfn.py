"""Scalar special functions and numerical primitives.

Everything here is pure and reentrant: no module state is mutated after
import, so all functions are safe to call concurrently.

Conventions that the rest of the package relies on:

- ``binary_entropy`` and its inverse work in bits (base-2 logs); the
  binary-channel code paths stay in bits throughout.
- ``exp_integral`` is the decaying exponential integral
  ``int_x^inf exp(-t)/t dt`` (the function usually written E1).  Some texts
  call this Ei with the opposite sign convention; we implement the integral
  literally to avoid that confusion.
- Inverses are computed by bisection rather than Newton: every function we
  invert is monotone on its bracket and robustness beats speed here.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

__all__ = [
    "BracketError",
    "ConvergenceError",
    "binary_entropy",
    "inverse_binary_entropy",
    "bss_distortion_rate",
    "binary_convolve",
    "exp_integral",
    "lambert_w",
    "find_root",
    "minimize_scalar",
    "integrate",
    "pareto_lower_hull",
    "hull_dominates",
]

EULER_GAMMA = 0.57721566490153286060651209008240243

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


class BracketError(ValueError):
    """Root bracket endpoints do not straddle a sign change."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its refinement budget."""


def binary_entropy(p: float) -> float:
    """Entropy of a Bernoulli(p) bit, in bits; continuous at 0 and 1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


def inverse_binary_entropy(r: float) -> float:
    """The unique p in [0, 1/2] with binary_entropy(p) = r.

    Bisection on the increasing branch, absolute tolerance 1e-12.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"entropy value must lie in [0, 1], got {r}")
    if r == 0.0:
        return 0.0
    if r == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < r:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bss_distortion_rate(r: float) -> float:
    """Distortion-rate function of a symmetric binary source under Hamming loss.

    Inverse of R(D) = 1 - h(D); rates at or above one bit are lossless.
    """
    if r < 0.0:
        raise ValueError(f"rate must be nonnegative, got {r}")
    if r >= 1.0:
        return 0.0
    return inverse_binary_entropy(1.0 - r)


def binary_convolve(a: float, b: float) -> float:
    """Crossover of two cascaded binary symmetric channels: a(1-b) + b(1-a)."""
    if not 0.0 <= a <= 1.0 or not 0.0 <= b <= 1.0:
        raise ValueError(f"probabilities must lie in [0, 1], got ({a}, {b})")
    return a * (1.0 - b) + b * (1.0 - a)


def exp_integral(x: float) -> float:
    """Decaying exponential integral int_x^inf exp(-t)/t dt for x > 0.

    Alternating series below 1, modified-Lentz continued fraction above;
    both converge to near machine precision in double arithmetic.
    """
    if x <= 0.0:
        raise ValueError(f"argument must be positive, got {x}")
    if x <= 1.0:
        total = 0.0
        term = 1.0
        for k in range(1, 80):
            term *= x / k
            contrib = term / k
            total += contrib if k % 2 == 1 else -contrib
            if contrib < 1e-18 * max(1.0, abs(total)):
                break
        return -EULER_GAMMA - math.log(x) + total
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    f = d
    for i in range(1, 300):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        if c == 0.0:
            c = tiny
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return f * math.exp(-x)
    raise ConvergenceError(f"continued fraction for exp_integral({x}) did not settle")


def lambert_w(z: float) -> float:
    """Principal branch of w*exp(w) = z for z >= 0, by Halley's iteration."""
    if z < 0.0:
        raise ValueError(f"argument must be nonnegative, got {z}")
    if z == 0.0:
        return 0.0
    if z < math.e:
        w = z / (1.0 + z)
    else:
        logz = math.log(z)
        w = logz - math.log(logz)
    for _ in range(200):
        ew = math.exp(w)
        resid = w * ew - z
        denom = ew * (w + 1.0) - (w + 2.0) * resid / (2.0 * w + 2.0)
        step = resid / denom
        w -= step
        if abs(step) <= 1e-16 * max(1.0, abs(w)):
            break
    return w


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Bisection root of a continuous f on [lo, hi] with f(lo)*f(hi) <= 0."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise BracketError(f"f({lo})={flo} and f({hi})={fhi} have the same sign")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def minimize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    grid: int = 1024,
) -> tuple[float, float]:
    """Minimize f on [lo, hi]: coarse grid scan, then golden-section refinement.

    The scan uses at least 1024 points so narrow basins are not missed; the
    returned pair is (argmin, min) for the best point encountered.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    n = max(int(grid), 1024)
    step = (hi - lo) / n
    best_i, best_x, best_f = 0, lo, f(lo)
    for i in range(1, n + 1):
        x = lo + i * step
        fx = f(x)
        if fx < best_f:
            best_i, best_x, best_f = i, x, fx
    a = lo + max(best_i - 1, 0) * step
    b = lo + min(best_i + 1, n) * step
    # golden-section inside the bracketing cell pair
    h = b - a
    if h > tol:
        c = a + _INV_PHI2 * h
        d = a + _INV_PHI * h
        fc, fd = f(c), f(d)
        while h > tol:
            if fc < fd:
                b, d, fd = d, c, fc
                h = b - a
                c = a + _INV_PHI2 * h
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                h = b - a
                d = a + _INV_PHI * h
                fd = f(d)
        for x, fx in ((c, fc), (d, fd)):
            if fx < best_f:
                best_x, best_f = x, fx
    return best_x, best_f


def _adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    fa: float,
    b: float,
    fb: float,
    fm: float,
    whole: float,
    tol: float,
    depth: int,
) -> float:
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise ConvergenceError("adaptive Simpson refinement budget exhausted")
    half = 0.5 * tol
    return _adaptive_simpson(f, a, fa, m, fm, flm, left, half, depth - 1) + _adaptive_simpson(
        f, m, fm, b, fb, frm, right, half, depth - 1
    )


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 60,
) -> float:
    """Adaptive-Simpson integral of f over [a, b]; b may be +infinity.

    A semi-infinite range is mapped onto [0, 1) by t = a + u/(1-u); the
    integrand must decay fast enough for the transformed endpoint value to
    vanish, which holds for the exponential tails used in this package.
    Raises ConvergenceError when the recursion budget runs out.
    """
    if math.isinf(b):
        if b < 0:
            raise ValueError("lower-unbounded ranges are not supported")

        def transformed(u: float) -> float:
            if u >= 1.0:
                return 0.0
            s = 1.0 - u
            return f(a + u / s) / (s * s)

        return integrate(transformed, 0.0, 1.0, tol=tol, max_depth=max_depth)
    if a == b:
        return 0.0
    if a > b:
        return -integrate(f, b, a, tol=tol, max_depth=max_depth)
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, max_depth)


def pareto_lower_hull(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Lower-left convex hull of a set of (x, y) points to be jointly minimized.

    Dominated points are discarded first (ties broken toward smaller y), then
    a monotone chain keeps the convex minorant.  The result is sorted by
    increasing x, and every input point is dominated by, or sits on, the
    returned polyline (the time-sharing closure of the input set).
    """
    if not points:
        raise ValueError("need at least one point")
    ordered = sorted((float(x), float(y)) for x, y in points)
    frontier: list[tuple[float, float]] = []
    best_y = math.inf
    for x, y in ordered:
        if y < best_y:
            frontier.append((x, y))
            best_y = y
    hull: list[tuple[float, float]] = []
    for p in frontier:
        while len(hull) >= 2:
            o, q = hull[-2], hull[-1]
            cross = (q[0] - o[0]) * (p[1] - o[1]) - (q[1] - o[1]) * (p[0] - o[0])
            if cross <= 0.0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def hull_dominates(
    hull: Sequence[tuple[float, float]], point: tuple[float, float], slack: float = 0.0
) -> bool:
    """True when some point on the hull polyline weakly dominates ``point``.

    ``slack`` loosens the comparison componentwise; a negative slack demands
    strict domination by at least that margin.
    """
    px, py = point
    reach = px + slack
    if reach < hull[0][0]:
        return False
    if reach >= hull[-1][0]:
        # hull y-values decrease with x, so the last vertex is the least y
        return hull[-1][1] <= py + slack
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        if x0 <= reach < x1:
            t = (reach - x0) / (x1 - x0)
            return y0 + t * (y1 - y0) <= py + slack
    return hull[-1][1] <= py + slack
