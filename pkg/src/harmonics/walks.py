"""Random-walk return probabilities and ball-growth profiles.

For a self-adjoint stochastic x the k-step return probability is tau(x^k);
the decay exponent over a log-log window separates the growth regimes that
matter here: degree-d polynomial growth forces decay ~ k^{-d/2}, so degree
at least 5 makes sum_k k tau(x^k) finite.  Return values are exact
rationals: tau(x^{a+b}) is computed as the inner product of the cached
coefficient vectors of x^a delta_1 and x^b delta_1, so a series to k = K
only needs powers to K/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .groups import GroupElement, OrderedGroup
from .inverses import PowerLadder, log_log_fit
from .ring import RingElement


@dataclass
class ReturnSeries:
    x: RingElement
    values: list[Fraction]  # tau(x^k), k = 0..K
    odd_values_vanish: bool  # recorded parity structure, not assumed
    fitted_exponent: Optional[float] = None
    fit_window: Optional[tuple[int, int]] = None

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    def csv_rows(self) -> list[tuple]:
        return [
            (k, v.numerator, v.denominator, float(v))
            for k, v in enumerate(self.values)
        ]


def _check_walk(x: RingElement) -> None:
    if x != x.adjoint():
        raise ValueError("walk element must be self-adjoint")
    if any(v < 0 for v in x.coeffs.values()):
        raise ValueError("walk element must have nonnegative coefficients")
    if x.norms().l1 != 1:
        raise ValueError("walk element must be stochastic (l1 norm 1)")


def return_probability(
    x: RingElement, k_max: int, cap: int = 10**7
) -> ReturnSeries:
    """Exact tau(x^k) for k = 0..k_max via convolution powers.

    Self-adjointness lets tau(x^{a+b}) be read off as the inner product of
    the power vectors x^a delta_1 and x^b delta_1, so only powers up to
    k_max/2 are materialized.
    """
    _check_walk(x)
    ladder = PowerLadder(x, cap=cap)
    ladder.extend((k_max + 1) // 2)
    values = [ladder.inner((k + 1) // 2, k // 2) for k in range(k_max + 1)]
    assert values[0] == 1
    odd_zero = all(values[k] == 0 for k in range(1, k_max + 1, 2))
    return ReturnSeries(x=x, values=values, odd_values_vanish=odd_zero)


def brute_force_return(x: RingElement, k: int) -> Fraction:
    """k-step path-enumeration oracle for tau(x^k); exponential in k."""
    identity = x.group.identity
    steps = list(x.coeffs.items())
    total = Fraction(0)

    def walk(g: GroupElement, depth: int, weight) -> None:
        nonlocal total
        if depth == k:
            if g == identity:
                total += weight
            return
        for s, w in steps:
            walk(g * s, depth + 1, weight * w)

    walk(identity, 0, Fraction(1))
    return total


def growth_profile(og: OrderedGroup, r_max: int, cap: int = 10**7) -> list[int]:
    """|B_R(S)| for R = 0..r_max, via one incremental breadth-first sweep."""
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    steps = list(og.gens) + [~g for g in og.gens]
    seen = {og.group.identity}
    frontier = [og.group.identity]
    sizes = [1]
    from .groups import BallCapExceeded

    for _ in range(r_max):
        nxt = []
        for g in frontier:
            for s in steps:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        raise BallCapExceeded(f"growth profile exceeded cap {cap}")
        frontier = nxt
        sizes.append(len(seen))
    return sizes


def decay_fit(
    series: ReturnSeries, window: tuple[int, int]
) -> tuple[float, float]:
    """Slope +- stderr of log tau(x^k) vs log k on the window; zeros skipped."""
    k_lo, k_hi = window
    ks = [k for k in range(k_lo, min(k_hi, series.k_max) + 1) if series.values[k] > 0]
    if len(ks) < 3:
        raise ValueError("fewer than 3 usable points in fit window")
    slope, err = log_log_fit(ks, [series.values[k] for k in ks])
    series.fitted_exponent = slope
    series.fit_window = window
    return slope, err


@dataclass
class VaropoulosReport:
    fitted_decay: float
    decay_stderr: float
    window: tuple[int, int]
    verdict: str  # pass | fail | inconclusive
    growth_sizes: Optional[list[int]] = None
    fitted_growth: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "fitted_decay": self.fitted_decay,
            "decay_stderr": self.decay_stderr,
            "window": list(self.window),
            "verdict": self.verdict,
            "fitted_growth": self.fitted_growth,
        }


# Summability of sum_k k tau(x^k) needs decay faster than k^-2; the margins
# keep honest distance from the threshold on fitted finite-k data.
VAROPOULOS_PASS = -2.2
VAROPOULOS_FAIL = -1.8


def varopoulos_check(
    og: OrderedGroup,
    x: RingElement,
    k_max: int,
    window: Optional[tuple[int, int]] = None,
    growth_r_max: Optional[int] = None,
) -> VaropoulosReport:
    """Does k tau(x^k) look summable?  Decay slope against the -2 threshold.

    pass/fail margins are +-0.2 around the threshold; anything inside is
    inconclusive.  Optionally also fits the ball-growth exponent of og for
    context (degree >= 5 growth is what guarantees a passing walk).
    """
    series = return_probability(x, k_max)
    window = window or (max(5, k_max // 4), k_max)
    slope, err = decay_fit(series, window)
    if slope <= VAROPOULOS_PASS:
        verdict = "pass"
    elif slope >= VAROPOULOS_FAIL:
        verdict = "fail"
    else:
        verdict = "inconclusive"
    sizes = fitted_growth = None
    if growth_r_max:
        sizes = growth_profile(og, growth_r_max)
        rs = list(range(max(2, growth_r_max // 2), growth_r_max + 1))
        fitted_growth, _ = log_log_fit(rs, [sizes[r] for r in rs])
    return VaropoulosReport(
        fitted_decay=slope,
        decay_stderr=err,
        window=window,
        verdict=verdict,
        growth_sizes=sizes,
        fitted_growth=fitted_growth,
    )


def uniform_walk(og: OrderedGroup, symmetric: bool = True) -> RingElement:
    """Uniform step distribution on S (symmetric: on S u S^-1)."""
    steps = list(og.gens)
    if symmetric:
        steps = steps + [~g for g in og.gens]
    w = Fraction(1, len(steps))
    coeffs: dict[GroupElement, Fraction] = {}
    for s in steps:
        coeffs[s] = coeffs.get(s, 0) + w
    return RingElement(og.group, coeffs)
