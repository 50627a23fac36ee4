"""Finitely supported base distributions on Z and their Fourier transforms.

The recipes are parity-dependent:

    m odd  (m = 2k+1):  uniform on {-k, ..., k},
    m even:             the triangular weights (m-|j|)/m^2 on |j| <= m-1
                        (the autocorrelation of a length-m uniform block).

Both have mean zero, finite second moment, and Fourier transform vanishing
on (1/m)Z minus the integers: the odd case is the Dirichlet kernel
sin(m pi t) / (m sin(pi t)), the even case its square.  The composite
recipe convolves the first M of these so the transform vanishes on every
(1/k)Z, k <= M, off the integers.

Zeros and ones of the transform at rational t are certified by exact
integrality tests (is m t an integer?), never by floating comparison; the
numeric transform carries a rounding error bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

UNIFORM_ODD = "uniform_odd"
TRIANGULAR_EVEN = "triangular_even"
COMPOSITE = "composite"
CUSTOM = "custom"


@dataclass
class FourierValue:
    value: complex
    err: float
    certified: Optional[str] = None  # "one" | "zero" | None

    @property
    def abs(self) -> float:
        return abs(self.value)


@dataclass
class BaseDistribution:
    weights: dict[int, Fraction]
    recipe: str
    params: tuple = ()

    def __post_init__(self):
        total = sum(self.weights.values())
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("negative weight")
        self.weights = {j: Fraction(w) for j, w in sorted(self.weights.items()) if w}

    # moments ---------------------------------------------------------------

    def mean(self) -> Fraction:
        return sum((Fraction(j) * w for j, w in self.weights.items()), Fraction(0))

    @property
    def mean_zero(self) -> bool:
        return self.mean() == 0

    def second_moment(self) -> Fraction:
        return sum((Fraction(j * j) * w for j, w in self.weights.items()), Fraction(0))

    def support(self) -> list[int]:
        return sorted(self.weights)

    # transform ---------------------------------------------------------------

    def _vanishing_moduli(self) -> list[int]:
        """Moduli m such that the transform is 0 on (1/m)Z off the integers."""
        if self.recipe in (UNIFORM_ODD, TRIANGULAR_EVEN):
            return [self.params[0]] if self.params[0] > 1 else []
        if self.recipe == COMPOSITE:
            return [k for k in range(2, self.params[0] + 1)]
        return []

    def certify(self, t: Fraction) -> Optional[str]:
        """Exact verdict at rational t: 'one' on Z, 'zero' on certified zeros."""
        t = Fraction(t)
        if t.denominator == 1:
            return "one"
        for m in self._vanishing_moduli():
            if (m * t).denominator == 1:
                return "zero"
        return None

    def fourier(self, t) -> FourierValue:
        """sum_j w_j e^{2 pi i j t}, with certification at exact points."""
        t = Fraction(t)
        cert = self.certify(t)
        if cert == "one":
            return FourierValue(complex(1.0, 0.0), 0.0, "one")
        acc = complex(0.0, 0.0)
        for j, w in self.weights.items():
            phase = (j * t) % 1
            acc += float(w) * cmath.exp(2j * math.pi * float(phase))
        err = 8e-16 * (len(self.weights) + 2)
        if cert == "zero":
            return FourierValue(complex(0.0, 0.0), max(err, abs(acc)), "zero")
        return FourierValue(acc, err, None)

    def fourier_closed_form(self, t) -> Optional[float]:
        """Dirichlet-kernel closed form, where the recipe has one."""
        t = Fraction(t)
        if t.denominator == 1:
            return 1.0
        tf = float(t)

        def kernel(m: int) -> float:
            if (m * t).denominator == 1:
                return 0.0
            return math.sin(m * math.pi * tf) / (m * math.sin(math.pi * tf))

        if self.recipe == UNIFORM_ODD:
            return kernel(self.params[0])
        if self.recipe == TRIANGULAR_EVEN:
            return kernel(self.params[0]) ** 2
        if self.recipe == COMPOSITE:
            out = 1.0
            for k in range(1, self.params[0] + 1):
                out *= kernel(k) if k % 2 else kernel(k) ** 2
            return out
        return None

    # sampling support ----------------------------------------------------------

    def integer_cdf(self) -> tuple[list[int], list[int], int]:
        """(values, cumulative numerators, denominator) for exact sampling.

        A uniform integer u in [0, D) maps to the first value whose
        cumulative numerator exceeds u; the cut points are exact.
        """
        den = 1
        for w in self.weights.values():
            den = den * w.denominator // math.gcd(den, w.denominator)
        values, cums = [], []
        acc = 0
        for j, w in self.weights.items():
            acc += int(w * den)
            values.append(j)
            cums.append(acc)
        assert acc == den
        return values, cums, den

    def as_dict(self) -> dict:
        return {
            "recipe": self.recipe,
            "params": list(self.params),
            "weights": {str(j): [w.numerator, w.denominator] for j, w in self.weights.items()},
            "mean": str(self.mean()),
            "second_moment": str(self.second_moment()),
        }


def build_nu(m: int) -> BaseDistribution:
    """Mean-zero distribution whose transform vanishes on (1/m)Z off Z."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m % 2:
        k = (m - 1) // 2
        w = Fraction(1, m)
        return BaseDistribution(
            {j: w for j in range(-k, k + 1)}, UNIFORM_ODD, (m,)
        )
    weights = {j: Fraction(m - abs(j), m * m) for j in range(-(m - 1), m)}
    return BaseDistribution(weights, TRIANGULAR_EVEN, (m,))


def convolve_weights(a: dict, b: dict) -> dict:
    out: dict[int, Fraction] = {}
    for i, u in a.items():
        for j, v in b.items():
            out[i + j] = out.get(i + j, Fraction(0)) + u * v
    return out


def build_nu_composite(m_max: int) -> BaseDistribution:
    """Convolution of the per-k recipes for k = 1..m_max.

    The transform vanishes at every non-integer rational with denominator
    at most m_max, which is what the bounded-denominator factor theorem
    needs.
    """
    if m_max < 1:
        raise ValueError("M must be >= 1")
    acc = {0: Fraction(1)}
    for k in range(1, m_max + 1):
        acc = convolve_weights(acc, build_nu(k).weights)
    return BaseDistribution(acc, COMPOSITE, (m_max,))


def custom_distribution(weights: dict[int, Fraction]) -> BaseDistribution:
    return BaseDistribution(dict(weights), CUSTOM, ())
