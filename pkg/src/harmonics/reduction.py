"""Coefficient reduction alpha = beta + c f and denominator witnesses.

Given semi-lopsided f = m(1 - x) with a formal inverse xi = (1/m) sum x^n,
the reduction rounds the values v = alpha xi to nearest integers c (with the
half-open convention v - c in [-1/2, 1/2)) and sets beta = alpha - c f.  The
resulting integer coefficients obey

  * strict case  (sum of off-identity coefficients < m):  |beta| <= m - 1,
  * boundary case (all off-identity coefficients positive, summing to m):
    beta in {-m, ..., m-1}, and beta(g) = -m forces beta(g s^-1) < 0 for
    every s in the support.

Two evaluation routes produce the values v:

  * graded: when the group carries an integer homomorphism sigma with
    sigma(s) >= 1 on the support, x^n lives on sigma-level n, so each value
    (alpha xi)(g) is a finite sum computed exactly by dynamic programming up
    the levels.  The walk over levels stops once a full window of levels has
    all |v| < 1/2: the recursion v(g) = (alpha(g) + sum_s w_s v(g s^-1))/m
    is then a contraction on sup-norms, so every unseen value stays below
    the rounding threshold and c is complete.  No tail error at all.
  * truncated: for lopsided f the finite sum v_N = alpha xi_N carries the
    certified sup bound ||alpha||_1 q^{N+1} / (m(1-q)), q = tail/m < 1; N
    doubles adaptively until every value clears the rounding boundary by
    more than the bound, else AdaptiveDepthExceeded (never a silent guess).

Minimality of an element g0 in supp(beta) kills every term (beta x^n)(g0),
so (alpha xi)(g0) = beta(g0)/m + integer: a witness that alpha is not in
the left ideal Z(G) f, carrying the exact non-integer value beta(g0)/m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .groups import Cmp, GroupElement, OrderedGroup, Sign
from .inverses import InversePartial, geometric_l2_partial, walk_part
from .ring import RingElement, classify

STRICT = "strict"
BOUNDARY = "boundary"


class ReductionError(RuntimeError):
    pass


class AdaptiveDepthExceeded(ReductionError):
    pass


class UnsupportedReduction(ReductionError):
    pass


@dataclass
class SeriesValues:
    """Values of alpha xi on the region where they exceed a stop threshold."""

    values: dict  # GroupElement -> Fraction
    exact: bool
    tail_sup: Fraction  # certified sup bound on the evaluation error
    detail: str
    # trailing-window statistics for tail extrapolation by callers
    window_sups: list = None
    window_counts: list = None


def _grading_ok(f: RingElement) -> bool:
    group = f.group
    one = group.identity
    probe = group.grading(one.payload)
    if probe is None:
        return False
    for g in f.support():
        if g == one:
            continue
        lvl = group.grading(g.payload)
        if lvl is None or lvl < 1:
            return False
    return True


def graded_series_values(
    alpha: RingElement,
    f: RingElement,
    max_levels: int = 500,
    cap: int = 10**6,
    stop_threshold: Fraction = Fraction(1, 2),
) -> SeriesValues:
    """Exact values of alpha xi by dynamic programming up the grading levels.

    Values are exact wherever they are reported; the walk stops once a full
    window of levels has sup below `stop_threshold`, after which the
    recursion bounds every unseen value below the threshold as well.
    """
    group = f.group
    one = group.identity
    m = int(f.trace())
    weights = [(s, Fraction(-v)) for s, v in f.items_sorted() if s != one]
    steps = [(s, ~s, w) for s, w in weights]
    width = max((group.grading(s.payload) for s, _, _ in steps), default=1)

    roots: dict[int, dict] = {}
    for g, v in alpha.coeffs.items():
        roots.setdefault(group.grading(g.payload), {})[g] = Fraction(v)
    if not roots:
        return SeriesValues({}, True, Fraction(0), "alpha = 0", [], [])
    lo = min(roots)
    hi = max(roots)

    values: dict[GroupElement, Fraction] = {}
    pending: dict[int, set] = {lvl: set(d) for lvl, d in roots.items()}
    level = lo
    window: list[Fraction] = []
    counts: list[int] = []
    total_nodes = 0
    while level <= lo + max_levels:
        nodes = pending.pop(level, set())
        sup = Fraction(0)
        n_level = 0
        for g in sorted(nodes, key=lambda e: group.sort_key(e.payload)):
            acc = roots.get(level, {}).get(g, Fraction(0))
            for s, s_inv, w in steps:
                prev = values.get(g * s_inv)
                if prev is not None:
                    acc += w * prev
            v = acc / m
            if v:
                values[g] = v
                n_level += 1
                if abs(v) > sup:
                    sup = abs(v)
                total_nodes += 1
                if total_nodes > cap:
                    raise ReductionError(f"graded evaluation exceeded cap {cap}")
                for s, _, _ in steps:
                    child = g * s
                    child_level = level + group.grading(s.payload)
                    pending.setdefault(child_level, set()).add(child)
        window.append(sup)
        counts.append(n_level)
        if len(window) > width:
            window.pop(0)
            counts.pop(0)
        if (
            level >= hi
            and len(window) == width
            and all(s < stop_threshold for s in window)
        ):
            return SeriesValues(
                values,
                True,
                Fraction(0),
                f"graded, {total_nodes} nodes, levels {lo}..{level}",
                window,
                counts,
            )
        level += 1
    raise AdaptiveDepthExceeded(
        f"values did not fall below {stop_threshold} within {max_levels} grading levels"
    )


def truncated_series_values(
    alpha: RingElement,
    f: RingElement,
    inv: Optional[InversePartial] = None,
    max_n: int = 4096,
    cap: int = 10**6,
) -> tuple[SeriesValues, InversePartial]:
    """Values alpha xi_N with a certified geometric sup bound (lopsided f)."""
    profile = classify(f)
    if not profile.is_lopsided:
        raise UnsupportedReduction(
            "truncated evaluation needs a lopsided element; use the graded route"
        )
    m = profile.m
    q = Fraction(profile.tail_l1, m)
    a_l1 = alpha.norms().l1
    n = inv.n if inv is not None else 8
    while True:
        if inv is None or inv.n < n:
            inv = geometric_l2_partial(f, n, cap=cap)
        tail = a_l1 * q ** (inv.n + 1) / (m * (1 - q))
        if tail < Fraction(1, 2):
            vals = alpha * inv.xi
            half = Fraction(1, 2)
            ambiguous = False
            for v in vals.coeffs.values():
                frac = v - math.floor(v + half)
                if min(frac + half, half - frac) <= tail:
                    ambiguous = True
                    break
            if not ambiguous:
                return (
                    SeriesValues(
                        dict(vals.coeffs),
                        False,
                        tail,
                        f"truncated at N={inv.n}, tail {float(tail):.3g}",
                    ),
                    inv,
                )
        if n >= max_n:
            raise AdaptiveDepthExceeded(
                f"rounding stayed ambiguous up to N={max_n} (tail {float(tail):.3g})"
            )
        n = max(2 * n, 8)


@dataclass
class ReductionResult:
    alpha: RingElement
    f: RingElement
    beta: RingElement
    c: RingElement
    case: str  # strict | boundary
    m: int
    max_abs_beta: int
    method: str
    values: SeriesValues

    def bounds_ok(self) -> bool:
        if self.case == STRICT:
            return self.max_abs_beta <= self.m - 1
        one = self.f.group.identity
        supp_s = [s for s in self.f.support() if s != one]
        for g, v in self.beta.coeffs.items():
            if not (-self.m <= v <= self.m - 1):
                return False
            if v == -self.m:
                for s in supp_s:
                    if not self.beta[g * ~s] < 0:
                        return False
        return True

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha.to_triples(),
            "beta": self.beta.to_triples(),
            "c": self.c.to_triples(),
            "case": self.case,
            "max_abs_beta": self.max_abs_beta,
            "method": self.method,
        }


def _case_of(f: RingElement) -> str:
    one = f.group.identity
    m = f.trace()
    off_sum = sum(v for g, v in f.coeffs.items() if g != one)
    return BOUNDARY if off_sum == m else STRICT


def reduce_coefficients(
    alpha: RingElement,
    f: RingElement,
    inv: Optional[InversePartial] = None,
    max_levels: int = 500,
    cap: int = 10**6,
) -> ReductionResult:
    """Write alpha = beta + c f with the case-appropriate coefficient bounds."""
    profile = classify(f)
    if not profile.is_semi_lopsided:
        raise UnsupportedReduction("f must be semi-lopsided")
    if any(Fraction(v).denominator != 1 for v in alpha.coeffs.values()):
        raise ValueError("alpha must have integer coefficients")
    m = profile.m
    if _grading_ok(f):
        sv = graded_series_values(alpha, f, max_levels=max_levels, cap=cap)
        method = "graded"
    else:
        sv, inv = truncated_series_values(alpha, f, inv, cap=cap)
        method = f"truncated(N={inv.n})"

    half = Fraction(1, 2)
    c_coeffs = {}
    for g, v in sv.values.items():
        r = math.floor(v + half)
        if r:
            c_coeffs[g] = r
    c = RingElement(f.group, c_coeffs)
    beta = alpha - c * f
    result = ReductionResult(
        alpha=alpha,
        f=f,
        beta=beta,
        c=c,
        case=_case_of(f),
        m=m,
        max_abs_beta=int(beta.norms().linf),
        method=method,
        values=sv,
    )
    if not result.bounds_ok():
        raise ReductionError(
            f"reduction bounds violated (case {result.case}); this is a bug"
        )
    return result


def minimal_support_element(
    beta: RingElement, og: OrderedGroup
) -> GroupElement:
    """Some order-minimal element of supp(beta); deterministic tie-break.

    Minimal means no other support element is strictly below it; in a
    partial order several elements can be minimal, and the serialization
    order picks one reproducibly.
    """
    support = sorted(beta.coeffs, key=lambda g: og.group.sort_key(g.payload))
    if not support:
        raise ValueError("empty support")
    for g in support:
        if not any(
            og.compare(h, g) is Cmp.LESS for h in support if h != g
        ):
            return g
    raise AssertionError("partial order has a cycle; order implementation bug")


@dataclass
class Witness:
    """Certificate that alpha is not in Z(G) f.

    value = beta(g0)/m is (alpha xi)(g0) modulo 1: a rational in (1/m)Z
    that is not an integer.  deviation records |(alpha xi)(g0) - value -
    round| from the evaluation route, bounded by tail_sup (zero for the
    graded route).
    """

    g0: GroupElement
    value: Fraction
    beta: RingElement
    deviation: Fraction
    tail_sup: Fraction

    def as_dict(self) -> dict:
        return {
            "g0": repr(self.g0),
            "value_num": self.value.numerator,
            "value_den": self.value.denominator,
            "deviation": float(self.deviation),
            "tail_bound": float(self.tail_sup),
        }


def _check_positive_support(f: RingElement, og: OrderedGroup) -> None:
    one = f.group.identity
    for s in f.support():
        if s != one and og.is_positive(s) is not Sign.POSITIVE:
            raise ValueError(
                f"support element {s!r} is not order positive; the witness "
                "argument needs the support inside the positive cone"
            )


def _witness_from_reduction(red: ReductionResult, og: OrderedGroup) -> Witness:
    g0 = minimal_support_element(red.beta, og)
    m = red.m
    b0 = red.beta[g0]
    if not (0 < abs(b0) <= m - 1):
        raise AssertionError(
            f"minimal coefficient {b0} outside [1, m-1] in absolute value; bug"
        )
    value = Fraction(b0, m)
    v_g0 = red.values.values.get(g0, Fraction(0))
    deviation = abs(v_g0 - value - math.floor(v_g0 + Fraction(1, 2)))
    if deviation > red.values.tail_sup:
        raise AssertionError("witness cross-check exceeded the tail bound; bug")
    return Witness(
        g0=g0,
        value=value,
        beta=red.beta,
        deviation=deviation,
        tail_sup=red.values.tail_sup,
    )


def denominator_witness(
    alpha: RingElement,
    f: RingElement,
    og: OrderedGroup,
    inv: Optional[InversePartial] = None,
) -> Optional[Witness]:
    """Witness (g0, beta(g0)/m) for alpha not in Z(G) f, or None if beta = 0."""
    _check_positive_support(f, og)
    red = reduce_coefficients(alpha, f, inv)
    if not red.beta:
        return None
    return _witness_from_reduction(red, og)


@dataclass
class Membership:
    status: str  # member | non_member | inconclusive
    c: Optional[RingElement] = None
    witness: Optional[Witness] = None
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"status": self.status, "detail": self.detail}
        if self.c is not None:
            out["c"] = self.c.to_triples()
        if self.witness is not None:
            out["witness"] = self.witness.as_dict()
        return out


def ideal_membership(
    alpha: RingElement,
    f: RingElement,
    og: OrderedGroup,
    inv: Optional[InversePartial] = None,
) -> Membership:
    """Semi-decision for alpha in Z(G) f; member verdicts are verified exactly."""
    if not alpha:
        return Membership(status="member", c=RingElement.zero(f.group))
    try:
        red = reduce_coefficients(alpha, f, inv)
    except AdaptiveDepthExceeded as exc:
        return Membership(status="inconclusive", detail=str(exc))
    if not red.beta:
        if red.c * f != alpha:
            raise AssertionError("member verdict failed exact verification; bug")
        return Membership(status="member", c=red.c, detail=red.method)
    _check_positive_support(f, og)
    witness = _witness_from_reduction(red, og)
    return Membership(status="non_member", witness=witness, detail=red.method)
