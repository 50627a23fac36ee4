"""Group-ring arithmetic: convolution, adjoint, trace, norms, classify."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonics.groups import ParseError, parse_group
from harmonics.ring import (
    LOPSIDED,
    NONE,
    SEMI_LOPSIDED_BOUNDARY,
    WELL_BALANCED,
    RingElement,
    classify,
    parse_ring,
)

from conftest import ring_strategy


def test_hand_expansion_square():
    z2 = parse_group("z(2)")
    f = parse_ring("3 - a - b", z2)
    assert f * f == parse_ring("9 - 6 a - 6 b + a^2 + b^2 + 2 a b", z2)


def test_delta_convolution():
    h = parse_group("heisenberg(1)")
    a, b = h.generator("a"), h.generator("b")
    assert RingElement.delta(a) * RingElement.delta(b) == RingElement.delta(a * b)


def test_convolution_identity():
    h = parse_group("heisenberg(1)")
    alpha = parse_ring("1 - 2 a b + 3 c^-2", h)
    one = RingElement.constant(h, 1)
    assert alpha * one == alpha
    assert one * alpha == alpha


@pytest.mark.parametrize("spec", ["z(2)", "heisenberg(1)", "free(2)", "bs(1,2)"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_ring_laws(spec, data):
    a = data.draw(ring_strategy(spec))
    b = data.draw(ring_strategy(spec))
    c = data.draw(ring_strategy(spec))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()
    assert a.adjoint().adjoint() == a
    # trace is tracial at the group-ring level
    assert (a * b).trace() == (b * a).trace()
    # submultiplicative l1
    assert (a * b).norms().l1 <= a.norms().l1 * b.norms().l1


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_parseval_at_identity(data):
    x = data.draw(ring_strategy("free(2)"))
    assert (x.adjoint() * x).trace() == x.norms().l2_squared


def test_norms_example():
    z2 = parse_group("z(2)")
    n = parse_ring("3 - a - b", z2).norms()
    assert n.as_tuple()[0] == 5
    assert n.l2_squared == 11
    assert math.isclose(n.l2, math.sqrt(11))
    assert n.linf == 3
    assert n.augmentation == 1
    assert parse_ring("2 - a - b", z2).norms().augmentation == 0
    zero = RingElement.zero(z2).norms()
    assert zero.as_tuple() == (0, 0.0, 0, 0)


def test_trace_examples():
    z2 = parse_group("z(2)")
    assert parse_ring("3 - a - b", z2).trace() == 3
    assert RingElement.delta(z2.generator("a")).trace() == 0


def test_classify():
    z2 = parse_group("z(2)")
    p = classify(parse_ring("3 - a - b", z2))
    assert p.cls == LOPSIDED and p.m == 3 and p.tail_l1 == 2
    p = classify(parse_ring("2 - a - b", z2))
    assert p.cls == WELL_BALANCED and p.is_boundary and p.is_semi_lopsided
    z5 = parse_group("z(5)")
    p = classify(parse_ring("5 - e1 - e2 - e3 - e4 - e5", z5))
    assert p.cls == WELL_BALANCED and p.m == 5
    p = classify(parse_ring("2 + a - b", z2))
    assert p.cls == SEMI_LOPSIDED_BOUNDARY and not p.is_well_balanced
    p = classify(parse_ring("1 - a - b", z2))
    assert p.cls == NONE and not p.is_semi_lopsided


def test_classify_guards():
    z2 = parse_group("z(2)")
    with pytest.raises(ValueError, match="negate"):
        classify(parse_ring("-3 + a", z2))
    with pytest.raises(ValueError, match="integer"):
        classify(parse_ring("1/2 + a", z2))


def test_serialization_round_trip():
    h = parse_group("heisenberg(1)")
    alpha = parse_ring("3 - a - b + 2 a b c^-1", h)
    triples = alpha.to_triples()
    assert RingElement.from_triples(h, triples) == alpha


def test_parse_fractions_and_signs():
    z1 = parse_group("z(1)")
    x = parse_ring("1/2 a + 1/2 a^-1", z1)
    assert x[z1.generator("a")] == Fraction(1, 2)
    y = parse_ring("-a + 2", z1)
    assert y.trace() == 2 and y[z1.generator("a")] == -1


def test_parse_errors():
    z1 = parse_group("z(1)")
    for bad in ["", "3 - - a", "a +", "3 q", "a^"]:
        with pytest.raises(ParseError):
            parse_ring(bad, z1)


def test_float_error_propagation():
    z2 = parse_group("z(2)")
    a = parse_ring("3 - a - b", z2).to_float()
    b = parse_ring("1 + 2 a", z2).to_float()
    prod = a * b
    assert prod.kind == "float"
    expected = a.err * float(b.norms().l1) + b.err * float(a.norms().l1) + a.err * b.err * min(len(a), len(b))
    assert prod.err == pytest.approx(expected)
    with pytest.raises(TypeError):
        RingElement(z2, {z2.identity: 0.5})


def test_scale():
    z1 = parse_group("z(1)")
    f = parse_ring("3 - a", z1)
    assert f.scale(Fraction(1, 3)) == parse_ring("1 - 1/3 a", z1)
    assert not f.scale(0)
