"""Left-invariant order layer: positivity, comparisons, axiom suite."""

import random

import pytest

from harmonics.groups import Cmp, OrderedGroup, Sign, ordered_group, parse_group, parse_word

from conftest import GROUP_SPECS


@pytest.mark.parametrize("spec", GROUP_SPECS)
def test_generators_positive(spec):
    og = ordered_group(spec)
    for s in og.gens:
        assert og.is_positive(s) is Sign.POSITIVE
        assert og.is_positive(~s) is Sign.NEGATIVE


def test_identity_incomparable_class():
    og = ordered_group("z(2)")
    assert og.is_positive(og.group.identity) is Sign.INCOMPARABLE_OR_IDENTITY


def test_lex_examples():
    og = ordered_group("z(2)")
    g = parse_word("e2^5", og.group)
    h = parse_word("e1 e2^-100", og.group)
    assert og.compare(g, h) is Cmp.LESS
    assert og.compare(h, g) is Cmp.GREATER
    assert og.compare(g, g) is Cmp.EQUAL


def test_heisenberg_positivity():
    og = ordered_group("heisenberg(1)")
    g = og.group
    assert og.is_positive(g.generator("a")) is Sign.POSITIVE
    assert og.is_positive(g.generator("b")) is Sign.POSITIVE
    assert og.is_positive(g.generator("c")) is Sign.POSITIVE
    # lex: c < b < a and a^-1 b is negative (first exponent -1)
    assert og.compare(g.generator("c"), g.generator("b")) is Cmp.LESS
    assert og.compare(g.generator("b"), g.generator("a")) is Cmp.LESS


def test_free_group_partial_order():
    og = ordered_group("free(2)")
    g = og.group
    a, b = g.generator("a"), g.generator("b")
    assert og.is_positive(~a * b) is Sign.INCOMPARABLE_OR_IDENTITY
    assert og.compare(a, b) is Cmp.INCOMPARABLE
    assert og.is_positive(a * b * a) is Sign.POSITIVE
    assert og.is_positive(~a * ~b) is Sign.NEGATIVE


def test_free_product_block_positivity():
    og = ordered_group("freeprod(3)")
    g = og.group
    x, y = g.generator("x"), g.generator("y")
    assert og.is_positive(x * y * x * y) is Sign.POSITIVE
    assert og.is_positive(x * x * y * y) is Sign.POSITIVE
    assert og.is_positive((x * y) * (x * x * y * y)) is Sign.POSITIVE
    assert og.is_positive(x) is Sign.INCOMPARABLE_OR_IDENTITY
    # for k = 3 the word y x is (x^2 y^2)^-1, hence genuinely negative
    assert og.is_positive(y * x) is Sign.NEGATIVE
    assert og.is_positive(x * y * y) is Sign.INCOMPARABLE_OR_IDENTITY
    assert og.is_positive(~(x * y)) is Sign.NEGATIVE


def test_wreath_positivity():
    og = ordered_group("wreath(zmod:3)")
    g = og.group
    a, b = g.generator("a"), g.generator("b")
    assert og.is_positive(a) is Sign.POSITIVE
    assert og.is_positive(a * b) is Sign.POSITIVE
    assert og.is_positive(b) is Sign.INCOMPARABLE_OR_IDENTITY  # bare rotor
    assert og.is_positive(a * ~(b * a * ~b)) is Sign.INCOMPARABLE_OR_IDENTITY


def test_bs_exact_sequence_total():
    og = ordered_group("bs(1,2)")
    g = og.group
    a, b = g.generator("a"), g.generator("b")
    assert og.is_positive(~b * a) is Sign.POSITIVE  # quotient dominates
    assert og.compare(b, a) is Cmp.LESS
    assert og.is_total


@pytest.mark.parametrize("spec", GROUP_SPECS)
def test_axiom_suite(spec, rng):
    og = ordered_group(spec)
    sample = og.random_elements(150, 6, rng)
    report = og.check_axioms(sample, n_triples=2000, rng=rng)
    assert report.passed, report.first_failure()


def test_corrupted_order_fails():
    base = ordered_group("heisenberg(1)")
    group = base.group
    corrupted = OrderedGroup(
        group, base.gens, positivity_override=lambda g: -group.sign_of(g.payload)
    )
    rng = random.Random(0)
    sample = corrupted.random_elements(100, 6, rng)
    report = corrupted.check_axioms(sample, n_triples=500, rng=rng)
    assert not report.passed
    assert report.first_failure() is not None


def test_exhaustive_heisenberg_ball():
    og = ordered_group("heisenberg(1)")
    ball = og.sorted_ball(4)
    rng = random.Random(2)
    report = og.check_axioms(ball, n_triples=4000, rng=rng)
    assert report.passed, report.first_failure()


def test_totality_flags():
    assert ordered_group("z(3)").is_total
    assert ordered_group("ut(1)").is_total
    assert not ordered_group("free(2)").is_total
    assert not ordered_group("wreath(z)").is_total
