"""Geometric-series inverses: tails, increments, criteria, verdicts."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonics.groups import ordered_group, parse_group
from harmonics.inverses import (
    NotLopsided,
    convergence_verdict,
    geometric_l2_partial,
    gram_partial,
    gram_row_sums,
    log_log_fit,
    neumann_l1_inverse,
    power_sequence,
    sa_criterion_partial,
    symmetrize,
    verify_inverse,
    walk_part,
)
from harmonics.ring import RingElement, parse_ring
from harmonics.walks import return_probability

from conftest import ring_strategy


def test_neumann_geometric_coefficients():
    z1 = parse_group("z(1)")
    f = parse_ring("3 - a", z1)
    inv = neumann_l1_inverse(f, Fraction(1, 10**6))
    a = z1.generator("a")
    for n in range(inv.n + 1):
        assert inv.xi[a**n] == Fraction(1, 3 ** (n + 1))
    assert inv.l1_tail_bound <= Fraction(1, 10**6)


def test_residual_exact():
    z1 = parse_group("z(1)")
    f = parse_ring("3 - a", z1)
    inv = geometric_l2_partial(f, 2)
    assert inv.residual_l1 == Fraction(1, 27)
    # exact l1 case: residual = 3^{-(N+1)} for every N
    for n in (0, 1, 5, 9):
        assert geometric_l2_partial(f, n).residual_l1 == Fraction(1, 3 ** (n + 1))


def test_neumann_requires_lopsided():
    z2 = parse_group("z(2)")
    with pytest.raises(NotLopsided):
        neumann_l1_inverse(parse_ring("2 - a - b", z2))


def test_xi0_is_delta_over_m():
    z2 = parse_group("z(2)")
    f = parse_ring("2 - a - b", z2)
    inv = geometric_l2_partial(f, 0)
    assert inv.xi == RingElement.constant(z2, Fraction(1, 2))


@pytest.mark.parametrize(
    "spec,expr",
    [
        ("z(1)", "3 - a"),
        ("z(2)", "2 - a - b"),
        ("heisenberg(1)", "3 - a - b"),
        ("free(2)", "3 - a - b"),
        ("bs(1,2)", "4 - a - b"),
        ("wreath(zmod:3)", "3 - a - a b"),
        ("freeprod(3)", "2 - x y"),
    ],
)
def test_telescoping(spec, expr):
    # powers of x commute with x, so the identity holds on both sides
    group = parse_group(spec)
    f = parse_ring(expr, group)
    one = RingElement.constant(group, 1)
    for n in (0, 3, 7):
        inv = geometric_l2_partial(f, n)
        assert inv.xi * f == one - inv.tail_power
        assert f * inv.xi == one - inv.tail_power


def test_increment_identity():
    # ||xi_n - xi_{n-1}||_2 = (1/m) tau((x*)^n x^n)^{1/2}
    z5 = parse_group("z(5)")
    f = parse_ring("5 - e1 - e2 - e3 - e4 - e5", z5)
    inv = geometric_l2_partial(f, 8)
    m, x = walk_part(f)
    powers = power_sequence(x, 8)
    for n in range(1, 9):
        lhs = inv.increments_sq[n - 1]
        rhs = (powers[n].adjoint() * powers[n]).trace() * Fraction(1, m * m)
        assert lhs == rhs


def test_z5_increment_slope():
    # the symmetrized square-norm law makes increments ~ n^{-1}; the fitted
    # slope over n <= 12 sits inside the documented window [-1.55, -0.95]
    z5 = parse_group("z(5)")
    f = parse_ring("5 - e1 - e2 - e3 - e4 - e5", z5)
    inv = geometric_l2_partial(f, 12)
    ks = list(range(4, 13))
    slope, _ = log_log_fit(ks, [inv.increments[k - 1] for k in ks])
    assert -1.55 <= slope <= -0.95


def test_symmetrize():
    z1 = parse_group("z(1)")
    x = parse_ring("a", z1)
    s = symmetrize(x)
    assert s == parse_ring("1/2 a + 1/2 a^-1", z1)
    assert symmetrize(s) == s


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_symmetrize_properties(data):
    x = data.draw(ring_strategy("free(2)"))
    s = symmetrize(x)
    assert s == s.adjoint()
    y = data.draw(ring_strategy("free(2)"))
    assert symmetrize(x + y) == symmetrize(x) + symmetrize(y)


def test_sa_criterion_values():
    z1 = parse_group("z(1)")
    x = parse_ring("1/2 a + 1/2 a^-1", z1)
    sums = sa_criterion_partial(x, 6)
    # k tau(x^k): 2 * 1/2 = 1 at k=2, 4 * 3/8 = 3/2 at k=4, 6 * 5/16 = 15/8
    assert sums[1] == 1
    assert sums[3] == Fraction(5, 2)
    assert sums[5] == Fraction(5, 2) + Fraction(15, 8)
    assert all(sums[i] <= sums[i + 1] for i in range(len(sums) - 1))


def test_sa_criterion_guards():
    z1 = parse_group("z(1)")
    with pytest.raises(ValueError, match="self-adjoint"):
        sa_criterion_partial(parse_ring("a", z1), 3)
    with pytest.raises(ValueError, match="nonnegative"):
        sa_criterion_partial(parse_ring("1/2 a - 1/2 a^-1", z1), 3)
    with pytest.raises(ValueError, match="l1 norm"):
        sa_criterion_partial(parse_ring("a + a^-1", z1), 3)
    with pytest.raises(ValueError, match="finite group"):
        sa_criterion_partial(RingElement.constant(z1, 1), 3)


def test_gram_partial():
    z2 = parse_group("z(2)")
    y = parse_ring("1/2 a + 1/2 b", z2)
    assert gram_partial(y, 0) == 1
    # self-adjoint case: gram equals the multiplicity-weighted trace sums
    z1 = parse_group("z(1)")
    x = parse_ring("1/2 a + 1/2 a^-1", z1)
    k = 3
    series = return_probability(x, 2 * k)
    expected = Fraction(0)
    for n in range(k + 1):
        for m_ in range(k + 1):
            expected += series.values[n + m_]
    assert gram_partial(x, k) == expected
    # row sums add up to the full gram partial sum
    rows = gram_row_sums(y, 8)
    assert sum(rows) == gram_partial(y, 8)


def test_convergence_verdicts():
    z2 = parse_group("z(2)")
    assert convergence_verdict(parse_ring("2 - a - b", z2), 14).verdict == "diverges"
    z5 = parse_group("z(5)")
    assert (
        convergence_verdict(parse_ring("5 - e1 - e2 - e3 - e4 - e5", z5), 12).verdict
        == "converges"
    )
    assert convergence_verdict(parse_ring("3 - a - b", z2), 8).verdict == "converges"


def test_verify_inverse():
    z1 = parse_group("z(1)")
    f = parse_ring("3 - a", z1)
    og = ordered_group(z1)
    inv = geometric_l2_partial(f, 6)
    rep = verify_inverse(f, inv, og.ball(8))
    assert rep["max_right_residual"] == pytest.approx(3.0 ** -7)
    assert rep["max_left_residual"] == pytest.approx(3.0 ** -7)
    # xi = 0 leaves residual 1 at the identity
    zero_inv = geometric_l2_partial(f, 0)
    zero_inv.xi = RingElement.zero(z1)
    rep = verify_inverse(f, zero_inv, og.ball(2))
    assert rep["max_right_residual"] == 1.0
