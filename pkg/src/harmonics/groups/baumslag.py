"""Solvable Baumslag-Solitar groups BS(1, n) = <a, b : a b a^-1 = b^n>.

An element is the affine map x -> n^t x + r with t an integer and r in
Z[1/n]; a acts as x -> n x and b as x -> x + 1.  The payload (t, r) is exact
and constant-size (r a Fraction whose denominator is a power of n), so the
relation a b a^-1 = b^n holds by arithmetic rather than by rewriting.

The order comes from the exact sequence 1 -> Z[1/n] -> BS(1,n) -> Z -> 1
with both ends ordered naturally: g = (t, r) is positive when t > 0, or when
t = 0 and r > 0.  This is a left-invariant total order making a and b
positive.
"""

from __future__ import annotations

from fractions import Fraction

from .base import Group


class BaumslagSolitar(Group):
    family = "baumslag_solitar"
    order_kind = "exact_sequence_total"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("BS(1, n) needs n >= 2")
        self.n = n
        super().__init__(key=("bs", 1, n), name=f"bs(1,{n})")
        self.generator_map["a"] = self.element((1, Fraction(0)))
        self.generator_map["b"] = self.element((0, Fraction(1)))
        self.positive_generator_names = ["a", "b"]

    def _identity_payload(self):
        return (0, Fraction(0))

    def _mul(self, p, q):
        t1, r1 = p
        t2, r2 = q
        return (t1 + t2, r1 + Fraction(self.n) ** t1 * r2)

    def _inv(self, p):
        t, r = p
        return (-t, -r * Fraction(self.n) ** (-t))

    def sign_of(self, payload) -> int:
        t, r = payload
        if t:
            return 1 if t > 0 else -1
        if r:
            return 1 if r > 0 else -1
        return 0

    def sort_key(self, payload):
        t, r = payload
        return (t, r)

    def grading(self, payload) -> int:
        # homomorphism onto the Z quotient; b is in its kernel
        return payload[0]

    def word(self, payload) -> str:
        t, r = payload
        k = 0
        scaled = r
        while scaled.denominator != 1:
            scaled *= self.n
            k += 1
        p = int(scaled)
        parts = []
        if k:
            parts.append(f"a^{-k}")
        if p == 1:
            parts.append("b")
        elif p:
            parts.append(f"b^{p}")
        tail = k + t
        if tail == 1:
            parts.append("a")
        elif tail:
            parts.append(f"a^{tail}")
        return " ".join(parts) if parts else "1"
