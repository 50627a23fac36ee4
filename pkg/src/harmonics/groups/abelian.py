"""Free abelian groups Z^d with the lexicographic total order."""

from __future__ import annotations

import string

from .base import Group


class FreeAbelian(Group):
    """Z^d; payload is the integer exponent vector as a tuple.

    Generators are named e1..ed, with single-letter aliases a, b, c, ... for
    the first few coordinates so that small examples read naturally.
    """

    family = "free_abelian"
    order_kind = "lex_total"

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("free abelian rank must be >= 1")
        self.d = d
        super().__init__(key=("free_abelian", d), name=f"z({d})")
        for i in range(d):
            e = self.element(tuple(1 if j == i else 0 for j in range(d)))
            self.generator_map[f"e{i + 1}"] = e
            if i < len(string.ascii_lowercase):
                self.generator_map[string.ascii_lowercase[i]] = e
        self.positive_generator_names = [f"e{i + 1}" for i in range(d)]

    def _identity_payload(self):
        return (0,) * self.d

    def _mul(self, p, q):
        return tuple(a + b for a, b in zip(p, q))

    def _inv(self, p):
        return tuple(-a for a in p)

    def sign_of(self, payload) -> int:
        for a in payload:
            if a:
                return 1 if a > 0 else -1
        return 0

    def grading(self, payload) -> int:
        return sum(payload)

    def word(self, payload) -> str:
        parts = []
        for i, a in enumerate(payload):
            if a == 1:
                parts.append(f"e{i + 1}")
            elif a:
                parts.append(f"e{i + 1}^{a}")
        return " ".join(parts) if parts else "1"
