"""Higher Heisenberg groups H_N and their left/right-invariant lex order.

H_N is the group of (N+2)x(N+2) upper unitriangular integer matrices whose
off-diagonal entries live on the first row and last column.  An element is
the triple (x, y, z) with x the first-row vector, y the last-column vector,
and z the corner entry; the product is

    (x, y, z) (x', y', z') = (x + x', y + y', z + z' + <x, y'>).

Every element factors uniquely as a1^{n1} b1^{n2} ... aN^{n_{2N-1}}
bN^{n_{2N}} c^{n_{2N+1}} with a_i, b_i, c the elementary generators; the
exponent vector is (x1, y1, ..., xN, yN, z - <x, y>) and the total order is
lexicographic on it.  Growth degree is 2(N+1).
"""

from __future__ import annotations

from .base import Group


def _dot(x, y) -> int:
    return sum(a * b for a, b in zip(x, y))


class Heisenberg(Group):
    family = "heisenberg"
    order_kind = "lex_total"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("Heisenberg parameter must be >= 1")
        self.n = n
        super().__init__(key=("heisenberg", n), name=f"heisenberg({n})")
        zero = (0,) * n
        for i in range(n):
            a = self.element((self._unit(i), zero, 0))
            b = self.element((zero, self._unit(i), 0))
            self.generator_map[f"a{i + 1}"] = a
            self.generator_map[f"b{i + 1}"] = b
        self.generator_map["c"] = self.element((zero, zero, 1))
        if n == 1:
            self.generator_map["a"] = self.generator_map["a1"]
            self.generator_map["b"] = self.generator_map["b1"]
        self.positive_generator_names = [
            name for i in range(n) for name in (f"a{i + 1}", f"b{i + 1}")
        ]

    def _unit(self, i: int):
        return tuple(1 if j == i else 0 for j in range(self.n))

    def _identity_payload(self):
        zero = (0,) * self.n
        return (zero, zero, 0)

    def _mul(self, p, q):
        x1, y1, z1 = p
        x2, y2, z2 = q
        return (
            tuple(a + b for a, b in zip(x1, x2)),
            tuple(a + b for a, b in zip(y1, y2)),
            z1 + z2 + _dot(x1, y2),
        )

    def _inv(self, p):
        x, y, z = p
        return (
            tuple(-a for a in x),
            tuple(-a for a in y),
            -z + _dot(x, y),
        )

    def normal_form_exponents(self, payload) -> tuple:
        x, y, z = payload
        exps = []
        for i in range(self.n):
            exps.append(x[i])
            exps.append(y[i])
        exps.append(z - _dot(x, y))
        return tuple(exps)

    def sign_of(self, payload) -> int:
        for e in self.normal_form_exponents(payload):
            if e:
                return 1 if e > 0 else -1
        return 0

    def sort_key(self, payload):
        return self.normal_form_exponents(payload)

    def grading(self, payload) -> int:
        x, y, _ = payload
        return sum(x) + sum(y)

    def word(self, payload) -> str:
        exps = self.normal_form_exponents(payload)
        names = [n for i in range(self.n) for n in (f"a{i + 1}", f"b{i + 1}")] + ["c"]
        if self.n == 1:
            names = ["a", "b", "c"]
        parts = []
        for name, e in zip(names, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return " ".join(parts) if parts else "1"
