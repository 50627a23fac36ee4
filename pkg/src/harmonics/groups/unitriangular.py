"""Full upper unitriangular integer matrix groups T_N (size (N+2)x(N+2)).

Payload is the strict upper triangle stored row by row.  The total order is
lexicographic on the entries read superdiagonal by superdiagonal, (1,2),
(2,3), ..., then (1,3), (2,4), ...; this reading order agrees with the
exponents of the polycyclic normal form  prod a_{ij}^{e_ij}  taken in the
same order, because below the first nonvanishing superdiagonal the matrix
entries and the normal-form exponents coincide.  Positivity of the first
nonzero entry is preserved under products (lower superdiagonals add), so the
reading defines a genuine left-invariant total order.
"""

from __future__ import annotations

from .base import Group


class Unitriangular(Group):
    family = "unitriangular"
    order_kind = "lex_total"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("unitriangular parameter must be >= 1")
        self.n = n
        self.size = n + 2
        super().__init__(key=("unitriangular", n), name=f"ut({n})")
        m = self.size
        for i in range(m):
            for j in range(i + 1, m):
                name = "c" if (i, j) == (0, m - 1) else f"a{i + 1}{j + 1}"
                self.generator_map[name] = self.element(self._elementary(i, j))
        # all elementary generators are order positive; c comes last
        self.positive_generator_names = [
            f"a{i + 1}{j + 1}"
            for i in range(m)
            for j in range(i + 1, m)
            if (i, j) != (0, m - 1)
        ] + ["c"]

    def _elementary(self, i: int, j: int):
        return tuple(
            tuple(1 if (r, c) == (i, j) else 0 for c in range(r + 1, self.size))
            for r in range(self.size - 1)
        )

    def _identity_payload(self):
        return tuple((0,) * (self.size - 1 - r) for r in range(self.size - 1))

    def _entry(self, p, i: int, j: int) -> int:
        # entry (i, j) with i < j, both 0-based
        return p[i][j - i - 1]

    def _mul(self, p, q):
        m = self.size
        rows = []
        for i in range(m - 1):
            row = []
            for j in range(i + 1, m):
                v = self._entry(p, i, j) + self._entry(q, i, j)
                for k in range(i + 1, j):
                    v += self._entry(p, i, k) * self._entry(q, k, j)
                row.append(v)
            rows.append(tuple(row))
        return tuple(rows)

    def _inv(self, p):
        # solve (I+U)(I+V) = I by increasing superdiagonal: V = -U - U V
        m = self.size
        v = [[0] * m for _ in range(m)]
        for s in range(1, m):
            for i in range(m - s):
                j = i + s
                val = -self._entry(p, i, j)
                for k in range(i + 1, j):
                    val -= self._entry(p, i, k) * v[k][j]
                v[i][j] = val
        return tuple(tuple(v[i][j] for j in range(i + 1, m)) for i in range(m - 1))

    def _reading_order(self):
        m = self.size
        for s in range(1, m):
            for i in range(m - s):
                yield i, i + s

    def sign_of(self, payload) -> int:
        for i, j in self._reading_order():
            e = self._entry(payload, i, j)
            if e:
                return 1 if e > 0 else -1
        return 0

    def sort_key(self, payload):
        return tuple(self._entry(payload, i, j) for i, j in self._reading_order())

    def grading(self, payload) -> int:
        return sum(self._entry(payload, i, i + 1) for i in range(self.size - 1))

    def normal_form_exponents(self, payload) -> list:
        """Exponents of prod a_{ij}^{e_ij} over the reading order."""
        m = self.size
        rest = self.element(payload)
        exps = []
        for s in range(1, m):
            layer = self.identity
            for i in range(m - s):
                e = self._entry(rest.payload, i, i + s)
                exps.append(((i, i + s), e))
                if e:
                    layer = layer * self.generator_map[self._gen_name(i, i + s)] ** e
            rest = (~layer) * rest
        return exps

    def _gen_name(self, i: int, j: int) -> str:
        return "c" if (i, j) == (0, self.size - 1) else f"a{i + 1}{j + 1}"

    def word(self, payload) -> str:
        parts = []
        for (i, j), e in self.normal_form_exponents(payload):
            if e == 1:
                parts.append(self._gen_name(i, j))
            elif e:
                parts.append(f"{self._gen_name(i, j)}^{e}")
        return " ".join(parts) if parts else "1"
