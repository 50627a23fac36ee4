"""Semidirect products F_k x| Z/kZ with cyclically permuted free generators.

An element is (word, rotor) where word is a reduced word in the free group
on a1..ak and the rotor conjugates by the index rotation a_j -> a_{j+1}:

    (w, t) (w', t') = (w . rot_t(w'), t + t').

The positive semigroup consists of the elements whose word part is a
nonempty positive word, any rotor; it is invariant under the rotation, so it
defines a left-invariant partial order on a group that is not torsion-free
(hence not left-orderable).
"""

from __future__ import annotations

from .base import Group
from .free import word_inv, word_mul, word_shift, word_sign, word_str


class FreeSemidirectCyclic(Group):
    family = "free_semidirect_cyclic"
    order_kind = "semigroup_generated"

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("parameter must be >= 2")
        self.k = k
        super().__init__(key=("free_semidirect_cyclic", k), name=f"freesemi({k})")
        self._names = [f"a{i + 1}" for i in range(k)]
        for i in range(k):
            self.generator_map[self._names[i]] = self.element((((i, 1),), 0))
        self.generator_map["b"] = self.element(((), 1))

    def positive_generators(self):
        gens = [self.generator_map[n] for n in self._names]
        gens.append(self.generator_map["a1"] * self.generator_map["b"])
        return gens

    def _identity_payload(self):
        return ((), 0)

    def _mul(self, p, q):
        w1, t1 = p
        w2, t2 = q
        return (word_mul(w1, word_shift(w2, t1, self.k)), (t1 + t2) % self.k)

    def _inv(self, p):
        w, t = p
        return (word_shift(word_inv(w), -t, self.k), (-t) % self.k)

    def sign_of(self, payload) -> int:
        w, _ = payload
        return word_sign(w)

    def grading(self, payload) -> int:
        w, _ = payload
        return sum(exp for _, exp in w)

    def word(self, payload) -> str:
        w, t = payload
        head = word_str(w, self._names) if w else ""
        tail = "" if not t else ("b" if t == 1 else f"b^{t}")
        joined = " ".join(part for part in (head, tail) if part)
        return joined if joined else "1"
