"""Free groups on r generators with the positive-word partial order.

Payload is the reduced word as a tuple of (generator index, nonzero exponent)
pairs with distinct adjacent indices.  The positive semigroup consists of the
nonempty words using only positive powers; a word and its inverse are never
both positive, and mixed words are incomparable to the identity.
"""

from __future__ import annotations

import string

from .base import Group

Word = tuple  # tuple[tuple[int, int], ...]


def word_mul(p: Word, q: Word) -> Word:
    """Concatenate reduced words, cancelling across the seam."""
    out = list(p)
    for idx, exp in q:
        if out and out[-1][0] == idx:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((idx, merged))
        else:
            out.append((idx, exp))
    return tuple(out)


def word_inv(p: Word) -> Word:
    return tuple((idx, -exp) for idx, exp in reversed(p))


def word_shift(p: Word, shift: int, modulus: int) -> Word:
    """Relabel generator indices by +shift mod modulus (no reduction needed)."""
    return tuple(((idx + shift) % modulus, exp) for idx, exp in p)


def word_sign(p: Word) -> int:
    if not p:
        return 0
    if all(exp > 0 for _, exp in p):
        return 1
    if all(exp < 0 for _, exp in p):
        return -1
    return 0


def word_str(p: Word, names: list[str]) -> str:
    parts = []
    for idx, exp in p:
        if exp == 1:
            parts.append(names[idx])
        else:
            parts.append(f"{names[idx]}^{exp}")
    return " ".join(parts) if parts else "1"


class FreeGroup(Group):
    family = "free"
    order_kind = "positive_word_partial"

    def __init__(self, r: int):
        if r < 2:
            raise ValueError("free rank must be >= 2")
        self.r = r
        super().__init__(key=("free", r), name=f"free({r})")
        self._names = [
            string.ascii_lowercase[i] if r <= 26 else f"a{i + 1}" for i in range(r)
        ]
        for i in range(r):
            g = self.element(((i, 1),))
            self.generator_map[self._names[i]] = g
            self.generator_map[f"a{i + 1}"] = g
        self.positive_generator_names = [f"a{i + 1}" for i in range(r)]

    def _identity_payload(self):
        return ()

    def _mul(self, p, q):
        return word_mul(p, q)

    def _inv(self, p):
        return word_inv(p)

    def sign_of(self, payload) -> int:
        return word_sign(payload)

    def grading(self, payload) -> int:
        return sum(exp for _, exp in payload)

    def word(self, payload) -> str:
        return word_str(payload, self._names)
