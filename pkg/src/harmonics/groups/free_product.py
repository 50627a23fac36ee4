"""Free products Z/kZ * Z/kZ ordered by the semigroup <xy, x^2 y^2>.

Elements are alternating syllable words ((letter, exponent), ...) with
letter in {x, y} and exponent reduced to 1..k-1.  These groups have torsion,
hence no total left order, but the semigroup P generated by the two blocks
xy and x^2 y^2 is a positive semigroup generating the whole group (k >= 3).

Membership in P is decided by greedy left-to-right factorization into the
blocks: block products never cancel at the seams (a block ends in a y
syllable and starts with an x syllable), so an element is in P exactly when
its syllables pair up as x^e y^e with e in {1, 2}.
"""

from __future__ import annotations

from .base import Group

X, Y = 0, 1
_LETTER = {X: "x", Y: "y"}


class FreeProductCyclic(Group):
    family = "free_product_cyclic"
    order_kind = "semigroup_generated"

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("free product parameter must be >= 2")
        self.k = k
        super().__init__(key=("free_product_cyclic", k), name=f"freeprod({k})")
        self.generator_map["x"] = self.element(((X, 1),))
        self.generator_map["y"] = self.element(((Y, 1),))

    def positive_generators(self):
        x, y = self.generator_map["x"], self.generator_map["y"]
        gens = [x * y]
        if self.k >= 3:
            gens.append(x * x * y * y)
        return gens

    def _identity_payload(self):
        return ()

    def _mul(self, p, q):
        # both factors alternate, so a single seam-merging pass keeps the
        # output alternating
        out = list(p)
        for letter, exp in q:
            if out and out[-1][0] == letter:
                merged = (out[-1][1] + exp) % self.k
                out.pop()
                if merged:
                    out.append((letter, merged))
            else:
                out.append((letter, exp))
        return tuple(out)

    def _inv(self, p):
        return tuple((letter, (self.k - exp) % self.k) for letter, exp in reversed(p))

    def _in_blocks(self, p) -> bool:
        if not p or len(p) % 2:
            return False
        for i in range(0, len(p), 2):
            (l1, e1), (l2, e2) = p[i], p[i + 1]
            if l1 != X or l2 != Y or e1 != e2 or e1 not in (1, 2):
                return False
            if e1 == 2 and self.k == 2:
                return False
        return True

    def sign_of(self, payload) -> int:
        if self._in_blocks(payload):
            return 1
        if self._in_blocks(self._inv(payload)):
            return -1
        return 0

    def word(self, payload) -> str:
        parts = []
        for letter, exp in payload:
            name = _LETTER[letter]
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts) if parts else "1"
