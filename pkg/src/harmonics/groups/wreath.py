"""Wreath products Z wr Z and Z wr (Z/kZ) with the lamp-dominance order.

An element is (lamps, rotor): a finitely supported integer-valued lamp
configuration over the index set (Z or Z/kZ) plus the rotor position.  The
product shifts the right factor's lamps by the left rotor and adds:

    (L, t) (L', t') = (L + shift_t(L'), t + t').

The partial order compares lamp configurations componentwise and ignores the
rotor: g is positive when its lamps are all >= 0 and not all zero.  The
standard positive generating pair is a (one lamp at the origin) and a b
(lamp plus rotor step); the bare rotor b is not comparable to the identity.
"""

from __future__ import annotations

from .base import Group


class Wreath(Group):
    """Z wr Z for modulus=None, Z wr (Z/kZ) for modulus=k."""

    family = "wreath"
    order_kind = "wreath_partial"

    def __init__(self, modulus: int | None):
        if modulus is not None and modulus < 2:
            raise ValueError("wreath modulus must be >= 2")
        self.modulus = modulus
        name = "wreath(z)" if modulus is None else f"wreath(zmod:{modulus})"
        super().__init__(key=("wreath", modulus), name=name)
        self.generator_map["a"] = self.element((((0, 1),), 0))
        self.generator_map["b"] = self.element(((), 1 % modulus if modulus else 1))

    def positive_generators(self):
        a, b = self.generator_map["a"], self.generator_map["b"]
        return [a, a * b]

    def _norm_pos(self, pos: int) -> int:
        return pos % self.modulus if self.modulus else pos

    def _identity_payload(self):
        return ((), 0)

    def _mul(self, p, q):
        lamps1, t1 = p
        lamps2, t2 = q
        acc = dict(lamps1)
        for pos, val in lamps2:
            key = self._norm_pos(pos + t1)
            new = acc.get(key, 0) + val
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        rot = t1 + t2
        if self.modulus:
            rot %= self.modulus
        return (tuple(sorted(acc.items())), rot)

    def _inv(self, p):
        lamps, t = p
        inv_lamps = tuple(
            sorted((self._norm_pos(pos - t), -val) for pos, val in lamps)
        )
        rot = -t % self.modulus if self.modulus else -t
        return (inv_lamps, rot)

    def sign_of(self, payload) -> int:
        lamps, _ = payload
        if not lamps:
            return 0
        if all(val > 0 for _, val in lamps):
            return 1
        if all(val < 0 for _, val in lamps):
            return -1
        return 0

    def grading(self, payload) -> int:
        lamps, _ = payload
        return sum(val for _, val in lamps)

    def word(self, payload) -> str:
        lamps, t = payload
        parts = []
        cursor = 0
        for pos, val in lamps:
            move = pos - cursor
            if move == 1:
                parts.append("b")
            elif move:
                parts.append(f"b^{move}")
            parts.append("a" if val == 1 else f"a^{val}")
            cursor = pos
        tail = t - cursor
        if tail == 1:
            parts.append("b")
        elif tail:
            parts.append(f"b^{tail}")
        return " ".join(parts) if parts else "1"
