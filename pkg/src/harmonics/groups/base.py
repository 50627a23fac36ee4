"""Shared machinery for the group catalog.

Each family in the catalog represents its elements by a canonical hashable
payload (an exponent vector, a reduced word, an affine map, ...), so that
payload equality is group-element equality and dictionaries keyed by elements
behave like dictionaries keyed by canonical forms.  A `Group` instance owns
the payload arithmetic; `GroupElement` is a thin immutable wrapper that gives
`g * h`, `~g`, `g ** n` syntax.

Left-invariant (partial) orders enter through a single positivity classifier
per family: `sign_of(payload)` returns +1 when the element lies in the
positive semigroup P, -1 when it lies in P^{-1}, and 0 otherwise (identity or
incomparable).  The induced order is `g <= h  iff  g^{-1} h in P or g = h`,
which is left-invariant by construction; `OrderedGroup.check_axioms` verifies
the semigroup axioms empirically on sampled elements.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence


class Sign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INCOMPARABLE_OR_IDENTITY = "incomparable_or_identity"


class Cmp(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class FamilyMismatch(ValueError):
    """Raised when elements of different groups are combined."""


class BallCapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured element cap."""


class GroupElement:
    """Immutable element of a catalog group, in canonical form."""

    __slots__ = ("group", "payload", "_hash")

    def __init__(self, group: "Group", payload):
        self.group = group
        self.payload = payload
        self._hash = hash((group.key, payload))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.group.key != other.group.key:
            raise FamilyMismatch(
                f"cannot multiply {self.group.name} element by {other.group.name} element"
            )
        return GroupElement(self.group, self.group._mul(self.payload, other.payload))

    def __invert__(self) -> "GroupElement":
        return GroupElement(self.group, self.group._inv(self.payload))

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return (~self) ** (-n)
        out = self.group.identity
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.group.key == other.group.key
            and self.payload == other.payload
        )

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_identity(self) -> bool:
        return self.payload == self.group.identity.payload

    def __repr__(self) -> str:
        return self.group.word(self.payload)


class Group:
    """Base class for catalog families.

    Subclasses fill in the payload arithmetic plus the order and naming data:
    `_mul`, `_inv`, `_identity_payload`, `sign_of`, `sort_key`, `word`,
    `generator_names` (parser aliases), `positive_generator_names` (the
    default order-positive generating set S), `order_kind`, and `grading`.
    """

    family: str = "?"
    order_kind: str = "?"

    def __init__(self, key: tuple, name: str):
        self.key = key
        self.name = name
        self.identity = GroupElement(self, self._identity_payload())
        self.generator_map: dict[str, GroupElement] = {}

    # payload arithmetic, one implementation per family
    def _mul(self, p, q):
        raise NotImplementedError

    def _inv(self, p):
        raise NotImplementedError

    def _identity_payload(self):
        raise NotImplementedError

    def sign_of(self, payload) -> int:
        """+1 for the positive semigroup, -1 for its inverse set, else 0."""
        raise NotImplementedError

    def sort_key(self, payload):
        """Total serialization order on payloads, used for determinism only."""
        return payload

    def word(self, payload) -> str:
        raise NotImplementedError

    def grading(self, payload) -> Optional[int]:
        """Canonical homomorphism to the integers, if the family carries one.

        Used by coefficient reduction to evaluate geometric series pointwise
        without truncation error; returns None for families without a useful
        integer grading (e.g. the solvable Baumslag-Solitar kernel direction).
        """
        return None

    def element(self, payload) -> GroupElement:
        return GroupElement(self, payload)

    def generator(self, name: str) -> GroupElement:
        try:
            return self.generator_map[name]
        except KeyError:
            raise KeyError(f"{self.name} has no generator named {name!r}") from None

    def positive_generators(self) -> list[GroupElement]:
        return [self.generator_map[n] for n in self.positive_generator_names]

    def __repr__(self) -> str:
        return self.name


def ball(
    gens: Sequence[GroupElement], radius: int, cap: int = 10**7
) -> set[GroupElement]:
    """The word-metric ball (S u {1} u S^-1)^radius, deduplicated.

    Breadth-first over the closed star; `cap` bounds the total element count.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if not gens:
        raise ValueError("need at least one generator")
    identity = gens[0].group.identity
    steps = list(gens) + [~g for g in gens]
    seen = {identity}
    frontier = [identity]
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for s in steps:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        raise BallCapExceeded(
                            f"ball enumeration exceeded cap of {cap} elements"
                        )
        frontier = nxt
    return seen


def _sorted_elements(elements: Iterable[GroupElement]) -> list[GroupElement]:
    return sorted(elements, key=lambda g: g.group.sort_key(g.payload))


@dataclass
class OrderAxiomReport:
    group: str
    order_kind: str
    n_checked: int
    passed: bool
    failures: list[str] = field(default_factory=list)

    def first_failure(self) -> Optional[str]:
        return self.failures[0] if self.failures else None


class OrderedGroup:
    """A catalog group together with a generating set S and its order.

    Invariants (verified by `check_axioms`): every s in S is order-positive,
    S and S^-1 are disjoint, and the positivity predicate defines a semigroup
    P with 1 not in P.  `positivity_override` substitutes a different
    classifier; it exists so tests can corrupt the order on purpose and watch
    the axiom checker object.
    """

    def __init__(
        self,
        group: Group,
        gens: Optional[Sequence[GroupElement]] = None,
        positivity_override: Optional[Callable[[GroupElement], int]] = None,
    ):
        self.group = group
        self.gens = list(gens) if gens is not None else group.positive_generators()
        self.order_kind = group.order_kind
        self._override = positivity_override

    @property
    def is_total(self) -> bool:
        return self.order_kind in ("lex_total", "exact_sequence_total")

    def is_positive(self, g: GroupElement) -> Sign:
        if self._override is not None:
            s = self._override(g)
        else:
            s = self.group.sign_of(g.payload)
        if s > 0:
            return Sign.POSITIVE
        if s < 0:
            return Sign.NEGATIVE
        return Sign.INCOMPARABLE_OR_IDENTITY

    def compare(self, g: GroupElement, h: GroupElement) -> Cmp:
        if g == h:
            return Cmp.EQUAL
        s = self.is_positive((~g) * h)
        if s is Sign.POSITIVE:
            return Cmp.LESS
        if s is Sign.NEGATIVE:
            return Cmp.GREATER
        return Cmp.INCOMPARABLE

    def ball(self, radius: int, cap: int = 10**7) -> set[GroupElement]:
        return ball(self.gens, radius, cap=cap)

    def sorted_ball(self, radius: int, cap: int = 10**7) -> list[GroupElement]:
        return _sorted_elements(self.ball(radius, cap=cap))

    def random_elements(
        self, n: int, max_length: int, rng: random.Random
    ) -> list[GroupElement]:
        """n random products of up to max_length generator letters."""
        steps = list(self.gens) + [~g for g in self.gens]
        out = []
        for _ in range(n):
            g = self.group.identity
            for _ in range(rng.randint(0, max_length)):
                g = g * rng.choice(steps)
            out.append(g)
        return out

    def check_axioms(
        self,
        sample: Sequence[GroupElement],
        n_triples: int = 10**4,
        rng: Optional[random.Random] = None,
    ) -> OrderAxiomReport:
        """Empirical order-axiom suite over sampled pairs/triples.

        Checks, reporting the first counterexample verbatim:
          * every s in S is positive and S n S^-1 is empty,
          * P is closed under products,
          * P n P^-1 is empty (sign of g and of g^-1 are consistent),
          * left-invariance: g < h implies kg < kh,
          * totality (total orders only): g != h are always comparable.
        """
        rng = rng or random.Random(0)
        failures: list[str] = []
        n_checked = 0

        def fail(msg: str) -> None:
            if len(failures) < 10:
                failures.append(msg)

        for s in self.gens:
            n_checked += 1
            if self.is_positive(s) is not Sign.POSITIVE:
                fail(f"generator {s!r} is not positive")
        gen_set = set(self.gens)
        if gen_set & {~s for s in self.gens}:
            fail("S and S^-1 intersect")

        sample = list(sample)
        if not sample:
            raise ValueError("empty sample")
        for _ in range(n_triples):
            g = rng.choice(sample)
            h = rng.choice(sample)
            k = rng.choice(sample)
            n_checked += 1
            sg, sh = self.is_positive(g), self.is_positive(h)
            # semigroup closure
            if sg is Sign.POSITIVE and sh is Sign.POSITIVE:
                if self.is_positive(g * h) is not Sign.POSITIVE:
                    fail(f"P not closed: {g!r} * {h!r} = {g * h!r} not positive")
            # disjointness via the inverse
            if sg is Sign.POSITIVE and self.is_positive(~g) is not Sign.NEGATIVE:
                fail(f"P n P^-1 != {{}}: {g!r} positive but {~g!r} not negative")
            if g.is_identity and sg is Sign.POSITIVE:
                fail("identity classified positive")
            # left invariance
            c = self.compare(g, h)
            if c is not self.compare(k * g, k * h):
                fail(
                    f"left-invariance broken: compare({g!r},{h!r})={c.value} but "
                    f"translating by {k!r} gives {self.compare(k * g, k * h).value}"
                )
            # totality
            if self.is_total and c is Cmp.INCOMPARABLE:
                fail(f"total order returned incomparable on {g!r}, {h!r}")
        return OrderAxiomReport(
            group=self.group.name,
            order_kind=self.order_kind,
            n_checked=n_checked,
            passed=not failures,
            failures=failures,
        )
