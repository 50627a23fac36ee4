"""Exact sparse arithmetic in the integral/rational group ring of a catalog group.

A RingElement is a finitely supported map from group elements to scalars,
stored as a dict keyed by canonical forms with no explicit zeros.  Scalars
are exact (int/Fraction) by default; a float-backed variant carries a
propagated sup-norm error bound for large truncations.  The convolution
convention is (ab)(g) = sum_h a(h) b(h^-1 g), the adjoint is
(a*)(g) = conj a(g^-1), and the trace is the coefficient at the identity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .groups import FamilyMismatch, Group, GroupElement, ParseError, parse_word

Scalar = Union[int, Fraction, float]

EXACT = "exact"
FLOAT = "float"


class RingElement:
    __slots__ = ("group", "coeffs", "kind", "err")

    def __init__(
        self,
        group: Group,
        coeffs: Optional[dict] = None,
        kind: str = EXACT,
        err: float = 0.0,
    ):
        self.group = group
        self.kind = kind
        self.err = float(err)
        clean: dict[GroupElement, Scalar] = {}
        if coeffs:
            for g, v in coeffs.items():
                if v:
                    clean[g] = v if kind == FLOAT else _as_exact(v)
        self.coeffs = clean

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, group: Group) -> "RingElement":
        return cls(group, {})

    @classmethod
    def delta(cls, g: GroupElement, coef: Scalar = 1) -> "RingElement":
        return cls(g.group, {g: coef})

    @classmethod
    def constant(cls, group: Group, coef: Scalar) -> "RingElement":
        return cls(group, {group.identity: coef})

    def copy(self) -> "RingElement":
        out = RingElement(self.group, None, self.kind, self.err)
        out.coeffs = dict(self.coeffs)
        return out

    def to_float(self) -> "RingElement":
        if self.kind == FLOAT:
            return self
        out = RingElement(self.group, None, FLOAT, 0.0)
        out.coeffs = {g: float(v) for g, v in self.coeffs.items()}
        # conversion of exact rationals to binary floats
        out.err = 2.0 ** -52 * max((abs(v) for v in out.coeffs.values()), default=0.0)
        return out

    # basic queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, g: GroupElement) -> Scalar:
        return self.coeffs.get(g, 0)

    def support(self) -> set[GroupElement]:
        return set(self.coeffs)

    def items_sorted(self) -> list[tuple[GroupElement, Scalar]]:
        return sorted(
            self.coeffs.items(), key=lambda kv: self.group.sort_key(kv[0].payload)
        )

    def trace(self) -> Scalar:
        return self.coeffs.get(self.group.identity, 0)

    # ring operations --------------------------------------------------------

    def _check(self, other: "RingElement") -> None:
        if self.group.key != other.group.key:
            raise FamilyMismatch("ring elements live over different groups")

    def _join_kind(self, other: "RingElement") -> str:
        return FLOAT if FLOAT in (self.kind, other.kind) else EXACT

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        out = dict(self.coeffs)
        for g, v in other.coeffs.items():
            w = out.get(g, 0) + v
            if w:
                out[g] = w
            else:
                out.pop(g, None)
        return RingElement(self.group, out, self._join_kind(other), self.err + other.err)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __neg__(self) -> "RingElement":
        return RingElement(
            self.group, {g: -v for g, v in self.coeffs.items()}, self.kind, self.err
        )

    def scale(self, c: Scalar) -> "RingElement":
        if not c:
            return RingElement.zero(self.group)
        kind = FLOAT if (self.kind == FLOAT or isinstance(c, float)) else EXACT
        return RingElement(
            self.group,
            {g: c * v for g, v in self.coeffs.items()},
            kind,
            abs(c) * self.err,
        )

    def __mul__(self, other: "RingElement") -> "RingElement":
        """Convolution (ab)(g) = sum_h a(h) b(h^-1 g)."""
        self._check(other)
        a, b = self, other
        if len(b) < len(a):
            # iterate over the smaller support in the inner loop
            out: dict[GroupElement, Scalar] = {}
            for h, av in a.coeffs.items():
                for k, bv in b.coeffs.items():
                    g = h * k
                    w = out.get(g, 0) + av * bv
                    if w:
                        out[g] = w
                    else:
                        out.pop(g, None)
        else:
            out = {}
            for k, bv in b.coeffs.items():
                for h, av in a.coeffs.items():
                    g = h * k
                    w = out.get(g, 0) + av * bv
                    if w:
                        out[g] = w
                    else:
                        out.pop(g, None)
        kind = self._join_kind(other)
        err = 0.0
        if kind == FLOAT:
            err = (
                a.err * float(b.norms().l1)
                + b.err * float(a.norms().l1)
                + a.err * b.err * min(len(a), len(b))
            )
        return RingElement(self.group, out, kind, err)

    def adjoint(self) -> "RingElement":
        out = {~g: v for g, v in self.coeffs.items()}
        return RingElement(self.group, out, self.kind, self.err)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.group.key == other.group.key
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("RingElement is not hashable")

    def norms(self) -> "Norms":
        l1 = sum(abs(v) for v in self.coeffs.values())
        l2sq = sum(v * v for v in self.coeffs.values())
        linf = max((abs(v) for v in self.coeffs.values()), default=0)
        aug = sum(self.coeffs.values())
        return Norms(
            l1=l1,
            l2=math.sqrt(float(l2sq)),
            l2_squared=l2sq,
            linf=linf,
            augmentation=aug,
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        chunks = []
        for g, v in self.items_sorted():
            word = repr(g)
            neg = v < 0
            mag = -v if neg else v
            if word == "1":
                body = str(mag)
            elif mag == 1:
                body = word
            else:
                body = f"{mag} {word}"
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(("- " if neg else "+ ") + body)
        return " ".join(chunks)

    # serialization -----------------------------------------------------------

    def to_triples(self) -> list[tuple[str, int, int]]:
        """(word, numerator, denominator) triples; exact elements only."""
        if self.kind != EXACT:
            raise ValueError("only exact elements serialize to triples")
        out = []
        for g, v in self.items_sorted():
            f = Fraction(v)
            out.append((repr(g), f.numerator, f.denominator))
        return out

    @classmethod
    def from_triples(cls, group: Group, triples: Iterable) -> "RingElement":
        coeffs: dict[GroupElement, Scalar] = {}
        for word, num, den in triples:
            g = parse_word(word, group)
            coeffs[g] = coeffs.get(g, 0) + Fraction(num, den)
        return cls(group, coeffs)


def _as_exact(v) -> Scalar:
    if isinstance(v, float):
        raise TypeError("float scalar in an exact ring element")
    return v


@dataclass
class Norms:
    l1: Scalar
    l2: float
    l2_squared: Scalar
    linf: Scalar
    augmentation: Scalar

    def as_tuple(self):
        return (self.l1, self.l2, self.linf, self.augmentation)


LOPSIDED = "lopsided"
SEMI_LOPSIDED_BOUNDARY = "semi_lopsided_boundary"
WELL_BALANCED = "well_balanced"
NONE = "none"


@dataclass
class LopsidedProfile:
    """Classification of f by the mass at the identity versus the rest.

    m is the coefficient at the identity, tail_l1 the l1 mass elsewhere.
    lopsided means tail_l1 < m; at tail_l1 = m the element sits on the
    semi-lopsided boundary, and is well balanced when additionally every
    off-identity coefficient is <= 0 (equivalently the coefficient sum
    vanishes).
    """

    m: int
    tail_l1: int
    cls: str
    support: list  # off-identity support, sorted

    @property
    def is_lopsided(self) -> bool:
        return self.cls == LOPSIDED

    @property
    def is_semi_lopsided(self) -> bool:
        return self.cls != NONE

    @property
    def is_boundary(self) -> bool:
        return self.cls in (SEMI_LOPSIDED_BOUNDARY, WELL_BALANCED)

    @property
    def is_well_balanced(self) -> bool:
        return self.cls == WELL_BALANCED


def classify(f: RingElement) -> LopsidedProfile:
    """Lopsidedness profile of an integer element with positive trace.

    Raises if the trace is not positive; callers should negate f first
    (the associated algebraic object does not change under f -> -f).
    """
    if f.kind != EXACT:
        raise ValueError("classification needs exact coefficients")
    m = f.trace()
    if any(Fraction(v).denominator != 1 for v in f.coeffs.values()):
        raise ValueError("classification needs integer coefficients")
    if m <= 0:
        raise ValueError("trace must be positive; negate f first")
    one = f.group.identity
    off = [(g, v) for g, v in f.items_sorted() if g != one]
    tail = sum(abs(v) for _, v in off)
    if tail < m:
        cls = LOPSIDED
    elif tail == m:
        cls = WELL_BALANCED if all(v <= 0 for _, v in off) else SEMI_LOPSIDED_BOUNDARY
    else:
        cls = NONE
    return LopsidedProfile(m=int(m), tail_l1=int(tail), cls=cls, support=[g for g, _ in off])


# ring-expression parsing ------------------------------------------------------

_NUM_CHARS = set("0123456789/-")


def parse_ring(text: str, group: Group) -> RingElement:
    """Parse expressions like '3 - a - b' or '5 - e1 - e2 - 2 e3^2'.

    Grammar: a signed sum of terms, each  [coefficient] [word] , where the
    coefficient is an integer or num/den fraction and the word is a
    whitespace-separated product of generator powers.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty ring expression")
    # split on top-level +/-; a '-' directly after '^' is an exponent sign
    pieces = re.split(r"(?<!\^)([+-])", s)
    terms: list[tuple[int, str]] = []
    sign = None
    for i, piece in enumerate(pieces):
        piece = piece.strip()
        if piece in ("+", "-"):
            if sign is not None:
                raise ParseError(f"consecutive signs in {text!r}")
            sign = 1 if piece == "+" else -1
        elif piece == "":
            if i > 0 and sign is None:
                raise ParseError(f"missing operator in {text!r}")
        else:
            terms.append((1 if sign is None else sign, piece))
            sign = None
    if sign is not None:
        raise ParseError(f"dangling sign in {text!r}")
    if not terms:
        raise ParseError(f"no terms in {text!r}")

    out = RingElement.zero(group)
    for sgn, term in terms:
        tokens = term.split()
        coef: Scalar = 1
        if tokens and _is_number(tokens[0]):
            coef = _parse_number(tokens[0])
            tokens = tokens[1:]
            if tokens and tokens[0] == "*":
                tokens = tokens[1:]
        if not tokens:
            g = group.identity
        else:
            g = parse_word(" ".join(tokens), group)
        out = out + RingElement.delta(g, sgn * coef)
    return out


def _is_number(tok: str) -> bool:
    return bool(tok) and all(c in _NUM_CHARS for c in tok) and tok not in ("-", "/")


def _parse_number(tok: str) -> Scalar:
    if "/" in tok:
        num, den = tok.split("/")
        return Fraction(int(num), int(den))
    return int(tok)
