"""Group catalog: construction, text parsing, and the order layer.

Group specs parse from a compact syntax:

    z(d)            free abelian Z^d, lex order
    heisenberg(N)   H_N, lex order on normal-form exponents
    ut(N)           unitriangular T_N, superdiagonal lex order
    free(r)         free group F_r, positive-word partial order
    bs(1,n)         Baumslag-Solitar BS(1,n), exact-sequence order
    wreath(z)       Z wr Z, lamp-dominance partial order
    wreath(zmod:k)  Z wr Z/kZ, lamp-dominance partial order
    freeprod(k)     Z/kZ * Z/kZ, semigroup <xy, x^2 y^2>
    freesemi(k)     F_k x| Z/kZ, positive-word semigroup

Words parse as whitespace-separated generator powers, e.g. "a b^-1 c^2";
the token "1" is the identity.
"""

from __future__ import annotations

import re


class ParseError(ValueError):
    """Malformed group spec, word, or ring expression."""


from .abelian import FreeAbelian
from .base import (
    BallCapExceeded,
    Cmp,
    FamilyMismatch,
    Group,
    GroupElement,
    OrderAxiomReport,
    OrderedGroup,
    Sign,
    ball,
)
from .baumslag import BaumslagSolitar
from .free import FreeGroup
from .free_product import FreeProductCyclic
from .free_semidirect import FreeSemidirectCyclic
from .heisenberg import Heisenberg
from .unitriangular import Unitriangular
from .wreath import Wreath

__all__ = [
    "BallCapExceeded",
    "ParseError",
    "BaumslagSolitar",
    "Cmp",
    "FamilyMismatch",
    "FreeAbelian",
    "FreeGroup",
    "FreeProductCyclic",
    "FreeSemidirectCyclic",
    "Group",
    "GroupElement",
    "Heisenberg",
    "OrderAxiomReport",
    "OrderedGroup",
    "Sign",
    "Unitriangular",
    "Wreath",
    "ball",
    "parse_group",
    "parse_word",
    "ordered_group",
]

_SPEC_RE = re.compile(r"^\s*([a-z_]+)\s*\(\s*([^()]*)\s*\)\s*$")


def parse_group(text: str) -> Group:
    """Build a catalog group from its compact text spec."""
    m = _SPEC_RE.match(text.lower())
    if not m:
        raise ParseError(f"cannot parse group spec {text!r}")
    head, arg = m.group(1), m.group(2).strip()
    try:
        if head == "z":
            return FreeAbelian(int(arg))
        if head == "heisenberg":
            return Heisenberg(int(arg))
        if head in ("ut", "unitriangular"):
            return Unitriangular(int(arg))
        if head == "free":
            return FreeGroup(int(arg))
        if head == "bs":
            parts = [p.strip() for p in arg.split(",")]
            if len(parts) != 2 or int(parts[0]) != 1:
                raise ValueError("only the solvable family bs(1,n) is supported")
            return BaumslagSolitar(int(parts[1]))
        if head == "wreath":
            if arg == "z":
                return Wreath(None)
            sub = re.match(r"^zmod\s*:\s*(\d+)$", arg)
            if sub:
                return Wreath(int(sub.group(1)))
            raise ValueError("wreath argument must be 'z' or 'zmod:k'")
        if head == "freeprod":
            return FreeProductCyclic(int(arg))
        if head == "freesemi":
            return FreeSemidirectCyclic(int(arg))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"bad group spec {text!r}: {exc}") from exc
    raise ParseError(f"unknown group family {head!r}")


_TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


def parse_word(text: str, group: Group) -> GroupElement:
    """Parse a generator word like 'a b^-1 c^2' into a group element."""
    g = group.identity
    for token in text.split():
        if token == "1":
            continue
        m = _TOKEN_RE.match(token)
        if not m:
            raise ParseError(f"bad word token {token!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        try:
            gen = group.generator(name)
        except KeyError as exc:
            raise ParseError(str(exc)) from exc
        g = g * gen ** exp
    return g


def ordered_group(spec, gens=None) -> OrderedGroup:
    """OrderedGroup from a group or a text spec, with the default gens S."""
    group = parse_group(spec) if isinstance(spec, str) else spec
    if gens is not None:
        gens = [parse_word(w, group) if isinstance(w, str) else w for w in gens]
    return OrderedGroup(group, gens)
