"""Semicharacters on the idempotents of the hull, principal ones in particular.

χ_c sends an idempotent e to 1 exactly when c lies in dom(e).
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import config
from errors import BadRelation, BackendMismatch
from inverse_hull import (BooleanIdeal, ExtendedHullElement, HullElement, apply,
                          domain_ideal)
from lcsc_core import Arrow, CategoryBackend, canonical, in_ideal
from verdicts import Status, Verdict

logger = logging.getLogger(__name__)

IdealLike = Union[BooleanIdeal, HullElement, ExtendedHullElement]


def as_ideal(value: IdealLike) -> BooleanIdeal:
    if isinstance(value, BooleanIdeal):
        return value
    if isinstance(value, ExtendedHullElement):
        return value.domain()
    if isinstance(value, HullElement):
        return domain_ideal(value)
    raise TypeError(f"cannot read {value!r} as a Boolean ideal")


class PrincipalCharacter:
    """χ_c; two representatives give the same character iff they generate the same ideal."""

    __slots__ = ("c",)

    def __init__(self, c: Arrow):
        self.c = c

    @property
    def backend(self) -> CategoryBackend:
        return self.c.backend

    @property
    def representative(self) -> Arrow:
        return canonical(self.c)

    def evaluate(self, ideal: BooleanIdeal) -> bool:
        return ideal.contains(self.c)

    def __eq__(self, other):
        return isinstance(other, PrincipalCharacter) and self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)

    def __repr__(self):
        return f"PrincipalCharacter({self.c})"

    def __str__(self):
        rep = str(self.representative)
        return f"chi{rep}" if rep.startswith("(") else f"chi({rep})"


def chi(c: Arrow) -> PrincipalCharacter:
    return PrincipalCharacter(c)


@dataclass(frozen=True)
class SetSemicharacter:
    """A semicharacter given by an arbitrary predicate on idempotent domains."""

    backend: CategoryBackend
    predicate: Callable[[BooleanIdeal], bool] = field(compare=False)
    name: str = "semicharacter"

    def evaluate(self, ideal: BooleanIdeal) -> bool:
        return bool(self.predicate(ideal))

    def __str__(self):
        return self.name


def filter_semicharacter(f: IdealLike) -> SetSemicharacter:
    """The indicator of the principal filter above f: e ↦ 1 iff dom f ⊆ dom e."""
    f_domain = as_ideal(f)
    return SetSemicharacter(f_domain.backend, lambda e: f_domain.difference(e).is_empty(),
                            name=f"filter[{f_domain}]")


def char_eval(chi_or_semi, value: IdealLike) -> bool:
    ideal = as_ideal(value)
    if chi_or_semi.backend.key != ideal.backend.key:
        raise BackendMismatch("character and ideal live in different backends")
    return chi_or_semi.evaluate(ideal)


def char_act(s: Union[HullElement, ExtendedHullElement],
             character: PrincipalCharacter) -> Optional[PrincipalCharacter]:
    """s·χ_c = χ_{s(c)}; None when c is outside dom(s)."""
    y = apply(s, character.c)
    return None if y is None else PrincipalCharacter(y)


def char_eq(p: PrincipalCharacter, q: PrincipalCharacter) -> bool:
    if p.backend.key != q.backend.key:
        raise BackendMismatch("characters live in different backends")
    return in_ideal(p.c, q.c) and in_ideal(q.c, p.c)


@dataclass(frozen=True)
class BasicOpen:
    """{χ : χ(positive) = 1 and χ(f) = 0 for every forbidden f}."""

    positive: BooleanIdeal
    forbidden: Tuple[BooleanIdeal, ...] = ()

    @property
    def backend(self):
        return self.positive.backend

    def contains(self, character) -> bool:
        return character.evaluate(self.positive) and \
            not any(character.evaluate(f) for f in self.forbidden)

    def region(self) -> BooleanIdeal:
        """The set of c with χ_c in the open set."""
        out = self.positive
        for f in self.forbidden:
            out = out.difference(f)
        return out

    def __str__(self):
        text = f"in: {self.positive}"
        if self.forbidden:
            text += ", not: [" + ", ".join(str(f) for f in self.forbidden) + "]"
        return text


def find_principal_in(u: BasicOpen, bound: Optional[int] = None) -> Verdict:
    """Exhibit χ_c inside a basic open set.

    The region is a Boolean ideal in union-of-differences shape, and every
    nonempty term contains its own generator, so that generator is tried
    first. On infinite backends an empty region is reported as inconclusive
    after a bounded scan.
    """
    bound = config.resolve_bound(bound)
    region = u.region()
    for g in region.generators():
        if u.contains(PrincipalCharacter(g)):
            return Verdict(Status.YES, witness=PrincipalCharacter(g))

    if u.backend.is_finite:
        return Verdict(Status.EMPTY, detail="no arrow of the table lies in the open set")
    for x in u.backend.box(bound):
        if u.contains(PrincipalCharacter(x)):
            return Verdict(Status.YES, witness=PrincipalCharacter(x), bound=bound)
    logger.debug("no principal character in %s below %d", u, bound)
    return Verdict(Status.INCONCLUSIVE, bound=bound,
                   detail="no principal character below the bound; the ideal algebra reports the region empty")


@dataclass(frozen=True)
class Relation:
    """f = e_1 ∨ ... ∨ e_k, stored as domains."""

    f: BooleanIdeal
    parts: Tuple[BooleanIdeal, ...]


def relation(f: IdealLike, es: Iterable[IdealLike]) -> Relation:
    f_domain = as_ideal(f)
    parts = tuple(as_ideal(e) for e in es)
    joined = BooleanIdeal.empty(f_domain.backend)
    for part in parts:
        joined = joined.union(part)
    if not (f_domain.difference(joined).is_empty() and joined.difference(f_domain).is_empty()):
        raise BadRelation(f"dom f = {f_domain} differs from the union {joined}")
    return Relation(f_domain, parts)


def joins_preserved_check(character, relations: Sequence) -> Verdict:
    """Pass iff χ(f) = max χ(e_i) for every relation."""
    for rel in relations:
        if not isinstance(rel, Relation):
            rel = relation(*rel)
        lhs = character.evaluate(rel.f)
        rhs = any(character.evaluate(e) for e in rel.parts)
        if lhs != rhs:
            return Verdict(Status.FAIL, witness=rel.f,
                           detail=f"{character}: value {int(lhs)} on the join, {int(rhs)} on the parts")
    return Verdict(Status.PASS, detail=f"{len(relations)} relations")
