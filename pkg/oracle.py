"""Brute-force reference implementations.

Nothing here is clever: finite hulls are enumerated as tables of index pairs,
and semantic comparisons evaluate both sides point by point on a box.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

import config
from errors import SizeLimit
from inverse_hull import BooleanIdeal, HullElement, apply
from lcsc_core import (Arrow, CategoryBackend, FiniteTableBackend, NxZmodBackend,
                       ZNxBackend, in_ideal)
from verdicts import Status, Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartialBijectionTable:
    """A finite partial injection stored as (x, y) payload pairs."""

    pairs: FrozenSet[Tuple[int, int]]

    def __call__(self, x: int) -> Optional[int]:
        for a, b in self.pairs:
            if a == x:
                return b
        return None

    def compose(self, inner: "PartialBijectionTable") -> "PartialBijectionTable":
        """self∘inner."""
        outer = dict(self.pairs)
        return PartialBijectionTable(frozenset((x, outer[y]) for x, y in inner.pairs if y in outer))

    def invert(self) -> "PartialBijectionTable":
        return PartialBijectionTable(frozenset((y, x) for x, y in self.pairs))

    def is_injective(self) -> bool:
        return len({y for _, y in self.pairs}) == len(self.pairs)

    def is_zero(self) -> bool:
        return not self.pairs


def left_multiplication_table(backend: FiniteTableBackend, c: int) -> PartialBijectionTable:
    pairs = []
    for x in backend.box_payloads():
        y = backend.compose_payload(c, x)
        if y is not None:
            pairs.append((x, y))
    return PartialBijectionTable(frozenset(pairs))


def table_of(s: HullElement) -> PartialBijectionTable:
    return PartialBijectionTable(frozenset((x.payload, y.payload) for x, y in s.graph()))


def enumerate_hull_finite(backend: FiniteTableBackend,
                          limit: Optional[int] = None) -> FrozenSet[PartialBijectionTable]:
    """Closure of all left multiplications and their inverses under composition."""
    if not isinstance(backend, FiniteTableBackend):
        raise TypeError("enumerate_hull_finite needs a finite table backend")
    limit = config.HULL_SIZE_LIMIT if limit is None else limit
    letters = set()
    for c in backend.box_payloads():
        table = left_multiplication_table(backend, c)
        letters.add(table)
        letters.add(table.invert())
    found = set(letters)
    frontier = list(letters)
    while frontier:
        grown = []
        for s in frontier:
            for letter in letters:
                for candidate in (letter.compose(s), s.compose(letter)):
                    if candidate not in found:
                        found.add(candidate)
                        grown.append(candidate)
                        if len(found) > limit:
                            raise SizeLimit(f"hull of {backend!r} exceeds {limit} elements")
        frontier = grown
    logger.debug("hull of %r has %d elements", backend, len(found))
    return frozenset(found)


@dataclass(frozen=True)
class TruncationBox:
    """A finite set of test points.

    For finite tables and N^x ⋉ Z/nZ the box is closed under left division;
    for Z ⋊ N^x it is only used for evaluation.
    """

    backend: CategoryBackend
    bound: int
    arrows: Tuple[Arrow, ...]
    closed_under_division: bool

    @classmethod
    def around(cls, backend: CategoryBackend, bound: Optional[int] = None) -> "TruncationBox":
        bound = config.ORACLE_BOUND if bound is None else bound
        if isinstance(backend, ZNxBackend):
            side = min(bound, config.CONFIRMATION_SIDE * 4)
            return cls(backend, bound, tuple(backend.box(bound, additive=side)), False)
        closed = isinstance(backend, (FiniteTableBackend, NxZmodBackend))
        return cls(backend, bound, tuple(backend.box(bound)), closed)

    def __iter__(self):
        return iter(self.arrows)

    def __len__(self):
        return len(self.arrows)


def bounded_extensional_eq(s, t, box: TruncationBox) -> Verdict:
    """Compare two (extended) hull elements on every box point, definedness included."""
    for x in box:
        if apply(s, x) != apply(t, x):
            return Verdict(Status.DISTINCT, witness=x, bound=box.bound)
    return Verdict(Status.AGREE, bound=box.bound, detail=f"{len(box)} points")


def _agree_on(s, t, region: BooleanIdeal, box: TruncationBox) -> Optional[Arrow]:
    for x in box:
        if region.contains(x) and apply(s, x) != apply(t, x):
            return x
    return None


def bounded_germ_eq(s, t, chi, box: TruncationBox) -> Verdict:
    """Look for a neighbourhood of χ_c on which s and t agree, or a point of
    every neighbourhood where they differ.

    Candidates are cC and cC with the principal ideals of disagreeing points
    removed, up to ``GERM_EXCLUSION_CAP`` exclusions.
    """
    c = chi.c
    if apply(s, c) is None or apply(t, c) is None:
        raise ValueError(f"χ_{c} is not in the domain of both elements")
    if apply(s, c) != apply(t, c):
        return Verdict(Status.DISTINCT, witness=c, bound=box.bound)

    neighbourhood = BooleanIdeal.principal(c)
    excluded: List[Arrow] = []
    while True:
        x = _agree_on(s, t, neighbourhood, box)
        if x is None:
            return Verdict(Status.AGREE, witness=neighbourhood, bound=box.bound,
                           detail="agreement on the neighbourhood inside the box")
        if in_ideal(c, x) or len(excluded) >= config.GERM_EXCLUSION_CAP:
            return Verdict(Status.INCONCLUSIVE, bound=box.bound,
                           detail=f"disagreement at {x} could not be cut away")
        excluded.append(x)
        neighbourhood = BooleanIdeal.build(c.backend, [(c, excluded)])
