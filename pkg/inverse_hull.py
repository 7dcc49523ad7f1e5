"""The left inverse hull of a concrete LCSC and its Boolean extension.

A hull element is a zigzag word of factors ``(d, c)``, each meaning the partial
map x ↦ d⁻¹(c·x); words are applied right to left, so the factor list
``[(d1, c1), ..., (dn, cn)]`` denotes dn⁻¹cn ⋯ d1⁻¹c1. Factor conventions:
target(c) = target(d), and source(c_{i+1}) = source(d_i).

On right LCM backends every word also carries a normal form ``(c, d)``:
the map d·r ↦ c·r with domain dC and range cC.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import config
from errors import (BackendMismatch, NoNormalForm, NotComposable, NotRightLcm,
                    WordTooLong)
from lcsc_core import (Arrow, CategoryBackend, canonical, compose, divide_left,
                       ideal_meet_generators, in_ideal, is_unit, minimal_generators,
                       require_validated, right_lcm, same_ideal)
from verdicts import Status, Verdict

logger = logging.getLogger(__name__)

Factor = Tuple[Arrow, Arrow]
Normal = Tuple[Arrow, Arrow]


def _check_factors(factors: Sequence[Factor]):
    previous = None
    for d, c in factors:
        if d.target != c.target:
            raise NotComposable(f"factor inv({d}) {c}: targets differ")
        if previous is not None and c.source != previous.source:
            raise NotComposable(f"factor inv({d}) {c} does not follow inv({previous})")
        previous = d


def evaluate_word(factors: Sequence[Factor], x: Arrow) -> Optional[Arrow]:
    for d, c in factors:
        y = compose(c, x)
        if y is None:
            return None
        x = divide_left(d, y)
        if x is None:
            return None
    return x


def evaluate_normal(normal: Normal, x: Arrow) -> Optional[Arrow]:
    c, d = normal
    r = divide_left(d, x)
    return None if r is None else compose(c, r)


def _factor_normal(d: Arrow, c: Arrow) -> Optional[Normal]:
    witness = right_lcm(c, d)
    if witness is None:
        return None
    # w = c·alpha = d·beta, so alpha·r ↦ beta·r
    return witness.beta, witness.alpha


def _compose_normal(outer: Optional[Normal], inner: Optional[Normal]) -> Optional[Normal]:
    """(c,d)∘(c',d') = (c·alpha, d'·beta) with dC ∩ c'C = wC, w = d·alpha = c'·beta."""
    if outer is None or inner is None:
        return None
    c, d = outer
    c2, d2 = inner
    witness = right_lcm(d, c2)
    if witness is None:
        return None
    return compose(c, witness.alpha), compose(d2, witness.beta)


def canonical_normal(normal: Normal) -> Normal:
    c, d = normal
    d_canon = canonical(d)
    u = divide_left(d, d_canon)
    return compose(c, u), d_canon


def _spell(normal: Normal) -> Tuple[Factor, ...]:
    c, d = normal
    return ((d, d.target), (c.target, c))


class HullElement:
    """A partial bijection of C built from left multiplications and their inverses.

    Equality is semantic: finite backends compare graphs, right LCM backends
    compare canonical normal forms.
    """

    __slots__ = ("backend", "factors", "normal", "zero", "_key")

    def __init__(self, backend: CategoryBackend, factors: Tuple[Factor, ...] = (),
                 normal: Optional[Normal] = None, zero: bool = False):
        self.backend = backend
        self.factors = tuple(factors)
        self.normal = None if zero or normal is None else canonical_normal(normal)
        self.zero = zero
        self._key = None

    def __call__(self, x: Arrow) -> Optional[Arrow]:
        return apply(self, x)

    @property
    def key(self):
        if self._key is None:
            if self.zero:
                self._key = ("zero",)
            elif self.backend.is_finite:
                self._key = ("graph", frozenset((x.payload, y.payload) for x, y in self.graph()))
            elif self.normal is not None:
                c, d = self.normal
                self._key = ("normal", c.payload, d.payload)
            else:
                raise NoNormalForm(f"{self} has no normal form on {self.backend!r}")
            if self._key == ("graph", frozenset()):
                self._key = ("zero",)
        return self._key

    def graph(self) -> List[Tuple[Arrow, Arrow]]:
        if not self.backend.is_finite:
            raise ValueError("graph() needs a finite backend")
        out = []
        for x in self.backend.box(0):
            y = apply(self, x)
            if y is not None:
                out.append((x, y))
        return out

    def is_zero(self) -> bool:
        return self.key == ("zero",)

    def is_idempotent(self) -> bool:
        if self.is_zero():
            return True
        if self.backend.is_finite:
            return all(x == y for x, y in self.graph())
        c, d = self.normal
        return c == d

    def __eq__(self, other):
        return isinstance(other, HullElement) and self.backend.key == other.backend.key \
            and self.key == other.key

    def __hash__(self):
        return hash((self.backend.key, self.key))

    def __repr__(self):
        return f"HullElement({render(self)})"

    def __str__(self):
        return render(self)


def render(s: HullElement) -> str:
    """Text accepted back by the expression parser."""
    if s.zero:
        return "0"
    if s.normal is not None:
        c, d = s.normal
        parts = []
        if not c.is_identity() or d.is_identity():
            parts.append(str(c))
        if not d.is_identity():
            parts.append(f"inv({d})")
        return " ".join(parts)
    parts = []
    for d, c in reversed(s.factors):
        if not d.is_identity():
            parts.append(f"inv({d})")
        if not c.is_identity():
            parts.append(str(c))
    return " ".join(parts) or str(s.factors[0][0].source)


def hull_from_word(backend: CategoryBackend, factors: Sequence[Factor]) -> HullElement:
    require_validated(backend)
    factors = tuple(factors)
    if not factors:
        raise ValueError("a zigzag word needs at least one factor")
    if len(factors) > config.WORD_CAP:
        raise WordTooLong(f"{len(factors)} factors exceeds the cap of {config.WORD_CAP}")
    for pair in factors:
        for a in pair:
            if a.backend.key != backend.key:
                raise BackendMismatch(f"{a!r} does not belong to {backend!r}")
    _check_factors(factors)
    normal = _try_normalize(factors)
    if normal is _ZERO:
        return HullElement(backend, factors, zero=True)
    return HullElement(backend, factors, normal=normal)


_ZERO = object()


def _try_normalize(factors: Sequence[Factor]):
    """Normal form of the word, _ZERO, or None when some intersection is not principal."""
    try:
        result = None
        for d, c in factors:
            step = _factor_normal(d, c)
            if step is None:
                return _ZERO
            result = step if result is None else _compose_normal(step, result)
            if result is None:
                return _ZERO
        return result
    except NotRightLcm:
        return None


def left_mult(c: Arrow) -> HullElement:
    return HullElement(c.backend, ((c.target, c),), normal=(c, c.source))


def left_inverse(c: Arrow) -> HullElement:
    return HullElement(c.backend, ((c, c.target),), normal=(c.source, c))


def from_normal(c: Arrow, d: Arrow) -> HullElement:
    """The map d·r ↦ c·r."""
    if c.source != d.source:
        raise NotComposable(f"({c}, {d}): sources differ")
    return HullElement(c.backend, _spell((c, d)), normal=(c, d))


def idempotent(c: Arrow) -> HullElement:
    """c·c⁻¹, the identity on cC."""
    return from_normal(c, c)


def zero(backend: CategoryBackend) -> HullElement:
    return HullElement(backend, zero=True)


def apply(s, x: Arrow) -> Optional[Arrow]:
    """Evaluate a hull element (or an extended one) at x; None outside the domain."""
    if isinstance(s, ExtendedHullElement):
        if s.restriction is not None and not s.restriction.contains(x):
            return None
        s = s.s
    if s.zero:
        return None
    if x.backend.key != s.backend.key:
        raise BackendMismatch(f"{x!r} does not belong to {s.backend!r}")
    return evaluate_word(s.factors, x)


def hull_compose(s: HullElement, t: HullElement) -> HullElement:
    """s∘t: apply t first."""
    if s.backend.key != t.backend.key:
        raise BackendMismatch("hull elements live in different backends")
    if s.zero or t.zero:
        return zero(s.backend)
    factors = t.factors + s.factors
    try:
        _check_factors(factors)
    except NotComposable:
        # the objects do not line up; nothing passes through both maps
        return zero(s.backend)

    if s.normal is not None and t.normal is not None:
        try:
            normal = _compose_normal(s.normal, t.normal)
        except NotRightLcm:
            normal = _try_normalize(factors)
        else:
            normal = _ZERO if normal is None else normal
    else:
        normal = _try_normalize(factors)
    if normal is _ZERO:
        return zero(s.backend)
    if len(factors) > config.WORD_CAP:
        if normal is None:
            raise WordTooLong(f"{len(factors)} factors exceeds the cap of {config.WORD_CAP}")
        factors = _spell(normal)
    result = HullElement(s.backend, factors, normal=normal)
    if s.backend.is_finite and result.is_zero():
        return zero(s.backend)
    return result


def hull_invert(s: HullElement) -> HullElement:
    if s.zero:
        return s
    factors = tuple((c, d) for d, c in reversed(s.factors))
    normal = None if s.normal is None else (s.normal[1], s.normal[0])
    return HullElement(s.backend, factors, normal=normal)


def normalize(s: HullElement) -> Optional[Normal]:
    """The canonical (c, d) pair of s, or None for the zero element."""
    if s.zero:
        return None
    if s.normal is None:
        if not s.backend.is_right_lcm:
            raise NoNormalForm(f"{s.backend!r} is not right LCM")
        normal = _try_normalize(s.factors)
        if normal is _ZERO:
            return None
        return canonical_normal(normal)
    return s.normal


def hull_eq(s: HullElement, t: HullElement) -> Verdict:
    """Exact on right LCM backends (normal forms) and on finite backends (graphs)."""
    if s.backend.key != t.backend.key:
        raise BackendMismatch("hull elements live in different backends")
    if s.backend.is_finite:
        gs, gt = dict(s.graph()), dict(t.graph())
        for x in sorted(set(gs) | set(gt)):
            if gs.get(x) != gt.get(x):
                return Verdict(Status.DISTINCT, witness=x)
        return Verdict(Status.EQUAL)

    try:
        ns, nt = normalize(s), normalize(t)
    except NoNormalForm:
        from oracle import TruncationBox, bounded_extensional_eq
        checked = bounded_extensional_eq(s, t, TruncationBox.around(s.backend))
        if checked.status == Status.DISTINCT:
            return checked
        return Verdict(Status.VERIFIED_UP_TO, bound=checked.bound, detail=checked.detail)

    if ns is None and nt is None:
        return Verdict(Status.EQUAL)
    if ns is None or nt is None:
        return Verdict(Status.DISTINCT, witness=(nt or ns)[1])
    (c, d), (c2, d2) = ns, nt
    u = divide_left(d, d2)
    if u is None or not is_unit(u):
        witness = d if not in_ideal(d, d2) else d2
        return Verdict(Status.DISTINCT, witness=witness)
    if compose(c, u) != c2:
        return Verdict(Status.DISTINCT, witness=d2)
    return Verdict(Status.EQUAL)


def idempotent_meet(e: HullElement, f: HullElement) -> HullElement:
    """e∘f for idempotents, computed from the right lcm of their generators."""
    if e.is_zero() or f.is_zero():
        return zero(e.backend)
    (g, _), (h, _) = normalize(e), normalize(f)
    witness = right_lcm(g, h)
    return zero(e.backend) if witness is None else idempotent(witness.w)


def idempotent_leq(e: HullElement, f: HullElement) -> bool:
    return hull_eq(idempotent_meet(e, f), e).status == Status.EQUAL


def domain_generators(s: HullElement) -> List[Arrow]:
    """Generators of dom(s) as a right ideal."""
    if s.is_zero():
        return []
    if s.normal is not None:
        return [s.normal[1]]
    points = [x.payload for x, _ in s.graph()]
    return [Arrow(s.backend, p) for p in minimal_generators(s.backend, points)]


def range_generators(s: HullElement) -> List[Arrow]:
    return domain_generators(hull_invert(s))


def _restrict_exclusions(generator: Arrow, excluded: Iterable[Arrow]) -> Tuple[Arrow, ...]:
    out = []
    for f in excluded:
        for h in ideal_meet_generators(generator, f):
            if h not in out:
                out.append(h)
    return tuple(sorted(out))


def _covers(term, other) -> bool:
    """gC \\ F ⊆ g'C \\ F' for term = (g, F) and other = (g', F')."""
    (g, excluded), (g2, excluded2) = term, other
    if not in_ideal(g, g2):
        return False
    return all(any(in_ideal(h, f) for f in excluded)
               for f2 in excluded2 for h in ideal_meet_generators(g, f2))


@dataclass(frozen=True, eq=False)
class BooleanIdeal:
    """A finite union of differences e_i \\ (f_i1 ∪ ... ∪ f_ik) of principal right ideals.

    Terms are (generator, excluded generators) with every excluded ideal inside
    the generator's ideal, and no term contained in another one. Equality is
    equality of the underlying sets.
    """

    backend: CategoryBackend
    terms: Tuple[Tuple[Arrow, Tuple[Arrow, ...]], ...] = ()

    @classmethod
    def build(cls, backend: CategoryBackend, terms) -> "BooleanIdeal":
        kept = []
        for g, excluded in terms:
            g = canonical(g)
            excluded = _restrict_exclusions(g, excluded)
            if any(in_ideal(g, f) for f in excluded):
                continue
            # drop exclusions covered by another exclusion
            excluded = tuple(f for f in excluded
                             if not any(f2 != f and in_ideal(f, f2) and not same_ideal(f, f2)
                                        for f2 in excluded))
            term = (g, tuple(sorted(set(excluded))))
            if any(_covers(term, other) for other in kept):
                continue
            kept = [other for other in kept if not _covers(other, term)]
            kept.append(term)
        return cls(backend, tuple(sorted(kept, key=lambda t: (t[0], t[1]))))

    @classmethod
    def principal(cls, c: Arrow) -> "BooleanIdeal":
        return cls.build(c.backend, [(c, ())])

    @classmethod
    def whole(cls, backend: CategoryBackend) -> "BooleanIdeal":
        return cls.build(backend, [(obj, ()) for obj in backend.objects()])

    @classmethod
    def empty(cls, backend: CategoryBackend) -> "BooleanIdeal":
        return cls(backend, ())

    @classmethod
    def atom(cls, c: Arrow) -> "BooleanIdeal":
        """cC minus every strictly smaller principal ideal; finite backends only."""
        backend = c.backend
        if not backend.is_finite:
            raise ValueError("atoms are only available on finite backends")
        below = [x.payload for x in backend.box(0)
                 if in_ideal(x, c) and not same_ideal(x, c)]
        excluded = [Arrow(backend, p) for p in minimal_generators(backend, below)]
        return cls.build(backend, [(c, excluded)])

    @classmethod
    def from_points(cls, backend: CategoryBackend, points: Iterable[Arrow]) -> "BooleanIdeal":
        """Union of the atoms of the given points (exact for unit-closed sets)."""
        out = cls.empty(backend)
        for x in points:
            out = out.union(cls.atom(x))
        return out

    @classmethod
    def from_generators(cls, generators: Iterable[Arrow]) -> "BooleanIdeal":
        generators = list(generators)
        if not generators:
            raise ValueError("from_generators needs at least one arrow; use empty()")
        return cls.build(generators[0].backend, [(g, ()) for g in generators])

    def sample_points(self, bound: int) -> List[Arrow]:
        """Members of the ideal inside the backend's box of the given bound."""
        return [x for x in self.backend.box(bound) if self.contains(x)]

    def contains(self, x: Arrow) -> bool:
        return boolean_membership(x, self)

    def __contains__(self, x: Arrow) -> bool:
        return self.contains(x)

    def is_empty(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, BooleanIdeal) or self.backend.key != other.backend.key:
            return NotImplemented
        if self.terms == other.terms:
            return True
        return self.difference(other).is_empty() and other.difference(self).is_empty()

    def __hash__(self):
        return hash(self.backend.key)

    def union(self, other: "BooleanIdeal") -> "BooleanIdeal":
        return BooleanIdeal.build(self.backend, self.terms + other.terms)

    def intersect(self, other: "BooleanIdeal") -> "BooleanIdeal":
        terms = []
        for g1, ex1 in self.terms:
            for g2, ex2 in other.terms:
                for h in ideal_meet_generators(g1, g2):
                    terms.append((h, ex1 + ex2))
        return BooleanIdeal.build(self.backend, terms)

    def complement(self) -> "BooleanIdeal":
        out = BooleanIdeal.whole(self.backend)
        for g, excluded in self.terms:
            # C \ (gC \ F) = (C \ gC) ∪ F
            pieces = [(obj, (g,) if in_ideal(g, obj) else ()) for obj in self.backend.objects()]
            pieces += [(f, ()) for f in excluded]
            out = out.intersect(BooleanIdeal.build(self.backend, pieces))
        return out

    def difference(self, other: "BooleanIdeal") -> "BooleanIdeal":
        return self.intersect(other.complement())

    def generators(self) -> List[Arrow]:
        return [g for g, _ in self.terms]

    def __str__(self):
        if not self.terms:
            return "empty"
        parts = []
        for g, excluded in self.terms:
            text = f"{g}C"
            if excluded:
                text += " \\ " + " \\ ".join(f"{f}C" for f in excluded)
            parts.append(text)
        return " | ".join(parts)


def boolean_membership(x: Arrow, ideal: BooleanIdeal) -> bool:
    for g, excluded in ideal.terms:
        if in_ideal(x, g) and not any(in_ideal(x, f) for f in excluded):
            return True
    return False


def domain_ideal(s: HullElement) -> BooleanIdeal:
    return BooleanIdeal.build(s.backend, [(g, ()) for g in domain_generators(s)])


def _preimage_of_principal(s: HullElement, h: Arrow) -> List[Arrow]:
    if s.backend.is_finite and s.normal is None:
        points = [x.payload for x, y in s.graph() if in_ideal(y, h)]
        return [Arrow(s.backend, p) for p in minimal_generators(s.backend, points)]
    return domain_generators(hull_compose(idempotent(h), s))


def preimage(s: HullElement, ideal: BooleanIdeal) -> BooleanIdeal:
    """{x ∈ dom(s) : s(x) ∈ ideal}."""
    terms = []
    for g, excluded in ideal.terms:
        removed = [p for f in excluded for p in _preimage_of_principal(s, f)]
        for p in _preimage_of_principal(s, g):
            terms.append((p, removed))
    return BooleanIdeal.build(s.backend, terms)


def image(s: HullElement, ideal: BooleanIdeal) -> BooleanIdeal:
    """s(ideal ∩ dom(s))."""
    return preimage(hull_invert(s), ideal)


class ExtendedHullElement:
    """s restricted to a Boolean ideal inside its domain (None: all of dom(s))."""

    __slots__ = ("s", "restriction")

    def __init__(self, s: HullElement, restriction: Optional[BooleanIdeal] = None):
        self.s = s
        if restriction is not None:
            restriction = restriction.intersect(domain_ideal(s))
        self.restriction = restriction

    @property
    def backend(self):
        return self.s.backend

    def domain(self) -> BooleanIdeal:
        return domain_ideal(self.s) if self.restriction is None else self.restriction

    def __call__(self, x: Arrow) -> Optional[Arrow]:
        return apply(self, x)

    def __str__(self):
        if self.restriction is None:
            return str(self.s)
        return f"{self.s} on [{self.restriction}]"


def extended_compose(s: ExtendedHullElement, t: ExtendedHullElement) -> ExtendedHullElement:
    st = hull_compose(s.s, t.s)
    domain = t.domain().intersect(preimage(t.s, s.domain()))
    return ExtendedHullElement(st, domain)


def extended_invert(s: ExtendedHullElement) -> ExtendedHullElement:
    inverse = hull_invert(s.s)
    if s.restriction is None:
        return ExtendedHullElement(inverse)
    return ExtendedHullElement(inverse, image(s.s, s.restriction))


def hull_by_words(backend: CategoryBackend, max_length: int = 8,
                  generators: Optional[Sequence[Arrow]] = None) -> Tuple[set, Optional[int]]:
    """Breadth-first enumeration of zigzag words over the given generators
    (default: every arrow of a finite backend).

    Returns the distinct hull elements found and the word length at which the
    set stopped growing, or None if it was still growing at ``max_length``.
    """
    if generators is None:
        if not backend.is_finite:
            raise ValueError("generators are required on infinite backends")
        generators = backend.box(0)
    letters = [left_mult(c) for c in generators] + [left_inverse(c) for c in generators]
    seen = set(letters)
    frontier = deque(seen)
    for length in range(2, max_length + 1):
        grown = deque()
        while frontier:
            word = frontier.popleft()
            for letter in letters:
                candidate = hull_compose(letter, word)
                if candidate not in seen:
                    seen.add(candidate)
                    grown.append(candidate)
        logger.debug("words of length %d add %d elements", length, len(grown))
        if not grown:
            return seen, length - 1
        frontier = grown
    return seen, None
