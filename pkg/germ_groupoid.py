"""Germs of the extended hull acting on characters, at principal characters.

Domains of hull elements are right ideals and s(pq) = s(p)q, so two germs at
χ_c coincide exactly when the underlying maps agree at c. Every decision about
germs below rests on that.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import config
from characters import BasicOpen, PrincipalCharacter, char_act, char_eq, find_principal_in
from errors import NotComposable, OutsideBisection
from inverse_hull import (BooleanIdeal, ExtendedHullElement, HullElement, apply,
                          extended_compose, extended_invert, from_normal, hull_compose,
                          hull_eq, idempotent, image, left_inverse)
from lcsc_core import (Arrow, CategoryBackend, NxZmodBackend, ZNxBackend,
                       left_unit_solutions, units_at)
from verdicts import Status, Verdict

logger = logging.getLogger(__name__)


def _extended(s: Union[HullElement, ExtendedHullElement]) -> ExtendedHullElement:
    return s if isinstance(s, ExtendedHullElement) else ExtendedHullElement(s)


class Germ:
    """[s, χ_c] with c in the domain of s."""

    __slots__ = ("s", "chi")

    def __init__(self, s: Union[HullElement, ExtendedHullElement], chi: PrincipalCharacter):
        self.s = _extended(s)
        self.chi = chi
        if apply(self.s, chi.c) is None:
            raise ValueError(f"{chi} is not in the domain of {self.s}")

    @property
    def source(self) -> PrincipalCharacter:
        return self.chi

    @property
    def target(self) -> PrincipalCharacter:
        return char_act(self.s, self.chi)

    @property
    def backend(self) -> CategoryBackend:
        return self.chi.backend

    def value(self) -> Arrow:
        """s at the canonical representative of the source."""
        return apply(self.s, self.chi.representative)

    def key(self):
        return self.chi.representative, self.value()

    def __eq__(self, other):
        return isinstance(other, Germ) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Germ({self.s}; {self.chi})"

    def __str__(self):
        return f"germ({self.s}; {self.chi})"


def unit_germ(chi: PrincipalCharacter) -> Germ:
    return Germ(idempotent(chi.c), chi)


def germ_eq(g1: Germ, g2: Germ) -> Verdict:
    """Equal with a neighbourhood witness, or Distinct with a point of disagreement."""
    if not char_eq(g1.chi, g2.chi):
        return Verdict(Status.DISTINCT, witness=g2.chi.c, detail="different source characters")
    c = g1.chi.c
    if apply(g1.s, c) != apply(g2.s, c):
        return Verdict(Status.DISTINCT, witness=c)
    neighbourhood = BooleanIdeal.principal(c).intersect(g1.s.domain()).intersect(g2.s.domain())
    restriction = idempotent(c)
    confirmed = hull_eq(hull_compose(g1.s.s, restriction), hull_compose(g2.s.s, restriction))
    if confirmed.status != Status.EQUAL:
        logger.warning("germs agree at %s but their restrictions differ at %s", c, confirmed.witness)
        return Verdict(Status.INCONCLUSIVE, witness=confirmed.witness,
                       detail="restrictions to cC could not be matched")
    return Verdict(Status.EQUAL, witness=neighbourhood)


def germ_compose(g1: Germ, g2: Germ) -> Germ:
    """[s, t·χ]·[t, χ] = [s∘t, χ]."""
    if not char_eq(g1.source, g2.target):
        raise NotComposable(f"{g1} starts at {g1.source}, {g2} ends at {g2.target}")
    return Germ(extended_compose(g1.s, g2.s), g2.chi)


def germ_inverse(g: Germ) -> Germ:
    return Germ(extended_invert(g.s), g.target)


@dataclass(frozen=True)
class Bisection:
    """[s, U] for a basic open U inside the domain of s."""

    s: ExtendedHullElement
    U: BasicOpen

    def __post_init__(self):
        object.__setattr__(self, "s", _extended(self.s))
        if not self.U.region().difference(self.s.domain()).is_empty():
            raise OutsideBisection(f"{self.U} is not contained in the domain of {self.s}")

    def contains(self, chi: PrincipalCharacter) -> bool:
        return self.U.contains(chi) and apply(self.s, chi.c) is not None

    def germ_at(self, chi: PrincipalCharacter) -> Germ:
        if not self.contains(chi):
            raise OutsideBisection(f"{chi} is not in the source of the bisection")
        return Germ(self.s, chi)

    def inverse(self) -> "Bisection":
        inverse = extended_invert(self.s)
        return Bisection(inverse, BasicOpen(image(self.s.s, self.U.region())))

    def __str__(self):
        return f"[{self.s}, {self.U}]"


def canonical_bisection(c: Arrow) -> Bisection:
    """[c, Ω(c⁻¹c)]⁻¹ = [c⁻¹, Ω(cC)]."""
    return Bisection(ExtendedHullElement(left_inverse(c)), BasicOpen(BooleanIdeal.principal(c)))


def unit_bisection(c: Arrow) -> Bisection:
    return Bisection(ExtendedHullElement(idempotent(c)), BasicOpen(BooleanIdeal.principal(c)))


def ad_bisection(gamma: Bisection, g: Germ) -> Germ:
    """Γ g Γ⁻¹ = [s_Γ ∘ s_g ∘ s_Γ⁻¹, Γ·χ]."""
    if not gamma.contains(g.source) or not gamma.contains(g.target):
        raise OutsideBisection(f"{g} is not over the source of {gamma}")
    conjugated = extended_compose(extended_compose(gamma.s, g.s), extended_invert(gamma.s))
    return Germ(conjugated, char_act(gamma.s, g.source))


def conjugation_germ(c: Arrow, u: Arrow) -> Germ:
    """[c u c⁻¹, χ_c] for an invertible endomorphism u of source(c)."""
    return Germ(from_normal(c * u, c), PrincipalCharacter(c))


@dataclass(frozen=True)
class IsotropyGroup:
    base: PrincipalCharacter
    generators: Tuple[Germ, ...]
    elements: Optional[Tuple[Germ, ...]] = None
    table: Optional[Dict[Tuple[int, int], int]] = field(default=None, compare=False)

    @property
    def order(self) -> Optional[int]:
        return None if self.elements is None else len(self.elements)

    def is_cyclic(self) -> Optional[bool]:
        """None when the group was not enumerated."""
        if self.elements is None:
            return None
        if len(self.elements) == 1:
            return True
        for start in range(len(self.elements)):
            current, seen = start, {start}
            while True:
                current = self.table[(start, current)]
                if current in seen:
                    break
                seen.add(current)
            if len(seen) == len(self.elements):
                return True
        return False


def isotropy_at(chi: PrincipalCharacter) -> IsotropyGroup:
    """Isotropy at χ_c: the germs [c u c⁻¹, χ_c], u invertible at source(c)."""
    c = chi.c
    units = units_at(c.source)
    generators = tuple(conjugation_germ(c, u) for u in units.generators)
    if not units.finite:
        return IsotropyGroup(chi, generators)
    elements = tuple(conjugation_germ(c, u) for u in units.elements)
    index = {g: i for i, g in enumerate(elements)}
    table = {}
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            table[(i, j)] = index[germ_compose(g, h)]
    return IsotropyGroup(chi, generators, elements, table)


def isotropy_conjugation_check(c: Arrow) -> Verdict:
    """The canonical bisection carries the isotropy at χ_c onto the isotropy at χ_{source(c)}."""
    gamma = canonical_bisection(c)
    here, there = isotropy_at(PrincipalCharacter(c)), isotropy_at(PrincipalCharacter(c.source))
    if here.elements is None:
        for g in here.generators:
            image_germ = ad_bisection(gamma, g)
            if image_germ.source != there.base or image_germ.target != there.base:
                return Verdict(Status.FAIL, witness=g, detail="generator leaves the isotropy")
        return Verdict(Status.PASS, detail=f"{len(here.generators)} generators carried over")
    images = [ad_bisection(gamma, g) for g in here.elements]
    if len(set(images)) != len(images) or set(images) != set(there.elements):
        return Verdict(Status.FAIL, witness=c, detail="conjugation is not a bijection of isotropy groups")
    return Verdict(Status.PASS, detail=f"{len(images)} elements matched")


# ------------------------------------------------------------ subgroupoids

UNIT_SPACE = "units"
INVERTIBLES = "invertibles"
ISO_INTERIOR = "iso-interior"
GENERATED = "generated"
KINDS = (UNIT_SPACE, INVERTIBLES, ISO_INTERIOR, GENERATED)


@dataclass(frozen=True)
class SubgroupoidSpec:
    kind: str
    germs: Tuple[Germ, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown subgroupoid {self.kind!r}; expected one of {', '.join(KINDS)}")

    def __str__(self):
        if self.kind == GENERATED:
            return "generated(" + ", ".join(str(g) for g in self.germs) + ")"
        return self.kind


def in_iso_interior(g: Germ, budget: Optional[int] = None) -> Verdict:
    """Yes with a neighbourhood on which every point is fixed, No with a moved
    character, or Unknown when the budget runs out."""
    target = g.target
    if not char_eq(target, g.source):
        return Verdict(Status.NO, witness=(g.source, target), detail="the germ moves its base character")
    backend = g.backend
    if backend.is_finite:
        # a principal character of a finite table is isolated: its atom is a neighbourhood
        atom = BooleanIdeal.atom(g.chi.c).intersect(g.s.domain())
        for x in backend.box(0):
            if atom.contains(x) and not char_eq(PrincipalCharacter(apply(g.s, x)), PrincipalCharacter(x)):
                return Verdict(Status.NO, witness=x)
        return Verdict(Status.YES, witness=atom, detail="exact on the atom of the base point")

    from families import nx_zmod_interior, znx_interior
    if isinstance(backend, NxZmodBackend):
        return nx_zmod_interior(g)
    if isinstance(backend, ZNxBackend):
        return znx_interior(g, budget=budget)
    return Verdict(Status.UNKNOWN, detail=f"no interior decider for {backend!r}")


def _generated_membership(g: Germ, generators: Sequence[Germ], budget: int) -> Verdict:
    letters = list(generators) + [germ_inverse(h) for h in generators]
    start = unit_germ(g.source)
    if start == g:
        return Verdict(Status.YES, witness=start)
    seen: Set[Germ] = {start}
    frontier = deque([start])
    steps = 0
    while frontier:
        current = frontier.popleft()
        for letter in letters:
            if not char_eq(letter.source, current.target):
                continue
            steps += 1
            if steps > budget:
                return Verdict(Status.UNKNOWN, bound=budget, detail="budget exhausted")
            product = germ_compose(letter, current)
            if product == g:
                return Verdict(Status.YES, witness=product)
            if product not in seen:
                seen.add(product)
                frontier.append(product)
    return Verdict(Status.NO, detail=f"closure from {g.source} has {len(seen)} germs")


def in_subgroupoid(g: Germ, spec: SubgroupoidSpec, budget: Optional[int] = None) -> Verdict:
    budget = config.resolve_budget(budget)
    if spec.kind == UNIT_SPACE:
        verdict = germ_eq(g, unit_germ(g.source))
        return Verdict(Status.YES if verdict.status == Status.EQUAL else Status.NO,
                       witness=verdict.witness)
    if spec.kind == INVERTIBLES:
        c = g.chi.c
        solutions = left_unit_solutions(c, apply(g.s, c))
        if solutions:
            return Verdict(Status.YES, witness=solutions[0])
        return Verdict(Status.NO, witness=apply(g.s, c),
                       detail=f"no invertible u with u·{c} = {apply(g.s, c)}")
    if spec.kind == ISO_INTERIOR:
        return in_iso_interior(g, budget=budget)
    return _generated_membership(g, spec.germs, budget)


@dataclass(frozen=True)
class Certificate:
    chi: PrincipalCharacter
    gamma: Bisection
    subgroupoid: SubgroupoidSpec
    checked: Tuple[Tuple[Germ, Germ], ...]

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Failure:
    chi: PrincipalCharacter
    generator: Optional[Germ]
    subgroupoid: Optional[SubgroupoidSpec]
    detail: str = ""

    def __bool__(self):
        return False


def rtp_witness(chi: PrincipalCharacter, family: Optional[Sequence[SubgroupoidSpec]] = None,
                gamma: Optional[Bisection] = None,
                budget: Optional[int] = None) -> Union[Certificate, Failure]:
    """Find H in the family with Γ G^χ_χ Γ⁻¹ ⊆ H; Γ defaults to the canonical bisection."""
    family = list(family or [SubgroupoidSpec(INVERTIBLES)])
    gamma = gamma or canonical_bisection(chi.c)
    if not gamma.contains(chi):
        return Failure(chi, None, None, f"{chi} is not over the source of {gamma}")
    iso = isotropy_at(chi)
    generators = iso.elements if iso.elements is not None else iso.generators

    last = Failure(chi, None, None, "empty family")
    for spec in family:
        checked = []
        for generator in generators:
            image_germ = ad_bisection(gamma, generator)
            verdict = in_subgroupoid(image_germ, spec, budget=budget)
            if verdict.status != Status.YES:
                last = Failure(chi, generator, spec, f"{image_germ}: {verdict}")
                logger.debug("candidate %s rejected at %s", spec, generator)
                break
            checked.append((generator, image_germ))
        else:
            return Certificate(chi, gamma, spec, tuple(checked))
    return last


def sample_coverage(backend: CategoryBackend, family: Sequence[SubgroupoidSpec],
                    opens: Iterable[BasicOpen], bound: Optional[int] = None) -> Verdict:
    """For each basic open, look for a principal character with an RTP certificate."""
    opens = list(opens)
    covered, undecided = [], []
    for u in opens:
        found = find_principal_in(u, bound=bound)
        if found.status != Status.YES:
            if found.status != Status.EMPTY:
                undecided.append(u)
            continue
        if rtp_witness(found.witness, family):
            covered.append((u, found.witness))
        else:
            undecided.append(u)
    status = Status.PASS if not undecided else Status.INCONCLUSIVE
    return Verdict(status, bound=bound, detail=f"{len(covered)}/{len(opens)} basic opens covered",
                   extra={"covered": covered, "undecided": undecided})


# ------------------------------------------------- discrete action groupoids

@dataclass
class DiscreteActionGroupoid:
    """A finite group acting on a finite set; arrows are pairs (g, x): x → g·x."""

    elements: List
    multiply: Dict[Tuple, object]
    identity: object
    points: List
    act: Dict[Tuple, object]

    def validate(self) -> "DiscreteActionGroupoid":
        for x in self.points:
            if self.act[(self.identity, x)] != x:
                raise ValueError(f"identity moves {x!r}")
        for g in self.elements:
            for h in self.elements:
                for x in self.points:
                    if self.act[(g, self.act[(h, x)])] != self.act[(self.multiply[(g, h)], x)]:
                        raise ValueError(f"action law fails for ({g!r}, {h!r}, {x!r})")
        return self

    def inverse(self, g):
        return next(h for h in self.elements if self.multiply[(g, h)] == self.identity)

    def stabilizer(self, x) -> List:
        return [g for g in self.elements if self.act[(g, x)] == x]

    def unit_space(self) -> Set[Tuple]:
        return {(self.identity, x) for x in self.points}


def group_on_itself(n: int) -> DiscreteActionGroupoid:
    elements = list(range(n))
    table = {(g, h): (g + h) % n for g in elements for h in elements}
    return DiscreteActionGroupoid(elements, table, 0, list(elements), dict(table)).validate()


def trivial_action(n: int, points: int = 1) -> DiscreteActionGroupoid:
    elements = list(range(n))
    table = {(g, h): (g + h) % n for g in elements for h in elements}
    act = {(g, x): x for g in elements for x in range(points)}
    return DiscreteActionGroupoid(elements, table, 0, list(range(points)), act).validate()


def rotation_action(n: int, points: int) -> DiscreteActionGroupoid:
    """Z/n rotating Z/points; needs points | n."""
    if n % points:
        raise ValueError(f"Z/{n} does not act on Z/{points} by rotation")
    elements = list(range(n))
    table = {(g, h): (g + h) % n for g in elements for h in elements}
    act = {(g, x): (g + x) % points for g in elements for x in range(points)}
    return DiscreteActionGroupoid(elements, table, 0, list(range(points)), act).validate()


def xh_membership_discrete(u, H: Set[Tuple], groupoid: DiscreteActionGroupoid,
                           budget: Optional[int] = None) -> Verdict:
    """Is there an arrow γ = (h, u) with γ G^u_u γ⁻¹ ⊆ H?"""
    budget = config.resolve_budget(budget)
    stabilizer = groupoid.stabilizer(u)
    for tried, h in enumerate(groupoid.elements):
        if tried >= budget:
            return Verdict(Status.UNKNOWN, bound=budget, detail="budget exhausted")
        h_inv = groupoid.inverse(h)
        moved = groupoid.act[(h, u)]
        conjugates = {(groupoid.multiply[(groupoid.multiply[(h, g)], h_inv)], moved) for g in stabilizer}
        if conjugates <= H:
            return Verdict(Status.YES, witness=h)
    return Verdict(Status.NO, detail=f"stabilizer of {u!r} has order {len(stabilizer)}")


def xh_set(H: Set[Tuple], groupoid: DiscreteActionGroupoid, budget: Optional[int] = None) -> List:
    return [x for x in groupoid.points
            if xh_membership_discrete(x, H, groupoid, budget=budget).status == Status.YES]
