"""Concrete left cancellative small categories.

Three backend families are implemented:

  - ``FiniteTableBackend``: a finite category given by its composition table.
  - ``NxZmodBackend``: the monoid N^x ⋉ Z/nZ with (a,[k])(b,[l]) = (ab,[kb+l]).
  - ``ZNxBackend``: the monoid Z ⋊ N^x with (k,a)(l,b) = (k+al, ab).

Arrows carry a reference to their backend and a family specific payload.
Partial operations (composition, left division) return ``None`` when
undefined.
"""
import hashlib
import json
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import config
from errors import BackendMismatch, InvalidTable, NotRightLcm, NotValidated
from verdicts import Status, Verdict

logger = logging.getLogger(__name__)


class Arrow:
    """An element of a concrete LCSC."""

    __slots__ = ("backend", "payload")

    def __init__(self, backend: "CategoryBackend", payload):
        self.backend = backend
        self.payload = payload

    @property
    def source(self) -> "Arrow":
        return Arrow(self.backend, self.backend.source_payload(self.payload))

    @property
    def target(self) -> "Arrow":
        return Arrow(self.backend, self.backend.target_payload(self.payload))

    def is_identity(self) -> bool:
        return self.backend.source_payload(self.payload) == self.payload \
            and self.backend.target_payload(self.payload) == self.payload \
            and self.backend.is_identity_payload(self.payload)

    def __mul__(self, other: "Arrow") -> "Arrow":
        result = compose(self, other)
        if result is None:
            raise ValueError(f"{self} and {other} are not composable")
        return result

    def __eq__(self, other):
        return isinstance(other, Arrow) and self.backend.key == other.backend.key \
            and self.payload == other.payload

    def __hash__(self):
        return hash((self.backend.key, self.payload))

    def __lt__(self, other: "Arrow"):
        return self.backend.order_key(self.payload) < other.backend.order_key(other.payload)

    def __repr__(self):
        return f"Arrow({self.backend.render(self.payload)})"

    def __str__(self):
        return self.backend.render(self.payload)


@dataclass(frozen=True)
class LcmWitness:
    w: Arrow
    alpha: Arrow
    beta: Arrow


@dataclass(frozen=True)
class UnitGroup:
    finite: bool
    generators: Tuple[Arrow, ...]
    elements: Optional[Tuple[Arrow, ...]] = None

    @property
    def order(self) -> Optional[int]:
        return len(self.elements) if self.elements is not None else None


class CategoryBackend:
    kind = "abstract"
    is_finite = False
    is_monoid = True

    def __init__(self):
        self.validated = False

    # payload level primitives, implemented per family
    def source_payload(self, p):
        raise NotImplementedError

    def target_payload(self, p):
        raise NotImplementedError

    def is_identity_payload(self, p) -> bool:
        return p in self.object_payloads()

    def object_payloads(self) -> list:
        raise NotImplementedError

    def compose_payload(self, p, q):
        raise NotImplementedError

    def divide_payload(self, q, p):
        raise NotImplementedError

    def lcm_payload(self, a, b):
        """Return (w, alpha, beta) payloads, or None for an empty intersection."""
        raise NotImplementedError

    def canonical_payload(self, p):
        raise NotImplementedError

    def order_key(self, p):
        return p

    def render(self, p) -> str:
        return str(p)

    def box_payloads(self, bound: int) -> list:
        raise NotImplementedError

    @property
    def is_right_lcm(self) -> bool:
        return True

    # arrow level helpers
    def arrow(self, *payload) -> Arrow:
        raise NotImplementedError

    def identity(self, obj=None) -> Arrow:
        objs = self.object_payloads()
        if obj is None:
            if len(objs) != 1:
                raise ValueError("identity() needs an object on a multi-object category")
            return Arrow(self, objs[0])
        if isinstance(obj, Arrow):
            return obj.target
        return self.arrow(obj)

    def objects(self) -> List[Arrow]:
        return [Arrow(self, p) for p in self.object_payloads()]

    def box(self, bound: int) -> List[Arrow]:
        return [Arrow(self, p) for p in self.box_payloads(bound)]

    def units(self, obj: Optional[Arrow] = None) -> Optional[List[Arrow]]:
        """Invertible arrows (at ``obj`` if given); None when infinitely many."""
        raise NotImplementedError

    def unit_generators(self, obj: Optional[Arrow] = None) -> List[Arrow]:
        raise NotImplementedError

    def left_unit_solutions(self, c: Arrow, y: Arrow) -> List[Arrow]:
        """Units u with u·c = y."""
        raise NotImplementedError

    def sample(self, rng, bound: int = 12) -> Arrow:
        return rng.choice(self.box(bound))

    def __repr__(self):
        return f"{type(self).__name__}{self.key}"


class NxZmodBackend(CategoryBackend):
    """N^x ⋉ Z/nZ, payload (a, k) with a >= 1 and 0 <= k < n."""

    kind = "nx-zmod"

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise ValueError(f"modulus must be >= 1, got {n}")
        self.n = n
        self.key = ("nx-zmod", n)

    def arrow(self, a: int, k: int = 0) -> Arrow:
        if a < 1:
            raise ValueError(f"multiplicative component must be >= 1, got {a}")
        return Arrow(self, (a, k % self.n))

    def object_payloads(self):
        return [(1, 0)]

    def source_payload(self, p):
        return (1, 0)

    def target_payload(self, p):
        return (1, 0)

    def compose_payload(self, p, q):
        (a, k), (b, l) = p, q
        return (a * b, (k * b + l) % self.n)

    def divide_payload(self, q, p):
        (a, k), (c, m) = q, p
        if c % a:
            return None
        b = c // a
        return (b, (m - k * b) % self.n)

    def lcm_payload(self, x, y):
        w = (math.lcm(x[0], y[0]), 0)
        return w, self.divide_payload(x, w), self.divide_payload(y, w)

    def canonical_payload(self, p):
        return (p[0], 0)

    def render(self, p):
        return f"({p[0]},{p[1]})"

    def box_payloads(self, bound):
        return [(a, k) for a in range(1, bound + 1) for k in range(self.n)]

    def units(self, obj=None):
        return [Arrow(self, (1, k)) for k in range(self.n)]

    def unit_generators(self, obj=None):
        return [Arrow(self, (1, 1 % self.n))]

    def left_unit_solutions(self, c, y):
        (a, k), (b, m) = c.payload, y.payload
        if a != b:
            return []
        return [Arrow(self, (1, j)) for j in range(self.n) if (j * a + k - m) % self.n == 0]

    def sample(self, rng, bound=12):
        return Arrow(self, (rng.randint(1, bound), rng.randrange(self.n)))


class ZNxBackend(CategoryBackend):
    """Z ⋊ N^x, payload (k, a) with a >= 1."""

    kind = "z-nx"

    def __init__(self):
        super().__init__()
        self.key = ("z-nx",)

    def arrow(self, k: int, a: int = 1) -> Arrow:
        if a < 1:
            raise ValueError(f"multiplicative component must be >= 1, got {a}")
        return Arrow(self, (k, a))

    def object_payloads(self):
        return [(0, 1)]

    def source_payload(self, p):
        return (0, 1)

    def target_payload(self, p):
        return (0, 1)

    def compose_payload(self, p, q):
        (k, a), (l, b) = p, q
        return (k + a * l, a * b)

    def divide_payload(self, q, p):
        (k, a), (m, c) = q, p
        if c % a or (m - k) % a:
            return None
        return ((m - k) // a, c // a)

    def lcm_payload(self, x, y):
        (k, a), (l, b) = x, y
        g = math.gcd(a, b)
        if (l - k) % g:
            return None
        a_red, b_red = a // g, b // g
        step = ((l - k) // g * pow(a_red, -1, b_red)) % b_red if b_red > 1 else 0
        big = a_red * b
        w = ((k + a * step) % big, big)
        return w, self.divide_payload(x, w), self.divide_payload(y, w)

    def canonical_payload(self, p):
        return (p[0] % p[1], p[1])

    def order_key(self, p):
        return (p[1], p[0])

    def render(self, p):
        return f"({p[0]},{p[1]})"

    def box_payloads(self, bound, additive: Optional[int] = None):
        side = bound if additive is None else additive
        return [(k, a) for a in range(1, bound + 1) for k in range(-side, side + 1)]

    def box(self, bound, additive: Optional[int] = None):
        return [Arrow(self, p) for p in self.box_payloads(bound, additive)]

    def units(self, obj=None):
        return None

    def unit_generators(self, obj=None):
        return [Arrow(self, (1, 1)), Arrow(self, (-1, 1))]

    def left_unit_solutions(self, c, y):
        (k, a), (m, b) = c.payload, y.payload
        if a != b:
            return []
        return [Arrow(self, (m - k, 1))]

    def sample(self, rng, bound=12):
        return Arrow(self, (rng.randint(-bound, bound), rng.randint(1, bound)))


class FiniteTableBackend(CategoryBackend):
    """A finite category given by objects, arrows and a composition table.

    Payloads are arrow indices. Identity arrows share the name of their object.
    """

    kind = "table"
    is_finite = True

    def __init__(self, objects: Sequence[str], arrows: Sequence[Tuple[str, str, str]],
                 compose: Sequence[Tuple[str, str, str]], name: str = "table"):
        super().__init__()
        self.name = name
        self.object_names = list(objects)
        if len(set(self.object_names)) != len(self.object_names):
            raise InvalidTable("duplicate object names")
        self.names: List[str] = []
        self.src: List[int] = []
        self.tgt: List[int] = []
        index: Dict[str, int] = {}

        for obj in self.object_names:
            index[obj] = len(self.names)
            self.names.append(obj)
        for obj in self.object_names:
            self.src.append(index[obj])
            self.tgt.append(index[obj])

        for arrow_name, s, t in arrows:
            if s not in self.object_names or t not in self.object_names:
                raise InvalidTable(f"arrow {arrow_name!r} has unknown source/target")
            if arrow_name in self.object_names:
                if s != arrow_name or t != arrow_name:
                    raise InvalidTable(f"identity {arrow_name!r} must be an endomorphism of itself")
                continue
            if arrow_name in index:
                raise InvalidTable(f"duplicate arrow {arrow_name!r}")
            index[arrow_name] = len(self.names)
            self.names.append(arrow_name)
            self.src.append(index[s])
            self.tgt.append(index[t])
        self.index = index

        table: Dict[Tuple[int, int], int] = {}
        for left, right, result in compose:
            for nm in (left, right, result):
                if nm not in index:
                    raise InvalidTable(f"unknown arrow {nm!r} in composition table")
            pair = (index[left], index[right])
            if pair in table and table[pair] != index[result]:
                raise InvalidTable(f"conflicting entries for {left}·{right}")
            table[pair] = index[result]
        for x in range(len(self.names)):
            for pair in ((self.tgt[x], x), (x, self.src[x])):
                if table.setdefault(pair, x) != x:
                    raise InvalidTable(f"identity law fails for {self.names[x]!r}")
        self.table = table
        self._check_structure()

        digest = hashlib.sha1(json.dumps(self.to_dict(), sort_keys=True).encode("utf-8")).hexdigest()
        self.key = ("table", digest[:16])
        self._divisions = self._division_index()
        self._right_lcm: Optional[bool] = None

    @property
    def is_monoid(self):
        return len(self.object_names) == 1

    def _check_structure(self):
        count = len(self.names)
        for (x, y), z in self.table.items():
            if self.src[x] != self.tgt[y]:
                raise InvalidTable(f"{self.names[x]}·{self.names[y]} listed but not composable")
            if self.src[z] != self.src[y] or self.tgt[z] != self.tgt[x]:
                raise InvalidTable(f"{self.names[x]}·{self.names[y]} has wrong source/target")
        for x, y in product(range(count), repeat=2):
            if self.src[x] == self.tgt[y] and (x, y) not in self.table:
                raise InvalidTable(f"missing composition {self.names[x]}·{self.names[y]}")
        for x, y, z in product(range(count), repeat=3):
            if self.src[x] == self.tgt[y] and self.src[y] == self.tgt[z]:
                if self.table[(self.table[(x, y)], z)] != self.table[(x, self.table[(y, z)])]:
                    raise InvalidTable(
                        f"associativity fails on ({self.names[x]}, {self.names[y]}, {self.names[z]})")

    def _division_index(self) -> Dict[int, Dict[int, int]]:
        out: Dict[int, Dict[int, int]] = {}
        for (x, y), z in self.table.items():
            out.setdefault(x, {}).setdefault(z, y)
        return out

    def to_dict(self) -> dict:
        return {
            "objects": list(self.object_names),
            "arrows": [{"name": self.names[i], "source": self.names[self.src[i]],
                        "target": self.names[self.tgt[i]]} for i in range(len(self.names))],
            "compose": sorted([self.names[x], self.names[y], self.names[z]]
                              for (x, y), z in self.table.items()),
        }

    def arrow(self, name) -> Arrow:
        if isinstance(name, int):
            return Arrow(self, name)
        if name not in self.index:
            raise KeyError(f"no arrow named {name!r}")
        return Arrow(self, self.index[name])

    def object_payloads(self):
        return list(range(len(self.object_names)))

    def is_identity_payload(self, p):
        return p < len(self.object_names)

    def source_payload(self, p):
        return self.src[p]

    def target_payload(self, p):
        return self.tgt[p]

    def compose_payload(self, p, q):
        return self.table.get((p, q))

    def divide_payload(self, q, p):
        return self._divisions.get(q, {}).get(p)

    def principal_ideal(self, p) -> frozenset:
        return frozenset(self._divisions.get(p, {}).keys())

    def meet_generator_payloads(self, a, b) -> List[int]:
        common = self.principal_ideal(a) & self.principal_ideal(b)
        return minimal_generators(self, common)

    @property
    def is_right_lcm(self):
        if self._right_lcm is None:
            self._right_lcm = all(len(self.meet_generator_payloads(a, b)) <= 1
                                  for a, b in product(range(len(self.names)), repeat=2))
        return self._right_lcm

    def lcm_payload(self, x, y):
        gens = self.meet_generator_payloads(x, y)
        if len(gens) > 1:
            raise NotRightLcm(f"{self.names[x]}C ∩ {self.names[y]}C needs {len(gens)} generators")
        if not gens:
            return None
        w = gens[0]
        return w, self.divide_payload(x, w), self.divide_payload(y, w)

    def canonical_payload(self, p):
        translates = [self.compose_payload(p, u.payload) for u in self.units()
                      if self.tgt[u.payload] == self.src[p]]
        return min(translates)

    def render(self, p):
        return self.names[p]

    def box_payloads(self, bound=None):
        return list(range(len(self.names)))

    def units(self, obj=None):
        found = []
        for u in range(len(self.names)):
            if obj is not None and not (self.src[u] == obj.payload and self.tgt[u] == obj.payload):
                continue
            if self.divide_payload(u, self.tgt[u]) is not None:
                v = self.divide_payload(u, self.tgt[u])
                if self.compose_payload(v, u) == self.src[u]:
                    found.append(Arrow(self, u))
        return found

    def unit_generators(self, obj=None):
        return self.units(obj)

    def left_unit_solutions(self, c, y):
        return [u for u in self.units()
                if self.compose_payload(u.payload, c.payload) == y.payload]

    def __repr__(self):
        return f"FiniteTableBackend({self.name!r}, arrows={len(self.names)})"


def minimal_generators(backend: "CategoryBackend", payloads) -> List:
    """Reduce a finite right ideal (given by its elements) to generators,
    one per unit class, dropping elements lying in another generator's ideal."""
    items = sorted(set(payloads), key=backend.order_key)
    gens = []
    for p in items:
        covered = False
        for q in items:
            if q == p:
                continue
            if backend.divide_payload(q, p) is not None and backend.divide_payload(p, q) is None:
                covered = True
                break
        if covered:
            continue
        canon = backend.canonical_payload(p)
        if canon not in gens:
            gens.append(canon)
    return gens


def _check_pair(a: Arrow, b: Arrow):
    if a.backend.key != b.backend.key:
        raise BackendMismatch(f"{a!r} and {b!r} live in different backends")
    require_validated(a.backend)


def require_validated(backend: CategoryBackend):
    if not backend.validated:
        raise NotValidated(f"{backend!r} has not passed validate_left_cancellative")


def compose(a: Arrow, b: Arrow) -> Optional[Arrow]:
    """a·b, or None when source(a) != target(b)."""
    _check_pair(a, b)
    result = a.backend.compose_payload(a.payload, b.payload)
    return None if result is None else Arrow(a.backend, result)


def divide_left(q: Arrow, p: Arrow) -> Optional[Arrow]:
    """The unique r with p = q·r, or None when p is not in qC."""
    _check_pair(q, p)
    if q.backend.target_payload(q.payload) != p.backend.target_payload(p.payload):
        return None
    result = q.backend.divide_payload(q.payload, p.payload)
    return None if result is None else Arrow(q.backend, result)


def in_ideal(p: Arrow, q: Arrow) -> bool:
    """Membership p ∈ qC."""
    return divide_left(q, p) is not None


def same_ideal(a: Arrow, b: Arrow) -> bool:
    return in_ideal(a, b) and in_ideal(b, a)


def is_unit(u: Arrow) -> bool:
    return in_ideal(u.target, u)


def canonical(c: Arrow) -> Arrow:
    """Least unit translate c·u; two arrows generate the same ideal iff their canonicals agree."""
    return Arrow(c.backend, c.backend.canonical_payload(c.payload))


def invertibles(backend: CategoryBackend) -> UnitGroup:
    units = backend.units()
    if units is None:
        return UnitGroup(finite=False, generators=tuple(backend.unit_generators()))
    return UnitGroup(finite=True, generators=tuple(backend.unit_generators()),
                     elements=tuple(sorted(units)))


def units_at(obj: Arrow) -> UnitGroup:
    """The group obj·C*·obj of invertible endomorphisms of an object."""
    backend = obj.backend
    units = backend.units(obj)
    if units is None:
        return UnitGroup(finite=False, generators=tuple(backend.unit_generators(obj)))
    return UnitGroup(finite=True, generators=tuple(backend.unit_generators(obj)),
                     elements=tuple(sorted(units)))


def left_unit_solutions(c: Arrow, y: Arrow) -> List[Arrow]:
    _check_pair(c, y)
    return c.backend.left_unit_solutions(c, y)


def _injectivity_scan(backend: CategoryBackend, payloads) -> Optional[tuple]:
    for x in payloads:
        seen = {}
        for y in payloads:
            z = backend.compose_payload(x, y)
            if z is None:
                continue
            if z in seen:
                return x, seen[z], y
            seen[z] = y
    return None


def validate_left_cancellative(backend: CategoryBackend, bound: Optional[int] = None) -> Verdict:
    """Check xy = xz => y = z and mark the backend validated on success."""
    bound = config.VALIDATION_BOUND if bound is None else config.resolve_bound(bound)
    if isinstance(backend, FiniteTableBackend):
        payloads = backend.box_payloads()
        side = None
        detail = "exhaustive over the table"
    elif isinstance(backend, ZNxBackend):
        side = min(bound, config.CONFIRMATION_SIDE)
        payloads = backend.box_payloads(side)
        detail = f"closed form; exhaustive for a <= {side}, |k| <= {side}"
    else:
        side = min(bound, config.VALIDATION_BOUND)
        payloads = backend.box_payloads(side)
        detail = f"closed form; exhaustive for multiplicative parts <= {side}"

    violation = _injectivity_scan(backend, payloads)
    if violation is not None:
        x, y, z = (Arrow(backend, p) for p in violation)
        logger.warning("left cancellation fails in %r: %s·%s = %s·%s", backend, x, y, x, z)
        backend.validated = False
        return Verdict(Status.COUNTEREXAMPLE, witness=(x, y, z), bound=side,
                       detail=f"{x}·{y} = {x}·{z}")
    backend.validated = True
    return Verdict(Status.PROVEN, bound=side, detail=detail)


def right_lcm(a: Arrow, b: Arrow) -> Optional[LcmWitness]:
    """w with aC ∩ bC = wC and w = a·alpha = b·beta; None when the intersection is empty."""
    _check_pair(a, b)
    if a.backend.target_payload(a.payload) != b.backend.target_payload(b.payload):
        return None
    found = a.backend.lcm_payload(a.payload, b.payload)
    if found is None:
        return None
    w, alpha, beta = (Arrow(a.backend, p) for p in found)
    return LcmWitness(w=w, alpha=alpha, beta=beta)


def ideal_meet_generators(a: Arrow, b: Arrow) -> List[Arrow]:
    """Generators of aC ∩ bC (finitely aligned backends)."""
    _check_pair(a, b)
    backend = a.backend
    if isinstance(backend, FiniteTableBackend):
        return [Arrow(backend, p) for p in backend.meet_generator_payloads(a.payload, b.payload)]
    witness = right_lcm(a, b)
    return [] if witness is None else [canonical(witness.w)]


def equalizer_ideal(a: Arrow, b: Arrow, bound: Optional[int] = None) -> Verdict:
    """Search the generator d of {c : ac = bc} = dC below the bound.

    Returns VERIFIED_UP_TO (or PROVEN on finite tables) with the generator,
    EMPTY when nothing equalizes, or COUNTEREXAMPLE when the equalizing set is
    not principal.
    """
    _check_pair(a, b)
    backend = a.backend
    if not backend.is_monoid:
        raise ValueError("equalizer_ideal is defined for monoid backends")
    bound = config.resolve_bound(bound)
    exhaustive = backend.is_finite
    if isinstance(backend, ZNxBackend):
        payloads = backend.box_payloads(bound, additive=config.CONFIRMATION_SIDE)
    else:
        payloads = backend.box_payloads(bound)
    equalizing = []
    for c in payloads:
        left = backend.compose_payload(a.payload, c)
        if left is not None and left == backend.compose_payload(b.payload, c):
            equalizing.append(c)
    if not equalizing:
        status = Status.EMPTY
        detail = "no equalizing element" + ("" if exhaustive else f" with component <= {bound}")
        if not exhaustive and isinstance(backend, NxZmodBackend) and a.payload[0] == b.payload[0]:
            # the residue equation always has a solution once a = b
            detail += "; closed form predicts a generator beyond the bound"
            status = Status.INCONCLUSIVE
        return Verdict(status, bound=bound, detail=detail)

    equalizing.sort(key=backend.order_key)
    members = set(equalizing)
    for d in equalizing:
        if all(backend.divide_payload(d, c) is not None for c in equalizing):
            gen = Arrow(backend, backend.canonical_payload(d))
            status = Status.PROVEN if exhaustive else Status.VERIFIED_UP_TO
            return Verdict(status, witness=gen, bound=bound, detail=f"{len(members)} equalizing elements")
    x, y = equalizing[0], next(c for c in equalizing if backend.divide_payload(equalizing[0], c) is None)
    return Verdict(Status.COUNTEREXAMPLE, witness=(Arrow(backend, x), Arrow(backend, y)), bound=bound,
                   detail="equalizing set is not a principal right ideal")


def right_cancel_failures(backend: CategoryBackend, bound: int) -> List[Tuple[Arrow, Arrow, Arrow]]:
    """Triples (x, y, z) in the box with x != y and xz = yz."""
    payloads = backend.box_payloads(bound)
    found = []
    for z in payloads:
        seen: Dict = {}
        for x in payloads:
            xz = backend.compose_payload(x, z)
            if xz is None:
                continue
            if xz in seen:
                found.append((Arrow(backend, seen[xz]), Arrow(backend, x), Arrow(backend, z)))
            else:
                seen[xz] = x
    return found


# ---------------------------------------------------------------- constructors

@lru_cache(maxsize=None)
def nx_zmod(n: int) -> NxZmodBackend:
    backend = NxZmodBackend(n)
    validate_left_cancellative(backend, bound=config.CONFIRMATION_SIDE)
    return backend


@lru_cache(maxsize=None)
def z_nx() -> ZNxBackend:
    backend = ZNxBackend()
    validate_left_cancellative(backend)
    return backend


def table_from_dict(doc: dict, name: str = "table", validate: bool = True) -> FiniteTableBackend:
    try:
        objects = doc["objects"]
        arrows = [(a["name"], a["source"], a["target"]) for a in doc.get("arrows", [])]
        entries = [tuple(entry) for entry in doc.get("compose", [])]
    except (KeyError, TypeError) as e:
        raise InvalidTable(f"malformed table document: {e}")
    if any(len(entry) != 3 for entry in entries):
        raise InvalidTable("composition entries must be [left, right, result]")
    backend = FiniteTableBackend(objects, arrows, entries, name=name)
    if validate:
        validate_left_cancellative(backend)
    return backend


def load_table(path, validate: bool = True) -> FiniteTableBackend:
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InvalidTable(f"{p}: {e}")
    return table_from_dict(doc, name=p.stem, validate=validate)


def path_category(objects: Sequence[str], edges: Sequence[Tuple[str, str, str]],
                  name: str = "paths") -> FiniteTableBackend:
    """Free category on a finite acyclic graph; paths are named by joining edges with '.'."""
    by_target: Dict[str, List[Tuple[str, str, str]]] = {}
    for edge in edges:
        by_target.setdefault(edge[2], []).append(edge)

    # paths as tuples of edges e1...ek meaning e1∘...∘ek
    paths = [(e,) for e in edges]
    frontier = list(paths)
    while frontier:
        grown = []
        for path in frontier:
            for edge in by_target.get(path[-1][1], []):
                if len(path) >= len(edges):
                    raise InvalidTable("graph has a cycle; the path category is infinite")
                grown.append(path + (edge,))
        paths.extend(grown)
        frontier = grown

    def label(path):
        return ".".join(e[0] for e in path)

    arrows = [(label(p), p[-1][1], p[0][2]) for p in paths]
    lookup = {p: label(p) for p in paths}
    compose_entries = []
    for p in paths:
        for q in paths:
            if p[-1][1] == q[0][2]:
                compose_entries.append((lookup[p], lookup[q], lookup[p + q]))
    return table_from_dict({"objects": list(objects),
                            "arrows": [{"name": a, "source": s, "target": t} for a, s, t in arrows],
                            "compose": compose_entries}, name=name)


def cyclic_group_table(n: int) -> FiniteTableBackend:
    names = ["e"] + [f"g{i}" for i in range(1, n)]
    return table_from_dict({
        "objects": ["e"],
        "arrows": [{"name": nm, "source": "e", "target": "e"} for nm in names],
        "compose": [[names[i], names[j], names[(i + j) % n]] for i in range(n) for j in range(n)],
    }, name=f"Z{n}")


def free_tree_table(generators: int = 2, depth: int = 2) -> FiniteTableBackend:
    """Truncated free monoid on ``generators`` letters as the path category of its tree."""
    letters = "abcdefghijklmnopqrstuvwxyz"[:generators]
    words = [""]
    for _ in range(depth):
        words += [w + x for w in words if len(w) == len(words[-1]) for x in letters]
    objects = ["root" if not w else w for w in words]
    edges = [(f"{x}@{w or 'root'}", w + x, w or "root") for w in words if len(w) < depth for x in letters]
    return path_category(objects, edges, name=f"free{generators}x{depth}")


def two_square_table() -> FiniteTableBackend:
    """p: X→O and q: Y→O whose ideals meet in {m1, m2}, two incomparable arrows.

    Finitely aligned but not right LCM: pC ∩ qC = m1C ∪ m2C.
    """
    edges = [("p", "X", "O"), ("q", "Y", "O"), ("r1", "Z1", "X"), ("r2", "Z2", "X"),
             ("t1", "Z1", "Y"), ("t2", "Z2", "Y"), ("m1", "Z1", "O"), ("m2", "Z2", "O")]
    return table_from_dict({
        "objects": ["O", "X", "Y", "Z1", "Z2"],
        "arrows": [{"name": a, "source": s, "target": t} for a, s, t in edges],
        "compose": [["p", "r1", "m1"], ["q", "t1", "m1"], ["p", "r2", "m2"], ["q", "t2", "m2"]],
    }, name="two-square")
