"""Closed-form deciders and witness checks for N^x ⋉ Z/nZ and Z ⋊ N^x."""
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import config
from characters import PrincipalCharacter, char_act, char_eq
from errors import OracleDisagreement
from germ_groupoid import (INVERTIBLES, Germ, SubgroupoidSpec, conjugation_germ,
                           in_iso_interior, in_subgroupoid, isotropy_at)
from inverse_hull import BooleanIdeal, apply, hull_from_word, left_mult
from lcsc_core import (Arrow, compose, divide_left, equalizer_ideal, in_ideal, nx_zmod,
                       right_cancel_failures, right_lcm, validate_left_cancellative, z_nx)
from oracle import TruncationBox, bounded_germ_eq
from verdicts import Status, Verdict, render

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- N^x ⋉ Z/nZ

def equalizer_closed_form(n: int, a: int, k: int, b: int, l: int,
                          bound: Optional[int] = None) -> Verdict:
    """Generator of {c : (a,[k])c = (b,[l])c}, cross-checked by brute force.

    (a,[k])(c,[m]) and (b,[l])(c,[m]) agree iff a = b and (k - l)c ≡ 0 mod n,
    so the equalizer is (n / gcd(k - l, n), [0])C.
    """
    backend = nx_zmod(n)
    if a != b:
        closed = Verdict(Status.EMPTY, detail="multiplicative parts differ")
    else:
        closed = Verdict(Status.PROVEN, witness=backend.arrow(n // math.gcd(k - l, n), 0))

    bound = config.resolve_bound(bound)
    brute = equalizer_ideal(backend.arrow(a, k), backend.arrow(b, l), bound=bound)
    agree = brute.status == Status.EMPTY if closed.status == Status.EMPTY \
        else brute.status in (Status.VERIFIED_UP_TO, Status.PROVEN) and brute.witness == closed.witness
    if not agree:
        raise OracleDisagreement(f"equalizer of ({a},{k}), ({b},{l}) mod {n}: "
                                 f"closed form {closed}, search {brute}")
    return Verdict(closed.status, witness=closed.witness, bound=bound, detail=closed.detail)


@dataclass(frozen=True)
class RightCancelWitness:
    x: Arrow
    y: Arrow
    z: Arrow
    least_multiplier: Optional[int]
    failures_in_box: int


def right_cancel_failure_witness(n: int, bound: Optional[int] = None) -> Optional[RightCancelWitness]:
    """x = (1,[2]), y = (1,[1]), z = (n,[0]) with xz = yz; None for n = 1."""
    if n < 2:
        return None
    backend = nx_zmod(n)
    x, y, z = backend.arrow(1, 2), backend.arrow(1, 1), backend.arrow(n, 0)
    if x == y or compose(x, z) != compose(y, z):
        raise OracleDisagreement(f"{x}·{z} and {y}·{z} should coincide")
    side = config.CONFIRMATION_SIDE if bound is None else bound
    failures = right_cancel_failures(backend, side)
    # (1,[i])(c,[m]) = (1,[i'])(c,[m]) with i != i' needs gcd(c, n) > 1
    least = next(p for p in range(2, n + 1) if n % p == 0)
    if failures and min(f[2].payload[0] for f in failures) != least:
        raise OracleDisagreement(f"least right-cancellation multiplier for n = {n} is not {least}")
    return RightCancelWitness(x, y, z, least, len(failures))


def paper_witness_germ(n: int) -> Germ:
    """[(n,[0])(1,[1])(n,[0])⁻¹, χ_(n,[0])], spelled as a zigzag word."""
    backend = nx_zmod(n)
    one, c, u = backend.identity(), backend.arrow(n, 0), backend.arrow(1, 1)
    word = [(c, one), (one, u), (one, c)]
    return Germ(hull_from_word(backend, word), PrincipalCharacter(c))


def nx_zmod_interior(g: Germ, bound: Optional[int] = None) -> Verdict:
    """Every isotropy germ at χ_c lies in the interior, with neighbourhood cC.

    An isotropy germ acts on cC as c·r ↦ c·u·r for a unit u = (1,[j]); the
    multiplicative part is unchanged, and principal ideals of this monoid only
    see the multiplicative part, so each χ_{c·r} is fixed.
    """
    c = g.chi.c
    if not char_eq(g.target, g.source):
        return Verdict(Status.NO, witness=(g.source, g.target), detail="the germ moves its base character")
    neighbourhood = BooleanIdeal.principal(c).intersect(g.s.domain())
    side = config.CONFIRMATION_SIDE if bound is None else bound
    for x in c.backend.box(side):
        if not neighbourhood.contains(x):
            continue
        y = apply(g.s, x)
        if y.payload[0] != x.payload[0]:
            logger.warning("%s moves χ_%s to χ_%s", g, x, y)
            return Verdict(Status.NO, witness=x, bound=side)
    return Verdict(Status.YES, witness=neighbourhood, bound=side,
                   detail="closed form; confirmed on the box")


# ---------------------------------------------------------------- Z ⋊ N^x

def znx_unit_fixes(k: int, p: Arrow) -> bool:
    """(k,1)·χ_p = χ_p iff the multiplicative part of p divides k."""
    return k % p.payload[1] == 0


def _primes():
    candidate = 2
    while True:
        if all(candidate % q for q in range(2, math.isqrt(candidate) + 1)):
            yield candidate
        candidate += 1


def znx_interior(g: Germ, budget: Optional[int] = None) -> Verdict:
    """Decide interior membership of a germ at χ_c in Z ⋊ N^x.

    An isotropy germ acts on cC as translation: c·r ↦ c·(j,1)·r. For j = 0 it is
    the identity there. For j ≠ 0 the point c·(0,b), b a prime with b ∤ j, is
    moved; such primes escape any finite list of excluded ideals, so every
    neighbourhood of χ_c contains a moved character.
    """
    budget = config.resolve_budget(budget)
    c = g.chi.c
    if not char_eq(g.target, g.source):
        return Verdict(Status.NO, witness=(g.source, g.target), detail="the germ moves its base character")
    u = divide_left(c, apply(g.s, c))
    j = u.payload[0]
    neighbourhood = BooleanIdeal.principal(c).intersect(g.s.domain())
    if j == 0:
        return Verdict(Status.YES, witness=neighbourhood, detail="identity on cC")

    backend = c.backend
    for tried, b in enumerate(_primes()):
        if tried >= budget:
            break
        if j % b == 0:
            continue
        d = compose(c, backend.arrow(0, b))
        if not neighbourhood.contains(d):
            continue
        moved = apply(g.s, d)
        if not char_eq(PrincipalCharacter(moved), PrincipalCharacter(d)):
            return Verdict(Status.NO, witness=d, bound=budget,
                           detail=f"χ_{d} is sent to χ_{moved}; translation by {j * c.payload[1]}")
    return Verdict(Status.UNKNOWN, bound=budget, detail="no moved point found within the budget")


def translation_germ(j: int, c: Arrow) -> Germ:
    """[(j,1), χ_c] in Z ⋊ N^x."""
    return Germ(left_mult(c.backend.arrow(j, 1)), PrincipalCharacter(c))


# ---------------------------------------------------------------- reports

@dataclass
class PropositionReport:
    proposition: str
    verdict: Status
    witnesses: List[str] = field(default_factory=list)
    bounds: Dict[str, int] = field(default_factory=dict)
    oracle_agreement: Optional[bool] = None
    message: str = ""

    def to_dict(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict.value
        if not self.message:
            out.pop("message")
        return out


def _pass_or_fail(ok: bool) -> Status:
    return Status.PASS if ok else Status.FAIL


def check_left_cancellation(n: int, seed: int, bound: int) -> PropositionReport:
    verdict = validate_left_cancellative(nx_zmod(n), bound=config.VALIDATION_BOUND)
    return PropositionReport("left-cancellative", _pass_or_fail(verdict.status == Status.PROVEN),
                             [render(verdict.witness)] if verdict.witness else [],
                             {"multiplicative": verdict.bound}, None, verdict.detail)


def check_right_cancellation(n: int, seed: int, bound: int) -> PropositionReport:
    found = right_cancel_failure_witness(n)
    if found is None:
        return PropositionReport("right-cancellation-fails", Status.NOT_APPLICABLE,
                                 message="n = 1 gives the right cancellative monoid N^x")
    return PropositionReport("right-cancellation-fails", Status.PASS,
                             [f"{found.x}·{found.z} = {found.y}·{found.z} = {compose(found.x, found.z)}"],
                             {"box": config.CONFIRMATION_SIDE}, True,
                             f"least multiplier {found.least_multiplier}, "
                             f"{found.failures_in_box} failures in the box")


def check_right_lcm(n: int, seed: int, bound: int, samples: int = 25) -> PropositionReport:
    backend = nx_zmod(n)
    rng = random.Random(seed)
    box = backend.box(config.CONFIRMATION_SIDE * 2)
    for _ in range(samples):
        p, q = backend.sample(rng), backend.sample(rng)
        witness = right_lcm(p, q)
        expected = backend.arrow(math.lcm(p.payload[0], q.payload[0]), 0)
        if witness is None or witness.w != expected:
            return PropositionReport("right-lcm", Status.FAIL, [f"{p}", f"{q}"], message=f"got {witness}")
        for x in box:
            if (in_ideal(x, p) and in_ideal(x, q)) != in_ideal(x, witness.w):
                return PropositionReport("right-lcm", Status.FAIL, [f"{p}", f"{q}", f"{x}"],
                                         {"box": config.CONFIRMATION_SIDE * 2}, False)
    return PropositionReport("right-lcm", Status.PASS, [], {"samples": samples,
                             "box": config.CONFIRMATION_SIDE * 2}, True)


def check_equalizers(n: int, seed: int, bound: int) -> PropositionReport:
    search = max(2 * n, config.CONFIRMATION_SIDE)
    generators = []
    try:
        for k in range(n):
            for l in range(n):
                found = equalizer_closed_form(n, 1, k, 1, l, bound=search)
                generators.append(found.witness)
    except OracleDisagreement as e:
        return PropositionReport("equalizers-principal", Status.FAIL, oracle_agreement=False, message=str(e))
    distinct = sorted(set(generators))
    return PropositionReport("equalizers-principal", Status.PASS, [str(d) for d in distinct],
                             {"search": search}, True, f"{n * n} pairs")


def check_strict_containment(n: int, seed: int, bound: int) -> PropositionReport:
    if n < 2:
        return PropositionReport("invertibles-strictly-inside-iso-interior", Status.NOT_APPLICABLE,
                                 message="trivial residues")
    g = paper_witness_germ(n)
    interior = in_iso_interior(g)
    invertible = in_subgroupoid(g, SubgroupoidSpec(INVERTIBLES))
    backend = g.backend
    box = TruncationBox.around(backend, bound=min(bound, 4 * n))
    oracle_ok = all(
        bounded_germ_eq(g.s, left_mult(u), g.chi, box).status == Status.DISTINCT
        for u in backend.units())
    # units act inside the interior as well
    rng = random.Random(seed)
    units_inside = all(
        in_iso_interior(Germ(left_mult(u), PrincipalCharacter(backend.sample(rng)))).status == Status.YES
        for u in backend.units())
    ok = interior.status == Status.YES and invertible.status == Status.NO and units_inside
    c = g.chi.c
    return PropositionReport("invertibles-strictly-inside-iso-interior", _pass_or_fail(ok and oracle_ok),
                             [str(g), f"s{c} = {apply(g.s, c)}", f"e = {interior.witness}"],
                             {"confirmation": interior.bound or 0, "oracle_box": box.bound}, oracle_ok,
                             f"interior: {interior.status.value}, invertibles: {invertible.status.value}")


def check_znx(n: int, seed: int, bound: int, samples: int = 20) -> PropositionReport:
    backend = z_nx()
    c = backend.arrow(0, 2)
    move = translation_germ(1, c)
    moved = in_iso_interior(move)
    witnesses = [f"(1,1)·{move.source} = {move.target}"]
    ok = moved.status == Status.NO and move.target == PrincipalCharacter(backend.arrow(1, 2))

    rng = random.Random(seed)
    for _ in range(samples):
        p = backend.sample(rng)
        k = rng.randint(-24, 24)
        g = translation_germ(k, p)
        fixes = char_act(g.s, g.chi) == g.chi
        if fixes != znx_unit_fixes(k, p):
            ok = False
            witnesses.append(f"fixing mismatch at {g}")
        j = rng.choice([-3, -2, -1, 1, 2, 3])
        conj = conjugation_germ(p, backend.arrow(j, 1))
        verdict = in_iso_interior(conj)
        if verdict.status != Status.NO:
            ok = False
            witnesses.append(f"{conj}: {verdict}")
    iso = isotropy_at(PrincipalCharacter(c))
    witnesses.append(f"isotropy at {iso.base} generated by " + ", ".join(str(h) for h in iso.generators))
    return PropositionReport("znx-interior-is-units", _pass_or_fail(ok), witnesses,
                             {"samples": samples, "budget": config.default_budget()}, None,
                             f"(1,1) at chi(0,2): {moved.status.value}")


SUITE = (
    ("left-cancellative", check_left_cancellation),
    ("right-cancellation-fails", check_right_cancellation),
    ("right-lcm", check_right_lcm),
    ("equalizers-principal", check_equalizers),
    ("invertibles-strictly-inside-iso-interior", check_strict_containment),
    ("znx-interior-is-units", check_znx),
)


def _run_check(index: int, n: int, seed: int, bound: int) -> PropositionReport:
    name, check = SUITE[index]
    try:
        report = check(n, seed, bound)
    except Exception as e:
        logger.exception("check %s failed with an exception", name)
        return PropositionReport(name, Status.FAIL, message=f"{type(e).__name__}: {e}")
    report.bounds.setdefault("n", n)
    return report


def paper_witness_suite(n: int, jobs: int = 1, seed: int = 0,
                        bound: Optional[int] = None) -> List[PropositionReport]:
    """Run every family check for modulus n; results come back in suite order."""
    if not 1 <= n <= config.SUITE_N_CAP:
        raise ValueError(f"n must lie in 1..{config.SUITE_N_CAP}, got {n}")
    bound = config.resolve_bound(bound)
    indices = range(len(SUITE))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_check, indices, [n] * len(SUITE),
                                 [seed] * len(SUITE), [bound] * len(SUITE)))
    return [_run_check(i, n, seed, bound) for i in indices]


def minimality_stats(n_values) -> List[Tuple[int, Optional[int], int]]:
    """(n, least multiplier admitting a right cancellation failure, failures in the box)."""
    out = []
    for n in n_values:
        found = right_cancel_failure_witness(n)
        out.append((n, None, 0) if found is None else (n, found.least_multiplier, found.failures_in_box))
    return out
