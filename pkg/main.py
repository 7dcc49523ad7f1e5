import argparse
import logging
import random
import sys
from datetime import datetime, timezone
from typing import List, Optional

import config
from errors import GermforgeError, InvalidTable, NoNormalForm, ParseError
from lcsc_core import (compose, invertibles, load_table, nx_zmod, validate_left_cancellative,
                       z_nx)
from report import (export_pdf, format_report, item_from_verdict, make_item,
                    overall_exit_code, to_json)
from verdicts import Status, Verdict

logger = logging.getLogger("germforge")

USAGE_ERROR = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default="nx-zmod",
                        help="nx-zmod, z-nx or table:<path to a JSON table>")
    common.add_argument("--n", type=int, default=6, help="modulus for nx-zmod")
    common.add_argument("--bound", type=int, default=None, help="search bound")
    common.add_argument("--budget", type=int, default=None, help="search budget")
    common.add_argument("--json", action="store_true", help="print the machine-readable report")
    common.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for suites")
    common.add_argument("--no-meta", action="store_true", help="omit command/timestamp metadata")
    common.add_argument("--pdf", metavar="PATH", help="also write the human report as PDF")
    common.add_argument("--seed", type=int, default=0, help="sampling seed")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _ArgumentParser(prog="germforge", description="Germ groupoids of left cancellative small categories")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    sub.add_parser("family", parents=[common], help="validate and describe the backend")

    p = sub.add_parser("compose", parents=[common], help="compose two arrows")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("hull", parents=[common], help="hull element operations")
    p.add_argument("action", choices=["normalize", "eq", "apply", "compose", "invert"])
    p.add_argument("exprs", nargs="+")

    p = sub.add_parser("char", parents=[common], help="principal characters")
    p.add_argument("action", choices=["eval", "act", "eq", "find"])
    p.add_argument("exprs", nargs="+")

    p = sub.add_parser("germ", parents=[common], help="germ equality and products")
    p.add_argument("action", choices=["eq", "compose", "inverse"])
    p.add_argument("exprs", nargs="+")
    p.add_argument("--at", help="base character, e.g. chi(6,0)")

    p = sub.add_parser("isotropy", parents=[common], help="isotropy group at a principal character")
    p.add_argument("chi")

    p = sub.add_parser("iso-interior", parents=[common], help="interior-of-isotropy test")
    p.add_argument("expr")
    p.add_argument("--at", help="base character when EXPR is a hull expression")

    p = sub.add_parser("rtp", parents=[common], help="relative topological principality certificate")
    p.add_argument("chi")
    p.add_argument("--subgroupoid", action="append", choices=["units", "invertibles", "iso-interior"],
                   help="candidate subgroupoid (repeatable; default invertibles)")

    sub.add_parser("verify-paper", parents=[common], help="run the witness suite for the family")
    sub.add_parser("oracle-check", parents=[common], help="compare fast paths with the oracle")
    return parser


def load_backend(args):
    family = args.family
    if family == "nx-zmod":
        if args.n < 1:
            raise InvalidTable(f"--n must be >= 1, got {args.n}")
        return nx_zmod(args.n), None
    if family == "z-nx":
        return z_nx(), None
    if family.startswith("table:"):
        backend = load_table(family[len("table:"):], validate=False)
        verdict = validate_left_cancellative(backend)
        return backend, verdict
    raise InvalidTable(f"unknown family {family!r}")


def _arity(args, count: int):
    if len(args.exprs) != count:
        raise ParseError(f"{args.command} {args.action} takes {count} expression(s), got {len(args.exprs)}",
                         0, expected=f"{count} arguments")


# ------------------------------------------------------------ commands

def cmd_family(args, backend) -> List[dict]:
    items = [item_from_verdict("left-cancellative", validate_left_cancellative(backend, bound=args.bound))]
    units = invertibles(backend)
    if units.finite:
        items.append(make_item("invertibles", Status.PASS, units.elements,
                               message=f"finite group of order {units.order}"))
    else:
        items.append(make_item("invertibles", Status.PASS, units.generators,
                               message="infinite; generators listed"))
    if backend.is_right_lcm:
        items.append(make_item("right-lcm", Status.PASS))
    else:
        items.append(make_item("right-lcm", Status.NOT_APPLICABLE,
                               message="some intersection of principal ideals is not principal"))
    return items


def cmd_compose(args, backend) -> List[dict]:
    from expressions import parse_arrow
    a, b = parse_arrow(args.left, backend), parse_arrow(args.right, backend)
    result = compose(a, b)
    if result is None:
        return [make_item("compose", Status.FAIL, [a, b], message="undefined: source and target differ")]
    return [make_item("compose", Status.PASS, [result], message=f"{a}·{b} = {result}")]


def cmd_hull(args, backend) -> List[dict]:
    from expressions import parse_arrow, parse_hull
    from inverse_hull import apply, hull_compose, hull_eq, hull_invert, normalize, render
    if args.action == "normalize":
        _arity(args, 1)
        s = parse_hull(args.exprs[0], backend)
        try:
            normal = normalize(s)
        except NoNormalForm as e:
            return [make_item("normalize", Status.NOT_APPLICABLE, message=str(e))]
        shown = "0" if normal is None else f"({normal[0]}, {normal[1]})"
        return [make_item("normalize", Status.PASS, [render(s)], message=f"normal form {shown}")]
    if args.action == "eq":
        _arity(args, 2)
        s, t = (parse_hull(e, backend) for e in args.exprs)
        verdict = hull_eq(s, t)
        agreement = None
        if args.oracle:
            from oracle import TruncationBox, bounded_extensional_eq
            checked = bounded_extensional_eq(s, t, TruncationBox.around(backend, args.bound))
            agreement = (checked.status == Status.AGREE) == (verdict.status == Status.EQUAL)
        return [item_from_verdict("hull-eq", verdict, agreement)]
    if args.action == "apply":
        _arity(args, 2)
        s, x = parse_hull(args.exprs[0], backend), parse_arrow(args.exprs[1], backend)
        y = apply(s, x)
        if y is None:
            return [make_item("apply", Status.NOT_APPLICABLE, [x], message="outside the domain")]
        return [make_item("apply", Status.PASS, [y], message=f"{render(s)} sends {x} to {y}")]
    if args.action == "compose":
        _arity(args, 2)
        s, t = (parse_hull(e, backend) for e in args.exprs)
        return [make_item("hull-compose", Status.PASS, [render(hull_compose(s, t))])]
    _arity(args, 1)
    s = parse_hull(args.exprs[0], backend)
    return [make_item("hull-invert", Status.PASS, [render(hull_invert(s))])]


def cmd_char(args, backend) -> List[dict]:
    from characters import char_act, char_eq, char_eval, find_principal_in
    from expressions import parse_character, parse_hull, parse_ideal, parse_open
    if args.action == "eval":
        _arity(args, 2)
        chi = parse_character(args.exprs[0], backend)
        value = char_eval(chi, parse_ideal(args.exprs[1], backend))
        return [make_item("char-eval", Status.YES if value else Status.NO, message=f"{chi} = {int(value)}")]
    if args.action == "act":
        _arity(args, 2)
        s, chi = parse_hull(args.exprs[0], backend), parse_character(args.exprs[1], backend)
        moved = char_act(s, chi)
        if moved is None:
            return [make_item("char-act", Status.NOT_APPLICABLE, [chi], message="outside the domain")]
        return [make_item("char-act", Status.PASS, [moved], message=f"{s}·{chi} = {moved}")]
    if args.action == "eq":
        _arity(args, 2)
        p, q = (parse_character(e, backend) for e in args.exprs)
        return [make_item("char-eq", Status.YES if char_eq(p, q) else Status.NO)]
    _arity(args, 1)
    u = parse_open(args.exprs[0], backend)
    return [item_from_verdict("find-principal", find_principal_in(u, bound=args.bound))]


def cmd_germ(args, backend) -> List[dict]:
    from characters import char_eq
    from expressions import parse_character, parse_germ
    from germ_groupoid import Germ, germ_compose, germ_eq, germ_inverse
    from inverse_hull import hull_compose
    if args.action == "eq":
        _arity(args, 2)
        g1, g2 = (parse_germ(e, backend, args.at) for e in args.exprs)
        verdict = germ_eq(g1, g2)
        agreement = None
        if args.oracle and char_eq(g1.chi, g2.chi):
            from oracle import TruncationBox, bounded_germ_eq
            checked = bounded_germ_eq(g1.s, g2.s, g1.chi, TruncationBox.around(backend, args.bound))
            agreement = (checked.status == Status.AGREE) == (verdict.status == Status.EQUAL)
        return [item_from_verdict("germ-eq", verdict, agreement)]
    if args.action == "compose":
        _arity(args, 2)
        if args.at is not None:
            from expressions import parse_hull
            inner = parse_germ(args.exprs[1], backend, args.at)
            outer = Germ(parse_hull(args.exprs[0], backend), inner.target)
        else:
            outer, inner = (parse_germ(e, backend) for e in args.exprs)
        product = germ_compose(outer, inner)
        return [make_item("germ-compose", Status.PASS, [product],
                          message=f"from {product.source} to {product.target}")]
    _arity(args, 1)
    g = parse_germ(args.exprs[0], backend, args.at)
    return [make_item("germ-inverse", Status.PASS, [germ_inverse(g)])]


def cmd_isotropy(args, backend) -> List[dict]:
    from expressions import parse_character
    from germ_groupoid import isotropy_at
    iso = isotropy_at(parse_character(args.chi, backend))
    if iso.elements is None:
        return [make_item("isotropy", Status.PASS, iso.generators,
                          message=f"infinite isotropy at {iso.base}; generators listed")]
    shape = "cyclic" if iso.is_cyclic() else "not cyclic"
    return [make_item("isotropy", Status.PASS, iso.elements,
                      message=f"order {iso.order} at {iso.base}, {shape}")]


def cmd_iso_interior(args, backend) -> List[dict]:
    from expressions import parse_germ
    from germ_groupoid import in_iso_interior
    g = parse_germ(args.expr, backend, args.at)
    return [item_from_verdict("iso-interior", in_iso_interior(g, budget=args.budget))]


def cmd_rtp(args, backend) -> List[dict]:
    from expressions import parse_character
    from germ_groupoid import SubgroupoidSpec, rtp_witness
    chi = parse_character(args.chi, backend)
    family = [SubgroupoidSpec(kind) for kind in (args.subgroupoid or ["invertibles"])]
    result = rtp_witness(chi, family, budget=args.budget)
    if result:
        witnesses = [f"gamma = {result.gamma}", f"H = {result.subgroupoid}"]
        witnesses += [f"{g} -> {h}" for g, h in result.checked]
        return [make_item("rtp", Status.PASS, witnesses, message=f"{len(result.checked)} generators placed")]
    return [make_item("rtp", Status.FAIL, [result.generator] if result.generator else [],
                      message=result.detail)]


def cmd_verify_paper(args, backend) -> List[dict]:
    from families import check_znx, paper_witness_suite
    bound = config.resolve_bound(args.bound)
    if args.family == "nx-zmod":
        reports = paper_witness_suite(args.n, jobs=args.jobs, seed=args.seed, bound=bound)
    elif args.family == "z-nx":
        reports = [check_znx(0, args.seed, bound)]
    else:
        raise ParseError("verify-paper needs --family nx-zmod or z-nx", 0, expected="an arithmetic family")
    return [r.to_dict() for r in reports]


def _sample_word(backend, rng, length: int):
    from inverse_hull import hull_from_word
    factors = []
    one = backend.identity()
    for _ in range(length):
        c = backend.sample(rng, bound=6)
        factors.append((one, c) if rng.random() < 0.5 else (c, one))
    return hull_from_word(backend, factors)


def cmd_oracle_check(args, backend) -> List[dict]:
    from inverse_hull import from_normal, hull_by_words, normalize, zero
    from oracle import TruncationBox, bounded_extensional_eq, enumerate_hull_finite, table_of
    if backend.is_finite:
        hull = enumerate_hull_finite(backend)
        words, stable_at = hull_by_words(backend)
        tables = {table_of(s) for s in words}
        ok = tables == set(hull)
        return [make_item("finite-hull", Status.PASS if ok else Status.FAIL,
                          bounds={"elements": len(hull)}, oracle_agreement=ok,
                          message=f"words stabilise at length {stable_at}")]
    rng = random.Random(args.seed)
    box = TruncationBox.around(backend, args.bound if args.bound else 20)
    for i in range(25):
        s = _sample_word(backend, rng, rng.randint(1, 4))
        normal = normalize(s)
        rebuilt = zero(backend) if normal is None else from_normal(*normal)
        verdict = bounded_extensional_eq(s, rebuilt, box)
        if verdict.status != Status.AGREE:
            return [make_item("normal-forms", Status.FAIL, [s, verdict.witness], {"box": box.bound}, False)]
    return [make_item("normal-forms", Status.PASS, bounds={"box": box.bound, "words": 25},
                      oracle_agreement=True)]


COMMANDS = {
    "family": cmd_family,
    "compose": cmd_compose,
    "hull": cmd_hull,
    "char": cmd_char,
    "germ": cmd_germ,
    "isotropy": cmd_isotropy,
    "iso-interior": cmd_iso_interior,
    "rtp": cmd_rtp,
    "verify-paper": cmd_verify_paper,
    "oracle-check": cmd_oracle_check,
}


def run(args) -> int:
    try:
        backend, validation = load_backend(args)
        if validation is not None and validation.status == Status.COUNTEREXAMPLE:
            items = [item_from_verdict("left-cancellative", validation)]
        else:
            items = COMMANDS[args.command](args, backend)
    except ParseError as e:
        print(f"germforge: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (InvalidTable, OSError, ValueError) as e:
        print(f"germforge: {e}", file=sys.stderr)
        return USAGE_ERROR
    except GermforgeError as e:
        items = [make_item(args.command, Status.FAIL, message=f"{type(e).__name__}: {e}")]

    text = format_report(items)
    if args.json:
        meta = None if args.no_meta else {
            "command": args.command,
            "family": args.family if args.family != "nx-zmod" else f"nx-zmod:{args.n}",
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        print(to_json(items, meta))
    else:
        print(text)
    if args.pdf and not export_pdf(text, args.pdf):
        print("PDF export needs reportlab (pip install reportlab).", file=sys.stderr)
    return overall_exit_code(items)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.bound is not None and args.bound < 1 or args.budget is not None and args.budget < 1:
        print("germforge: --bound and --budget must be positive", file=sys.stderr)
        return USAGE_ERROR
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
