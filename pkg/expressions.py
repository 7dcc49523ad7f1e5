"""Parser for the textual forms used on the command line (see GRAMMAR.md)."""
import re
from typing import List, Optional, Tuple

from characters import BasicOpen, PrincipalCharacter
from errors import ParseError
from germ_groupoid import Germ
from inverse_hull import BooleanIdeal, HullElement, hull_compose, hull_invert, left_mult
from lcsc_core import Arrow, CategoryBackend

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_.@']*)|(?P<sym>[(),;:\[\]|\\*]))")
KEYWORDS = {"inv", "chi", "germ", "in", "not", "empty"}

Token = Tuple[str, str, int]


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text: str, backend: CategoryBackend):
        self.text = text
        self.backend = backend
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def at(self, value: str, offset: int = 0) -> bool:
        kind, text, _ = self.peek(offset)
        return kind in ("sym", "name") and text == value

    def take(self) -> Token:
        token = self.peek()
        self.i += 1
        return token

    def expect(self, value: str):
        kind, text, pos = self.peek()
        if text != value or kind == "end":
            raise ParseError(f"found {text or 'end of input'!r}", pos, expected=repr(value))
        self.i += 1

    def finish(self):
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {text!r}", pos, expected="end of input")

    def _int(self) -> int:
        kind, text, pos = self.take()
        if kind != "int":
            raise ParseError(f"found {text or 'end of input'!r}", pos, expected="an integer")
        return int(text)

    # grammar
    def _at_pair(self) -> bool:
        return self.at("(") and self.peek(1)[0] == "int" and self.at(",", 2)

    def arrow(self) -> Arrow:
        kind, text, pos = self.peek()
        if self._at_pair():
            self.take()
            x = self._int()
            self.expect(",")
            y = self._int()
            self.expect(")")
            if self.backend.is_finite:
                raise ParseError("pairs name arrows of the arithmetic families only", pos,
                                 expected="an arrow name")
            try:
                return self.backend.arrow(x, y)
            except ValueError as e:
                raise ParseError(str(e), pos)
        if kind == "name" and text not in KEYWORDS:
            self.take()
            if not self.backend.is_finite:
                raise ParseError(f"unknown arrow {text!r}", pos, expected="a pair (x,y)")
            try:
                return self.backend.arrow(text)
            except KeyError:
                raise ParseError(f"unknown arrow {text!r}", pos, expected="an arrow of the table")
        raise ParseError(f"found {text or 'end of input'!r}", pos, expected="an arrow")

    def _starts_factor(self) -> bool:
        kind, text, _ = self.peek()
        return self.at("(") or self.at("inv") or (kind == "name" and text not in KEYWORDS)

    def hull_factor(self) -> HullElement:
        if self.at("inv"):
            self.take()
            self.expect("(")
            inner = self.hull()
            self.expect(")")
            return hull_invert(inner)
        if self.at("(") and not self._at_pair():
            self.take()
            inner = self.hull()
            self.expect(")")
            return inner
        return left_mult(self.arrow())

    def hull(self) -> HullElement:
        """Juxtaposition is composition; the rightmost factor acts first."""
        result = self.hull_factor()
        while True:
            if self.at("*"):
                self.take()
            elif not self._starts_factor():
                return result
            result = hull_compose(result, self.hull_factor())

    def character(self) -> PrincipalCharacter:
        self.expect("chi")
        self.expect("(")
        if self.peek()[0] == "int":
            _, _, pos = self.peek()
            x = self._int()
            self.expect(",")
            y = self._int()
            if self.backend.is_finite:
                raise ParseError("pairs name arrows of the arithmetic families only", pos)
            c = self.backend.arrow(x, y)
        else:
            c = self.arrow()
        self.expect(")")
        return PrincipalCharacter(c)

    def germ(self) -> Germ:
        self.expect("germ")
        self.expect("(")
        s = self.hull()
        self.expect(";")
        chi = self.character()
        self.expect(")")
        _, _, pos = self.peek()
        try:
            return Germ(s, chi)
        except ValueError as e:
            raise ParseError(str(e), pos)

    def ideal_term(self) -> BooleanIdeal:
        if self.at("empty"):
            self.take()
            return BooleanIdeal.empty(self.backend)
        generator = self.arrow()
        excluded = []
        while self.at("\\"):
            self.take()
            excluded.append(self.arrow())
        return BooleanIdeal.build(self.backend, [(generator, excluded)])

    def ideal(self) -> BooleanIdeal:
        result = self.ideal_term()
        while self.at("|"):
            self.take()
            result = result.union(self.ideal_term())
        return result

    def basic_open(self) -> BasicOpen:
        self.expect("in")
        self.expect(":")
        positive = self.ideal()
        forbidden = []
        if self.at(","):
            self.take()
            self.expect("not")
            self.expect(":")
            self.expect("[")
            if not self.at("]"):
                forbidden.append(self.ideal())
                while self.at(","):
                    self.take()
                    forbidden.append(self.ideal())
            self.expect("]")
        return BasicOpen(positive, tuple(forbidden))


def _parse(text: str, backend: CategoryBackend, rule: str):
    parser = Parser(text, backend)
    result = getattr(parser, rule)()
    parser.finish()
    return result


def parse_arrow(text: str, backend: CategoryBackend) -> Arrow:
    return _parse(text, backend, "arrow")


def parse_hull(text: str, backend: CategoryBackend) -> HullElement:
    return _parse(text, backend, "hull")


def parse_character(text: str, backend: CategoryBackend) -> PrincipalCharacter:
    return _parse(text, backend, "character")


def parse_germ(text: str, backend: CategoryBackend, at: Optional[str] = None) -> Germ:
    """Either ``germ(<hull>; chi(...))`` or a hull expression plus ``at``."""
    if at is None:
        return _parse(text, backend, "germ")
    s = parse_hull(text, backend)
    chi = parse_character(at, backend)
    try:
        return Germ(s, chi)
    except ValueError as e:
        raise ParseError(str(e), 0)


def parse_ideal(text: str, backend: CategoryBackend) -> BooleanIdeal:
    return _parse(text, backend, "ideal")


def parse_open(text: str, backend: CategoryBackend) -> BasicOpen:
    return _parse(text, backend, "basic_open")
