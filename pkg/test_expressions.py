import pytest

from characters import chi
from errors import ParseError
from expressions import (parse_arrow, parse_character, parse_germ, parse_hull, parse_ideal,
                         parse_open, tokenize)
from germ_groupoid import Germ
from inverse_hull import apply, hull_compose, left_inverse, left_mult
from lcsc_core import two_square_table


def test_pairs(nx6, znx):
    assert parse_arrow("(2,7)", nx6) == nx6.arrow(2, 1)
    assert parse_arrow(" ( -3 , 2 ) ", znx) == znx.arrow(-3, 2)


def test_hull_word(nx6):
    c, u = nx6.arrow(6, 0), nx6.arrow(1, 1)
    expected = hull_compose(hull_compose(left_mult(c), left_mult(u)), left_inverse(c))
    s = parse_hull("(6,0)(1,1)inv((6,0))", nx6)
    assert s == expected
    assert parse_hull("(6,0) * (1,1) * inv((6,0))", nx6) == expected
    assert apply(s, nx6.arrow(12, 3)) == nx6.arrow(12, 5)


def test_grouping(nx6):
    assert parse_hull("((2,0))", nx6) == left_mult(nx6.arrow(2, 0))
    assert parse_hull("inv((2,0)(3,1))", nx6) == parse_hull("inv((3,1)) inv((2,0))", nx6)


def test_characters(nx6):
    assert parse_character("chi(6,3)", nx6) == chi(nx6.arrow(6, 0))


def test_germ_forms_agree(nx6):
    long_form = parse_germ("germ((6,0)(1,1)inv((6,0)); chi(6,0))", nx6)
    short_form = parse_germ("(6,0)(1,1)inv((6,0))", nx6, at="chi(6,0)")
    assert isinstance(long_form, Germ)
    assert long_form == short_form
    assert long_form.value() == nx6.arrow(6, 1)


def test_germ_outside_domain(nx6):
    with pytest.raises(ParseError):
        parse_germ("inv((4,0))", nx6, at="chi(2,0)")
    with pytest.raises(ParseError):
        parse_germ("germ(inv((4,0)); chi(2,0))", nx6)


def test_ideals(nx6):
    ideal = parse_ideal(r"(2,0) \ (4,0) | (3,0)", nx6)
    members = [a for a in range(1, 13) if ideal.contains(nx6.arrow(a, 0))]
    assert members == [2, 3, 6, 9, 10, 12]
    assert parse_ideal("empty", nx6).is_empty()


def test_basic_opens(nx6):
    u = parse_open("in: (2,0), not: [(4,0), (6,0)]", nx6)
    assert u.contains(chi(nx6.arrow(2, 0)))
    assert u.contains(chi(nx6.arrow(10, 3)))
    assert not u.contains(chi(nx6.arrow(4, 0)))
    assert not u.contains(chi(nx6.arrow(3, 0)))
    assert parse_open("in: (1,0), not: []", nx6).forbidden == ()


def test_table_names():
    backend = two_square_table()
    assert parse_arrow("m1", backend) == backend.arrow("m1")
    assert parse_character("chi(m1)", backend) == chi(backend.arrow("m1"))
    assert parse_hull("inv(p) q", backend) == hull_compose(left_inverse(backend.arrow("p")),
                                                           left_mult(backend.arrow("q")))


def test_pairs_are_refused_on_tables():
    with pytest.raises(ParseError) as info:
        parse_arrow("(1,2)", two_square_table())
    assert info.value.expected == "an arrow name"


def test_names_are_refused_on_families(nx6):
    with pytest.raises(ParseError) as info:
        parse_arrow("f", nx6)
    assert info.value.expected == "a pair (x,y)"


def test_unknown_table_arrow():
    with pytest.raises(ParseError) as info:
        parse_arrow("zz", two_square_table())
    assert info.value.position == 0


@pytest.mark.parametrize("text,position,expected", [
    ("(2,)", 3, "an integer"),
    ("(2,0) (3,0)", 6, "end of input"),
    ("inv", 0, "an arrow"),
    ("", 0, "an arrow"),
])
def test_error_positions(nx6, text, position, expected):
    with pytest.raises(ParseError) as info:
        parse_arrow(text, nx6)
    assert info.value.position == position
    assert info.value.expected == expected


def test_bad_character(nx6):
    with pytest.raises(ParseError) as info:
        parse_hull("(2,0) $", nx6)
    assert info.value.position == 6
    with pytest.raises(ParseError):
        parse_arrow("(0,1)", nx6)


def test_missing_bracket(nx6):
    with pytest.raises(ParseError) as info:
        parse_open("in: (2,0), not: [(4,0)", nx6)
    assert info.value.expected == "']'"


def test_tokens():
    kinds = [kind for kind, _, _ in tokenize("a@root.b' (1,-2)")]
    assert kinds == ["name", "sym", "int", "sym", "int", "sym", "end"]
