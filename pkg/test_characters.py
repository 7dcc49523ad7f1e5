import pytest
from hypothesis import given, settings, strategies as st

from characters import (BasicOpen, PrincipalCharacter, char_act, char_eq, char_eval, chi,
                        filter_semicharacter, find_principal_in, joins_preserved_check,
                        relation)
from errors import BadRelation
from inverse_hull import (BooleanIdeal, hull_compose, hull_invert, idempotent, left_inverse,
                          left_mult)
from lcsc_core import compose, nx_zmod, two_square_table
from verdicts import Status


def test_char_eval(nx6):
    assert char_eval(chi(nx6.arrow(6, 0)), BooleanIdeal.principal(nx6.arrow(2, 0)))
    c = nx6.arrow(5, 2)
    assert char_eval(chi(c), idempotent(c))
    assert not char_eval(chi(nx6.arrow(2, 0)), BooleanIdeal.principal(nx6.arrow(4, 0)))


def test_translation_moves_a_character(znx):
    moved = char_act(left_mult(znx.arrow(1, 1)), chi(znx.arrow(0, 2)))
    assert moved == chi(znx.arrow(1, 2))
    assert not char_eq(moved, chi(znx.arrow(0, 2)))


def test_unit_fixes_a_character(nx6):
    c = nx6.arrow(6, 0)
    assert char_act(left_mult(nx6.arrow(1, 1)), chi(c)) == chi(c)
    assert char_act(idempotent(nx6.arrow(2, 0)), chi(c)) == chi(c)


def test_act_outside_domain(nx6):
    assert char_act(left_inverse(nx6.arrow(4, 0)), chi(nx6.arrow(2, 0))) is None


def test_char_eq(nx6):
    assert char_eq(chi(nx6.arrow(6, 1)), chi(nx6.arrow(6, 4)))
    assert chi(nx6.arrow(6, 1)) == chi(nx6.arrow(6, 4))
    assert not char_eq(chi(nx6.arrow(6, 1)), chi(nx6.arrow(3, 1)))


def test_character_text(nx6):
    assert str(chi(nx6.arrow(6, 5))) == "chi(6,0)"
    backend = two_square_table()
    assert str(chi(backend.arrow("m1"))) == "chi(m1)"


@settings(max_examples=500)
@given(st.integers(1, 12), st.integers(0, 5), st.integers(1, 12), st.integers(0, 5),
       st.integers(1, 12), st.integers(1, 24))
def test_action_is_compatible_with_evaluation(a, k, b, l, g, h):
    nx6 = nx_zmod(6)
    s = hull_compose(left_mult(nx6.arrow(a, k)), left_inverse(nx6.arrow(b, l)))
    x = compose(nx6.arrow(b, l), nx6.arrow(g, 1))
    character = chi(x)
    e = idempotent(nx6.arrow(h, 0))
    moved = char_act(s, character)
    conjugated = hull_compose(hull_compose(hull_invert(s), e), s)
    assert char_eval(moved, e) == char_eval(character, conjugated)


@given(st.integers(1, 12), st.integers(0, 5), st.integers(1, 12), st.integers(0, 5))
def test_action_is_functorial(a, k, b, l):
    nx6 = nx_zmod(6)
    s, t = left_mult(nx6.arrow(a, k)), left_mult(nx6.arrow(b, l))
    character = chi(nx6.arrow(3, 2))
    assert char_act(s, char_act(t, character)) == char_act(hull_compose(s, t), character)


@given(st.integers(1, 30), st.integers(0, 5), st.integers(0, 5))
def test_char_eq_invariant_under_units(a, k, j):
    nx6 = nx_zmod(6)
    c = nx6.arrow(a, k)
    assert char_eq(chi(c), chi(compose(c, nx6.arrow(1, j))))


def test_find_principal_in_difference(nx6):
    u = BasicOpen(BooleanIdeal.principal(nx6.arrow(2, 0)), (BooleanIdeal.principal(nx6.arrow(4, 0)),))
    verdict = find_principal_in(u, bound=20)
    assert verdict.status == Status.YES
    assert verdict.witness == chi(nx6.arrow(2, 0))


def test_find_principal_in_whole_space(nx6):
    verdict = find_principal_in(BasicOpen(BooleanIdeal.whole(nx6)), bound=5)
    assert verdict.witness == chi(nx6.identity())


def test_empty_open_depends_on_backend(nx6):
    two = BooleanIdeal.principal(nx6.arrow(2, 0))
    assert find_principal_in(BasicOpen(two, (two,)), bound=5).status == Status.INCONCLUSIVE

    backend = two_square_table()
    p = BooleanIdeal.principal(backend.arrow("p"))
    assert find_principal_in(BasicOpen(p, (p,))).status == Status.EMPTY


@pytest.mark.parametrize("a", [1, 2, 3, 5, 12])
def test_density_below_default_bound(nx6, a):
    u = BasicOpen(BooleanIdeal.principal(nx6.arrow(a, 0)),
                  (BooleanIdeal.principal(nx6.arrow(2 * a, 0)), BooleanIdeal.principal(nx6.arrow(3 * a, 0))))
    verdict = find_principal_in(u, bound=50)
    assert verdict.status == Status.YES
    assert u.contains(verdict.witness)


def test_principal_characters_preserve_joins(nx6):
    f = idempotent(nx6.arrow(2, 0))
    parts = [idempotent(nx6.arrow(4, 0)), idempotent(nx6.arrow(2, 0))]
    relations = [relation(f, parts), relation(f, [f, f])]
    for a in range(1, 13):
        assert joins_preserved_check(chi(nx6.arrow(a, 1)), relations).status == Status.PASS
        moved = char_act(left_mult(nx6.arrow(1, 1)), chi(nx6.arrow(a, 1)))
        assert joins_preserved_check(moved, relations).status == Status.PASS


def test_bad_relation(nx6):
    with pytest.raises(BadRelation):
        relation(idempotent(nx6.arrow(2, 0)), [idempotent(nx6.arrow(4, 0))])


def test_filter_semicharacter_breaks_a_join():
    backend = two_square_table()
    p, q = backend.arrow("p"), backend.arrow("q")
    f = hull_compose(idempotent(p), idempotent(q))
    rel = relation(f, [idempotent(backend.arrow("m1")), idempotent(backend.arrow("m2"))])
    assert joins_preserved_check(filter_semicharacter(f), [rel]).status == Status.FAIL
    assert joins_preserved_check(PrincipalCharacter(backend.arrow("m1")), [rel]).status == Status.PASS
