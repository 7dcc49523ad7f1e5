import pytest
from hypothesis import given, settings, strategies as st

import config
import inverse_hull
from errors import NoNormalForm, WordTooLong
from inverse_hull import (BooleanIdeal, ExtendedHullElement, apply, boolean_membership,
                          domain_generators, extended_compose, from_normal, hull_by_words,
                          hull_compose, hull_eq, hull_from_word, hull_invert, idempotent,
                          idempotent_leq, idempotent_meet, image, left_inverse, left_mult,
                          normalize, preimage, range_generators, render, zero)
from lcsc_core import compose, free_tree_table, nx_zmod, same_ideal, z_nx
from oracle import TruncationBox, bounded_extensional_eq
from verdicts import Status

letters = st.tuples(st.integers(1, 8), st.integers(0, 5), st.booleans())


def word_from(backend, spec):
    one = backend.identity()
    factors = []
    for a, k, inverse in spec:
        c = backend.arrow(a, k)
        factors.append((c, one) if inverse else (one, c))
    return hull_from_word(backend, factors)


def shift_witness(backend, n=6):
    c, u = backend.arrow(n, 0), backend.arrow(1, 1)
    return hull_compose(hull_compose(left_mult(c), left_mult(u)), left_inverse(c))


@given(st.integers(1, 50), st.integers(0, 5))
def test_witness_shifts_residue(a, m):
    nx6 = nx_zmod(6)
    assert apply(shift_witness(nx6), nx6.arrow(6 * a, m)) == nx6.arrow(6 * a, m + a)


def test_idempotent_is_identity_on_its_domain(nx6):
    c, x = nx6.arrow(4, 1), nx6.arrow(3, 5)
    cx = compose(c, x)
    assert apply(idempotent(c), cx) == cx


def test_inverse_outside_domain(nx6):
    assert apply(left_inverse(nx6.arrow(2, 0)), nx6.arrow(3, 1)) is None


def test_compose_normal_form(nx6):
    s = hull_compose(left_mult(nx6.arrow(3, 0)), left_inverse(nx6.arrow(2, 0)))
    assert normalize(s) == (nx6.arrow(3, 0), nx6.arrow(2, 0))


def test_disjoint_ideals_compose_to_zero(znx):
    s = hull_compose(left_inverse(znx.arrow(0, 2)), left_mult(znx.arrow(1, 2)))
    assert s.is_zero()
    assert normalize(s) is None
    assert render(s) == "0"


def test_single_generator_normal_form(nx6):
    c = nx6.arrow(4, 3)
    assert normalize(left_mult(c)) == (c, nx6.identity())


def test_invert_swaps_the_pair(nx6):
    s = from_normal(nx6.arrow(3, 3), nx6.arrow(2, 0))
    expected = from_normal(nx6.arrow(2, 0), nx6.arrow(3, 3))
    assert hull_eq(hull_invert(s), expected).status == Status.EQUAL


def test_invert_fixes_idempotents_and_zero(nx6):
    e = idempotent(nx6.arrow(4, 0))
    assert hull_invert(e) == e
    assert hull_invert(zero(nx6)).is_zero()


def test_hull_eq_matches_by_a_unit(nx6):
    s = from_normal(nx6.arrow(4, 2), nx6.arrow(2, 0))
    t = from_normal(nx6.arrow(4, 0), nx6.arrow(2, 4))
    assert hull_eq(s, t).status == Status.EQUAL
    assert s == t


def test_hull_eq_distinct_idempotents(nx6):
    e, f = idempotent(nx6.arrow(2, 0)), idempotent(nx6.arrow(3, 0))
    verdict = hull_eq(e, f)
    assert verdict.status == Status.DISTINCT
    x = verdict.witness
    assert (apply(e, x) is None) != (apply(f, x) is None)


def test_hull_eq_reflexive(nx6):
    s = shift_witness(nx6)
    assert hull_eq(s, s).status == Status.EQUAL


def test_idempotent_meet(nx6, znx):
    e, f = idempotent(nx6.arrow(4, 1)), idempotent(nx6.arrow(6, 2))
    assert idempotent_meet(e, f) == idempotent(nx6.arrow(12, 0))
    assert idempotent_meet(e, e) == e
    assert idempotent_leq(idempotent(nx6.arrow(12, 0)), e)
    assert not idempotent_leq(e, f)
    assert idempotent_meet(idempotent(znx.arrow(0, 2)), idempotent(znx.arrow(1, 2))).is_zero()


def test_boolean_membership(nx6):
    ideal = BooleanIdeal.build(nx6, [(nx6.arrow(6, 0), [nx6.arrow(36, 0)])])
    assert boolean_membership(nx6.arrow(6, 0), ideal)
    assert not boolean_membership(nx6.arrow(36, 0), ideal)
    assert not boolean_membership(nx6.arrow(6, 0), BooleanIdeal.empty(nx6))


def test_boolean_algebra_operations(nx6):
    two, three = BooleanIdeal.principal(nx6.arrow(2, 0)), BooleanIdeal.principal(nx6.arrow(3, 0))
    both = two.intersect(three)
    assert both == BooleanIdeal.principal(nx6.arrow(6, 0))
    only_two = two.difference(three)
    for a in range(1, 25):
        x = nx6.arrow(a, 1)
        assert only_two.contains(x) == (a % 2 == 0 and a % 3 != 0)
        assert two.union(three).contains(x) == (a % 2 == 0 or a % 3 == 0)
        assert two.complement().contains(x) == (a % 2 == 1)
    assert str(only_two) == "(2,0)C \\ (6,0)C"


def test_union_absorbs_contained_terms(nx6):
    two, four = BooleanIdeal.principal(nx6.arrow(2, 0)), BooleanIdeal.principal(nx6.arrow(4, 0))
    assert two.union(four).terms == two.terms
    current = two
    for _ in range(3):
        current = current.difference(four).union(four)
    assert current == two
    assert len(current.terms) <= 2


def test_ideal_equality_compares_sets(nx6):
    six = BooleanIdeal.principal(nx6.arrow(6, 0))
    split = BooleanIdeal.build(nx6, [(nx6.arrow(6, 0), [nx6.arrow(12, 0)]), (nx6.arrow(12, 0), [])])
    assert split.terms != six.terms
    assert split == six
    assert hash(split) == hash(six)
    assert split != BooleanIdeal.principal(nx6.arrow(3, 0))


def test_from_generators(nx6):
    two, three = nx6.arrow(2, 0), nx6.arrow(3, 0)
    ideal = BooleanIdeal.from_generators([two, three, nx6.arrow(6, 0)])
    assert ideal == BooleanIdeal.principal(two).union(BooleanIdeal.principal(three))
    assert len(ideal.terms) == 2
    with pytest.raises(ValueError):
        BooleanIdeal.from_generators([])


def test_sample_points(nx6):
    found = BooleanIdeal.principal(nx6.arrow(2, 0)).sample_points(4)
    assert len(found) == 12
    assert all(x.payload[0] % 2 == 0 for x in found)


def test_from_points_on_a_tree():
    backend = free_tree_table(1, 1)
    edge = backend.arrow("a@root")
    assert BooleanIdeal.from_points(backend, [edge]).sample_points(0) == [edge]
    everything = BooleanIdeal.from_points(backend, backend.box(0))
    assert everything.sample_points(0) == backend.box(0)
    assert everything == BooleanIdeal.whole(backend)


def test_range_generators(nx6):
    s = hull_compose(left_mult(nx6.arrow(2, 1)), left_inverse(nx6.arrow(3, 0)))
    (generator,) = range_generators(s)
    assert same_ideal(generator, nx6.arrow(2, 0))
    assert domain_generators(s) == [nx6.arrow(3, 0)]


def test_is_idempotent(nx6):
    assert idempotent(nx6.arrow(4, 0)).is_idempotent()
    assert zero(nx6).is_idempotent()
    assert not left_mult(nx6.arrow(1, 1)).is_idempotent()


def test_image_and_preimage(nx6):
    s = left_mult(nx6.arrow(2, 0))
    three = BooleanIdeal.principal(nx6.arrow(3, 0))
    assert image(s, three) == BooleanIdeal.principal(nx6.arrow(6, 0))
    assert preimage(s, BooleanIdeal.principal(nx6.arrow(6, 0))) == three


def test_extended_element_respects_restriction(nx6):
    restriction = BooleanIdeal.build(nx6, [(nx6.arrow(1, 0), [nx6.arrow(2, 0)])])
    s = ExtendedHullElement(left_mult(nx6.arrow(1, 1)), restriction)
    assert s(nx6.arrow(3, 0)) == nx6.arrow(3, 3)
    assert s(nx6.arrow(2, 0)) is None
    twice = extended_compose(s, s)
    assert twice(nx6.arrow(3, 0)) == nx6.arrow(3, 0)
    assert twice.domain().contains(nx6.arrow(5, 0))


@given(st.lists(letters, min_size=1, max_size=5))
def test_inverse_semigroup_laws(spec):
    nx6 = nx_zmod(6)
    s = word_from(nx6, spec)
    inverse = hull_invert(s)
    assert hull_compose(hull_compose(s, inverse), s) == s
    assert hull_compose(hull_compose(inverse, s), inverse) == inverse
    e, f = hull_compose(inverse, s), hull_compose(s, inverse)
    assert hull_compose(e, f) == hull_compose(f, e)


@given(st.lists(letters, min_size=1, max_size=4))
def test_normal_form_agrees_with_word(spec):
    nx6 = nx_zmod(6)
    s = word_from(nx6, spec)
    rebuilt = from_normal(*normalize(s))
    assert bounded_extensional_eq(s, rebuilt, TruncationBox.around(nx6, 12)).status == Status.AGREE


@settings(max_examples=500)
@given(st.lists(letters, min_size=1, max_size=4), st.integers(1, 10), st.integers(0, 5))
def test_maps_commute_with_right_multiplication(spec, b, l):
    nx6 = nx_zmod(6)
    s = word_from(nx6, spec)
    p = domain_generators(s)[0]
    q = nx6.arrow(b, l)
    assert apply(s, compose(p, q)) == compose(apply(s, p), q)


def test_word_cap(nx6):
    one, c = nx6.identity(), nx6.arrow(2, 0)
    with pytest.raises(WordTooLong):
        hull_from_word(nx6, [(one, c)] * 40)


def test_long_compositions_fall_back_to_the_normal_form(nx6):
    s = left_mult(nx6.arrow(1, 1))
    power = s
    for _ in range(40):
        power = hull_compose(s, power)
    assert power == left_mult(nx6.arrow(1, 41))


def test_znx_equality_uses_division(znx):
    s = from_normal(znx.arrow(1, 2), znx.arrow(0, 2))
    t = from_normal(znx.arrow(5, 2), znx.arrow(4, 2))
    assert hull_eq(s, t).status == Status.EQUAL
    assert hull_eq(s, left_mult(znx.arrow(1, 1))).status == Status.DISTINCT


def test_words_stabilise_on_a_small_tree():
    backend = free_tree_table(1, 1)
    found, length = hull_by_words(backend)
    assert len(found) == 6
    assert length is not None
    assert any(s.is_zero() for s in found)


def test_words_need_generators_on_infinite_backends():
    with pytest.raises(ValueError):
        hull_by_words(z_nx())


def test_equality_without_normal_forms_is_bounded(nx6, monkeypatch):
    def refuse(s):
        raise NoNormalForm("no normal form")

    monkeypatch.setattr(inverse_hull, "normalize", refuse)
    s = left_mult(nx6.arrow(1, 1))
    verdict = hull_eq(s, s)
    assert verdict.status == Status.VERIFIED_UP_TO
    assert verdict.bound == config.ORACLE_BOUND
    assert hull_eq(s, left_mult(nx6.arrow(1, 2))).status == Status.DISTINCT
