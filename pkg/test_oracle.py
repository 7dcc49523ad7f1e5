import random

import pytest

from characters import chi
from errors import SizeLimit
from inverse_hull import (from_normal, hull_by_words, hull_compose, hull_eq, hull_invert,
                          idempotent, left_inverse, left_mult)
from lcsc_core import cyclic_group_table, free_tree_table, load_table, path_category
from oracle import (PartialBijectionTable, TruncationBox, bounded_extensional_eq,
                    bounded_germ_eq, enumerate_hull_finite, table_of)
from verdicts import Status


def test_tree_hull_matches_hand_count():
    # identity at the root, identity at the leaf, the edge, its inverse,
    # the projection onto the edge and the empty map
    hull = enumerate_hull_finite(free_tree_table(1, 1))
    assert len(hull) == 6
    assert PartialBijectionTable(frozenset()) in hull


def test_group_table_hull_is_the_group():
    hull = enumerate_hull_finite(cyclic_group_table(3))
    assert len(hull) == 3
    assert all(len(t.pairs) == 3 for t in hull)


def test_trivial_table_hull():
    assert len(enumerate_hull_finite(cyclic_group_table(1))) == 1


def test_hull_is_closed_and_injective(tables_dir):
    hull = enumerate_hull_finite(load_table(tables_dir / "two_squares.json"))
    for s in hull:
        assert s.is_injective()
        assert s.invert() in hull
        for t in hull:
            assert s.compose(t) in hull


def test_size_limit():
    with pytest.raises(SizeLimit):
        enumerate_hull_finite(free_tree_table(1, 1), limit=2)


def test_only_tables_are_enumerated(nx6):
    with pytest.raises(TypeError):
        enumerate_hull_finite(nx6)


def test_table_of_matches_enumeration():
    backend = free_tree_table(2, 1)
    hull = enumerate_hull_finite(backend)
    edge = backend.arrow("a@root")
    assert table_of(left_mult(edge)) in hull
    assert table_of(left_inverse(edge)) in hull


def test_units_differ_at_the_identity(nx6):
    box = TruncationBox.around(nx6, 10)
    verdict = bounded_extensional_eq(left_mult(nx6.arrow(1, 1)), left_mult(nx6.arrow(1, 2)), box)
    assert verdict.status == Status.DISTINCT
    assert verdict.witness == nx6.identity()


def test_extensional_eq_reflexive(nx6):
    s = left_inverse(nx6.arrow(4, 3))
    assert bounded_extensional_eq(s, s, TruncationBox.around(nx6, 10)).status == Status.AGREE


def test_boxes(nx6, znx):
    box = TruncationBox.around(nx6, 10)
    assert box.closed_under_division
    assert len(box) == 60
    assert not TruncationBox.around(znx, 5).closed_under_division


def test_conjugated_units_are_distinct_germs(nx6):
    c = nx6.arrow(2, 0)
    s = from_normal(c * nx6.arrow(1, 1), c)
    t = from_normal(c * nx6.arrow(1, 2), c)
    verdict = bounded_germ_eq(s, t, chi(c), TruncationBox.around(nx6, 12))
    assert verdict.status == Status.DISTINCT
    assert verdict.witness == c


def test_witness_is_not_a_global_unit_germ(nx6):
    c, u = nx6.arrow(6, 0), nx6.arrow(1, 1)
    s = hull_compose(hull_compose(left_mult(c), left_mult(u)), left_inverse(c))
    verdict = bounded_germ_eq(s, left_mult(u), chi(c), TruncationBox.around(nx6, 24))
    assert verdict.status == Status.DISTINCT


def test_restriction_gives_the_same_germ(nx6):
    c, u = nx6.arrow(6, 0), nx6.arrow(1, 1)
    s = hull_compose(hull_compose(left_mult(c), left_mult(u)), left_inverse(c))
    restricted = hull_compose(s, idempotent(c))
    verdict = bounded_germ_eq(s, restricted, chi(c), TruncationBox.around(nx6, 24))
    assert verdict.status == Status.AGREE


def test_germ_eq_agrees_on_the_principal_neighbourhood(nx6):
    # (1,[3]) and (1,[0]) disagree at the identity but agree on (2,0)C
    s, t = left_mult(nx6.arrow(1, 3)), left_mult(nx6.arrow(1, 0))
    verdict = bounded_germ_eq(s, t, chi(nx6.arrow(2, 0)), TruncationBox.around(nx6, 12))
    assert verdict.status == Status.AGREE


def random_table(seed):
    """A small valid table: a cyclic group or the path category of a random DAG."""
    rng = random.Random(seed)
    if rng.random() < 0.2:
        return cyclic_group_table(rng.randint(1, 6))
    while True:
        objects = [f"o{i}" for i in range(rng.randint(2, 4))]
        edges = []
        for i, j in ((i, j) for i in range(len(objects)) for j in range(i + 1, len(objects))):
            for _ in range(rng.choice([0, 0, 1, 1, 2])):
                edges.append((f"e{len(edges)}", objects[j], objects[i]))
        if not edges:
            continue
        backend = path_category(objects, edges, name=f"random{seed}")
        if len(backend.box(0)) <= 6:
            return backend


@pytest.mark.parametrize("seed", range(25))
def test_words_reach_the_whole_hull(seed):
    backend = random_table(seed)
    found, _ = hull_by_words(backend)
    assert {table_of(s) for s in found} == enumerate_hull_finite(backend)


@pytest.mark.parametrize("seed", range(25))
def test_hull_operations_match_partial_bijections(seed):
    found, _ = hull_by_words(random_table(seed))
    for s in found:
        graph = table_of(s)
        assert table_of(hull_invert(s)) == graph.invert()
        e = hull_compose(hull_invert(s), s)
        assert e.is_idempotent()
        assert table_of(e) == PartialBijectionTable(frozenset((x, x) for x, _ in graph.pairs))
        for t in found:
            assert table_of(hull_compose(s, t)) == graph.compose(table_of(t))
            assert (hull_eq(s, t).status == Status.EQUAL) == (graph == table_of(t))
