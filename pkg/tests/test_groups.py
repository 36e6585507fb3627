import itertools
import random

import pytest
from hypothesis import given, strategies as st

from crossed_kernel.groups import (CyclicGroup, FiniteGroup, GraphProduct, GraphSpec, GroupError,
                                   GroupRingElem, augmentation, direct_product, gp_normalize,
                                   group_from_descriptor, named_group, norm_element, ring_act)
from oracles import reachable_words


def test_cyclic_arithmetic():
    C4 = CyclicGroup(4)
    assert C4.mul(3, 2) == 1
    assert C4.inv(1) == 3
    assert C4.format(3) == "t^3" and C4.parse("t^3") == 3 and C4.format(0) == "1"
    Z = CyclicGroup(0)
    assert Z.mul(5, -7) == -2 and not Z.is_finite


def test_finite_group_validation():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    bad = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]]
    FiniteGroup(bad)  # C4 with another labelling is fine
    nonassoc = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        FiniteGroup(nonassoc)


@pytest.mark.parametrize("name,order,abelian", [
    ("C5", 5, True), ("S3", 6, False), ("Q8", 8, False), ("D4", 8, False), ("C2xC3", 6, True)])
def test_named_groups(name, order, abelian):
    G = named_group(name)
    assert G.order == order and G.is_abelian() == abelian
    for g in G.elements():
        assert G.mul(g, G.inv(g)) == G.identity


def test_group_inverse_law_all_constructions():
    for G in (CyclicGroup(6), FiniteGroup.dihedral(5), FiniteGroup.quaternion(),
              direct_product({"A": CyclicGroup(2), "B": CyclicGroup(3)})):
        for g in G.elements():
            assert G.mul(g, G.inv(g)) == G.identity
            assert G.parse(G.format(g)) == g


# -- group ring ------------------------------------------------------------

def _random_ring(G, rng, size=4):
    elems = G.elements()
    return GroupRingElem(G, {rng.choice(elems): rng.randint(-3, 3) for _ in range(size)})


@pytest.mark.parametrize("G", [CyclicGroup(7), FiniteGroup.symmetric3(), FiniteGroup.dihedral(6),
                               FiniteGroup.quaternion()])
def test_ring_axioms(G):
    rng = random.Random(11)
    for _ in range(100):
        a, b, c = (_random_ring(G, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        g = rng.choice(G.elements())
        assert ring_act(a + b, g) == ring_act(a, g) + ring_act(b, g)
        assert augmentation(a * b) == augmentation(a) * augmentation(b)


def test_ring_examples():
    C3 = CyclicGroup(3)
    one_minus_t = GroupRingElem(C3, {0: 1, 1: -1})
    assert ring_act(one_minus_t, 1) == GroupRingElem(C3, {1: 1, 2: -1})
    assert augmentation(norm_element(C3, 1, 3)) == 3


@pytest.mark.parametrize("p", range(2, 8))
def test_one_minus_t_kills_norm(p):
    G = CyclicGroup(p)
    assert (GroupRingElem(G, {0: 1, 1: -1}) * norm_element(G, 1, p)) == 0


def test_mixed_groups_rejected():
    with pytest.raises(GroupError):
        GroupRingElem.one(CyclicGroup(2)) + GroupRingElem.one(CyclicGroup(3))


# -- graph products --------------------------------------------------------

SQUARE = GraphSpec.build("ABCD", [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")])


def _gp(graph, order=3):
    return GraphProduct(graph, {v: CyclicGroup(order) for v in graph.vertices})


def test_square_examples():
    gp = _gp(SQUARE)
    assert gp_normalize([("B", 1), ("A", 1)], gp) == (("A", 1), ("B", 1))
    assert gp_normalize([("A", 1), ("A", 2)], gp) == ()
    assert gp_normalize([("A", 1), ("C", 1)], gp) == (("A", 1), ("C", 1))
    ab = gp_normalize([("A", 1), ("B", 1)], gp)
    assert gp.mul(ab, gp.inv(gp.syllable("B", 1))) == (("A", 1),)


def test_merge_across_commuting_syllables():
    # order C < A < B; A commutes with both B and C, which do not commute
    g = GraphSpec.build("CAB", [("A", "B"), ("A", "C")])
    gp = _gp(g)
    left = gp_normalize([("A", 1), ("B", 1), ("C", 1), ("A", 1)], gp)
    right = gp_normalize([("A", 2), ("B", 1), ("C", 1)], gp)
    assert left == right


def test_errors():
    gp = _gp(SQUARE)
    with pytest.raises(GroupError):
        gp_normalize([("Z", 1)], gp)
    with pytest.raises(GroupError):
        gp_normalize([("A", 7)], gp)
    with pytest.raises(ValueError):
        GraphSpec.build("AB", [("A", "A")])


def _graphs():
    vs = "ABCD"
    pairs = list(itertools.combinations(vs, 2))
    rng = random.Random(3)
    yield SQUARE
    yield GraphSpec.build("CAB", [("A", "B"), ("A", "C")])
    for _ in range(6):
        yield GraphSpec.build(vs, [e for e in pairs if rng.random() < 0.5])


@pytest.mark.parametrize("graph", list(_graphs()))
def test_normal_form_constant_on_rewriting_classes(graph):
    """Every word reachable by swaps/merges/deletions normalizes identically,
    and the result is the shortest, lexicographically least reachable word."""
    gp = _gp(graph, order=2)
    rank = {v: i for i, v in enumerate(graph.vertices)}
    syll = [(v, 1) for v in graph.vertices]
    for length in range(1, 5):
        for word in itertools.product(syll, repeat=length):
            reach = reachable_words(word, graph.adjacent, lambda v, g, h: (g + h) % 2, lambda v: 0)
            forms = {gp_normalize(list(r), gp) for r in reach}
            assert len(forms) == 1
            shortest = min(len(r) for r in reach)
            best = min((r for r in reach if len(r) == shortest),
                       key=lambda r: [rank[v] for v, _ in r])
            assert forms.pop() == best


@given(st.lists(st.tuples(st.sampled_from("ABCD"), st.integers(0, 2)), max_size=8),
       st.lists(st.tuples(st.sampled_from("ABCD"), st.integers(0, 2)), max_size=8))
def test_graph_product_group_laws(a, b):
    gp = _gp(SQUARE)
    x, y = gp_normalize(a, gp), gp_normalize(b, gp)
    assert gp.mul(x, gp.inv(x)) == ()
    assert gp.mul(gp.mul(x, y), gp.inv(y)) == x
    assert gp_normalize(a + b, gp) == gp.mul(x, y)


def test_complete_graph_matches_table_product():
    G = direct_product({"A": CyclicGroup(2), "B": CyclicGroup(3)})
    assert G.is_finite and G.order == 6
    T = FiniteGroup.from_group(G)
    assert T.is_abelian()


def test_descriptors_round_trip():
    for G in (CyclicGroup(5), FiniteGroup.symmetric3(), _gp(SQUARE)):
        H = group_from_descriptor(G.descriptor())
        assert H == G
