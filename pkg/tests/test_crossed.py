import random

import pytest

from crossed_kernel.crossed import (ComplexError, CrossedComplex, CrsMorphism, Dim2Elem,
                                    ModuleElem, abelianize2, apply_morphism, check_morphism,
                                    delta2, delta_n, eq2, expand_dim2, identity_morphism,
                                    peiffer, random_dim2, random_word, validate_axioms)
from crossed_kernel.groups import CyclicGroup, FiniteGroup, GroupRingElem
from crossed_kernel.resolutions import cyclic_resolution, standard_resolution
from crossed_kernel.tensor import tensor_complex
from crossed_kernel.words import EMPTY, Word

IDENTITY = Dim2Elem()


@pytest.fixture(scope="module")
def s3():
    return standard_resolution(FiniteGroup.symmetric3(), 3)


def test_delta2_is_equivariant():
    C = cyclic_resolution(3, 3)
    c = Dim2Elem.gen("x2", 1, Word.parse("x1"))
    assert delta2(c, C) == Word.parse("x1^3")
    assert delta2(c.inverse(), C) == Word.parse("x1^-3")


def test_abelianize_examples():
    C = cyclic_resolution(3, 3)
    c = Dim2Elem((("x2", 1, Word.parse("x1")), ("x2", -1, EMPTY), ("x2", 1, Word.parse("x1^4"))))
    m = abelianize2(c, C)
    assert m == ModuleElem(C.group, {"x2": GroupRingElem(C.group, {1: 2, 0: -1})})


def test_peiffer_elements_are_trivial(s3):
    rng = random.Random(2)
    for _ in range(300):
        h, k = random_dim2(s3, rng), random_dim2(s3, rng)
        assert eq2(peiffer(h, k, s3), IDENTITY, s3)


def test_eq2_is_a_congruence(s3):
    rng = random.Random(3)
    for _ in range(200):
        c, d, e = (random_dim2(s3, rng) for _ in range(3))
        u = random_word(s3.alphabet, 5, rng)
        assert eq2(c * d, d * c.act(delta2(d, s3)), s3)
        assert eq2(c * c.inverse(), IDENTITY, s3)
        if eq2(c, d, s3):
            assert eq2(c * e, d * e, s3) and eq2(e * c, e * d, s3)
        assert eq2(c * d, d * c, s3) == (delta2(c * d, s3) == delta2(d * c, s3))
        assert eq2(c.act(u).act(u.inverse()), c, s3)


def test_eq2_detects_differences():
    C = cyclic_resolution(2, 3)
    a = Dim2Elem.gen("x2")
    b = Dim2Elem.gen("x2", 1, Word.parse("x1"))
    assert delta2(a, C) == delta2(b, C)
    assert not eq2(a, b, C)


def test_expand_dim2_inverts_abelianize(s3):
    rng = random.Random(4)
    for _ in range(100):
        c = random_dim2(s3, rng)
        m = abelianize2(c, s3)
        assert abelianize2(expand_dim2(m, s3), s3) == m


def test_delta_n_matches_stored_boundaries():
    C = cyclic_resolution(3, 5)
    x4 = ModuleElem.gen(C.group, "x4")
    assert delta_n(x4, C, 4) == C.boundary("x4")
    assert delta_n(delta_n(ModuleElem.gen(C.group, "x5"), C, 5), C, 4) == ModuleElem.zero(C.group)


@pytest.mark.parametrize("C", [cyclic_resolution(4, 5), standard_resolution(CyclicGroup(3), 4)],
                         ids=["cyclic4", "standardC3"])
def test_validate_axioms_passes(C):
    r = validate_axioms(C, samples=200, seed=1)
    assert r.ok, r.failed()
    assert {c.check for c in r.checks} == {"phi_delta2", "ddzero", "cm1", "cm2"}


def test_validate_axioms_catches_bad_delta3():
    good = cyclic_resolution(3, 3)
    bad = CrossedComplex(good.group, good.alphabet, good.phi, good.relators, {3: ["x3"]},
                         {3: {"x3": Dim2Elem.gen("x2")}}, 3, good.lift)
    r = validate_axioms(bad, samples=10)
    assert not r.ok
    assert r.get("ddzero", 3).witness["generator"] == "x3"


def test_validate_axioms_catches_relator_not_killed():
    G = CyclicGroup(3)
    bad = CrossedComplex(G, ["x"], {"x": 1}, {"r": Word.parse("x x")}, maxdim=2)
    assert not validate_axioms(bad, samples=5).ok


def test_validate_is_deterministic():
    C = cyclic_resolution(5, 4)
    assert validate_axioms(C, 50, 7).digest() == validate_axioms(C, 50, 7).digest()


def test_structure_errors():
    G = CyclicGroup(2)
    with pytest.raises(ComplexError):
        CrossedComplex(G, ["x"], {}, {})
    with pytest.raises(Exception):
        CrossedComplex(G, ["x"], {"x": 1}, {"r": Word.parse("y")})
    with pytest.raises(ComplexError):
        CrossedComplex(G, ["x"], {"x": 1}, {"r": Word.parse("x x")}, {3: ["c"]}, {3: {}})
    with pytest.raises(ComplexError):
        CrossedComplex(G, ["x"], {"x": 1}, {"x": Word.parse("x x")})


def test_identity_morphism(s3):
    f = identity_morphism(s3)
    assert check_morphism(f).ok
    C = cyclic_resolution(3, 5)
    assert check_morphism(identity_morphism(C)).ok


def test_inclusion_into_tensor_is_a_morphism():
    A, B = cyclic_resolution(2, 3, "x"), cyclic_resolution(3, 3, "y")
    T = tensor_complex(A, B, 3)
    f = CrsMorphism(A, T, {x: Word.gen(x) for x in A.alphabet},
                    {r: Dim2Elem.gen(r) for r in A.relators},
                    {3: {"x3": ModuleElem.gen(T.group, "x3")}})
    assert check_morphism(f).ok
    assert apply_morphism(f, Word.parse("x1 x1"), 1) == Word.parse("x1 x1")


def test_broken_morphism_is_reported():
    A = cyclic_resolution(2, 3)
    f = identity_morphism(A)
    f.f2 = {"x2": Dim2Elem.gen("x2", -1)}
    r = check_morphism(f)
    assert not r.ok and r.get("morphism", 2).witness
