import random

import pytest

from belian import generate as gen
from belian.errors import ValidationError
from belian.pmod.module import pointed_set
from belian.sheaf.cohomology import (acyclic_class_report, injectivity_search, resolution_flabby,
                                     sheaf_cohomology)
from belian.sheaf.injective import embed_canonical, embed_economical
from belian.sheaf.sheaf import (MonoidedSpace, Presheaf, Sheaf, constant_sheaf, extend_by_zero, forget_structure,
                                godement, is_flabby, presheaf_of, pushforward_closed, restrict_to_subspace,
                                sheaf_condition_report, sheaf_from_presheaf, sheafify, skyscraper)
from belian.sheaf.space import (FinSpace, closed_chain_length, dimension, discrete, point, sierpinski,
                                t0_spaces, v_space)

from corpus import spaces


def chain3():
    return FinSpace.from_opens(("a", "b", "c"), [(), (0,), (0, 1), (0, 1, 2)])


def test_t0_counts():
    # T0 topologies up to homeomorphism on 1..4 points: 1, 2, 5, 16
    sp = t0_spaces(4)
    assert [sum(len(X) == n for X in sp) for n in range(1, 5)] == [1, 2, 5, 16]
    assert all(X.is_t0 and not X.check() for X in sp)


def test_not_a_topology():
    with pytest.raises(ValidationError):
        FinSpace.from_opens(("a", "b"), [(), (0,), (1,)])


def test_dimensions():
    assert dimension(point()) == 0
    assert dimension(discrete(3)) == 0
    assert dimension(sierpinski()) == 1
    assert dimension(v_space()) == 1
    assert dimension(chain3()) == 2
    # closed subsets of the discrete 2-point space: {}, {p0}, {p0,p1}
    assert closed_chain_length(discrete(2)) == 2


def test_constant_sheaf_sections():
    one = pointed_set(["0", "1"])
    F = constant_sheaf(MonoidedSpace.trivial(v_space()), one)
    assert len(F.global_sections()) == 2
    G = constant_sheaf(MonoidedSpace.trivial(discrete(2)), one)
    assert len(G.global_sections()) == 4


def test_skyscraper_sections():
    X = sierpinski()
    B = MonoidedSpace.trivial(X)
    I = pointed_set(["0", "a", "b"])
    S = skyscraper(B, 1, I)
    # i_{c*} I: nonzero only over opens containing the closed point c
    assert [len(S.sections(U)) for U in X.opens] == [1, 1, 3]
    assert is_flabby(S, from_top_only=False)[0]


def test_sheaf_condition_detects_failed_gluing():
    X = discrete(2)
    one = pointed_set(["0", "1"])
    P = Presheaf(X, {U: one for U in X.opens},
                 {(U, V): (0, 1) for U in X.opens for V in X.opens if V <= U})
    P.values[frozenset()] = pointed_set(["0"])
    P.restr.update({(U, frozenset()): (0, 0) for U in X.opens if U})
    P.restr[(frozenset(), frozenset())] = (0,)
    laws = {v.law for v in sheaf_condition_report(P)}
    assert "gluing" in laws
    with pytest.raises(ValidationError):
        sheaf_from_presheaf(P)
    F, unit = sheafify(P)
    assert len(F.global_sections()) == 4


def test_sheaf_presheaf_round_trip():
    rng = random.Random(0)
    for X in spaces(3):
        F = gen.random_sheaf(rng, MonoidedSpace.trivial(X), 3)
        P = presheaf_of(F)
        assert not P.check() and not sheaf_condition_report(P)
        G = sheaf_from_presheaf(P)
        assert all(len(G.sections(U)) == len(F.sections(U)) for U in X.opens)


def test_godement_is_flabby_and_embeds():
    rng = random.Random(1)
    for X in spaces(3):
        F = gen.random_sheaf(rng, MonoidedSpace.trivial(X), 3)
        P, eta = godement(F)
        assert is_flabby(P.sheaf, from_top_only=False)[0]
        assert eta.is_injective()


def test_embeddings_into_injectives():
    rng = random.Random(2)
    for X in spaces(3):
        F = gen.random_sheaf(rng, MonoidedSpace.trivial(X), 2)
        for emb in (embed_canonical(F), embed_economical(F)):
            assert emb.mono.is_injective()
            assert injectivity_search(emb.target) is None


def test_cohomology_on_point_is_trivial_above_zero():
    B = MonoidedSpace.trivial(point())
    F = constant_sheaf(B, pointed_set(["0", "a", "b"]))
    rep = sheaf_cohomology(F, 3)
    assert rep.sizes == [3, 1, 1, 1]
    assert resolution_flabby(rep.resolution)


def test_acyclic_class_report_shape():
    B = MonoidedSpace.trivial(sierpinski())
    rep = acyclic_class_report(skyscraper(B, 1, pointed_set(["0", "a"])))
    assert rep["I flabby"] and rep["F flabby"]
    assert rep["higher cohomology vanishes"]


def test_open_and_closed_operations():
    X = sierpinski()
    one = pointed_set(["0", "1"])
    F = constant_sheaf(MonoidedSpace.trivial(X), one)
    FU, incl = extend_by_zero(F, {0})
    assert [len(s) for s in FU.stalks] == [2, 1] and incl.is_injective()
    q = pushforward_closed(F, {1})
    assert [len(s) for s in q.target.stalks] == [1, 2] and q.is_surjective()
    with pytest.raises(ValidationError):
        extend_by_zero(F, {1})
    with pytest.raises(ValidationError):
        pushforward_closed(F, {0})
    R = restrict_to_subspace(F, [1])
    assert len(R.space) == 1 and len(R.global_sections()) == 2


def test_forget_structure_keeps_sections():
    rng = random.Random(4)
    X = sierpinski()
    A = gen.small_monoids(2)[-1]
    B = MonoidedSpace(X, (A, A), {(0, 0): tuple(range(len(A))), (1, 0): tuple(range(len(A))),
                                   (1, 1): tuple(range(len(A)))})
    assert not B.check()
    M = gen.random_module(rng, A, 4)
    ident = tuple(range(len(M)))
    F = Sheaf(B, (M, M), {(0, 0): ident, (1, 0): ident, (1, 1): ident}).require()
    G = forget_structure(F)
    assert all(len(G.sections(U)) == len(F.sections(U)) for U in X.opens)
