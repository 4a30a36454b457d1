import random

import pytest

from belian import generate as gen
from belian.errors import SizeGuardError
from belian.monoid import Monoid
from belian.pmod.module import free_cyclic
from belian.spectrum import (affine_vanishing, dimension_report, is_noetherian_monoid, localize_module,
                             module_sheaf, sections_vs_localization, spectrum, stalk_check, structure_check)

MONOIDS = gen.small_monoids(3)
ZERO = Monoid(("1", "0"), 0, ((0, 1), (1, 1)))
GROUP = Monoid(("1", "g"), 0, ((0, 1), (1, 0)))


def test_spectrum_of_one_and_zero():
    Sp = spectrum(ZERO)
    assert Sp.primes == (frozenset(), frozenset({1}))
    # the empty prime is the generic point: its closure is everything
    assert Sp.space.opens == (frozenset(), frozenset({0}), frozenset({0, 1}))
    assert dimension_report(Sp) == {"dimension": 1, "longest prime chain": 2, "agrees": True}
    assert Sp.D(1) == frozenset({0}) and Sp.D(0) == frozenset({0, 1})


def test_spectrum_of_group_is_a_point():
    Sp = spectrum(GROUP)
    assert Sp.primes == (frozenset(),)
    assert len(Sp.space) == 1


@pytest.mark.parametrize("A", MONOIDS, ids=lambda m: "".join(m.elements))
def test_structure_sheaf(A):
    assert all(structure_check(spectrum(A)).values())
    assert dimension_report(spectrum(A))["agrees"]


@pytest.mark.parametrize("A", MONOIDS, ids=lambda m: "".join(m.elements))
def test_quasi_coherent_sheaves(A):
    Sp = spectrum(A)
    rng = random.Random(len(A))
    for M in [free_cyclic(A)] + [gen.random_module(rng, A, 4) for _ in range(3)]:
        assert stalk_check(Sp, M)
        for f in range(len(A)):
            assert sections_vs_localization(Sp, M, f)["bijective"]
        assert len(module_sheaf(Sp, M).global_sections()) == len(M)


def test_localize_module_at_everything():
    M = free_cyclic(ZERO)
    L, cls = localize_module(M, range(len(ZERO)))
    # the localization of A at all of A is the trivial group, so A with a basepoint becomes {1, *}
    assert len(L.monoid) == 1 and len(L) == 2


@pytest.mark.parametrize("A", MONOIDS, ids=lambda m: "".join(m.elements))
def test_affine_vanishing(A):
    Sp = spectrum(A)
    rep = affine_vanishing(Sp, free_cyclic(A), pmax=2)
    assert rep["sizes"][0] == len(A) + 1
    assert rep["vanishes"]


def test_noetherian_bookkeeping():
    rep = is_noetherian_monoid(ZERO)
    assert rep["noetherian"] and rep["ideals"] == 3 and rep["longest chain"] == 3


def test_spectrum_guard():
    n = 17
    big = Monoid(tuple(str(i) for i in range(n)), 0,
                 tuple(tuple(max(i, j) if 0 not in (i, j) else i + j for j in range(n)) for i in range(n)))
    with pytest.raises(SizeGuardError):
        spectrum(big)
