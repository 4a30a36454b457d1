from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from belian.errors import SizeGuardError, StructuralError
from belian.generate import small_monoids
from belian.monoid import (Monoid, enumerate_monoids, ideal_chains, ideals, is_ideal, is_isomorphic, is_prime,
                           localize, prime_ideals, validate_monoid)

MONOIDS = small_monoids(3)


def brute_ideals(A):
    n = len(A)
    out = []
    for k in range(n + 1):
        for c in combinations(range(n), k):
            s = set(c)
            if all(A.mult[a][x] in s for a in range(n) for x in s):
                out.append(frozenset(s))
    return out


def test_enumeration_counts_match_known_sequence():
    # commutative monoids up to isomorphism: 1, 2, 5, 19
    assert [len(enumerate_monoids(n)) for n in range(1, 5)] == [1, 2, 5, 19]


def test_enumerated_monoids_valid_and_pairwise_distinct():
    for n in range(1, 5):
        ms = enumerate_monoids(n)
        assert all(not validate_monoid(m) for m in ms)
        for a, b in combinations(ms, 2):
            assert is_isomorphic(a, b) is None


@pytest.mark.parametrize("A", MONOIDS, ids=lambda m: "".join(m.elements))
def test_ideals_against_subset_search(A):
    got = ideals(A)
    assert set(got) == set(brute_ideals(A))
    assert got == sorted(got, key=lambda s: (len(s), sorted(s)))
    assert all(is_ideal(A, I) for I in got)


@pytest.mark.parametrize("A", MONOIDS, ids=lambda m: "".join(m.elements))
def test_primes_include_empty_and_are_prime(A):
    P = prime_ideals(A)
    assert frozenset() in P
    nonunits = frozenset(range(len(A))) - A.units
    assert nonunits in P
    for p in P:
        comp = set(range(len(A))) - p
        assert all(A.mult[a][b] in comp for a in comp for b in comp)
        assert is_prime(A, p)


@pytest.mark.parametrize("A", MONOIDS, ids=lambda m: "".join(m.elements))
def test_ideal_chains_are_maximal(A):
    I = set(ideals(A))
    for chain in ideal_chains(A):
        assert chain[0] == frozenset() and chain[-1] == frozenset(range(len(A)))
        for a, b in zip(chain, chain[1:]):
            assert a < b
            assert not any(a < J < b for J in I)


def test_validation_reports_each_law():
    A = Monoid(("1", "a"), 0, ((0, 1), (0, 0)))
    laws = {v.law for v in validate_monoid(A)}
    assert "identity" in laws or "associativity" in laws or "commutativity" in laws
    B = Monoid(("1", "a", "b"), 0, ((0, 1, 2), (1, 2, 2), (1, 2, 2)))
    assert "commutativity" in {v.law for v in validate_monoid(B)}


def test_structural_errors():
    with pytest.raises(StructuralError):
        Monoid((), 0, ())
    with pytest.raises(StructuralError):
        Monoid(("1", "1"), 0, ((0, 0), (0, 0)))
    with pytest.raises(StructuralError):
        Monoid(("1",), 0, ((3,),))
    with pytest.raises(StructuralError):
        Monoid.from_names(["1", "a"], "1", {("1", "1"): "1"})


def test_localization_at_units_is_identity_and_at_all_inverts():
    for A in MONOIDS:
        L, canon = localize(A, A.units)
        assert len(L) == len(A)
        L, canon = localize(A, range(len(A)))
        assert all(L.identity in row for row in L.mult)  # a group


def test_localization_inverts_s():
    A = MONOIDS[-1]
    for S in (A.power_closure([a]) for a in range(len(A))):
        L, canon = localize(A, S)
        for s in S:
            assert L.identity in L.mult[canon[s]]
        assert not validate_monoid(L)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, len(MONOIDS) - 1), st.data())
def test_localization_hom_property(k, data):
    A = MONOIDS[k]
    gens = data.draw(st.sets(st.integers(0, len(A) - 1)))
    L, canon = localize(A, A.power_closure(gens))
    for a in range(len(A)):
        for b in range(len(A)):
            assert canon[A.mult[a][b]] == L.mult[canon[a]][canon[b]]


def test_subset_guard():
    n = 17
    big = Monoid(tuple(str(i) for i in range(n)), 0, tuple(tuple(max(i, j) if 0 not in (i, j) else i + j
                                                                     for j in range(n)) for i in range(n)))
    with pytest.raises(SizeGuardError):
        ideals(big)
