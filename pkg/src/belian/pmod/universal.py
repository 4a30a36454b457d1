"""Universal properties checked by enumerating morphisms from or to small test modules.

Everything here is exponential and meant for verification only.
"""
from __future__ import annotations

from itertools import combinations

from .injective import map_module
from .module import ModMorphism, PointedModule, pointed_set, zero_module
from .search import cyclic_modules, homs, search_homs


def test_sources(A) -> list:
    """Zero plus every cyclic module: between them they detect monos and
    exhibit every point of a module as the image of a generator."""
    return [zero_module(A)] + [q.target for q in cyclic_modules(A)]


def test_targets(A) -> list:
    """Zero plus Map(A, {0, 1}), which separates points from the basepoint."""
    return [zero_module(A), map_module(pointed_set(("0", "1")), A).module]


def is_mono_oracle(f: ModMorphism, tests=None) -> bool:
    tests = test_sources(f.source.monoid) if tests is None else tests
    for T in tests:
        seen = {}
        for g in search_homs(T, f.source):
            key = (f @ g).table
            if key in seen and seen[key] != g.table:
                return False
            seen[key] = g.table
    return True


def is_epi_oracle(f: ModMorphism, tests=None) -> bool:
    tests = test_targets(f.source.monoid) if tests is None else tests
    for T in tests:
        seen = {}
        for g in search_homs(f.target, T):
            key = (g @ f).table
            if key in seen and seen[key] != g.table:
                return False
            seen[key] = g.table
    return True


def _factor_count(g: ModMorphism, through: ModMorphism) -> int:
    """Number of u with through o u == g."""
    fibres = {}
    for x, y in enumerate(through.table):
        fibres.setdefault(y, []).append(x)
    cands = [fibres.get(g.table[t], []) for t in range(len(g.source))]
    return sum(1 for _ in search_homs(g.source, through.source, candidates=cands))


def _cofactor_count(g: ModMorphism, through: ModMorphism) -> int:
    """Number of u with u o through == g."""
    fixed = {}
    for x, y in enumerate(through.table):
        if fixed.setdefault(y, g.table[x]) != g.table[x]:
            return 0
    return sum(1 for _ in search_homs(through.target, g.target, fixed=fixed))


def verify_kernel(f: ModMorphism, incl: ModMorphism, tests=None) -> bool:
    tests = test_sources(f.source.monoid) if tests is None else tests
    if not (f @ incl).is_zero():
        return False
    for T in tests:
        for g in search_homs(T, f.source):
            if (f @ g).is_zero() and _factor_count(g, incl) != 1:
                return False
    return True


def verify_cokernel(f: ModMorphism, proj: ModMorphism, tests=None) -> bool:
    tests = test_targets(f.source.monoid) if tests is None else tests
    if not (proj @ f).is_zero():
        return False
    for T in tests:
        for g in search_homs(f.target, T):
            if (g @ f).is_zero() and _cofactor_count(g, proj) != 1:
                return False
    return True


def verify_limit_cone(legs, arrows, tests=None) -> bool:
    """``legs[i]: L -> D_i``; every compatible family from a test object
    factors uniquely through L."""
    L = legs[0].source
    A = L.monoid
    tests = test_sources(A) if tests is None else tests
    for s, t, f in arrows:
        if (f @ legs[s]).table != legs[t].table:
            return False
    for T in tests:
        families = [[]]
        for leg in legs:
            families = [fam + [g] for fam in families for g in search_homs(T, leg.target)]
        for fam in families:
            if any((f @ fam[s]).table != fam[t].table for s, t, f in arrows):
                continue
            n = sum(1 for u in search_homs(T, L) if all((leg @ u).table == g.table for leg, g in zip(legs, fam)))
            if n != 1:
                return False
    return True


def verify_colimit_cone(legs, arrows, tests=None) -> bool:
    C = legs[0].target
    A = C.monoid
    tests = test_targets(A) if tests is None else tests
    for s, t, f in arrows:
        if (legs[t] @ f).table != legs[s].table:
            return False
    for T in tests:
        families = [[]]
        for leg in legs:
            families = [fam + [g] for fam in families for g in search_homs(leg.source, T)]
        for fam in families:
            if any((fam[t] @ f).table != fam[s].table for s, t, f in arrows):
                continue
            n = sum(1 for u in search_homs(C, T) if all((u @ leg).table == g.table for leg, g in zip(legs, fam)))
            if n != 1:
                return False
    return True


def hom_count(S: PointedModule, T: PointedModule) -> int:
    return len(homs(S, T))


def zero_kernel_non_mono(A, modules, limit=None):
    """Search the given modules for a morphism with zero kernel that is not
    injective. Returns the first one found or None."""
    for S in modules[:limit]:
        for T in modules[:limit]:
            for f in search_homs(S, T):
                if len(f.kernel_set) == 1 and not f.is_injective():
                    return f
    return None


def pairs_of(xs):
    return combinations(xs, 2)
