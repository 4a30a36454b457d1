"""Exhaustive searches over equivariant maps, congruences and small modules.

These are the brute-force oracles that the constructive code is checked
against, and the generic fallback for extension and lifting problems.
"""
from __future__ import annotations

from itertools import product

from ..errors import SizeGuardError
from .module import ModMorphism, PointedModule, free_cyclic, quotient_by_reps

PARTITION_GUARD = 9


def search_homs(S: PointedModule, T: PointedModule, candidates=None, fixed=None):
    """Yield every morphism S -> T, optionally restricted.

    ``candidates[x]`` is an iterable of allowed images of ``x``; ``fixed``
    maps source indices to forced images. Assigning an element forces the
    images of its whole orbit, so the search branches only on elements not
    yet reached.
    """
    n = len(S)
    table = [None] * n
    acts = S.action
    tacts = T.action
    allowed = None
    if candidates is not None:
        allowed = [frozenset(candidates[x]) for x in range(n)]

    def assign(x, y, trail):
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            cur = table[u]
            if cur is not None:
                if cur != v:
                    return False
                continue
            if allowed is not None and v not in allowed[u]:
                return False
            table[u] = v
            trail.append(u)
            for a in range(len(acts)):
                stack.append((acts[a][u], tacts[a][v]))
        return True

    def undo(trail):
        for u in trail:
            table[u] = None

    base_trail = []
    if not assign(S.basepoint, T.basepoint, base_trail):
        return
    if fixed:
        for x, y in fixed.items():
            if not assign(x, y, base_trail):
                return

    def rec(i):
        while i < n and table[i] is not None:
            i += 1
        if i == n:
            yield ModMorphism(S, T, tuple(table))
            return
        opts = allowed[i] if allowed is not None else range(len(T))
        for y in sorted(opts):
            trail = []
            if assign(i, y, trail):
                yield from rec(i + 1)
            undo(trail)

    yield from rec(0)


def homs(S, T) -> list:
    return list(search_homs(S, T))


def first_hom(S, T, candidates=None, fixed=None):
    return next(search_homs(S, T, candidates, fixed), None)


def extend(mono: ModMorphism, g: ModMorphism):
    """Some h with h o mono == g, or None."""
    fixed = {mono.table[x]: g.table[x] for x in range(len(mono.source))}
    if len(set(fixed)) < len(mono.table):
        # mono not injective: consistency needed on collapsed points
        seen = {}
        for x in range(len(mono.source)):
            k = mono.table[x]
            if seen.setdefault(k, g.table[x]) != g.table[x]:
                return None
    return first_hom(mono.target, g.target, fixed=fixed)


def lift(epi: ModMorphism, g: ModMorphism):
    """Some h with epi o h == g, or None."""
    fibres = {}
    for e, q in enumerate(epi.table):
        fibres.setdefault(q, []).append(e)
    cands = [fibres.get(g.table[x], []) for x in range(len(g.source))]
    return first_hom(g.source, epi.source, candidates=cands)


def set_partitions(n):
    """Restricted growth strings for all partitions of range(n)."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from rec(prefix, max(top, b))
            prefix.pop()

    yield from rec([0], 0)


def congruences(M: PointedModule):
    """All action-compatible equivalence relations, as least-representative lists."""
    n = len(M)
    if n > PARTITION_GUARD:
        raise SizeGuardError(f"congruence enumeration limited to {PARTITION_GUARD} elements")
    for rgs in set_partitions(n):
        ok = True
        for row in M.action:
            for x in range(n):
                for y in range(x + 1, n):
                    if rgs[x] == rgs[y] and rgs[row[x]] != rgs[row[y]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            first = {}
            for x, b in enumerate(rgs):
                first.setdefault(b, x)
            yield [first[b] for b in rgs]


def cyclic_modules(A) -> list:
    """Every quotient of the free cyclic module A+, each with its projection."""
    F = free_cyclic(A)
    return [quotient_by_reps(F, rep) for rep in congruences(F)]


def all_modules(A, n, names=None) -> list:
    """Every pointed module structure on n points over A (basepoint last), no
    isomorphism reduction. Only usable for very small A and n."""
    if names is None:
        names = tuple(f"m{i}" for i in range(n - 1)) + ("0",)
    z = n - 1
    gens = [a for a in range(len(A)) if a != A.identity]
    out = []
    cells = [(a, x) for a in gens for x in range(z)]
    for vals in product(range(n), repeat=len(cells)):
        act = [[x for x in range(n)] for _ in range(len(A))]
        for a in gens:
            act[a][z] = z
        for (a, x), v in zip(cells, vals):
            act[a][x] = v
        ok = all(act[A.mult[a][b]][x] == act[a][act[b][x]]
                 for a in range(len(A)) for b in range(len(A)) for x in range(n))
        if ok:
            out.append(PointedModule(A, names, z, tuple(tuple(r) for r in act)))
    return out


def is_isomorphic(M: PointedModule, N: PointedModule):
    """An isomorphism M -> N or None."""
    if len(M) != len(N):
        return None
    for f in search_homs(M, N):
        if f.is_bijective():
            return f
    return None
