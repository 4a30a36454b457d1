"""Random corpora of monoids, modules, morphisms and diagrams for the test suites.

All generators take a ``random.Random`` so every corpus is reproducible from a seed.
"""
from __future__ import annotations

import random as _random
from functools import lru_cache

from .monoid import Monoid, enumerate_monoids
from .pmod.module import ModMorphism, SubModule, free_cyclic, quotient
from .pmod.limits import cokernel, coproduct
from .pmod.search import homs
from .engine.snake import SnakeDiagram, induced_on_quotients, restrict


@lru_cache(maxsize=None)
def small_monoids(max_order=3) -> tuple:
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_monoids(n))
    return tuple(out)


def random_monoid(rng: _random.Random, max_order=3) -> Monoid:
    return rng.choice(small_monoids(max_order))


def random_module(rng, A: Monoid, max_size=5, tries=50):
    """A quotient of a wedge of free cyclic modules by random relations."""
    best = None
    for _ in range(tries):
        k = rng.randint(1, 3)
        W = coproduct([free_cyclic(A)] * k).module
        pairs = [(rng.randrange(len(W)), rng.randrange(len(W))) for _ in range(rng.randint(0, 4))]
        if rng.random() < 0.4:
            pairs.append((rng.randrange(len(W)), W.basepoint))
        M = quotient(W, pairs).target
        if len(M) <= max_size:
            return _rename(M)
        if best is None or len(M) < len(best):
            best = M
    # collapse until small enough
    M = best
    while len(M) > max_size:
        M = quotient(M, [(M.nonzero[0], M.basepoint)]).target
    return _rename(M)


def _rename(M):
    names = []
    k = 0
    for i in range(len(M)):
        if i == M.basepoint:
            names.append("0")
        else:
            names.append(f"m{k}")
            k += 1
    return M.relabel(names)


def random_morphism(rng, S, T) -> ModMorphism:
    return rng.choice(homs(S, T))


def random_pair(rng, max_order=3, max_size=5):
    A = random_monoid(rng, max_order)
    S = random_module(rng, A, max_size)
    T = random_module(rng, A, max_size)
    return random_morphism(rng, S, T)


def random_composable(rng, max_order=3, max_size=4):
    """(f, g) with g o f == 0 roughly half of the time, arbitrary otherwise."""
    A = random_monoid(rng, max_order)
    X, Y, Z = (random_module(rng, A, max_size) for _ in range(3))
    f = random_morphism(rng, X, Y)
    if rng.random() < 0.6:
        c = cokernel(f)
        gs = [g for g in homs(c.target, Z)]
        g = rng.choice(gs) @ c
    else:
        g = random_morphism(rng, Y, Z)
    return f, g


def random_snake(rng, max_order=2, max_size=4, want_strong_f2=True, strong_g2=True, tries=200):
    """A snake diagram built from a random g1 and f2; h1 is a submodule
    inclusion and the third column is a quotient."""
    for _ in range(tries):
        A = random_monoid(rng, max_order)
        X1 = random_module(rng, A, max_size)
        X2 = random_module(rng, A, max_size)
        Y2 = random_module(rng, A, max_size)
        g1 = random_morphism(rng, X1, X2)
        f2s = homs(X2, Y2)
        if want_strong_f2 is not None:
            from .pmod.limits import strong_witness
            f2s = [f for f in f2s if (strong_witness(f) is None) == want_strong_f2]
            if not f2s:
                continue
        f2 = rng.choice(f2s)
        seed = set(f2.table[x] for x in g1.image_set)
        extra = [y for y in range(len(Y2)) if rng.random() < 0.3]
        Y1s = SubModule(Y2, Y2.closure(seed | set(extra)))
        h1 = Y1s.inclusion
        f1 = restrict(f2 @ g1, SubModule(X1, frozenset(range(len(X1)))), Y1s)
        h2 = cokernel(h1)
        g2 = cokernel(g1)
        if not strong_g2:
            g2 = _coarsen(rng, g2)
            if g2 is None:
                continue
        try:
            f3 = induced_on_quotients(h2 @ f2, g2, h2.target.identity())
        except Exception:
            continue
        D = SnakeDiagram(g1, g2, f1, f2, f3, h1, h2)
        if not D.check():
            return D
    raise RuntimeError("could not build a snake diagram")


def _coarsen(rng, q):
    """Compose q with a further quotient that leaves the basepoint class alone,
    so the result has the same kernel but may be non-strong."""
    Q = q.target
    if len(Q.nonzero) < 2:
        return None
    x, y = rng.sample(list(Q.nonzero), 2)
    p = quotient(Q, [(x, y)])
    if len([c for c in p.table if c == p.table[Q.basepoint]]) != 1:
        return None
    return p @ q


def random_complex(rng, A, length=3, max_size=4, strong=None):
    """Objects in degrees 0..length-1 with each d^i factoring through coker d^(i-1).
    ``strong`` prefers strong (True) or non-strong (False) differentials when available."""
    from .complexes import complex_from
    from .pmod.limits import strong_witness
    objs = [random_module(rng, A, max_size) for _ in range(length)]
    diffs = []
    prev = None
    for i in range(length - 1):
        if prev is None:
            cands = homs(objs[i], objs[i + 1])
        else:
            c = cokernel(prev)
            cands = [g @ c for g in homs(c.target, objs[i + 1])]
        if strong is not None:
            cands = [d for d in cands if (strong_witness(d) is None) == strong] or cands
        d = rng.choice(cands)
        diffs.append(d)
        prev = d
    return complex_from(objs, diffs)


def random_subcomplex(rng, C):
    """Degreewise submodules closed under the differentials, as a ComplexMap inclusion."""
    from .complexes import Complex, ComplexMap
    subs = []
    carried = set()
    for k, M in enumerate(C.objects):
        extra = {x for x in range(len(M)) if rng.random() < 0.35}
        mem = M.closure(carried | extra)
        subs.append(SubModule(M, mem))
        if k < len(C.diffs):
            carried = {C.diffs[k].table[x] for x in mem}
    diffs = tuple(restrict(C.diffs[k], subs[k], subs[k + 1]) for k in range(len(C.diffs)))
    E = Complex(C.monoid, C.lo, tuple(s.module for s in subs), diffs)
    return ComplexMap(E, C, {C.lo + k: s.inclusion for k, s in enumerate(subs)})


def quotient_complex(e):
    """F/E degreewise, with the projection F -> F/E."""
    from .complexes import Complex, ComplexMap
    from .pmod.module import collapse
    F = e.target
    projs = [collapse(F.obj(i), e.at(i).image_set) for i in F.degrees()]
    diffs = tuple(induced_on_quotients(projs[k + 1] @ F.diffs[k], projs[k], projs[k + 1].target.identity())
                  for k in range(len(F.diffs)))
    G = Complex(F.monoid, F.lo, tuple(p.target for p in projs), diffs)
    return ComplexMap(F, G, {F.lo + k: p for k, p in enumerate(projs)})


def random_ses(rng, max_order=2, length=3, max_size=4, strong=None):
    A = random_monoid(rng, max_order)
    F = random_complex(rng, A, length, max_size, strong)
    e = random_subcomplex(rng, F)
    f = quotient_complex(e)
    return e, f


def random_sheaf(rng, B, max_stalk=3):
    """A random sheaf of pointed sets: points are added in order of their
    minimal opens, and each new stalk maps to sections over U_x minus x."""
    from .pmod.module import PointedModule
    from .sheaf.sheaf import Sheaf, compatible_families
    X = B.space
    one = B.monoids[0]
    n = len(X)
    order = sorted(range(n), key=lambda x: len(X.minimal[x]))
    sizes = [None] * n
    restr = {}
    for x in order:
        k = rng.randint(1, max_stalk)
        sizes[x] = k
        restr[(x, x)] = tuple(range(k))
        below = X.minimal[x] - {x}
        fams = compatible_families(X, below, sizes, restr) if below else [()]
        zero = fams.index(tuple(0 for _ in below))
        pos = sorted(below)
        choice = [zero] + [rng.randrange(len(fams)) for _ in range(k - 1)]
        for j, y in enumerate(pos):
            restr[(x, y)] = tuple(fams[c][j] for c in choice)
    stalks = tuple(PointedModule(one, tuple(["0"] + [f"s{i}" for i in range(1, sizes[x])]), 0,
                                 (tuple(range(sizes[x])),)) for x in range(n))
    return Sheaf(B, stalks, restr)


def random_subsheaf_members(rng, F, p=0.3):
    """Random stalk subsets closed under the restriction maps."""
    X = F.space
    mem = [{F.stalks[x].basepoint} | {s for s in range(len(F.stalks[x])) if rng.random() < p}
           for x in range(len(X))]
    changed = True
    while changed:
        changed = False
        for x in range(len(X)):
            for y in X.minimal[x]:
                for s in list(mem[x]):
                    v = F.restr[(x, y)][s]
                    if v not in mem[y]:
                        mem[y].add(v)
                        changed = True
    return [frozenset(m) for m in mem]


def random_sheaf_chain(rng, B, length=3, max_stalk=3, flabby=False):
    """F_0 -> F_1 -> ... by successive quotients; with ``flabby`` every term is
    replaced by its Godement sheaf and the maps by their Godement images."""
    from .sheaf.sheaf import quotient_sheaf
    F = random_sheaf(rng, B, max_stalk)
    chain, maps = [F], []
    for _ in range(length - 1):
        q = quotient_sheaf(chain[-1], random_subsheaf_members(rng, chain[-1], 0.25))
        maps.append(q)
        chain.append(q.target)
    if flabby:
        from .sheaf.injective import godement_embedding
        from .sheaf.cohomology import godement_map
        embs = [godement_embedding(G) for G in chain]
        maps = [godement_map(m, embs[i], embs[i + 1]) for i, m in enumerate(maps)]
        chain = [e.target for e in embs]
    return chain, maps
