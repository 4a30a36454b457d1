"""Kernels, cokernels, (co)images, strongness and finite (co)limits in Mod0(A)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from ..errors import NotStrongError, StructuralError, ValidationError, Violation
from .module import (ModMorphism, PointedModule, SubModule, collapse, quotient,
                     zero_module, zero_morphism)


def kernel(f: ModMorphism) -> SubModule:
    return SubModule(f.source, f.kernel_set)


def cokernel(f: ModMorphism) -> ModMorphism:
    """Projection of the target onto target/im(f)."""
    return collapse(f.target, f.image_set)


def image(f: ModMorphism) -> SubModule:
    return SubModule(f.target, f.image_set)


def coimage(f: ModMorphism) -> ModMorphism:
    """Projection of the source onto source/ker(f)."""
    return collapse(f.source, f.kernel_set)


def canonical_coim_im(f: ModMorphism) -> ModMorphism:
    """The induced map coim(f) -> im(f)."""
    p = coimage(f)
    im = image(f)
    pos = {m: i for i, m in enumerate(im.order)}
    table = [None] * len(p.target)
    for x, c in enumerate(p.table):
        v = pos[f.table[x]]
        if table[c] is not None and table[c] != v:
            raise ValidationError("kernel classes are not respected: not a morphism")
        table[c] = v
    return ModMorphism(p.target, im.module, tuple(table))


def strong_witness(f: ModMorphism):
    """A pair of distinct points outside the kernel with equal image, or None."""
    seen = {}
    z = f.target.basepoint
    for x, v in enumerate(f.table):
        if v == z:
            continue
        if v in seen:
            return (seen[v], x)
        seen[v] = x
    return None


def is_strong(f: ModMorphism):
    """(verdict, witness). The verdict is the bijectivity of coim -> im; the
    witness comes from the pointwise criterion and the two must agree."""
    verdict = canonical_coim_im(f).is_bijective()
    w = strong_witness(f)
    assert verdict == (w is None)
    if w is None:
        return True, None
    return False, (f.source.elements[w[0]], f.source.elements[w[1]])


def strong_factorization(f: ModMorphism):
    """(epi, mono) with mono @ epi == f: the coimage projection followed by the
    image inclusion transported along coim ~ im."""
    ok, w = is_strong(f)
    if not ok:
        raise NotStrongError(f"morphism is not strong; witness {w}")
    epi = coimage(f)
    mono = image(f).inclusion @ canonical_coim_im(f)
    return epi, mono


def is_epi(f: ModMorphism) -> bool:
    return f.is_surjective()


def is_mono(f: ModMorphism) -> bool:
    return f.is_injective()


def is_iso(f: ModMorphism) -> bool:
    return f.is_bijective()


@dataclass(frozen=True, eq=False)
class Product:
    module: PointedModule
    factors: tuple
    projections: tuple
    tuples: tuple  # index -> tuple of factor indices

    def mediate(self, maps) -> ModMorphism:
        maps = list(maps)
        if not maps:
            raise StructuralError("mediating from an empty list needs a source")
        src = maps[0].source
        pos = {t: i for i, t in enumerate(self.tuples)}
        return ModMorphism(src, self.module, tuple(pos[tuple(g.table[x] for g in maps)] for x in range(len(src))))

    def mediate_from(self, src, maps) -> ModMorphism:
        if not self.factors:
            return zero_morphism(src, self.module)
        return self.mediate(maps)


def product(Ms, monoid=None) -> Product:
    Ms = tuple(Ms)
    if not Ms:
        if monoid is None:
            raise StructuralError("empty product needs the monoid")
        Z = zero_module(monoid)
        return Product(Z, (), (), ((),))
    A = Ms[0].monoid
    tuples = list(cartesian(*[range(len(M)) for M in Ms]))
    pos = {t: i for i, t in enumerate(tuples)}
    names = tuple("(" + ",".join(M.elements[x] for M, x in zip(Ms, t)) + ")" for t in tuples)
    base = pos[tuple(M.basepoint for M in Ms)]
    action = tuple(tuple(pos[tuple(M.action[a][x] for M, x in zip(Ms, t))] for t in tuples) for a in range(len(A)))
    P = PointedModule(A, names, base, action)
    projs = tuple(ModMorphism(P, M, tuple(t[k] for t in tuples)) for k, M in enumerate(Ms))
    return Product(P, Ms, projs, tuple(tuples))


@dataclass(frozen=True, eq=False)
class Coproduct:
    module: PointedModule
    summands: tuple
    injections: tuple
    origin: tuple  # index -> (summand, element) or None for the basepoint

    def copair(self, maps, target=None) -> ModMorphism:
        maps = list(maps)
        if target is None:
            if not maps:
                raise StructuralError("copairing an empty list needs a target")
            target = maps[0].target
        table = []
        for o in self.origin:
            if o is None:
                table.append(target.basepoint)
            else:
                k, x = o
                table.append(maps[k].table[x])
        return ModMorphism(self.module, target, tuple(table))


def coproduct(Ms, monoid=None) -> Coproduct:
    """Wedge sum: disjoint union with all basepoints identified."""
    Ms = tuple(Ms)
    if not Ms:
        if monoid is None:
            raise StructuralError("empty coproduct needs the monoid")
        return Coproduct(zero_module(monoid), (), (), (None,))
    A = Ms[0].monoid
    origin = [None]
    names = ["0"]
    for k, M in enumerate(Ms):
        for x in M.nonzero:
            origin.append((k, x))
            names.append(f"{k}:{M.elements[x]}")
    pos = {o: i for i, o in enumerate(origin)}

    def where(k, x):
        return 0 if x == Ms[k].basepoint else pos[(k, x)]

    action = []
    for a in range(len(A)):
        row = [0]
        for o in origin[1:]:
            k, x = o
            row.append(where(k, Ms[k].action[a][x]))
        action.append(tuple(row))
    C = PointedModule(A, tuple(names), 0, tuple(action))
    injs = tuple(ModMorphism(M, C, tuple(where(k, x) for x in range(len(M)))) for k, M in enumerate(Ms))
    return Coproduct(C, Ms, injs, tuple(origin))


def add_morphisms(maps) -> ModMorphism:
    """The morphism out of the direct sum restricting to each given map."""
    maps = list(maps)
    return coproduct([g.source for g in maps]).copair(maps)


@dataclass(frozen=True, eq=False)
class FiberProduct:
    module: PointedModule
    p1: ModMorphism
    p2: ModMorphism
    pairs: tuple

    def mediate(self, u: ModMorphism, v: ModMorphism) -> ModMorphism:
        pos = {t: i for i, t in enumerate(self.pairs)}
        return ModMorphism(u.source, self.module, tuple(pos[(u.table[x], v.table[x])] for x in range(len(u.source))))


def fiber_product(f: ModMorphism, g: ModMorphism) -> FiberProduct:
    if f.target != g.target:
        raise StructuralError("pullback needs a common codomain")
    X, Y = f.source, g.source
    pairs = [(x, y) for x in range(len(X)) for y in range(len(Y)) if f.table[x] == g.table[y]]
    pos = {p: i for i, p in enumerate(pairs)}
    names = tuple(f"({X.elements[x]},{Y.elements[y]})" for x, y in pairs)
    A = X.monoid
    action = tuple(tuple(pos[(X.action[a][x], Y.action[a][y])] for x, y in pairs) for a in range(len(A)))
    P = PointedModule(A, names, pos[(X.basepoint, Y.basepoint)], action)
    return FiberProduct(P, ModMorphism(P, X, tuple(x for x, _ in pairs)),
                        ModMorphism(P, Y, tuple(y for _, y in pairs)), tuple(pairs))


@dataclass(frozen=True, eq=False)
class CofiberProduct:
    module: PointedModule
    i1: ModMorphism
    i2: ModMorphism
    wedge: Coproduct
    projection: ModMorphism

    def mediate(self, u: ModMorphism, v: ModMorphism) -> ModMorphism:
        w = self.wedge.copair([u, v])
        table = [None] * len(self.module)
        for x, c in enumerate(self.projection.table):
            if table[c] is None:
                table[c] = w.table[x]
            elif table[c] != w.table[x]:
                raise ValidationError("cocone does not commute")
        return ModMorphism(self.module, u.target, tuple(table))


def cofiber_product(h: ModMorphism, k: ModMorphism) -> CofiberProduct:
    if h.source != k.source:
        raise StructuralError("pushout needs a common domain")
    W = coproduct([h.target, k.target])
    j1, j2 = W.injections
    pairs = [(j1.table[h.table[a]], j2.table[k.table[a]]) for a in range(len(h.source))]
    q = quotient(W.module, pairs)
    return CofiberProduct(q.target, q @ j1, q @ j2, W, q)


@dataclass(frozen=True)
class Diagram:
    """A finite diagram: objects, arrows ``(src, dst, morphism)``, and
    composition relations ``(i, j, k)`` meaning arrow k = arrow j o arrow i."""
    objects: tuple
    arrows: tuple
    compositions: tuple = ()

    def check(self) -> list:
        out = []
        for n, (s, t, f) in enumerate(self.arrows):
            if f.source != self.objects[s] or f.target != self.objects[t]:
                out.append(Violation("arrow", f"arrow {n} does not match its endpoints", (n,)))
        for i, j, k in self.compositions:
            si, ti, fi = self.arrows[i]
            sj, tj, fj = self.arrows[j]
            sk, tk, fk = self.arrows[k]
            if ti != sj or (si, tj) != (sk, tk) or (fj @ fi).table != fk.table:
                out.append(Violation("functoriality", f"arrow {k} != arrow {j} o arrow {i}", (i, j, k)))
        return out

    def require(self):
        bad = self.check()
        if bad:
            raise ValidationError("diagram is not functorial", bad)
        return self


@dataclass(frozen=True, eq=False)
class Cone:
    module: PointedModule
    legs: tuple


def direct_limit(D: Diagram, monoid=None) -> Cone:
    """Wedge of all objects modulo x ~ f(x) for every arrow."""
    D.require()
    W = coproduct(D.objects, monoid)
    pairs = []
    for s, t, f in D.arrows:
        js, jt = W.injections[s], W.injections[t]
        pairs.extend((js.table[x], jt.table[f.table[x]]) for x in range(len(f.source)))
    q = quotient(W.module, pairs)
    return Cone(q.target, tuple(q @ j for j in W.injections))


def inverse_limit(D: Diagram, monoid=None) -> Cone:
    """Compatible families inside the product."""
    D.require()
    P = product(D.objects, monoid)
    keep = [i for i, t in enumerate(P.tuples)
            if all(f.table[t[s]] == t[tt] for s, tt, f in D.arrows)]
    sub = SubModule(P.module, frozenset(keep))
    return Cone(sub.module, tuple(p @ sub.inclusion for p in P.projections))
