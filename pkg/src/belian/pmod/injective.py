"""Injective and projective objects of Mod0(A).

Map(A, X) with (a.alpha)(b) = alpha(ab) is injective for any pointed set X,
and the free modules A+ summed over the points of M give a projective cover.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from ..errors import SizeGuardError, ValidationError
from .module import ModMorphism, PointedModule, SubModule, free_cyclic
from .limits import coproduct
from .search import cyclic_modules, extend, search_homs

MAP_GUARD = 20000


@dataclass(frozen=True, eq=False)
class MapModule:
    """Map(A, X) for the pointed set underlying ``base``."""
    module: PointedModule
    base: PointedModule
    functions: tuple  # index -> tuple of base indices, one per monoid element
    pos: dict

    def index_of(self, alpha) -> int:
        return self.pos[tuple(alpha)]


def map_module(X: PointedModule, A=None) -> MapModule:
    A = X.monoid if A is None else A
    n = len(A)
    if len(X) ** n > MAP_GUARD:
        raise SizeGuardError(f"Map(A, M) would have {len(X)}^{n} elements (limit {MAP_GUARD})")
    funcs = list(cartesian(range(len(X)), repeat=n))
    # basepoint (constant map) first keeps names readable
    const = (X.basepoint,) * n
    funcs.remove(const)
    funcs.insert(0, const)
    pos = {f: i for i, f in enumerate(funcs)}
    action = tuple(tuple(pos[tuple(f[A.mult[a][b]] for b in range(n))] for f in funcs) for a in range(n))
    names = tuple("<" + ",".join(X.elements[v] for v in f) + ">" for f in funcs)
    M = PointedModule(A, names, 0, action)
    return MapModule(M, X, tuple(funcs), pos)


@dataclass(frozen=True, eq=False)
class Embedding:
    target: PointedModule
    mono: ModMorphism
    hull: "MapModule | None" = None

    def extend(self, i: ModMorphism, g: ModMorphism) -> ModMorphism:
        """Extend g: N -> target along a mono i: N -> P."""
        if self.hull is not None:
            return extend_into_map(self.hull, i, g)
        if i.target == self.target and i.table == g.table:
            return ModMorphism(i.target, self.target, tuple(range(len(self.target))))
        h = extend(i, g)
        if h is None:
            raise ValidationError("extension failed: target is not injective")
        return h


def injective_embed(M: PointedModule) -> Embedding:
    """M -> Map(A, M), m |-> (a |-> am)."""
    H = map_module(M)
    A = M.monoid
    table = tuple(H.index_of(tuple(M.action[a][m] for a in range(len(A)))) for m in range(len(M)))
    return Embedding(H.module, ModMorphism(M, H.module, table), H)


def psi(H: MapModule, alpha) -> ModMorphism:
    """Pointed map alpha: P -> X (a table over P) to the morphism P -> Map(A, X)."""
    P = alpha.source
    A = P.monoid
    return ModMorphism(P, H.module, tuple(
        H.index_of(tuple(alpha.table[P.action[a][p]] for a in range(len(A)))) for p in range(len(P))))


def psi_inverse(H: MapModule, beta: ModMorphism) -> "ModMorphism":
    """Morphism P -> Map(A, X) to the pointed map P -> X, p |-> beta(p)(1)."""
    one = beta.source.monoid.identity
    return PointedMap(beta.source, H.base, tuple(H.functions[beta.table[p]][one] for p in range(len(beta.source))))


@dataclass(frozen=True, eq=False)
class PointedMap:
    """A basepoint-preserving map of underlying pointed sets (no equivariance)."""
    source: PointedModule
    target: PointedModule
    table: tuple

    def __eq__(self, other):
        return isinstance(other, PointedMap) and self.table == other.table

    def __hash__(self):
        return hash(self.table)


def pointed_maps(P: PointedModule, X: PointedModule):
    free = P.nonzero
    for vals in cartesian(range(len(X)), repeat=len(free)):
        t = [X.basepoint] * len(P)
        for p, v in zip(free, vals):
            t[p] = v
        yield PointedMap(P, X, tuple(t))


def hom_map_adjunction(P: PointedModule, X: PointedModule):
    """The hull, both hom-sets, and the two mutually inverse translations."""
    H = map_module(X, P.monoid) if X.monoid != P.monoid else map_module(X)
    left = list(pointed_maps(P, X))
    right = list(search_homs(P, H.module))
    fwd = {a: psi(H, a) for a in left}
    back = {b: psi_inverse(H, b) for b in right}
    return H, left, right, fwd, back


def extend_into_map(H: MapModule, i: ModMorphism, g: ModMorphism) -> ModMorphism:
    """Extension along a mono via the adjunction: push the pointed map down,
    extend it by the basepoint, and lift back."""
    alpha = psi_inverse(H, g)
    P = i.target
    t = [H.base.basepoint] * len(P)
    for n, p in enumerate(i.table):
        t[p] = alpha.table[n]
    return psi(H, PointedMap(P, H.base, tuple(t)))


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    module: PointedModule
    epi: ModMorphism
    generators: tuple  # index of the generator 1 in the summand for each m

    def lift(self, e: ModMorphism, g: ModMorphism) -> ModMorphism:
        """Lift g: P_M -> Q along an epi e: E -> Q."""
        pre = {}
        for x, q in enumerate(e.table):
            pre.setdefault(q, x)
        fixed = {}
        for gen in self.generators:
            q = g.table[gen]
            if q not in pre:
                raise ValidationError("lifting needs a surjective map")
            fixed[gen] = pre[q]
        h = next(search_homs(self.module, e.source, fixed=fixed), None)
        assert h is not None
        return h


def projective_cover(M: PointedModule) -> ProjectiveCover:
    A = M.monoid
    F = free_cyclic(A)
    C = coproduct([F] * len(M))
    one = A.identity
    gens = tuple(C.injections[m].table[one] for m in range(len(M)))
    maps = [ModMorphism(F, M, tuple(M.action[a][m] for a in range(len(A))) + (M.basepoint,)) for m in range(len(M))]
    epi = C.copair(maps, M)
    return ProjectiveCover(C.module, epi, gens)


def _proper_submodules_without_generator(C: PointedModule, gen: int):
    others = [x for x in range(len(C)) if x not in (gen, C.basepoint)]
    for mask in range(1 << len(others)):
        mem = {C.basepoint} | {others[k] for k in range(len(others)) if mask >> k & 1}
        if all(C.action[a][m] in mem for a in range(len(C.monoid)) for m in mem):
            yield SubModule(C, frozenset(mem))


def injectivity_witness(X: PointedModule):
    """A non-extendable (N -> C, N -> X) with C cyclic, or None if X is injective.

    Maps out of a subobject can be extended one cyclic piece at a time, so
    testing inclusions into cyclic modules is enough."""
    for q in cyclic_modules(X.monoid):
        C = q.target
        gen = q.table[X.monoid.identity]
        for N in _proper_submodules_without_generator(C, gen):
            for g in search_homs(N.module, X):
                if extend(N.inclusion, g) is None:
                    return N.inclusion, g
    return None


def is_injective_object(X: PointedModule) -> bool:
    return injectivity_witness(X) is None


def embed_hull(M: PointedModule) -> Embedding:
    """The identity when M is already injective, otherwise the Map(A, M) hull."""
    if is_injective_object(M):
        return Embedding(M, M.identity(), None)
    return injective_embed(M)


RETRACT_BUDGET = 3000


@dataclass(frozen=True, eq=False)
class RetractEmbedding:
    """M -> K where K is a retract of a Map(A, M) hull H; K is injective."""
    target: PointedModule
    mono: ModMorphism
    hull: Embedding
    inclusion: ModMorphism  # K -> H
    retraction: ModMorphism  # H -> K

    def extend(self, i: ModMorphism, g: ModMorphism) -> ModMorphism:
        return self.retraction @ self.hull.extend(i, self.inclusion @ g)


def _idempotent_power(h: ModMorphism) -> ModMorphism:
    cur = h
    while (cur @ cur).table != cur.table:
        cur = cur @ h
    return cur


def embed_economical(M: PointedModule):
    """The identity when M is injective; otherwise the smallest retract of
    Map(A, M) containing M found among the idempotent powers of the first
    RETRACT_BUDGET endomorphisms fixing M."""
    if is_injective_object(M):
        return Embedding(M, M.identity(), None)
    E = injective_embed(M)
    H = E.target
    fixed = {v: v for v in E.mono.table}
    best = None
    for k, h in enumerate(search_homs(H, H, fixed=fixed)):
        if k >= RETRACT_BUDGET:
            break
        e = _idempotent_power(h)
        size = len(e.image_set)
        if best is None or size < best[0]:
            best = (size, e)
        if size == len(M):
            break
    e = best[1]
    if len(e.image_set) == len(H):
        return E
    K = SubModule(H, e.image_set)
    pos = {m: i for i, m in enumerate(K.order)}
    r = ModMorphism(H, K.module, tuple(pos[v] for v in e.table))
    mono = ModMorphism(M, K.module, tuple(pos[v] for v in E.mono.table))
    return RetractEmbedding(K.module, mono, E, K.inclusion, r)
