"""Pointed sheaves on finite spaces.

A sheaf on a finite space is determined by its values on the minimal opens
U_x, i.e. its stalks, together with restriction maps F_x -> F_y for y in U_x.
Sections over an arbitrary open are the compatible families of stalk values.
The same description is used for the structure sheaf of monoids.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from ..errors import StructuralError, ValidationError, Violation
from ..monoid import Monoid, is_monoid_map
from ..pmod.module import ModMorphism, PointedModule, SubModule, collapse, zero_module
from ..pmod.limits import product as module_product
from ..pmod.limits import direct_limit as module_colimit, Diagram
from .space import FinSpace


def compatible_families(X: FinSpace, U, sizes, restr, zero=None):
    """All families (s_y)_{y in U}, as tuples over sorted(U), compatible with
    the restriction tables ``restr[(x, y)]``. Branches on maximal points only."""
    U = sorted(U)
    pos = {y: i for i, y in enumerate(U)}
    tops = X.maximal_points(U)
    out = []
    vals = [None] * len(U)

    def rec(k):
        if k == len(tops):
            out.append(tuple(vals))
            return
        x = tops[k]
        for s in range(sizes[x]):
            trail = []
            ok = True
            for y in X.minimal[x]:
                v = restr[(x, y)][s]
                i = pos[y]
                if vals[i] is None:
                    vals[i] = v
                    trail.append(i)
                elif vals[i] != v:
                    ok = False
                    break
            if ok:
                rec(k + 1)
            for i in trail:
                vals[i] = None

    rec(0)
    return out


@dataclass(frozen=True, eq=False)
class MonoidedSpace:
    space: FinSpace
    monoids: tuple  # per point
    restr: dict  # (x, y) -> table, y in U_x

    @classmethod
    def trivial(cls, X: FinSpace):
        one = Monoid.trivial()
        restr = {(x, y): (0,) for x in range(len(X)) for y in X.minimal[x]}
        return cls(X, tuple(one for _ in range(len(X))), restr)

    @cached_property
    def is_trivial(self) -> bool:
        return all(m.is_trivial for m in self.monoids)

    def check(self) -> list:
        out = []
        X = self.space
        for x in range(len(X)):
            if self.restr[(x, x)] != tuple(range(len(self.monoids[x]))):
                out.append(Violation("identity", "restriction to itself is not the identity", (X.points[x],)))
            for y in X.minimal[x]:
                if not is_monoid_map(self.monoids[x], self.monoids[y], self.restr[(x, y)]):
                    out.append(Violation("monoid-map", "restriction is not a monoid map", (X.points[x], X.points[y])))
                for z in X.minimal[y]:
                    a = tuple(self.restr[(y, z)][v] for v in self.restr[(x, y)])
                    if a != self.restr[(x, z)]:
                        out.append(Violation("composition", "restrictions do not compose",
                                             (X.points[x], X.points[y], X.points[z])))
        return out

    @cached_property
    def _sections(self) -> dict:
        return {}

    def sections_monoid(self, U) -> Monoid:
        U = frozenset(U)
        if U not in self._sections:
            X = self.space
            fams = compatible_families(X, U, [len(m) for m in self.monoids], self.restr)
            order = sorted(U)
            pos = {f: i for i, f in enumerate(fams)}
            ident = pos[tuple(self.monoids[y].identity for y in order)]
            mult = tuple(tuple(pos[tuple(self.monoids[y].mult[a[k]][b[k]] for k, y in enumerate(order))]
                               for b in fams) for a in fams)
            names = tuple("(" + ",".join(self.monoids[y].elements[a[k]] for k, y in enumerate(order)) + ")"
                          for a in fams)
            if not order:
                names = ("1",)
            M = Monoid(names, ident, mult)
            self._sections[U] = (M, fams)
        return self._sections[U][0]

    def section_families(self, U):
        self.sections_monoid(U)
        return self._sections[frozenset(U)][1]

    def restrict_scalars(self, M: PointedModule, x: int, y: int) -> PointedModule:
        """View an O_y-module as an O_x-module along O_x -> O_y (y in U_x)."""
        r = self.restr[(x, y)]
        return PointedModule(self.monoids[x], M.elements, M.basepoint,
                             tuple(M.action[r[a]] for a in range(len(self.monoids[x]))))


@dataclass(frozen=True, eq=False)
class Sheaf:
    base: MonoidedSpace
    stalks: tuple  # PointedModule over base.monoids[x]
    restr: dict  # (x, y) -> table F_x -> F_y, y in U_x

    @property
    def space(self) -> FinSpace:
        return self.base.space

    def __repr__(self):
        return "Sheaf(" + ", ".join(f"{p}:{len(s)}" for p, s in zip(self.space.points, self.stalks)) + ")"

    def check(self) -> list:
        out = []
        X = self.space
        B = self.base
        for x in range(len(X)):
            F = self.stalks[x]
            if F.monoid != B.monoids[x]:
                out.append(Violation("stalk", "stalk is not over the local monoid", (X.points[x],)))
                continue
            if self.restr[(x, x)] != tuple(range(len(F))):
                out.append(Violation("identity", "restriction to itself is not the identity", (X.points[x],)))
            for y in X.minimal[x]:
                t = self.restr[(x, y)]
                G = self.stalks[y]
                if len(t) != len(F) or any(not 0 <= v < len(G) for v in t):
                    out.append(Violation("shape", "restriction table has the wrong size", (X.points[x], X.points[y])))
                    continue
                if t[F.basepoint] != G.basepoint:
                    out.append(Violation("basepoint", "restriction moves the basepoint", (X.points[x], X.points[y])))
                r = B.restr[(x, y)]
                for a in range(len(F.monoid)):
                    for s in range(len(F)):
                        if t[F.action[a][s]] != G.action[r[a]][t[s]]:
                            out.append(Violation("equivariance", "restriction is not equivariant",
                                                 (X.points[x], X.points[y], F.elements[s])))
                            break
                for z in X.minimal[y]:
                    if tuple(self.restr[(y, z)][v] for v in t) != self.restr[(x, z)]:
                        out.append(Violation("composition", "restrictions do not compose",
                                             (X.points[x], X.points[y], X.points[z])))
        return out

    def require(self):
        bad = self.check()
        if bad:
            raise ValidationError("not a sheaf", bad)
        return self

    def stalk(self, x) -> PointedModule:
        return self.stalks[x]

    @cached_property
    def _cache(self) -> dict:
        return {}

    def families(self, U) -> list:
        U = frozenset(U)
        key = ("fam", U)
        if key not in self._cache:
            self._cache[key] = compatible_families(self.space, U, [len(s) for s in self.stalks], self.restr)
        return self._cache[key]

    def sections(self, U) -> PointedModule:
        """F(U) as a pointed module over O(U)."""
        U = frozenset(U)
        key = ("sec", U)
        if key not in self._cache:
            order = sorted(U)
            fams = self.families(U)
            pos = {f: i for i, f in enumerate(fams)}
            O = self.base.sections_monoid(U)
            ofams = self.base.section_families(U)
            zero = tuple(self.stalks[y].basepoint for y in order)
            action = tuple(tuple(pos[tuple(self.stalks[y].action[a[k]][s[k]] for k, y in enumerate(order))]
                                 for s in fams) for a in ofams)
            names = tuple("(" + ",".join(self.stalks[y].elements[s[k]] for k, y in enumerate(order)) + ")"
                          for s in fams)
            if not order:
                names = ("0",)
            M = PointedModule(O, names, pos[zero], action)
            self._cache[key] = (M, pos)
        return self._cache[key][0]

    def section_index(self, U, family) -> int:
        self.sections(U)
        return self._cache[("sec", frozenset(U))][1][tuple(family)]

    def restriction(self, U, V) -> tuple:
        """Table F(U) -> F(V) for V inside U (a pointed map; the monoids differ)."""
        U, V = frozenset(U), frozenset(V)
        if not V <= U:
            raise StructuralError("restriction needs V inside U")
        ou = sorted(U)
        keep = [ou.index(y) for y in sorted(V)]
        return tuple(self.section_index(V, tuple(s[k] for k in keep)) for s in self.families(U))

    def global_sections(self) -> PointedModule:
        return self.sections(self.space.full)

    def identity(self) -> "SheafMorphism":
        return SheafMorphism(self, self, tuple(s.identity() for s in self.stalks))

    def is_zero(self) -> bool:
        return all(len(s) == 1 for s in self.stalks)

    def size(self) -> int:
        return sum(len(s) for s in self.stalks)


@dataclass(frozen=True, eq=False)
class SheafMorphism:
    source: Sheaf
    target: Sheaf
    comps: tuple  # ModMorphism per point

    def check(self) -> list:
        out = []
        X = self.source.space
        for x in range(len(X)):
            f = self.comps[x]
            for y in X.minimal[x]:
                a = tuple(self.comps[y].table[v] for v in self.source.restr[(x, y)])
                b = tuple(self.target.restr[(x, y)][v] for v in f.table)
                if a != b:
                    out.append(Violation("naturality", "restriction square does not commute",
                                         (X.points[x], X.points[y])))
        return out

    def require(self):
        bad = self.check()
        if bad:
            raise ValidationError("not a morphism of sheaves", bad)
        return self

    def __matmul__(self, other: "SheafMorphism") -> "SheafMorphism":
        return SheafMorphism(other.source, self.target, tuple(f @ g for f, g in zip(self.comps, other.comps)))

    def on_sections(self, U) -> ModMorphism:
        U = frozenset(U)
        S, T = self.source.sections(U), self.target.sections(U)
        order = sorted(U)
        return ModMorphism(S, T, tuple(self.target.section_index(U, tuple(self.comps[y].table[s[k]]
                                                                           for k, y in enumerate(order)))
                                       for s in self.source.families(U)))

    def global_map(self) -> ModMorphism:
        return self.on_sections(self.source.space.full)

    def is_injective(self) -> bool:
        return all(f.is_injective() for f in self.comps)

    def is_surjective(self) -> bool:
        return all(f.is_surjective() for f in self.comps)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps)

    def same(self, other) -> bool:
        return all(f.table == g.table for f, g in zip(self.comps, other.comps))


def zero_sheaf(B: MonoidedSpace) -> Sheaf:
    X = B.space
    stalks = tuple(zero_module(B.monoids[x]) for x in range(len(X)))
    return Sheaf(B, stalks, {(x, y): (0,) for x in range(len(X)) for y in X.minimal[x]})


def zero_sheaf_morphism(F: Sheaf, G: Sheaf) -> SheafMorphism:
    return SheafMorphism(F, G, tuple(ModMorphism(a, b, (b.basepoint,) * len(a)) for a, b in zip(F.stalks, G.stalks)))


def constant_sheaf(B: MonoidedSpace, M: PointedModule) -> Sheaf:
    """Stalk M at every point; only for the trivial structure sheaf."""
    X = B.space
    if not B.is_trivial:
        raise StructuralError("constant sheaves are built over the trivial structure sheaf")
    stalks = tuple(PointedModule(B.monoids[x], M.elements, M.basepoint, (tuple(range(len(M))),))
                   for x in range(len(X)))
    ident = tuple(range(len(M)))
    return Sheaf(B, stalks, {(x, y): ident for x in range(len(X)) for y in X.minimal[x]})


def sheaf_from_stalks(B: MonoidedSpace, stalks, restr) -> Sheaf:
    stalks = tuple(stalks)
    X = B.space
    full = dict(restr)
    for x in range(len(X)):
        full.setdefault((x, x), tuple(range(len(stalks[x]))))
    return Sheaf(B, stalks, full)


# kernels, cokernels, images ------------------------------------------------

def _sub_sheaf(F: Sheaf, members) -> tuple:
    subs = [SubModule(F.stalks[x], frozenset(members[x])) for x in range(len(F.stalks))]
    X = F.space
    restr = {}
    for x in range(len(X)):
        for y in X.minimal[x]:
            pos = {m: i for i, m in enumerate(subs[y].order)}
            restr[(x, y)] = tuple(pos[F.restr[(x, y)][m]] for m in subs[x].order)
    K = Sheaf(F.base, tuple(s.module for s in subs), restr)
    incl = SheafMorphism(K, F, tuple(s.inclusion for s in subs))
    return K, incl


def sheaf_kernel(f: SheafMorphism) -> SheafMorphism:
    """Inclusion of the kernel; computed point by point (already a sheaf)."""
    return _sub_sheaf(f.source, [c.kernel_set for c in f.comps])[1]


def sheaf_image(f: SheafMorphism) -> SheafMorphism:
    return _sub_sheaf(f.target, [c.image_set for c in f.comps])[1]


def quotient_sheaf(F: Sheaf, members) -> SheafMorphism:
    """Collapse a subsheaf given by its stalk members."""
    X = F.space
    projs = [collapse(F.stalks[x], members[x]) for x in range(len(X))]
    restr = {}
    for x in range(len(X)):
        for y in X.minimal[x]:
            t = [None] * len(projs[x].target)
            for s, c in enumerate(projs[x].table):
                v = projs[y].table[F.restr[(x, y)][s]]
                if t[c] is None:
                    t[c] = v
                elif t[c] != v:
                    raise ValidationError("members do not form a subsheaf")
            restr[(x, y)] = tuple(t)
    Q = Sheaf(F.base, tuple(p.target for p in projs), restr)
    return SheafMorphism(F, Q, tuple(projs))


def sheaf_cokernel(f: SheafMorphism) -> SheafMorphism:
    """Projection onto the cokernel: the stalkwise cokernel, which is the
    sheafification of the open-wise cokernel."""
    return quotient_sheaf(f.target, [c.image_set for c in f.comps])


def factor_through_quotient(p: SheafMorphism, g: SheafMorphism) -> SheafMorphism:
    """The u with u o p == g, for p a quotient projection."""
    comps = []
    for pc, gc in zip(p.comps, g.comps):
        t = [None] * len(pc.target)
        for s, c in enumerate(pc.table):
            if t[c] is None:
                t[c] = gc.table[s]
            elif t[c] != gc.table[s]:
                raise ValidationError("map does not factor through the quotient")
        comps.append(ModMorphism(pc.target, gc.target, tuple(t)))
    return SheafMorphism(p.target, g.target, tuple(comps))


def stalkwise_exact(f: SheafMorphism, g: SheafMorphism) -> bool:
    return all(a.image_set == b.kernel_set for a, b in zip(f.comps, g.comps))


def sectionwise_subsheaf_equal(i: SheafMorphism, j: SheafMorphism) -> bool:
    """Do two subsheaves of the same sheaf have the same sections over every open?"""
    X = i.target.space
    for U in X.opens:
        if i.on_sections(U).image_set != j.on_sections(U).image_set:
            return False
    return True


def categorically_exact(f: SheafMorphism, g: SheafMorphism) -> bool:
    """The image of f, as ker(coker f), agrees with ker g on every open."""
    if not (g @ f).is_zero():
        return False
    im = sheaf_kernel(sheaf_cokernel(f))
    return sectionwise_subsheaf_equal(im, sheaf_kernel(g))


def is_strong_sheaf_morphism(f: SheafMorphism) -> bool:
    """coim -> im an isomorphism, tested on sections over every open."""
    coim = quotient_sheaf(f.source, [c.kernel_set for c in f.comps])
    im_incl = sheaf_image(f)
    # induced map coim -> im on each open
    can = factor_through_quotient(coim, _corestrict(f, im_incl))
    return all(can.on_sections(U).is_bijective() for U in f.source.space.opens)


def _corestrict(f: SheafMorphism, incl: SheafMorphism) -> SheafMorphism:
    comps = []
    for c, i in zip(f.comps, incl.comps):
        pos = {v: k for k, v in enumerate(i.table)}
        comps.append(ModMorphism(c.source, i.source, tuple(pos[v] for v in c.table)))
    return SheafMorphism(f.source, incl.source, tuple(comps))


def stalkwise_strong(f: SheafMorphism) -> bool:
    from ..pmod.limits import strong_witness
    return all(strong_witness(c) is None for c in f.comps)


# products, skyscrapers, Godement --------------------------------------------

@dataclass(frozen=True, eq=False)
class SheafProduct:
    sheaf: Sheaf
    factors: tuple
    stalk_products: tuple  # pmod Product per point
    projections: tuple  # SheafMorphism per factor

    def mediate(self, maps, source=None) -> SheafMorphism:
        maps = list(maps)
        src = maps[0].source if maps else source
        comps = []
        for x, P in enumerate(self.stalk_products):
            comps.append(P.mediate_from(src.stalks[x], [m.comps[x] for m in maps]))
        return SheafMorphism(src, self.sheaf, tuple(comps))


def sheaf_product(factors, base=None) -> SheafProduct:
    factors = tuple(factors)
    B = factors[0].base if factors else base
    X = B.space
    prods = [module_product([F.stalks[x] for F in factors], B.monoids[x]) for x in range(len(X))]
    restr = {}
    for x in range(len(X)):
        for y in X.minimal[x]:
            pos = {t: i for i, t in enumerate(prods[y].tuples)}
            restr[(x, y)] = tuple(pos[tuple(F.restr[(x, y)][v] for F, v in zip(factors, t))]
                                  for t in prods[x].tuples)
    S = Sheaf(B, tuple(P.module for P in prods), restr)
    projs = tuple(SheafMorphism(S, F, tuple(prods[x].projections[k] for x in range(len(X))))
                  for k, F in enumerate(factors))
    return SheafProduct(S, factors, tuple(prods), projs)


def skyscraper(B: MonoidedSpace, x: int, I: PointedModule) -> Sheaf:
    """i_{x*} I: the module I on every open containing x, zero elsewhere."""
    X = B.space
    if I.monoid != B.monoids[x]:
        raise StructuralError("skyscraper stalk must be a module over the local monoid")
    stalks = []
    for y in range(len(X)):
        if x in X.minimal[y]:
            stalks.append(B.restrict_scalars(I, y, x))
        else:
            stalks.append(zero_module(B.monoids[y]))
    restr = {}
    ident = tuple(range(len(I)))
    for y in range(len(X)):
        for z in X.minimal[y]:
            if x in X.minimal[z]:
                restr[(y, z)] = ident
            else:
                restr[(y, z)] = (0,) * len(stalks[y])
    return Sheaf(B, tuple(stalks), restr)


def to_skyscraper(F: Sheaf, x: int, psi: ModMorphism, sky: Sheaf) -> SheafMorphism:
    """The morphism F -> i_{x*} I adjoint to psi: F_x -> I."""
    X = F.space
    comps = []
    for y in range(len(X)):
        if x in X.minimal[y]:
            r = F.restr[(y, x)]
            comps.append(ModMorphism(F.stalks[y], sky.stalks[y], tuple(psi.table[r[s]] for s in range(len(F.stalks[y])))))
        else:
            comps.append(ModMorphism(F.stalks[y], sky.stalks[y], (0,) * len(F.stalks[y])))
    return SheafMorphism(F, sky, tuple(comps))


def from_skyscraper_adjoint(phi: SheafMorphism, x: int) -> ModMorphism:
    """phi: G -> i_{x*} I restricted to the stalk at x."""
    return phi.comps[x]


def godement(F: Sheaf):
    """F -> prod_u i_{u*} F_u, the sheaf of all (discontinuous) families of germs."""
    B = F.base
    X = F.space
    skies = [skyscraper(B, u, F.stalks[u]) for u in range(len(X))]
    P = sheaf_product(skies, B)
    legs = [to_skyscraper(F, u, F.stalks[u].identity(), skies[u]) for u in range(len(X))]
    return P, P.mediate(legs, F)


def is_flabby(F: Sheaf, from_top_only=True):
    """(verdict, witness): every restriction F(X) -> F(U) onto. With
    ``from_top_only=False`` all pairs V inside U are checked as well."""
    X = F.space
    full = X.full
    for U in X.opens:
        t = F.restriction(full, U)
        if len(set(t)) != len(F.sections(U)):
            return False, (X.names(full), X.names(U))
    if not from_top_only:
        for U in X.opens:
            for V in X.opens:
                if V < U:
                    t = F.restriction(U, V)
                    if len(set(t)) != len(F.sections(V)):
                        return False, (X.names(U), X.names(V))
    return True, None


# operations tied to open and closed subsets ----------------------------------

def extend_by_zero(F: Sheaf, U) -> tuple:
    """F_U (stalks of F on U, zero elsewhere) and its inclusion into F."""
    X = F.space
    U = frozenset(U)
    if not X.is_open(U):
        raise ValidationError("extension by zero needs an open subset")
    return _sub_sheaf(F, [frozenset(range(len(F.stalks[x]))) if x in U else {F.stalks[x].basepoint}
                          for x in range(len(X))])


def pushforward_closed(F: Sheaf, Y) -> SheafMorphism:
    """F -> F_Y = j_*(F|_Y) for Y closed; F_Y has the stalks of F on Y, zero off Y."""
    X = F.space
    Y = frozenset(Y)
    if not X.is_closed(Y):
        raise ValidationError("pushforward along a closed subset needs a closed subset")
    return quotient_sheaf(F, [set() if x in Y else set(range(len(F.stalks[x]))) for x in range(len(X))])


def restrict_to_subspace(F: Sheaf, Y):
    """F|_Y on the subspace Y with its induced topology."""
    X = F.space
    Y = sorted(Y)
    pos = {y: i for i, y in enumerate(Y)}
    sub = FinSpace.from_opens(tuple(X.points[y] for y in Y),
                              [tuple(pos[y] for y in sorted(U)) for U in X.subspace_opens(Y)])
    B = F.base
    monoids = tuple(B.monoids[y] for y in Y)
    brestr = {}
    restr = {}
    for y in Y:
        for z in sub.minimal[pos[y]]:
            brestr[(pos[y], z)] = B.restr[(y, Y[z])]
            restr[(pos[y], z)] = F.restr[(y, Y[z])]
    SB = MonoidedSpace(sub, monoids, brestr)
    return Sheaf(SB, tuple(F.stalks[y] for y in Y), restr)


def forget_structure(F: Sheaf) -> Sheaf:
    """Same stalks and restrictions over the trivial structure sheaf."""
    TB = MonoidedSpace.trivial(F.space)
    one = TB.monoids[0]
    stalks = tuple(PointedModule(one, s.elements, s.basepoint, (tuple(range(len(s))),)) for s in F.stalks)
    return Sheaf(TB, stalks, dict(F.restr))


def forget_morphism(f: SheafMorphism, S: Sheaf, T: Sheaf) -> SheafMorphism:
    return SheafMorphism(S, T, tuple(ModMorphism(S.stalks[x], T.stalks[x], c.table) for x, c in enumerate(f.comps)))


# presheaves -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Presheaf:
    """Values on every open and restriction tables (U, V) -> table for V inside U.
    Modules are pointed sets here: the structure sheaf is trivial."""
    space: FinSpace
    values: dict  # frozenset -> PointedModule
    restr: dict  # (U, V) -> table

    def check(self) -> list:
        out = []
        X = self.space
        for U in X.opens:
            if self.restr.get((U, U)) != tuple(range(len(self.values[U]))):
                out.append(Violation("identity", "restriction to itself is not the identity", (X.names(U),)))
            for V in X.opens:
                if not V <= U:
                    continue
                t = self.restr[(U, V)]
                if t[self.values[U].basepoint] != self.values[V].basepoint:
                    out.append(Violation("basepoint", "restriction moves the basepoint", (X.names(U), X.names(V))))
                for W in X.opens:
                    if W <= V:
                        a = tuple(self.restr[(V, W)][v] for v in t)
                        if a != self.restr[(U, W)]:
                            out.append(Violation("composition", "restrictions do not compose",
                                                 (X.names(U), X.names(V), X.names(W))))
        return out


def covers(X: FinSpace, U):
    """Antichains of proper open subsets of U whose union is U, plus {U}."""
    U = frozenset(U)
    subs = [V for V in X.opens if V < U and V]
    yield (U,)
    for r in range(1, len(subs) + 1):
        for fam in combinations(subs, r):
            if frozenset().union(*fam) != U:
                continue
            if any(a < b for a in fam for b in fam):
                continue
            yield fam
    if not U:
        yield ()


def sheaf_condition_report(P: Presheaf) -> list:
    """Locality and gluing on every cover of every open."""
    out = []
    X = P.space
    for U in X.opens:
        if not U:
            if len(P.values[U]) != 1:
                out.append(Violation("empty", "sections over the empty set are not a point"))
            continue
        for fam in covers(X, U):
            if len(fam) == 1:
                continue
            # compatible families over the cover
            sizes = [len(P.values[V]) for V in fam]
            compat = [()]
            for k, V in enumerate(fam):
                nxt = []
                for c in compat:
                    for s in range(sizes[k]):
                        ok = all(P.restr[(V, V & W)][s] == P.restr[(W, V & W)][c[j]] for j, W in enumerate(fam[:k]))
                        if ok:
                            nxt.append(c + (s,))
                compat = nxt
            image = {}
            for s in range(len(P.values[U])):
                key = tuple(P.restr[(U, V)][s] for V in fam)
                image.setdefault(key, []).append(s)
            if any(len(v) > 1 for v in image.values()):
                out.append(Violation("locality", "distinct sections agree on a cover", (X.names(U),)))
            missing = [c for c in compat if c not in image]
            if missing:
                out.append(Violation("gluing", "compatible family does not glue",
                                     (X.names(U), [X.names(V) for V in fam])))
    return out


def sheafify(P: Presheaf):
    """(sheaf, unit): stalks P(U_x), and the map P(U) -> F+(U) for each open U."""
    X = P.space
    B = MonoidedSpace.trivial(X)
    one = B.monoids[0]
    stalks = []
    for x in range(len(X)):
        M = P.values[X.minimal[x]]
        stalks.append(PointedModule(one, M.elements, M.basepoint, (tuple(range(len(M))),)))
    restr = {(x, y): P.restr[(X.minimal[x], X.minimal[y])] for x in range(len(X)) for y in X.minimal[x]}
    F = Sheaf(B, tuple(stalks), restr)
    unit = {}
    for U in X.opens:
        order = sorted(U)
        unit[U] = tuple(F.section_index(U, tuple(P.restr[(U, X.minimal[y])][s] for y in order))
                        for s in range(len(P.values[U])))
    return F, unit


def presheaf_of(F: Sheaf) -> Presheaf:
    X = F.space
    values = {U: F.sections(U) for U in X.opens}
    restr = {(U, V): F.restriction(U, V) for U in X.opens for V in X.opens if V <= U}
    return Presheaf(X, values, restr)


def sheaf_from_presheaf(P: Presheaf) -> Sheaf:
    bad = P.check() + sheaf_condition_report(P)
    if bad:
        raise ValidationError("presheaf is not a sheaf", bad)
    return sheafify(P)[0]


# direct limits -----------------------------------------------------------------

def direct_limit_sheaves(objects, arrows, compositions=()):
    """Stalkwise colimit of a finite diagram of sheaves with its legs.
    ``arrows`` are (i, j, SheafMorphism)."""
    objects = list(objects)
    B = objects[0].base
    X = B.space
    cones = []
    for x in range(len(X)):
        D = Diagram(tuple(F.stalks[x] for F in objects), tuple((i, j, f.comps[x]) for i, j, f in arrows),
                    tuple(compositions))
        cones.append(module_colimit(D, B.monoids[x]))
    restr = {}
    for x in range(len(X)):
        for y in X.minimal[x]:
            t = [None] * len(cones[x].module)
            for k, F in enumerate(objects):
                for s in range(len(F.stalks[x])):
                    c = cones[x].legs[k].table[s]
                    v = cones[y].legs[k].table[F.restr[(x, y)][s]]
                    if t[c] is None:
                        t[c] = v
                    elif t[c] != v:
                        raise ValidationError("colimit restriction is not well defined")
            restr[(x, y)] = tuple(t)
    L = Sheaf(B, tuple(c.module for c in cones), restr)
    legs = tuple(SheafMorphism(F, L, tuple(cones[x].legs[k] for x in range(len(X)))) for k, F in enumerate(objects))
    return L, legs


# brute-force morphism search ---------------------------------------------------------

def sheaf_homs(S: Sheaf, T: Sheaf, constraint=None):
    """Every morphism S -> T, by backtracking over stalk maps with the
    naturality squares checked as soon as both ends are chosen.
    ``constraint(x, f)`` may reject a stalk map."""
    from ..pmod.search import search_homs
    X = S.space
    n = len(X)
    order = sorted(range(n), key=lambda x: len(X.minimal[x]))
    chosen = {}

    def fits(x, f):
        for y in X.minimal[x]:
            if y != x and y in chosen:
                if tuple(chosen[y].table[v] for v in S.restr[(x, y)]) != \
                        tuple(T.restr[(x, y)][v] for v in f.table):
                    return False
        return True

    def rec(k):
        if k == n:
            yield SheafMorphism(S, T, tuple(chosen[x] for x in range(n)))
            return
        x = order[k]
        for f in search_homs(S.stalks[x], T.stalks[x]):
            if constraint is not None and not constraint(x, f):
                continue
            if fits(x, f):
                chosen[x] = f
                yield from rec(k + 1)
                del chosen[x]

    yield from rec(0)


def sheaf_extension(i: SheafMorphism, g: SheafMorphism):
    """Some h with h o i == g, found by exhaustive search, or None."""
    def ok(x, h):
        return tuple(h.table[v] for v in i.comps[x].table) == g.comps[x].table
    return next(sheaf_homs(i.target, g.target, ok), None)
