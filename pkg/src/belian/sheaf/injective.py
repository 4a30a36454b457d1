"""The injective class of products of skyscrapers, and the sheaf adapter for
the resolution engine."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError
from ..pmod.module import ModMorphism
from ..pmod.injective import Embedding, embed_economical as module_embed_economical, embed_hull
from .sheaf import (Sheaf, SheafMorphism, categorically_exact, factor_through_quotient,
                    is_strong_sheaf_morphism, sheaf_cokernel, sheaf_product, skyscraper, to_skyscraper,
                    zero_sheaf_morphism)


def same_sheaf(F: Sheaf, G: Sheaf) -> bool:
    return F is G or (F.stalks == G.stalks and F.restr == G.restr)


def _retarget(f: ModMorphism, S=None, T=None) -> ModMorphism:
    return ModMorphism(f.source if S is None else S, f.target if T is None else T, f.table)


@dataclass(frozen=True, eq=False)
class SheafEmbedding:
    """F -> prod_k i_{x_k*} I_k with an extension rule for each factor."""
    target: Sheaf
    mono: SheafMorphism
    points: tuple
    stalk_embeddings: tuple  # Embedding of the factor module, target I_k
    product: object
    injective: bool = True

    def extend(self, i: SheafMorphism, g: SheafMorphism) -> SheafMorphism:
        """Extend g: N -> target along the mono i: N -> P."""
        if not self.injective:
            raise ValidationError("target is not in the injective class")
        P = i.target
        if same_sheaf(P, self.target) and i.same(g):
            # g already is i: the identity is an extension
            return SheafMorphism(P, self.target, tuple(_retarget(c, T=t) for c, t in
                                                       zip(P.identity().comps, self.target.stalks)))
        legs = []
        for k, (x, e) in enumerate(zip(self.points, self.stalk_embeddings)):
            gk = (self.product.projections[k] @ g).comps[x]
            I = e.target
            ix = i.comps[x]
            h = e.extend(ix, _retarget(gk, T=I))
            sky = self.product.factors[k]
            legs.append(to_skyscraper(P, x, _retarget(h, T=I), sky))
        return self.product.mediate(legs, P)


def _assemble(F: Sheaf, points, embs, injective=True) -> SheafEmbedding:
    B = F.base
    skies = [skyscraper(B, x, e.target) for x, e in zip(points, embs)]
    P = sheaf_product(skies, B)
    legs = [to_skyscraper(F, x, e.mono, sky) for x, e, sky in zip(points, embs, skies)]
    return SheafEmbedding(P.sheaf, P.mediate(legs, F), tuple(points), tuple(embs), P, injective)


def embed_canonical(F: Sheaf) -> SheafEmbedding:
    """F -> prod_x i_{x*} I_x over every point, I_x = F_x when that stalk is
    injective and Map(O_x, F_x) otherwise."""
    pts = tuple(range(len(F.space)))
    return _assemble(F, pts, [embed_hull(F.stalks[x]) for x in pts])


def embed_economical(F: Sheaf) -> SheafEmbedding:
    """Identity hulls for stalks that are already injective, then points are
    dropped greedily (last first) while the map stays a mono."""
    pts = list(range(len(F.space)))
    embs = {x: module_embed_economical(F.stalks[x]) for x in pts}
    if F.is_zero():
        return _assemble(F, (), [])
    for x in reversed(range(len(F.space))):
        trial = [y for y in pts if y != x]
        E = _assemble(F, trial, [embs[y] for y in trial])
        if E.mono.is_injective():
            pts = trial
    return _assemble(F, pts, [embs[y] for y in pts])


def godement_embedding(F: Sheaf) -> SheafEmbedding:
    """The Godement mono; its target is flabby but need not be injective."""
    pts = tuple(range(len(F.space)))
    embs = [Embedding(F.stalks[x], F.stalks[x].identity(), None) for x in pts]
    return _assemble(F, pts, embs, injective=False)


class SheafCategory:
    name = "sheaves"

    def cokernel(self, f):
        return sheaf_cokernel(f)

    def factor(self, p, g):
        return factor_through_quotient(p, g)

    def identity(self, X):
        return X.identity()

    def zero_map(self, X, Y):
        return zero_sheaf_morphism(X, Y)

    def is_zero_object(self, X) -> bool:
        return X.is_zero()

    def is_zero_map(self, f) -> bool:
        return f.is_zero()

    def same(self, f, g) -> bool:
        return f.same(g)

    def is_mono(self, f) -> bool:
        return f.is_injective()

    def is_strong(self, f) -> bool:
        return is_strong_sheaf_morphism(f)

    def exact(self, f, g) -> bool:
        return categorically_exact(f, g)

    def product(self, objs):
        objs = list(objs)
        P = sheaf_product(objs, objs[0].base if objs else None)
        return P.sheaf, P.projections, lambda maps, src: P.mediate(maps, src)

    def size(self, X) -> int:
        return X.size()


SHEAVES = SheafCategory()
