"""Sheaf cohomology H^i(X, F) = R^i Gamma(X, F), Godement resolutions and their
functoriality, the vanishing report, acyclic-class checks and direct limits."""
from __future__ import annotations

from dataclasses import dataclass

from ..complexes import Complex, cohomology, map_cohomology
from ..pmod.module import ModMorphism
from ..pmod.limits import Diagram, direct_limit as module_colimit
from ..engine.functor import (apply_to_lift, apply_to_resolution, compare_resolutions, derived_functor,
                              resolve_with, sections_functor)
from ..engine.resolution import DEFAULT_CAP, Resolution, resolve
from .injective import SHEAVES, embed_canonical, godement_embedding
from .sheaf import (Sheaf, SheafMorphism, constant_sheaf, direct_limit_sheaves, extend_by_zero,
                    factor_through_quotient, is_flabby, sheaf_cokernel, sheaf_extension, sheaf_homs,
                    to_skyscraper)
from .space import dimension


def global_sections(F: Sheaf):
    return F.global_sections()


@dataclass
class CohomologyReport:
    sizes: list
    modules: list
    resolution: Resolution
    complex: Complex


def sheaf_cohomology(F: Sheaf, pmax=None, provider="canonical", cap=DEFAULT_CAP) -> CohomologyReport:
    """H^0..H^pmax via the injective class; pmax defaults to dim X + 2."""
    if pmax is None:
        pmax = dimension(F.space) + 2
    G = sections_functor(F.base)
    D = derived_functor(G, F, provider, cap)
    mods = [D.H(p).module for p in range(pmax + 1)]
    return CohomologyReport([len(m) for m in mods], mods, D.resolution, D.complex)


def godement_resolution(F: Sheaf, cap=DEFAULT_CAP) -> Resolution:
    return resolve(F, godement_embedding, SHEAVES, cap, "godement")


def godement_map(phi: SheafMorphism, EF, EG) -> SheafMorphism:
    """prod_u i_{u*} phi_u between Godement-type targets of two embeddings over all points."""
    I = EF.target
    legs = []
    for k, u in enumerate(EG.points):
        pu = EF.product.projections[k].comps[u]
        image = ModMorphism(I.stalks[u], EG.product.factors[k].stalks[u],
                            tuple(phi.comps[u].table[v] for v in pu.table))
        legs.append(to_skyscraper(I, u, image, EG.product.factors[k]))
    return EG.product.mediate(legs, I)


def godement_ladder(phi: SheafMorphism, RF: Resolution, RG: Resolution) -> list:
    """The functorial lift of phi to Godement resolutions."""
    out = []
    cur = phi
    for p in range(len(RF.objects)):
        if p >= len(RG.objects):
            out.append(SHEAVES.zero_map(RF.objects[p], RG.cokernels[-1].target))
            continue
        m = godement_map(cur, RF.embeddings[p], RG.embeddings[p])
        out.append(m)
        cur = factor_through_quotient(RF.cokernels[p], RG.cokernels[p] @ m)
    return out


def cohomology_map(phi: SheafMorphism, RF: Resolution, RG: Resolution, p: int) -> ModMorphism:
    G = sections_functor(phi.source.base)
    CF, CG = apply_to_resolution(G, RF), apply_to_resolution(G, RG)
    return map_cohomology(apply_to_lift(G, godement_ladder(phi, RF, RG), CF, CG), p)


def vanishing_report(F: Sheaf, provider="canonical", cap=DEFAULT_CAP) -> dict:
    d = dimension(F.space)
    rep = sheaf_cohomology(F, d + 2, provider, cap)
    return {"dimension": d, "sizes": rep.sizes,
            "vanishes above dimension": all(s == 1 for s in rep.sizes[d + 1:])}


def compare_with_godement(F: Sheaf, pmax=None, provider="canonical", cap=DEFAULT_CAP):
    """Lift the identity from the Godement resolution into the injective one;
    the induced maps on H^p should be bijections."""
    if pmax is None:
        pmax = dimension(F.space) + 2
    G = sections_functor(F.base)
    RI = resolve_with(G, F, provider, cap)
    RG = godement_resolution(F, cap)
    return compare_resolutions(G, F, RG, RI, pmax, two_way=False)


# acyclic class -----------------------------------------------------------------------

def probe_monos(B):
    """j_!(1_U) -> 1_X for every open U, with 1 the constant sheaf {0, 1}."""
    from ..pmod.module import pointed_set
    one = constant_sheaf(B, pointed_set(["0", "1"]))
    return [extend_by_zero(one, U)[1] for U in B.space.opens]


def injectivity_search(F: Sheaf, monos=None):
    """First (mono, map) in the test family whose map does not extend to the
    larger sheaf, by exhaustive search; None if every map extends."""
    monos = probe_monos(F.base) if monos is None else monos
    for i in monos:
        for g in sheaf_homs(i.source, F):
            if sheaf_extension(i, g) is None:
                return i, g
    return None


def resolution_flabby(R: Resolution) -> bool:
    return all(is_flabby(I)[0] for I in R.objects)


def sections_exact_on_all_opens(i: SheafMorphism, q: SheafMorphism) -> dict:
    """0 -> F(U) -> H(U) -> G(U) -> 0 for every open U; a dict of failures."""
    out = {}
    X = i.source.space
    for U in X.opens:
        a, b = i.on_sections(U), q.on_sections(U)
        ok = a.is_injective() and a.image_set == b.kernel_set and b.is_surjective()
        if not ok:
            out[tuple(X.names(U))] = {"injective": a.is_injective(), "exact": a.image_set == b.kernel_set,
                                      "onto": b.is_surjective()}
    return out


def acyclic_class_report(F: Sheaf, cap=DEFAULT_CAP) -> dict:
    """The four acyclic-class clauses for the flabby class, on the sequence
    0 -> F -> I -> I/F -> 0 with I the canonical injective hull."""
    E = embed_canonical(F)
    q = sheaf_cokernel(E.mono)
    flab = is_flabby(F)[0]
    rep = {"I flabby": is_flabby(E.target)[0], "F flabby": flab}
    if flab:
        rep["higher cohomology vanishes"] = all(s == 1 for s in sheaf_cohomology(F, None, cap=cap).sizes[1:])
        rep["sections exact"] = not sections_exact_on_all_opens(E.mono, q)
        rep["quotient flabby"] = is_flabby(q.target)[0]
    return rep


# direct limits -----------------------------------------------------------------------

def open_colimit_is_sheaf(objects, arrows, L: Sheaf, legs) -> bool:
    """The open-wise colimit of sections maps bijectively onto the sections of
    the stalkwise colimit, on every open."""
    X = L.space
    for U in X.opens:
        D = Diagram(tuple(F.sections(U) for F in objects),
                    tuple((i, j, f.on_sections(U)) for i, j, f in arrows))
        cone = module_colimit(D, objects[0].base.sections_monoid(U))
        t = [None] * len(cone.module)
        for k, F in enumerate(objects):
            lk = legs[k].on_sections(U)
            for s in range(len(F.sections(U))):
                c = cone.legs[k].table[s]
                if t[c] is None:
                    t[c] = lk.table[s]
                elif t[c] != lk.table[s]:
                    return False
        if None in t or len(set(t)) != len(t) or len(t) != len(L.sections(U)):
            return False
    return True


def chain_limit_report(chain, maps, pmax=None, cap=DEFAULT_CAP) -> dict:
    """For F_0 -> F_1 -> ... -> F_k: the colimit, whether it is computed open-wise,
    whether flabby inputs give a flabby limit, and lim H^p -> H^p(lim) per degree."""
    k = len(chain)
    arrows = [(i, i + 1, maps[i]) for i in range(k - 1)]
    L, legs = direct_limit_sheaves(chain, arrows)
    d = dimension(L.space)
    pmax = d + 2 if pmax is None else pmax
    rep = {"open-wise": open_colimit_is_sheaf(chain, arrows, L, legs)}
    flabby_in = all(is_flabby(F)[0] for F in chain)
    rep["inputs flabby"] = flabby_in
    rep["limit flabby"] = is_flabby(L)[0]
    Rs = [godement_resolution(F, cap) for F in chain]
    RL = godement_resolution(L, cap)
    degrees = {}
    for p in range(pmax + 1):
        Hs = [cohomology(apply_to_resolution(sections_functor(F.base), R), p).module for F, R in zip(chain, Rs)]
        hmaps = [(i, i + 1, cohomology_map(maps[i], Rs[i], Rs[i + 1], p)) for i in range(k - 1)]
        cone = module_colimit(Diagram(tuple(Hs), tuple(hmaps)), chain[0].base.sections_monoid(L.space.full))
        to_L = [cohomology_map(legs[i], Rs[i], RL, p) for i in range(k)]
        t = [None] * len(cone.module)
        well = True
        for i in range(k):
            for s in range(len(Hs[i])):
                c = cone.legs[i].table[s]
                if t[c] is None:
                    t[c] = to_L[i].table[s]
                elif t[c] != to_L[i].table[s]:
                    well = False
        HL = cohomology(apply_to_resolution(sections_functor(L.base), RL), p).module
        bij = well and None not in t and len(set(t)) == len(t) == len(HL)
        degrees[p] = {"lim H": len(cone.module), "H lim": len(HL), "isomorphism": bij}
    rep["degrees"] = degrees
    return rep
