"""Preservation of mono/epi/strong along cartesian and co-cartesian squares."""
from __future__ import annotations

from .limits import cofiber_product, collapse, fiber_product, is_strong
from .module import ModMorphism
from .universal import is_epi_oracle, is_mono_oracle


def cartesian_report(f: ModMorphism, g: ModMorphism) -> dict:
    """Square P -> X, P -> B over f: B -> Y, g: X -> Y; f' = P -> X is the base change of f."""
    P = fiber_product(f, g)
    fp = P.p2
    out = {"square commutes": (f @ P.p1).table == (g @ P.p2).table}
    out["mono"] = (not f.is_injective()) or fp.is_injective()
    out["epi"] = (not f.is_surjective()) or fp.is_surjective()
    out["strong"] = (not is_strong(f)[0]) or is_strong(fp)[0]
    out["mono oracle"] = (not is_mono_oracle(f)) or is_mono_oracle(fp)
    return out


def cocartesian_report(h: ModMorphism, k: ModMorphism) -> dict:
    """Square A -h-> B, A -k-> C, pushout P; h' = C -> P is the cobase change of h.
    For strong h the canonical map C/k(ker h) -> C/ker h' is checked to be bijective."""
    Q = cofiber_product(h, k)
    hp = Q.i2
    out = {"square commutes": (Q.i1 @ h).table == (Q.i2 @ k).table}
    out["epi"] = (not h.is_surjective()) or hp.is_surjective()
    out["mono"] = (not h.is_injective()) or hp.is_injective()
    out["epi oracle"] = (not is_epi_oracle(h)) or is_epi_oracle(hp)
    strong = is_strong(h)[0]
    out["strong"] = (not strong) or is_strong(hp)[0]
    if strong:
        C = k.target
        pushed = frozenset(k.table[a] for a in h.kernel_set)
        q1 = collapse(C, pushed)
        q2 = collapse(C, hp.kernel_set)
        table = {}
        ok = pushed <= hp.kernel_set
        for c in range(len(C)):
            ok &= table.setdefault(q1.table[c], q2.table[c]) == q2.table[c]
        ok &= len(q1.target) == len(q2.target)
        out["quotient iso"] = ok
    return out
