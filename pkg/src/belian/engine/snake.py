"""Snake diagrams in Mod0(A): the connecting morphism and the six-term sequence.

Layout::

        X1 --g1--> X2 --g2--> X3 --> 0
        |f1        |f2        |f3
   0 -> Y1 --h1--> Y2 --h2--> Y3

The connecting map is built from Z = ker(f3 g2) and Z' = coker(h1 f1) and is
independently recomputed by chasing points; the two must agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotStrongError, ValidationError, Violation
from ..pmod.module import ModMorphism, SubModule
from ..pmod.limits import cokernel, is_strong, kernel


@dataclass(frozen=True, eq=False)
class SnakeDiagram:
    g1: ModMorphism
    g2: ModMorphism
    f1: ModMorphism
    f2: ModMorphism
    f3: ModMorphism
    h1: ModMorphism
    h2: ModMorphism

    @property
    def X(self):
        return self.g1.source, self.g2.source, self.g2.target

    @property
    def Y(self):
        return self.h1.source, self.h2.source, self.h2.target

    def check(self) -> list:
        out = []
        g1, g2, f1, f2, f3, h1, h2 = self.g1, self.g2, self.f1, self.f2, self.f3, self.h1, self.h2
        shape = [(g1.target, g2.source), (f1.source, g1.source), (f2.source, g2.source), (f3.source, g2.target),
                 (f1.target, h1.source), (f2.target, h2.source), (f3.target, h2.target)]
        if any(a != b for a, b in shape):
            return [Violation("shape", "morphisms do not fit the snake layout")]
        if g1.image_set != g2.kernel_set:
            out.append(Violation("top-row", "im g1 != ker g2"))
        if not g2.is_surjective():
            out.append(Violation("top-row", "g2 is not onto"))
        if not h1.is_injective():
            out.append(Violation("bottom-row", "h1 is not injective"))
        if h1.image_set != h2.kernel_set:
            out.append(Violation("bottom-row", "im h1 != ker h2"))
        if (f2 @ g1).table != (h1 @ f1).table:
            out.append(Violation("square", "f2 g1 != h1 f1"))
        if (f3 @ g2).table != (h2 @ f2).table:
            out.append(Violation("square", "f3 g2 != h2 f2"))
        return out

    def require(self):
        bad = self.check()
        if bad:
            raise ValidationError("not a snake diagram", bad)
        return self


def restrict(f: ModMorphism, src: SubModule, dst: SubModule) -> ModMorphism:
    pos = {m: i for i, m in enumerate(dst.order)}
    return ModMorphism(src.module, dst.module, tuple(pos[f.table[m]] for m in src.order))


def induced_on_quotients(f: ModMorphism, p: ModMorphism, q: ModMorphism) -> ModMorphism:
    """The map coker-side p.target -> q.target induced by f on representatives."""
    table = [None] * len(p.target)
    for x, c in enumerate(p.table):
        v = q.table[f.table[x]]
        if table[c] is None:
            table[c] = v
        elif table[c] != v:
            raise ValidationError("map does not descend to the quotient")
    return ModMorphism(p.target, q.target, tuple(table))


def exact_pair(f: ModMorphism, g: ModMorphism) -> bool:
    return f.image_set == g.kernel_set


@dataclass
class SnakeResult:
    kernels: tuple  # SubModules ker f1, ker f2, ker f3
    cokernels: tuple  # projections Y_i -> coker f_i
    kernel_row: tuple  # ker f1 -> ker f2 -> ker f3
    cokernel_row: tuple  # coker f1 -> coker f2 -> coker f3
    delta: ModMorphism | None = None
    delta_chase: ModMorphism | None = None
    exactness: dict = field(default_factory=dict)
    delta_strong: bool | None = None
    parts: dict = field(default_factory=dict)

    def sequence(self):
        """The six objects and five maps, in order."""
        objs = [k.module for k in self.kernels] + [c.target for c in self.cokernels]
        maps = list(self.kernel_row) + ([self.delta] if self.delta is not None else [None]) + list(self.cokernel_row)
        return objs, maps


def connecting_map(D: SnakeDiagram, K3: SubModule, c1: ModMorphism):
    """delta: ker f3 -> coker f1 through Z = ker(f3 g2) and Z' = coker(h1 f1)."""
    g2, f1, f2, f3, h1 = D.g2, D.f1, D.f2, D.f3, D.h1
    X2 = g2.source
    Zsub = kernel(f3 @ g2)
    l = Zsub.inclusion
    s = restrict(g2, Zsub, K3)
    if not s.is_surjective():
        raise ValidationError("Z -> ker f3 is not onto")
    lp = cokernel(h1 @ f1)  # Y2 -> Z'
    sp = induced_on_quotients(h1, c1, lp)  # coker f1 -> Z'
    if not sp.is_injective():
        raise ValidationError("coker f1 -> Z' is not injective")
    eps = lp @ f2 @ l
    sp_inv = {v: c for c, v in enumerate(sp.table)}
    table = [None] * len(K3)
    for z, k in enumerate(s.table):
        e = eps.table[z]
        if e not in sp_inv:
            raise ValidationError("epsilon leaves the image of coker f1")
        v = sp_inv[e]
        if table[k] is None:
            table[k] = v
        elif table[k] != v:
            raise ValidationError("epsilon does not factor through Z -> ker f3", [
                Violation("delta", "two lifts disagree", (X2.elements[l.table[z]],))])
    delta = ModMorphism(K3.module, c1.target, tuple(table))
    assert (sp @ delta @ s).table == eps.table
    return delta, {"Z": Zsub, "s": s, "l": l, "Z'": lp, "s'": sp, "epsilon": eps}


def chase_delta(D: SnakeDiagram, K3: SubModule, c1: ModMorphism) -> ModMorphism:
    """Lift along g2, apply f2, pull back along h1, project to coker f1.
    Every lift is tried and all must give the same answer."""
    g2, f2, h1 = D.g2, D.f2, D.h1
    back = {y: x for x, y in enumerate(h1.table)}
    table = []
    for k in K3.order:
        vals = set()
        for x2 in range(len(g2.source)):
            if g2.table[x2] != k:
                continue
            y2 = f2.table[x2]
            if y2 not in back:
                raise ValidationError("chase leaves the image of h1")
            vals.add(c1.table[back[y2]])
        if len(vals) != 1:
            raise ValidationError("chase is not single valued")
        table.append(vals.pop())
    return ModMorphism(K3.module, c1.target, tuple(table))


def _rows(D: SnakeDiagram):
    K = tuple(kernel(f) for f in (D.f1, D.f2, D.f3))
    C = tuple(cokernel(f) for f in (D.f1, D.f2, D.f3))
    krow = (restrict(D.g1, K[0], K[1]), restrict(D.g2, K[1], K[2]))
    crow = (induced_on_quotients(D.h1, C[0], C[1]), induced_on_quotients(D.h2, C[1], C[2]))
    return K, C, krow, crow


def snake(D: SnakeDiagram, require_strong=True) -> SnakeResult:
    D.require()
    K, C, krow, crow = _rows(D)
    res = SnakeResult(K, C, krow, crow)
    res.exactness["ker f2"] = exact_pair(*krow)
    res.exactness["coker f2"] = exact_pair(*crow)
    strong = {n: is_strong(getattr(D, n))[0] for n in ("h1", "f2", "g2")}
    res.parts["strong"] = strong
    if not all(strong.values()):
        if require_strong:
            bad = [n for n, v in strong.items() if not v]
            raise NotStrongError(f"connecting map needs strong {', '.join(bad)}")
        return res
    delta, parts = connecting_map(D, K[2], C[0])
    res.delta = delta
    res.parts.update(parts)
    res.delta_chase = chase_delta(D, K[2], C[0])
    res.exactness["ker f3"] = exact_pair(krow[1], delta)
    res.exactness["coker f1"] = exact_pair(delta, crow[0])
    res.delta_strong = is_strong(delta)[0]
    return res


@dataclass
class WeakSnakeResult:
    modified: SnakeDiagram
    cover: ModMorphism  # ker(f3~) -> ker(f3), a pseudo-isomorphism
    result: SnakeResult
    ker_delta: SubModule
    alpha: ModMorphism  # ker f2 -> ker(delta)
    rows: dict


def replace_third_column(D: SnakeDiagram):
    """X3 -> coker(g1), with f3~ and the comparison map coker(g1) -> X3."""
    q = cokernel(D.g1)
    f3t = induced_on_quotients(D.f3 @ D.g2, q, D.f3.target.identity())
    comp = induced_on_quotients(D.g2, q, D.g2.target.identity())
    Dt = SnakeDiagram(D.g1, q, D.f1, D.f2, f3t, D.h1, D.h2)
    return Dt, comp


def weak_snake(D: SnakeDiagram) -> WeakSnakeResult:
    D.require()
    if not is_strong(D.h1)[0]:
        raise NotStrongError("weak snake needs h1 strong")
    Dt, comp = replace_third_column(D)
    Kt = kernel(Dt.f3)
    K3 = kernel(D.f3)
    cover = restrict(comp, Kt, K3)
    K, C, krow, crow = _rows(Dt)
    res = SnakeResult(K, C, krow, crow)
    delta, parts = connecting_map(Dt, K[2], C[0])
    res.delta = delta
    res.parts.update(parts)
    res.delta_chase = chase_delta(Dt, K[2], C[0])
    res.delta_strong = is_strong(delta)[0]
    kd = kernel(delta)
    pos = {m: i for i, m in enumerate(kd.order)}
    if not set(krow[1].table) <= kd.members:
        raise ValidationError("ker f2 does not land in ker(delta)")
    alpha = ModMorphism(K[1].module, kd.module, tuple(pos[v] for v in krow[1].table))
    rows = {
        # ker f1 -> ker f2 -> ker(delta)
        "top: ker f2": exact_pair(krow[0], alpha),
        # ker(delta) -> ker f3~ -> coker f1 -> coker f2 -> coker f3
        "bottom: ker f3~": exact_pair(kd.inclusion, delta),
        "bottom: coker f1": exact_pair(delta, crow[0]),
        "bottom: coker f2": exact_pair(crow[0], crow[1]),
        "ker(delta) mono": kd.inclusion.is_injective(),
    }
    res.exactness.update({"ker f2": exact_pair(*krow), "coker f2": exact_pair(*crow),
                          "ker f3": exact_pair(krow[1], delta), "coker f1": exact_pair(delta, crow[0])})
    return WeakSnakeResult(Dt, cover, res, kd, alpha, rows)
