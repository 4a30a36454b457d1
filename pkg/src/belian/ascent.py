"""The linearization A(M) = Q[M]/Q m0 as an ascent functor: the axioms, the
comparison maps for kernels, images, cokernels and cohomology, descent of
exactness, the failure on products, and the base-change injection on section
complexes of injective resolutions."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .complexes import Complex, cohomology, is_strong_complex
from .errors import ValidationError
from .pmod.limits import cokernel, is_strong, product
from .pmod.module import ModMorphism, PointedModule


@dataclass(frozen=True, eq=False)
class RatVectorSpace:
    labels: tuple  # basis labels: the nonzero carrier elements

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "basis": list(self.labels)}


@dataclass(frozen=True, eq=False)
class RatLinearMap:
    source: RatVectorSpace
    target: RatVectorSpace
    matrix: object  # DomainMatrix, target.dimension x source.dimension

    def __matmul__(self, other: "RatLinearMap") -> "RatLinearMap":
        return RatLinearMap(other.source, self.target, la.matmul(self.matrix, other.matrix))

    @property
    def rank(self) -> int:
        return la.rank(self.matrix)

    def same(self, other) -> bool:
        return la.equal(self.matrix, other.matrix)

    def to_dict(self) -> dict:
        return {"source": list(self.source.labels), "target": list(self.target.labels),
                "matrix": la.to_strings(self.matrix)}


@dataclass(frozen=True, eq=False)
class RatComplex:
    lo: int
    spaces: tuple
    maps: tuple

    def check(self) -> list:
        return [self.lo + k for k in range(len(self.maps) - 1)
                if not la.is_zero(la.matmul(self.maps[k + 1].matrix, self.maps[k].matrix))]

    def d(self, i):
        k = i - self.lo
        if 0 <= k < len(self.maps):
            return self.maps[k].matrix
        src = self.spaces[k].dimension if 0 <= k < len(self.spaces) else 0
        dst = self.spaces[k + 1].dimension if 0 <= k + 1 < len(self.spaces) else 0
        return la.zeros(dst, src)

    def cohomology_dim(self, i) -> int:
        return _h_subquotient(self, i).dim


def _h_subquotient(C: RatComplex, i) -> la.Subquotient:
    return la.Subquotient(la.kernel(C.d(i)), C.d(i - 1))


def _basis_index(M: PointedModule) -> dict:
    return {m: k for k, m in enumerate(M.nonzero)}


def linearize_module(M: PointedModule) -> RatVectorSpace:
    return RatVectorSpace(tuple(M.elements[m] for m in M.nonzero))


def linearize_morphism(f: ModMorphism) -> RatLinearMap:
    """Column j is the basis vector of f(m_j), or zero when f(m_j) is the basepoint."""
    S, T = f.source, f.target
    ti = _basis_index(T)
    entries = {(ti[f.table[m]], j): 1 for j, m in enumerate(S.nonzero) if f.table[m] != T.basepoint}
    return RatLinearMap(linearize_module(S), linearize_module(T),
                        la.from_entries(len(T) - 1, len(S) - 1, entries))


def linearize_complex(C: Complex) -> RatComplex:
    return RatComplex(C.lo, tuple(linearize_module(M) for M in C.objects),
                      tuple(linearize_morphism(d) for d in C.diffs))


def unit_vectors(M: PointedModule, elems) -> object:
    """Columns e_m for the given carrier indices (zero columns at the basepoint)."""
    bi = _basis_index(M)
    ent = {(bi[m], j): 1 for j, m in enumerate(elems) if m != M.basepoint}
    return la.from_entries(len(M) - 1, len(elems), ent)


# axioms ------------------------------------------------------------------------------

def check_functoriality(f: ModMorphism, g: ModMorphism) -> dict:
    """A(g o f) == A(g) A(f) and A(id) == id on both ends; f: X -> Y, g: Y -> Z."""
    comp = linearize_morphism(g @ f).same(linearize_morphism(g) @ linearize_morphism(f))
    ids = all(la.equal(linearize_morphism(M.identity()).matrix, la.identity(len(M) - 1))
              for M in (f.source, f.target, g.target))
    return {"composition": comp, "identity": ids}


def is_linear_exact(f: ModMorphism, g: ModMorphism) -> bool:
    """im A(f) == ker A(g), by ranks."""
    Af, Ag = linearize_morphism(f).matrix, linearize_morphism(g).matrix
    if not la.is_zero(la.matmul(Ag, Af)):
        return False
    return la.rank(Af) == (len(f.target) - 1) - la.rank(Ag)


def check_ascent_axioms(morphisms=(), sequences=()) -> dict:
    """Faithfulness on every pair of corpus morphisms with common endpoints,
    epis to surjective matrices, strong exact sequences to exact ones."""
    rep = {"faithful": True, "epi to surjective": True, "strong exact to exact": True,
           "functorial": True, "witnesses": []}
    groups = {}
    for f in morphisms:
        groups.setdefault((id(f.source), id(f.target)), []).append(f)
        Af = linearize_morphism(f)
        if f.is_surjective() and Af.rank != len(f.target) - 1:
            rep["epi to surjective"] = False
            rep["witnesses"].append(("epi", f.table))
        if not check_functoriality(f.source.identity(), f)["composition"]:
            rep["functorial"] = False
    for fs in groups.values():
        seen = {}
        for f in fs:
            key = tuple(sorted(linearize_morphism(f).matrix.to_dok().items()))
            if key in seen and seen[key] != f.table:
                rep["faithful"] = False
                rep["witnesses"].append(("faithful", seen[key], f.table))
            seen.setdefault(key, f.table)
    for f, g in sequences:
        strong_exact = f.image_set == g.kernel_set and is_strong(f)[0] and is_strong(g)[0]
        if strong_exact and not is_linear_exact(f, g):
            rep["strong exact to exact"] = False
            rep["witnesses"].append(("strong exact", f.table, g.table))
        if not check_functoriality(f, g)["composition"]:
            rep["functorial"] = False
    return rep


def check_faithful_on(S: PointedModule, T: PointedModule, hom_tables) -> bool:
    keys = set()
    for t in hom_tables:
        keys.add(tuple(sorted(linearize_morphism(ModMorphism(S, T, t)).matrix.to_dok().items())))
    return len(keys) == len(set(hom_tables))


# comparison maps ---------------------------------------------------------------------

def _iso_facts(matrix, src_dim, dst_dim) -> dict:
    r = la.rank(matrix)
    return {"source dim": src_dim, "target dim": dst_dim, "rank": r,
            "injective": r == src_dim, "isomorphism": r == src_dim == dst_dim}


def compare_kernels_cokernels(f: ModMorphism) -> dict:
    """The canonical maps A(coker f) -> coker A(f), A(im f) -> im A(f) and
    A(ker f) -> ker A(f), in coordinates, with their rank facts."""
    X, Y = f.source, f.target
    Af = linearize_morphism(f).matrix
    out = {"strong": is_strong(f)[0]}

    c = cokernel(f)
    Q = la.Subquotient(la.identity(len(Y) - 1), Af)
    reps = {}
    for y in Y.nonzero:
        if c.table[y] != c.target.basepoint:
            reps.setdefault(c.table[y], y)
    cls = [k for k in c.target.nonzero]
    M = Q.project(unit_vectors(Y, [reps[k] for k in cls]))
    # the map is canonical: projecting any y agrees with the class of c(y)
    full = Q.project(unit_vectors(Y, list(Y.nonzero)))
    via = la.matmul(M, linearize_morphism(c).matrix)
    out["coker"] = dict(_iso_facts(M, len(cls), Q.dim), natural=la.equal(full, via), matrix=M)

    im = sorted(f.image_set - {Y.basepoint})
    J = la.Subquotient(Af, la.zeros(len(Y) - 1, 0))
    M = J.project(unit_vectors(Y, im))
    out["image"] = dict(_iso_facts(M, len(im), J.dim), matrix=M)

    ker = sorted(f.kernel_set - {X.basepoint})
    K = la.Subquotient(la.kernel(Af), la.zeros(len(X) - 1, 0))
    M = K.project(unit_vectors(X, ker))
    facts = _iso_facts(M, len(ker), K.dim)
    facts["matrix"] = M
    facts["iso iff strong"] = facts["isomorphism"] == out["strong"]
    out["kernel"] = facts
    return out


def cohomology_comparison(C: Complex, degrees=None) -> dict:
    """Per degree: A(H^i(C)) -> H^i(A(C)) sending a class to the class of its
    representative; injective always, an isomorphism for strong complexes."""
    LC = linearize_complex(C)
    strong = is_strong_complex(C)
    out = {}
    for i in (C.degrees() if degrees is None else degrees):
        H = cohomology(C, i)
        S = _h_subquotient(LC, i)
        Mi = C.obj(i)
        reps = [H.representative(k) for k in H.module.nonzero]
        M = S.project(unit_vectors(Mi, reps)) if reps else la.zeros(S.dim, 0)
        facts = _iso_facts(M, len(reps), S.dim)
        facts["strong complex"] = strong
        facts["matrix"] = M
        out[i] = facts
    return out


def cohomology_comparison_ok(rep: dict) -> bool:
    return all(d["injective"] and (d["isomorphism"] or not d["strong complex"]) for d in rep.values())


def descend_exactness(f: ModMorphism, g: ModMorphism) -> dict:
    """S: X -f-> Y -g-> Z. If A(S) is exact then S is exact; if moreover f is
    strong then g is strong. Both oracles are reported separately."""
    lin = is_linear_exact(f, g)
    sets = f.image_set == g.kernel_set
    fs, gs = is_strong(f)[0], is_strong(g)[0]
    rep = {"linear exact": lin, "set exact": sets, "composite zero": (g @ f).is_zero(),
           "first strong": fs, "second strong": gs}
    rep["descends"] = (not lin) or sets
    rep["strongness descends"] = (not (lin and fs)) or gs
    return rep


def product_dimensions(M: PointedModule, N: PointedModule) -> dict:
    """dim A(M x N), computed from the product module, against dim A(M) + dim A(N)."""
    P = product([M, N])
    return {"dim A(product)": len(P.module) - 1, "dim product of A": (len(M) - 1) + (len(N) - 1),
            "formula": len(M) * len(N) - 1}


def coefficient_neutrality(matrices) -> bool:
    """Ranks over Q agree with ranks read off the integer Smith form."""
    return all(la.rank(m) == la.zz_rank(m) for m in matrices)


# base change -------------------------------------------------------------------------

def base_change_injection(R, p=None) -> dict:
    """H^p(Gamma I)_Q -> H^p((Gamma I)_Q) for an injective-class resolution R
    of a sheaf, per degree (all degrees of the section complex by default)."""
    from .engine.functor import apply_to_resolution, sections_functor
    from .sheaf.injective import SheafEmbedding
    if not all(isinstance(e, SheafEmbedding) and e.injective for e in R.embeddings):
        raise ValidationError("not a resolution by the injective class")
    C = apply_to_resolution(sections_functor(R.obj.base), R)
    degs = range(C.lo, C.hi + 2) if p is None else [p]
    return cohomology_comparison(C, degs)


def base_change_report(F, provider="canonical", pmax=None) -> dict:
    from .engine.functor import resolve_with, sections_functor
    from .sheaf.space import dimension
    R = resolve_with(sections_functor(F.base), F, provider)
    pmax = dimension(F.space) + 2 if pmax is None else pmax
    rep = base_change_injection(R)
    degrees = {}
    for q in range(pmax + 1):
        d = rep.get(q) or base_change_injection(R, q)[q]
        degrees[q] = {k: v for k, v in d.items() if k != "matrix"}
    return {"degrees": degrees,
            "injective": all(d["injective"] for d in degrees.values()),
            "isomorphism at 0": degrees[0]["isomorphism"]}


# sheaf-level linearization ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearSheaf:
    """Stalkwise linearization of a pointed sheaf: the sheafification of
    U -> A(F(U)), stored on minimal opens."""
    source: object
    stalks: tuple  # RatVectorSpace per point
    restr: dict  # (x, y) -> RatLinearMap A(F_x) -> A(F_y)

    def sections_dim(self, U) -> int:
        """dim of compatible families (v_x) over x in U."""
        X = self.source.space
        pts = sorted(U)
        off, n = {}, 0
        for x in pts:
            off[x] = n
            n += self.stalks[x].dimension
        rows = {}
        r = 0
        for x in pts:
            for y in X.minimal[x]:
                if y == x:
                    continue
                m = self.restr[(x, y)].matrix.to_dok()
                dy = self.stalks[y].dimension
                for (i, j), v in m.items():
                    rows.setdefault(r + i, {})[off[x] + j] = v
                for i in range(dy):
                    row = rows.setdefault(r + i, {})
                    row[off[y] + i] = row.get(off[y] + i, 0) - 1
                r += dy
        A = la.from_entries(r, n, {(i, j): v for i, row in rows.items() for j, v in row.items()})
        return n - la.rank(A)


def linearize_sheaf(F) -> LinearSheaf:
    stalks = tuple(linearize_module(S) for S in F.stalks)
    restr = {(x, y): linearize_morphism(ModMorphism(F.stalks[x], F.stalks[y], tuple(t)))
             for (x, y), t in F.restr.items()}
    return LinearSheaf(F, stalks, restr)
