"""Right derived functors R^pF = H^p(F(I)) of a left strong-exact functor,
their independence of the resolution, acyclic resolutions, and the long
exact sequence attached to a strong short exact sequence."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CapExceeded, StructuralError, ValidationError
from ..complexes import Complex, ComplexMap, cohomology, map_cohomology
from ..pmod.module import ModMorphism, zero_module
from .category import MODULES
from .les import les_of_complexes, expected_checks
from .resolution import DEFAULT_CAP, Resolution, lift_over_resolution, check_lift


@dataclass(frozen=True, eq=False)
class FunctorHandle:
    name: str
    cat: object  # source category adapter
    monoid: object  # monoid of the target module category
    on_object: object
    on_morphism: object
    providers: dict  # name -> embedding provider for the injective class
    default_provider: str
    strong: bool = True
    left_strong_exact: bool = True

    def provider(self, name=None):
        return self.providers[name or self.default_provider]

    def __call__(self, x):
        return self.on_object(x)


def identity_functor(A, providers=None, default="economical") -> FunctorHandle:
    from ..pmod.injective import embed_economical, embed_hull
    providers = providers or {"economical": embed_economical, "hull": embed_hull}
    return FunctorHandle("identity", MODULES, A, lambda X: X, lambda f: f, providers, default)


def sections_functor(B, U=None, providers=None, default="canonical") -> FunctorHandle:
    """Gamma(U, -) from sheaves on B to modules over O(U)."""
    from ..sheaf.injective import SHEAVES, embed_canonical, embed_economical
    U = B.space.full if U is None else frozenset(U)
    providers = providers or {"economical": embed_economical, "canonical": embed_canonical}
    name = "global-sections" if U == B.space.full else "sections"
    return FunctorHandle(name, SHEAVES, B.sections_monoid(U), lambda F: F.sections(U),
                         lambda f: f.on_sections(U), providers, default)


def apply_to_resolution(F: FunctorHandle, R: Resolution) -> Complex:
    objs = tuple(F.on_object(I) for I in R.objects)
    diffs = tuple(F.on_morphism(d) for d in R.diffs)
    if not objs:
        objs = (zero_module(F.monoid),)
    return Complex(F.monoid, 0, objs, diffs).require()


def apply_to_lift(F: FunctorHandle, maps, CX: Complex, CY: Complex) -> ComplexMap:
    out = {}
    for p, m in enumerate(maps):
        if p <= CX.hi and p <= CY.hi:
            fm = F.on_morphism(m)
            out[p] = ModMorphism(CX.obj(p), CY.obj(p), fm.table)
    return ComplexMap(CX, CY, out).require()


def resolve_with(F: FunctorHandle, X, provider=None, cap=DEFAULT_CAP) -> Resolution:
    from .resolution import resolve
    prov = F.provider(provider) if provider is None or isinstance(provider, str) else provider
    return resolve(X, prov, F.cat, cap, "injective")


@dataclass
class Derived:
    functor: str
    resolution: Resolution
    complex: Complex

    def H(self, p):
        return cohomology(self.complex, p)


def derived_functor(F: FunctorHandle, X, provider=None, cap=DEFAULT_CAP) -> Derived:
    if not F.left_strong_exact:
        raise StructuralError(f"{F.name} is not flagged left strong-exact")
    R = resolve_with(F, X, provider, cap)
    return Derived(F.name, R, apply_to_resolution(F, R))


def derived_at(F, X, p, provider=None, cap=DEFAULT_CAP):
    return derived_functor(F, X, provider, cap).H(p).module


def r0_comparison(F: FunctorHandle, D: Derived) -> ModMorphism:
    """F(X) -> H^0(F(I)) induced by F of the augmentation."""
    Fe = F.on_morphism(D.resolution.augmentation)
    H0 = D.H(0)
    return ModMorphism(Fe.source, H0.module, tuple(H0.class_of(v) for v in Fe.table))


@dataclass
class Comparison:
    degrees: dict = field(default_factory=dict)  # p -> dict of facts
    forward: dict = field(default_factory=dict)  # p -> ModMorphism H^p(C1) -> H^p(C2)

    @property
    def ok(self) -> bool:
        return all(all(v for k, v in d.items() if isinstance(v, bool)) for d in self.degrees.values())


def compare_resolutions(F: FunctorHandle, X, R1: Resolution, R2: Resolution, pmax=4,
                        two_way=True) -> Comparison:
    """Lift the identity of X both ways and check the induced maps on H^p are
    mutually inverse. With ``two_way=False`` only R1 -> R2 is lifted, which
    needs only R2 to consist of injectives."""
    C1, C2 = apply_to_resolution(F, R1), apply_to_resolution(F, R2)
    ident = F.cat.identity(X)
    a = lift_over_resolution(ident, R1, R2)
    if not check_lift(ident, R1, R2, a):
        raise ValidationError("lift of the identity does not commute")
    Fa = apply_to_lift(F, a, C1, C2)
    Fb = None
    if two_way:
        b = lift_over_resolution(ident, R2, R1)
        if not check_lift(ident, R2, R1, b):
            raise ValidationError("lift of the identity does not commute")
        Fb = apply_to_lift(F, b, C2, C1)
    out = Comparison()
    for p in range(pmax + 1):
        phi = map_cohomology(Fa, p)
        facts = {"size": (len(phi.source), len(phi.target)), "bijective": phi.is_bijective()}
        if Fb is not None:
            psi = map_cohomology(Fb, p)
            facts["inverse left"] = (psi @ phi).table == tuple(range(len(phi.source)))
            facts["inverse right"] = (phi @ psi).table == tuple(range(len(phi.target)))
        out.degrees[p] = facts
        out.forward[p] = phi
    return out


def acyclicity_report(F: FunctorHandle, R: Resolution, qmax=3, provider=None, cap=DEFAULT_CAP) -> dict:
    """R^qF(R^p) for 1 <= q <= qmax, as sizes; acyclic means all are 1."""
    out = {}
    for p, I in enumerate(R.objects):
        D = derived_functor(F, I, provider, cap)
        out[p] = [len(D.H(q).module) for q in range(1, qmax + 1)]
    return out


def compute_via_acyclics(F: FunctorHandle, X, R: Resolution, p, provider=None, verify=False,
                         cap=DEFAULT_CAP):
    """(H^p(F(R)), the comparison map into R^pF(X)). ``R`` is any resolution by
    F-acyclic objects; with ``verify`` the acyclicity is recomputed first."""
    if verify:
        rep = acyclicity_report(F, R, max(p, 1), provider, cap)
        bad = {k: v for k, v in rep.items() if any(s != 1 for s in v)}
        if bad:
            raise ValidationError("resolution is not by acyclic objects")
    RI = resolve_with(F, X, provider, cap)
    cmp = compare_resolutions(F, X, R, RI, p, two_way=False)
    C = apply_to_resolution(F, R)
    return cohomology(C, p).module, cmp.forward[p]


# long exact sequence -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProductEmbedding:
    """The middle embedding of the horseshoe: into I_A x I_C."""
    target: object
    mono: object
    parts: tuple  # (embedding of A, embedding of C)
    projections: tuple
    mediate: object

    def extend(self, i, g):
        legs = [e.extend(i, p @ g) for e, p in zip(self.parts, self.projections)]
        return self.mediate(legs, i.target)


def horseshoe(F: FunctorHandle, i, q, provider=None, cap=DEFAULT_CAP):
    """Resolutions of X, Y, Z for 0 -> X -i-> Y -q-> Z -> 0 with I_Y = I_X x I_Z,
    and the degreewise inclusions and projections."""
    cat = F.cat
    prov = F.provider(provider) if provider is None or isinstance(provider, str) else provider
    X, Y, Z = i.source, i.target, q.target
    RX, RY, RZ = Resolution(X, cat, "injective", None), Resolution(Y, cat, "injective", None), \
        Resolution(Z, cat, "injective", None)
    incs, projs = [], []
    A, B, C, a, b = X, Y, Z, i, q
    while True:
        p = len(RY.objects)
        if p > cap:
            raise CapExceeded(f"horseshoe needs more than {cap + 1} terms", partial=(RX, RY, RZ))
        eA, eC = prov(A), prov(C)
        P, (pA, pC), med = cat.product([eA.target, eC.target])
        eps = med([eA.extend(a, eA.mono), eC.mono @ b], B)
        if not cat.is_mono(eps):
            raise ValidationError("horseshoe embedding is not a mono")
        eB = ProductEmbedding(P, eps, (eA, eC), (pA, pC), med)
        inc = med([cat.identity(eA.target), cat.zero_map(eA.target, eC.target)], eA.target)
        incs.append(inc)
        projs.append(pC)
        cs = []
        for R, e in ((RX, eA), (RY, eB), (RZ, eC)):
            if p == 0:
                R.augmentation = e.mono
            else:
                R.monos.append(e.mono)
                R.diffs.append(e.mono @ R.cokernels[-1])
            R.objects.append(e.target)
            R.embeddings.append(e)
            c = cat.cokernel(e.mono)
            R.cokernels.append(c)
            cs.append(c)
        cA, cB, cC = cs
        a = cat.factor(cA, cB @ inc)
        b = cat.factor(cB, cC @ pC)
        A, B, C = cA.target, cB.target, cC.target
        if cat.is_zero_object(B):
            break
    return (RX, RY, RZ), incs, projs


@dataclass
class DerivedLES:
    resolutions: tuple
    complexes: tuple
    reports: list

    def ok(self) -> bool:
        for r in self.reports:
            for k in expected_checks(r):
                if not r.checks.get(k, True):
                    return False
        return True


def les_of_derived(F: FunctorHandle, i, q, provider=None, cap=DEFAULT_CAP) -> DerivedLES:
    cat = F.cat
    onto = cat.is_zero_object(cat.cokernel(q).target)
    if not (onto and cat.is_mono(i) and cat.exact(i, q) and cat.is_strong(i) and cat.is_strong(q)):
        raise ValidationError("not a strong short exact sequence")
    (RX, RY, RZ), incs, projs = horseshoe(F, i, q, provider, cap)
    CX, CY, CZ = (apply_to_resolution(F, R) for R in (RX, RY, RZ))
    e = apply_to_lift(F, incs, CX, CY)
    f = apply_to_lift(F, projs, CY, CZ)
    reports = les_of_complexes(e, f)
    return DerivedLES((RX, RY, RZ), (CX, CY, CZ), reports)
