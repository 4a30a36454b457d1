"""Command-line front end: every command reads a JSON document, writes a
canonical JSON report and prints a short summary.

Exit status: 0 success, 2 validation failure (including failed --verify or
--oracle checks), 3 structural error (malformed input, unknown command).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import ascent, linalg as la
from .complexes import ComplexMap, cohomology, is_exact_at, is_strong_complex
from .engine.les import expected_checks, les_of_complexes
from .engine.resolution import DEFAULT_CAP, resolve
from .engine.snake import snake, weak_snake
from .errors import BelianError, CapExceeded, NotStrongError, StructuralError, ValidationError
from .pmod.elements import exact_by_elements
from .pmod.injective import embed_economical, embed_hull
from .pmod.limits import (Diagram, canonical_coim_im, coimage, cofiber_product, cokernel, coproduct,
                          direct_limit, fiber_product, image, inverse_limit, is_strong, kernel, product,
                          strong_factorization)
from .pmod.module import ModMorphism
from .pmod.universal import (is_epi_oracle, is_mono_oracle, verify_cokernel, verify_colimit_cone,
                             verify_kernel, verify_limit_cone)
from .serialize import (Loader, canonical_json, dump_carrier, dump_map, dump_module, dump_monoid,
                        dump_sheaf, dump_space, open_key, pointer)

COMMANDS = ("validate", "kernel", "cokernel", "image", "strong", "product", "coproduct", "limit",
            "pullback", "pushout", "resolve", "cohomology", "snake", "les", "sheaf-cohomology",
            "ascent-check", "base-change", "spec", "vanishing")
MAX_CAP = 32


class Job:
    def __init__(self, command, path, doc, verify=False, oracle=False, cap=DEFAULT_CAP):
        self.command = command
        self.path = path
        self.L = Loader(doc, path)
        self.doc = doc
        self.verify = verify
        self.oracle = oracle
        self.cap = cap
        self.failed = []  # names of failed --verify / --oracle checks

    def need(self, key, kind=None):
        return self.L.field(key, kind)

    def module(self, key):
        return self.L.valid_module(self.need(key), pointer("", key))

    def morphism(self, key="morphism"):
        return self.L.morphism(self.need(key), pointer("", key))

    def check(self, name, ok):
        if not ok:
            self.failed.append(name)
        return ok


def mod(M):
    return dump_module(M)


def matrix(M):
    return la.to_strings(M)


# commands ----------------------------------------------------------------------------

def cmd_validate(job: Job):
    L, doc = job.L, job.doc
    checked, violations = [], []
    for key, fn in (("monoid", L.valid_monoid), ("module", L.valid_module), ("morphism", L.morphism),
                    ("complex", L.complex), ("snake", L.snake), ("space", L.space), ("sheaf", L.sheaf)):
        if key in doc:
            checked.append(key)
            try:
                fn(doc[key], pointer("", key))
            except ValidationError as exc:
                violations.extend(dict(v.to_dict(), object=key, location=exc.location) for v in exc.violations)
    for table, fn in (("monoids", L.valid_monoid), ("modules", L.valid_module), ("complexes", L.complex)):
        for name in sorted(doc.get(table, {}) or {}):
            checked.append(f"{table}/{name}")
            try:
                fn(name, pointer("", table, name))
            except ValidationError as exc:
                violations.extend(dict(v.to_dict(), object=f"{table}/{name}", location=exc.location)
                                  for v in exc.violations)
    if not checked:
        raise StructuralError("nothing to validate", location=f"{job.path}#")
    job.check("valid", not violations)
    rep = {"checked": checked, "valid": not violations, "violations": violations}
    return rep, [f"checked {len(checked)} object(s): {'valid' if not violations else f'{len(violations)} violation(s)'}"]


def cmd_kernel(job: Job):
    f = job.morphism()
    K = kernel(f)
    rep = {"kernel": mod(K.module), "inclusion": dump_map(K.inclusion), "injective": f.is_injective()}
    if job.verify:
        rep["verified"] = job.check("kernel universal property", verify_kernel(f, K.inclusion))
    if job.oracle:
        brute = sorted(x for x in range(len(f.source)) if f.table[x] == f.target.basepoint)
        rep["oracle"] = {"agree": job.check("kernel oracle", list(K.order) == brute and
                                            (f.is_injective() == is_mono_oracle(f)))}
    return rep, [f"kernel has {len(K)} element(s)"]


def cmd_cokernel(job: Job):
    f = job.morphism()
    c = cokernel(f)
    rep = {"cokernel": mod(c.target), "projection": dump_map(c), "surjective": f.is_surjective()}
    if job.verify:
        rep["verified"] = job.check("cokernel universal property", verify_cokernel(f, c))
    if job.oracle:
        rep["oracle"] = {"agree": job.check("cokernel oracle", (len(c.target) == 1) == is_epi_oracle(f)
                                            and len(c.target) == len(f.target) - len(f.image_set) + 1)}
    return rep, [f"cokernel has {len(c.target)} element(s)"]


def cmd_image(job: Job):
    f = job.morphism()
    im, co = image(f), coimage(f)
    u = canonical_coim_im(f)
    rep = {"image": mod(im.module), "inclusion": dump_map(im.inclusion), "coimage": mod(co.target),
           "coimage projection": dump_map(co), "coimage to image": dump_map(u), "strong": u.is_bijective()}
    return rep, [f"image {len(im)}, coimage {len(co.target)}, strong: {u.is_bijective()}"]


def cmd_strong(job: Job):
    f = job.morphism()
    ok, w = is_strong(f)
    rep = {"strong": ok, "witness": list(w) if w else None}
    if ok:
        e, m = strong_factorization(f)
        rep["factorization"] = {"epi": dump_map(e), "middle": mod(e.target), "mono": dump_map(m)}
    return rep, [f"strong: {ok}" + ("" if ok else f" (witness {w[0]}, {w[1]})")]


def _module_list(L, items, ptr):
    A = None
    out = []
    for k, obj in enumerate(items):
        M = L.valid_module(obj, pointer(ptr, k), A)
        A = M.monoid if A is None else A
        if M.monoid != A:
            L.fail("modules are over different monoids", pointer(ptr, k))
        out.append(M)
    if not out:
        L.fail("need at least one module", ptr)
    return out


def cmd_product(job: Job):
    Ms = _module_list(job.L, job.need("factors", list), "/factors")
    P = product(Ms)
    rep = {"product": mod(P.module), "projections": [dump_map(p) for p in P.projections]}
    if job.verify:
        rep["verified"] = job.check("product universal property", verify_limit_cone(P.projections, []))
    return rep, [f"product of {len(Ms)} module(s) has {len(P.module)} element(s)"]


def cmd_coproduct(job: Job):
    Ms = _module_list(job.L, job.need("factors", list), "/factors")
    C = coproduct(Ms)
    rep = {"coproduct": mod(C.module), "injections": [dump_map(j) for j in C.injections]}
    if job.verify:
        rep["verified"] = job.check("coproduct universal property", verify_colimit_cone(C.injections, []))
    return rep, [f"coproduct of {len(Ms)} module(s) has {len(C.module)} element(s)"]


def cmd_limit(job: Job):
    d = job.need("diagram", dict)
    objs = _module_list(job.L, job.L.get(d, "objects", "/diagram", list), "/diagram/objects")
    arrows = []
    for k, a in enumerate(job.L.get(d, "arrows", "/diagram", list)):
        ptr = pointer("/diagram", "arrows", k)
        s, t = job.L.get(a, "source", ptr, int), job.L.get(a, "target", ptr, int)
        if not (0 <= s < len(objs) and 0 <= t < len(objs)):
            raise StructuralError("arrow endpoint out of range", location=job.L.loc(ptr))
        f = ModMorphism(objs[s], objs[t], job.L.table_map(job.L.get(a, "map", ptr), objs[s], objs[t],
                                                         pointer(ptr, "map")))
        arrows.append((s, t, f))
    kind = job.doc.get("kind", "inverse")
    if kind not in ("inverse", "direct"):
        raise StructuralError("kind must be 'inverse' or 'direct'", location=job.L.loc("/kind"))
    D = Diagram(tuple(objs), tuple(arrows))
    bad = D.check()
    if bad:
        raise ValidationError("diagram is not functorial", bad, location=job.L.loc("/diagram"))
    cone = inverse_limit(D) if kind == "inverse" else direct_limit(D)
    rep = {"kind": kind, "limit": mod(cone.module), "legs": [dump_map(g) for g in cone.legs]}
    if job.verify:
        fn = verify_limit_cone if kind == "inverse" else verify_colimit_cone
        rep["verified"] = job.check("limit universal property", fn(cone.legs, arrows))
    return rep, [f"{kind} limit has {len(cone.module)} element(s)"]


def cmd_pullback(job: Job):
    f, g = job.morphism("f"), job.morphism("g")
    if f.target != g.target:
        raise StructuralError("pullback needs a common codomain", location=job.L.loc("/g/target"))
    P = fiber_product(f, g)
    rep = {"pullback": mod(P.module), "p1": dump_map(P.p1), "p2": dump_map(P.p2),
           "preserves": {"f mono => p2 mono": (not f.is_injective()) or P.p2.is_injective(),
                         "f strong => p2 strong": (not is_strong(f)[0]) or is_strong(P.p2)[0]}}
    if job.verify:
        arrows = [(0, 2, f), (1, 2, g)]
        legs = [P.p1, P.p2, f @ P.p1]
        rep["verified"] = job.check("pullback universal property", verify_limit_cone(legs, arrows))
    return rep, [f"pullback has {len(P.module)} element(s)"]


def cmd_pushout(job: Job):
    h, k = job.morphism("h"), job.morphism("k")
    if h.source != k.source:
        raise StructuralError("pushout needs a common domain", location=job.L.loc("/k/source"))
    Q = cofiber_product(h, k)
    rep = {"pushout": mod(Q.module), "i1": dump_map(Q.i1), "i2": dump_map(Q.i2),
           "preserves": {"h epi => i2 epi": (not h.is_surjective()) or Q.i2.is_surjective(),
                         "h strong => i2 strong": (not is_strong(h)[0]) or is_strong(Q.i2)[0]}}
    if job.verify:
        arrows = [(0, 1, h), (0, 2, k)]
        legs = [Q.i1 @ h, Q.i1, Q.i2]
        rep["verified"] = job.check("pushout universal property", verify_colimit_cone(legs, arrows))
    return rep, [f"pushout has {len(Q.module)} element(s)"]


def _resolution_report(R, dump):
    return {"objects": [dump(I) for I in R.objects], "sizes": R.sizes(),
            "augmentation": _map_of(R.augmentation), "differentials": [_map_of(d) for d in R.diffs],
            "complete": R.complete, "checks": R.check()}


def _map_of(f):
    if isinstance(f, ModMorphism):
        return dump_map(f)
    X = f.source.space
    return {open_key(X, X.minimal[x]): dump_map(c) for x, c in enumerate(f.comps)}


def cmd_resolve(job: Job):
    if "sheaf" in job.doc:
        provider = job.doc.get("provider", "canonical")
        from .engine.functor import resolve_with, sections_functor
        F = job.L.sheaf(job.doc["sheaf"], "/sheaf")
        G = sections_functor(F.base)
        if provider not in G.providers:
            raise StructuralError(f"unknown provider {provider!r}", location=job.L.loc("/provider"))
        try:
            R = resolve_with(G, F, provider, job.cap)
        except CapExceeded as exc:
            R = exc.partial
        rep = {"provider": provider, "resolution": _resolution_report(R, lambda I: dump_sheaf(I)["sections"])}
        return rep, [f"sheaf resolution sizes {R.sizes()}" + ("" if R.complete else " (cap reached)")]
    M = job.module("module")
    provider = job.doc.get("provider", "economical")
    provs = {"economical": embed_economical, "hull": embed_hull}
    if provider not in provs:
        raise StructuralError(f"unknown provider {provider!r}", location=job.L.loc("/provider"))
    try:
        R = resolve(M, provs[provider], cap=job.cap)
    except CapExceeded as exc:
        R = exc.partial
    rep = {"provider": provider, "resolution": _resolution_report(R, mod)}
    job.check("resolution strong exact", all(v for k, v in R.check().items()))
    if job.oracle and R.complete:
        from .engine.functor import compare_resolutions, identity_functor
        other = "hull" if provider == "economical" else "economical"
        try:
            R2 = resolve(M, provs[other], cap=job.cap)
            cmp = compare_resolutions(identity_functor(M.monoid), M, R, R2, len(R.objects), two_way=True)
            rep["oracle"] = {"other provider": other, "agree": job.check("resolution oracle", cmp.ok)}
        except CapExceeded:
            rep["oracle"] = {"other provider": other, "agree": None}
    return rep, [f"resolution sizes {R.sizes()}" + ("" if R.complete else " (cap reached)")]


def cmd_cohomology(job: Job):
    C = job.L.complex(job.need("complex"), "/complex")
    degrees = {}
    for i in C.degrees():
        H = cohomology(C, i)
        d = {"H": mod(H.module), "cycles": [C.obj(i).elements[m] for m in H.cycles.order],
             "exact": is_exact_at(C, i)}
        if job.oracle:
            d["exact by elements"] = exact_by_elements(C.d(i - 1), C.d(i))
            job.check(f"exactness oracle at {i}", d["exact by elements"] == d["exact"])
        degrees[str(i)] = d
    rep = {"degrees": degrees, "strong complex": is_strong_complex(C)}
    sizes = [len(cohomology(C, i).module) for i in C.degrees()]
    return rep, [f"|H^i| for i = {C.lo}..{C.hi}: {sizes}"]


def _seq(res):
    objs, maps = res.sequence()
    return {"objects": [mod(M) for M in objs], "maps": [dump_map(m) if m is not None else None for m in maps]}


def cmd_snake(job: Job):
    D = job.L.snake(job.need("snake", dict), "/snake")
    strong = {n: is_strong(getattr(D, n))[0] for n in ("h1", "f2", "g2")}
    if all(strong.values()):
        res = snake(D)
        agree = res.delta.table == res.delta_chase.table
        job.check("delta equals chase", agree)
        rep = {"mode": "strong", "strong": strong, "sequence": _seq(res), "exactness": res.exactness,
               "delta strong": res.delta_strong, "delta equals chase": agree}
        line = f"six-term sequence; exact: {all(res.exactness.values())}; delta zero: {res.delta.is_zero()}"
        return rep, [line]
    if not strong["h1"]:
        raise NotStrongError("snake needs h1 strong", location=job.L.loc("/snake/h1"))
    w = weak_snake(D)
    agree = w.result.delta.table == w.result.delta_chase.table
    job.check("delta equals chase", agree)
    rep = {"mode": "weak", "strong": strong, "sequence": _seq(w.result), "rows": w.rows,
           "cover": dump_map(w.cover), "cover onto": w.cover.is_surjective(),
           "cover kernel trivial": len(w.cover.kernel_set) == 1, "delta equals chase": agree}
    return rep, [f"weak snake rows exact: {all(w.rows.values())}"]


def cmd_les(job: Job):
    cs = job.need("complexes", dict)
    E, F, G = (job.L.complex(job.L.get(cs, k, "/complexes"), pointer("/complexes", k)) for k in "EFG")
    e = ComplexMap(E, F, job.L.complex_map(job.need("e", dict), "/e", E, F))
    f = ComplexMap(F, G, job.L.complex_map(job.need("f", dict), "/f", F, G))
    for name, m in (("e", e), ("f", f)):
        bad = m.check()
        if bad:
            raise ValidationError("not a map of complexes", bad, location=job.L.loc(pointer("", name)))
    reports = les_of_complexes(e, f)
    out = []
    ok = True
    for r in reports:
        exp = expected_checks(r)
        good = all(r.checks.get(k, True) for k in exp)
        ok &= good
        out.append({"p": r.p,
                    "objects": [mod(r.H_E), mod(r.H_F), mod(r.cover), mod(r.H_next_E)],
                    "H^p(G)": mod(r.H_G),
                    "maps": [dump_map(r.e_map), dump_map(r.alpha), dump_map(r.delta)],
                    "cover map": dump_map(r.cover_map), "checks": r.checks, "expected hold": good})
    job.check("long exact sequence", ok)
    return {"degrees": out}, [f"{len(out)} degree(s); expected exactness holds: {ok}"]


def _sheaf(job):
    return job.L.sheaf(job.need("sheaf", dict), "/sheaf")


def cmd_sheaf_cohomology(job: Job):
    from .sheaf.cohomology import compare_with_godement, sheaf_cohomology
    from .sheaf.space import dimension
    F = _sheaf(job)
    d = dimension(F.space)
    pmax = job.doc.get("pmax", d + 2)
    if not isinstance(pmax, int) or pmax < 0:
        raise StructuralError("pmax must be a nonnegative integer", location=job.L.loc("/pmax"))
    rep_c = sheaf_cohomology(F, pmax, "canonical", job.cap)
    try:
        econ = sheaf_cohomology(F, pmax, "economical", job.cap).sizes
    except CapExceeded:
        econ = None
    degrees = {str(p): {"H": dump_carrier(rep_c.modules[p])} for p in range(pmax + 1)}
    rep = {"dimension": d, "degrees": degrees, "sizes": rep_c.sizes,
           "resolution sizes": rep_c.resolution.sizes(), "global sections": dump_carrier(F.global_sections()),
           "economical sizes": econ}
    if job.oracle:
        cmp = compare_with_godement(F, pmax)
        rep["oracle"] = {"godement agrees": job.check("godement comparison", cmp.ok)}
    return rep, [f"|H^p| for p = 0..{pmax}: {rep_c.sizes}"]


def _strip(d):
    return {k: (matrix(v) if k == "matrix" else v) for k, v in d.items()}


def cmd_ascent_check(job: Job):
    if "morphism" in job.doc:
        f = job.morphism()
        c = ascent.compare_kernels_cokernels(f)
        rep = {"strong": c["strong"], "coker": _strip(c["coker"]), "image": _strip(c["image"]),
               "kernel": _strip(c["kernel"]), "A(f)": ascent.linearize_morphism(f).to_dict()}
        ok = (c["coker"]["isomorphism"] and c["coker"]["natural"] and c["image"]["isomorphism"]
              and c["kernel"]["injective"] and c["kernel"]["iso iff strong"])
        job.check("ascent comparisons", ok)
        return rep, [f"coker iso {c['coker']['isomorphism']}, image iso {c['image']['isomorphism']}, "
                     f"kernel iso {c['kernel']['isomorphism']} (strong {c['strong']})"]
    C = job.L.complex(job.need("complex"), "/complex")
    c = ascent.cohomology_comparison(C)
    job.check("cohomology comparison", ascent.cohomology_comparison_ok(c))
    rep = {"degrees": {str(i): _strip(d) for i, d in c.items()}, "strong complex": is_strong_complex(C)}
    return rep, [f"A(H^i) -> H^i(A) injective in all degrees: {all(d['injective'] for d in c.values())}"]


def cmd_base_change(job: Job):
    F = _sheaf(job)
    provider = job.doc.get("provider", "canonical")
    if provider not in ("canonical", "economical"):
        raise StructuralError(f"unknown provider {provider!r}", location=job.L.loc("/provider"))
    r = ascent.base_change_report(F, provider)
    rep = {"provider": provider, "degrees": {str(p): d for p, d in r["degrees"].items()},
           "injective": r["injective"], "isomorphism at 0": r["isomorphism at 0"]}
    return rep, [f"injective in all degrees: {r['injective']}; isomorphism at 0: {r['isomorphism at 0']}"]


def cmd_spec(job: Job):
    from . import spectrum as sp
    A = job.L.valid_monoid(job.need("monoid"), "/monoid")
    S = sp.spectrum(A)
    X = S.space
    rep = {"space": dump_space(X), "primes": [sp.prime_name(A, p) for p in S.primes],
           "minimal opens": {X.points[k]: open_key(X, X.minimal[k]) for k in range(len(X))},
           "basic opens": {A.elements[f]: open_key(X, U) for f, U in S.basic_opens.items()},
           "structure": {X.points[k]: dump_monoid(m) for k, m in enumerate(S.structure.monoids)},
           "checks": sp.structure_check(S), "dimension": sp.dimension_report(S),
           "noetherian": sp.is_noetherian_monoid(A)}
    if "module" in job.doc:
        M = job.L.valid_module(job.doc["module"], "/module", A)
        F = sp.module_sheaf(S, M)
        rep["module sheaf"] = {"stalks": {X.points[k]: dump_carrier(F.stalks[k]) for k in range(len(X))},
                               "sections": {open_key(X, U): len(F.sections(U)) for U in X.opens},
                               "localizations agree": all(sp.sections_vs_localization(S, M, f)["bijective"]
                                                          for f in range(len(A)))}
    return rep, [f"Spec has {len(X)} point(s), dimension {rep['dimension']['dimension']}"]


def cmd_vanishing(job: Job):
    if "monoid" in job.doc:
        from . import spectrum as sp
        A = job.L.valid_monoid(job.need("monoid"), "/monoid")
        M = job.L.valid_module(job.need("module"), "/module", A)
        r = sp.affine_vanishing(sp.spectrum(A), M, job.doc.get("pmax", 3))
        job.check("affine vanishing", r["vanishes"])
        return {"affine": r}, [f"|H^p(Spec A, M~)| = {r['sizes']}; vanishes: {r['vanishes']}"]
    from .sheaf.cohomology import vanishing_report
    F = _sheaf(job)
    r = vanishing_report(F, cap=job.cap)
    job.check("vanishing above dimension", r["vanishes above dimension"])
    return {"sheaf": r}, [f"dimension {r['dimension']}, sizes {r['sizes']}"]


HANDLERS = {
    "validate": cmd_validate, "kernel": cmd_kernel, "cokernel": cmd_cokernel, "image": cmd_image,
    "strong": cmd_strong, "product": cmd_product, "coproduct": cmd_coproduct, "limit": cmd_limit,
    "pullback": cmd_pullback, "pushout": cmd_pushout, "resolve": cmd_resolve, "cohomology": cmd_cohomology,
    "snake": cmd_snake, "les": cmd_les, "sheaf-cohomology": cmd_sheaf_cohomology,
    "ascent-check": cmd_ascent_check, "base-change": cmd_base_change, "spec": cmd_spec,
    "vanishing": cmd_vanishing,
}


# driver ------------------------------------------------------------------------------

def run_one(command, path, verify=False, oracle=False, cap=DEFAULT_CAP):
    """(exit status, report or error dict, summary lines) for one input file."""
    try:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise StructuralError(f"cannot read input: {exc.strerror}", code="io", location=path) from None
        except json.JSONDecodeError as exc:
            raise StructuralError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}",
                                  code="json", location=f"{path}#") from None
        job = Job(command, path, doc, verify, oracle, cap)
        report, summary = HANDLERS[command](job)
        report = {"command": command, "report": report, "failed checks": job.failed}
        return (2 if job.failed else 0), report, summary
    except ValidationError as exc:
        return 2, {"command": command, "error": exc.to_dict()}, [f"validation error: {exc}"]
    except NotStrongError as exc:
        return 2, {"command": command, "error": exc.to_dict()}, [f"not strong: {exc}"]
    except StructuralError as exc:
        return 3, {"command": command, "error": exc.to_dict()}, [f"structural error: {exc}"]
    except BelianError as exc:
        return 2, {"command": command, "error": exc.to_dict()}, [f"error: {exc}"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise StructuralError(message, code="usage")


def build_parser():
    p = _Parser(prog="belian", description="Homological algebra of pointed modules and sheaves.")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("--input", action="append", default=[], help="input JSON file (repeatable)")
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--format", choices=("json", "text"), default="text", help="standard output format")
    p.add_argument("--verify", action="store_true", help="check universal properties by enumeration")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help=f"resolution length cap (1..{MAX_CAP})")
    p.add_argument("--oracle", action="store_true", help="rerun brute-force oracles and compare")
    p.add_argument("--jobs", type=int, default=1, help="evaluate inputs concurrently")
    return p


def _emit_error(err: dict, code: int) -> int:
    err.setdefault("location", "argv")
    sys.stderr.write(canonical_json({"error": err}))
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command not in HANDLERS:
            raise StructuralError(f"unknown command {args.command!r}", code="unknown-command")
        if not args.input:
            raise StructuralError("no --input given", code="usage")
        if not 1 <= args.cap <= MAX_CAP:
            raise StructuralError(f"--cap must be between 1 and {MAX_CAP}", code="usage")
        if args.jobs < 1:
            raise StructuralError("--jobs must be positive", code="usage")
    except StructuralError as exc:
        return _emit_error(exc.to_dict(), 3)
    work = [(args.command, path, args.verify, args.oracle, args.cap) for path in args.input]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_run_tuple, work))
    else:
        results = [_run_tuple(w) for w in work]
    if len(results) == 1:
        status, payload, summary = results[0]
    else:
        status = max(r[0] for r in results)
        payload = {"command": args.command,
                   "results": [dict(r[1], input=path, exit=r[0]) for r, path in zip(results, args.input)]}
        summary = [f"{path}: " + "; ".join(r[2]) for r, path in zip(results, args.input)]
    text = canonical_json(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "json":
        sys.stdout.write(text)
    else:
        for line in summary:
            print(line)
    if status and len(results) == 1 and "error" in payload:
        sys.stderr.write(canonical_json({"error": payload["error"]}))
    return status


def _run_tuple(w):
    return run_one(*w)


if __name__ == "__main__":
    sys.exit(main())
