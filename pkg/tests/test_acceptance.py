"""One test per acceptance criterion. Each records a PASS/FAIL line with the
counts behind it; the summary is printed at the end of the run."""
import json
import os
import random
import subprocess
import sys

import corpus
from belian import ascent
from belian import generate as gen
from belian import spectrum as sp
from belian.engine.functor import (acyclicity_report, compare_resolutions, derived_functor,
                                   identity_functor, r0_comparison, resolve_with, sections_functor)
from belian.engine.snake import snake, weak_snake
from belian.errors import CapExceeded
from belian.pmod.elements import exact_by_elements
from belian.pmod.limits import cokernel, is_strong, kernel, strong_factorization
from belian.pmod.search import cyclic_modules, homs
from belian.pmod.squares import cartesian_report, cocartesian_report
from belian.pmod.universal import is_epi_oracle, is_mono_oracle, verify_cokernel, verify_kernel
from belian.pmod.module import pointed_set, validate_morphism
from belian.sheaf.cohomology import (acyclic_class_report, chain_limit_report, compare_with_godement,
                                     injectivity_search, resolution_flabby, sheaf_cohomology)
from belian.sheaf.sheaf import (MonoidedSpace, categorically_exact, is_flabby, quotient_sheaf, sheaf_kernel,
                                stalkwise_exact)
from belian.sheaf.space import dimension

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
EXAMPLES = os.path.join(ROOT, "cli_examples")


def _tally(results):
    """{check: (passed, total)} from a list of dicts of booleans."""
    out = {}
    for r in results:
        for k, v in r.items():
            if isinstance(v, bool):
                a, b = out.get(k, (0, 0))
                out[k] = (a + v, b + 1)
    return out


def _fmt(t):
    return ", ".join(f"{k} {a}/{b}" for k, (a, b) in sorted(t.items()))


def _all(t):
    return all(a == b for a, b in t.values())


def test_belian_axioms(criteria):
    fs = corpus.morphism_corpus(30)
    rows = []
    for f in fs:
        mono, epi = is_mono_oracle(f), is_epi_oracle(f)
        r = {"mono fast = oracle": mono == f.is_injective(), "epi fast = oracle": epi == f.is_surjective()}
        if mono and epi:
            g = f.inverse()
            r["balanced"] = not validate_morphism(g) and (g @ f).table == tuple(range(len(f.source)))
        c = cokernel(f)
        r["zero cokernel => epi"] = len(c.target) > 1 or epi
        if mono:
            r["mono is kernel of its cokernel"] = verify_kernel(c, f)
        strong, w = is_strong(f)
        r["strong iff coim -> im bijective"] = strong == (w is None)
        if strong:
            e, m = strong_factorization(f)
            r["factorization round-trip"] = ((m @ e).table == f.table and m.is_injective()
                                             and verify_cokernel(kernel(e).inclusion, e))
        rows.append(r)
    t = _tally(rows)
    ok = len(fs) >= 200 and _all(t)
    criteria.record("belian axiom suite", ok, f"{len(fs)} morphisms; {_fmt(t)}")
    assert ok, t


def test_pullback_pushout(criteria):
    rng = random.Random(1)
    cart, cocart = [], []
    for _ in range(120):
        A = gen.random_monoid(rng, 3)
        B, X, Y = (gen.random_module(rng, A, 4) for _ in range(3))
        cart.append(cartesian_report(gen.random_morphism(rng, B, Y), gen.random_morphism(rng, X, Y)))
        cocart.append(cocartesian_report(gen.random_morphism(rng, B, X), gen.random_morphism(rng, B, Y)))
    tc, to = _tally(cart), _tally(cocart)
    ok = _all(tc) and _all(to)
    criteria.record("pullback/pushout lemma suite", ok,
                    f"cartesian: {_fmt(tc)}; co-cartesian: {_fmt(to)}")
    assert ok, (tc, to)


def test_snake(criteria):
    rng = random.Random(2)
    rows = []
    for _ in range(110):
        D = gen.random_snake(rng, 2, 4)
        res = snake(D)
        objs, maps = res.sequence()
        r = {f"exact at {k}": v for k, v in res.exactness.items()}
        r["elementwise exact"] = all(exact_by_elements(maps[k], maps[k + 1]) for k in range(4))
        r["delta strong"] = bool(res.delta_strong)
        r["delta = chase"] = res.delta.table == res.delta_chase.table
        rows.append(r)
    weak = []
    while len(weak) < 40:
        D = gen.random_snake(rng, 2, 4, want_strong_f2=None, strong_g2=False)
        if not is_strong(D.h1)[0]:
            continue
        w = weak_snake(D)
        r = dict(w.rows)
        r["cover onto"] = w.cover.is_surjective()
        r["cover kernel trivial"] = len(w.cover.kernel_set) == 1
        r["delta = chase"] = w.result.delta.table == w.result.delta_chase.table
        weak.append(r)
    t, tw = _tally(rows), _tally(weak)
    ok = len(rows) >= 100 and _all(t) and _all(tw)
    criteria.record("snake suite", ok, f"{len(rows)} strong diagrams: {_fmt(t)}; {len(weak)} weak: {_fmt(tw)}")
    assert ok, (t, tw)


def test_ascent(criteria):
    rng = random.Random(3)
    fs = [gen.random_pair(rng) for _ in range(200)]
    seqs = [gen.random_composable(rng) for _ in range(500)]
    ax = ascent.check_ascent_axioms(fs, seqs)
    faithful = all(ascent.check_faithful_on(f.source, f.target, [h.table for h in homs(f.source, f.target)])
                   for f in fs[:60])
    comps = []
    for f in fs:
        c = ascent.compare_kernels_cokernels(f)
        comps.append({"coker iso": c["coker"]["isomorphism"], "coker natural": c["coker"]["natural"],
                      "image iso": c["image"]["isomorphism"], "kernel injective": c["kernel"]["injective"],
                      "kernel iso iff strong": c["kernel"]["iso iff strong"]})
    coh = []
    for _ in range(60):
        A = gen.random_monoid(rng, 2)
        C = gen.random_complex(rng, A, 3, 4)
        coh.append({"cohomology comparison": ascent.cohomology_comparison_ok(ascent.cohomology_comparison(C))})
    X = pointed_set(["0", "x", "y"])
    dims = ascent.product_dimensions(X, X)
    desc = [ascent.descend_exactness(f, g) for f, g in seqs]
    td = _tally([{"descends": d["descends"], "strongness descends": d["strongness descends"]} for d in desc])
    tc, th = _tally(comps), _tally(coh)
    ok = (ax["faithful"] and faithful and ax["epi to surjective"] and ax["strong exact to exact"]
          and ax["functorial"] and _all(tc) and _all(th) and _all(td) and len(desc) >= 500
          and dims["dim A(product)"] == 8 and dims["dim product of A"] == 4)
    criteria.record("ascent suite", ok,
                    f"axioms {dict((k, v) for k, v in ax.items() if k != 'witnesses')}, faithful on hom sets "
                    f"{faithful}; {_fmt(tc)}; {_fmt(th)}; product dims {dims['dim A(product)']} vs "
                    f"{dims['dim product of A']}; {len(desc)} sequences: {_fmt(td)}")
    assert ok


def _derived_row(F, X, R1, R2):
    cmp = compare_resolutions(F, X, R1, R2, 4, two_way=True)
    D = derived_functor(F, X, None)
    acyc = acyclicity_report(F, R1, 2)
    return {"isomorphic R^p, p <= 4": cmp.ok, "R0F = F": r0_comparison(F, D).is_bijective(),
            "injectives acyclic": all(s == 1 for v in acyc.values() for s in v)}


def test_derived_well_defined(criteria):
    rng = random.Random(4)
    rows, skipped = [], 0
    while len(rows) < 12:
        A = gen.random_monoid(rng, 3)
        X = gen.random_module(rng, A, 4)
        F = identity_functor(A)
        try:
            R1, R2 = resolve_with(F, X, "economical"), resolve_with(F, X, "hull")
        except CapExceeded:
            skipped += 1
            continue
        rows.append(dict(_derived_row(F, X, R1, R2), kind="modules"))
    spaces = corpus.spaces(3)
    for k in range(12):
        X = spaces[k % len(spaces)]
        B = MonoidedSpace.trivial(X)
        Fs = gen.random_sheaf(rng, B, 3)
        G = sections_functor(B)
        R1, R2 = resolve_with(G, Fs, "canonical"), resolve_with(G, Fs, "economical")
        rows.append(dict(_derived_row(G, Fs, R1, R2), kind="sheaves"))
    tm = _tally([r for r in rows if r["kind"] == "modules"])
    ts = _tally([r for r in rows if r["kind"] == "sheaves"])
    ok = len(rows) >= 20 and _all(tm) and _all(ts)
    criteria.record("derived-functor well-definedness", ok,
                    f"{len(rows)} pairs ({skipped} modules with unbounded resolutions redrawn); "
                    f"identity on modules: {_fmt(tm)}; global sections: {_fmt(ts)}")
    assert ok, (tm, ts)


def _exactness_rows(rng, F):
    out = []
    for _ in range(3):
        S1 = gen.random_subsheaf_members(rng, F, 0.3)
        extra = gen.random_subsheaf_members(rng, F, 0.2) if rng.random() < 0.5 else S1
        S2 = [a | b for a, b in zip(S1, extra)]
        i = sheaf_kernel(quotient_sheaf(F, S1))
        q = quotient_sheaf(F, S2)
        out.append({"stalkwise iff categorical": stalkwise_exact(i, q) == categorically_exact(i, q)})
    return out


def test_sheaf_suite(criteria):
    rng = random.Random(5)
    rows, exact = [], []
    spaces = corpus.spaces()
    for k, F in corpus.sheaf_corpus():
        X = spaces[k]
        d = dimension(X)
        rep = sheaf_cohomology(F, d + 2)
        r = {"injective resolution flabby": resolution_flabby(rep.resolution),
             "godement agrees": compare_with_godement(F, d + 2).ok,
             "vanishing above dimension": all(s == 1 for s in rep.sizes[d + 1:])}
        if is_flabby(F)[0]:
            r["flabby => H^>0 = 0"] = all(s == 1 for s in rep.sizes[1:])
        if len(X) <= 3:
            w = injectivity_search(F)
            if w is None:
                r["injective => flabby"] = is_flabby(F)[0]
            ac = acyclic_class_report(F)
            r.update({f"acyclic class: {k}": v for k, v in ac.items() if k not in ("F flabby",)})
        rows.append(r)
        exact.extend(_exactness_rows(rng, F))
    t, te = _tally(rows), _tally(exact)
    ok = len(spaces) == 24 and _all(t) and _all(te)
    criteria.record("sheaf suite", ok, f"{len(spaces)} spaces, {len(rows)} sheaves: {_fmt(t)}; "
                                       f"{len(exact)} sequences: {_fmt(te)}")
    assert ok, (t, te)


def test_direct_limits(criteria):
    rng = random.Random(6)
    rows = []
    for X in corpus.spaces():
        B = MonoidedSpace.trivial(X)
        for fl in (False, True):
            chain, maps = gen.random_sheaf_chain(rng, B, rng.randint(2, 4), 2, fl)
            r = chain_limit_report(chain, maps)
            row = {"open-wise colimit": r["open-wise"],
                   "lim H = H lim": all(v["isomorphism"] for v in r["degrees"].values())}
            if r["inputs flabby"]:
                row["limit of flabbies flabby"] = r["limit flabby"]
            rows.append(row)
    t = _tally(rows)
    ok = _all(t)
    criteria.record("direct-limit commutation", ok, f"{len(rows)} chains: {_fmt(t)}")
    assert ok, t


def test_base_change_and_affine_vanishing(criteria):
    rows = []
    for _, F in corpus.sheaf_corpus():
        r = ascent.base_change_report(F, "canonical")
        rows.append({"injective": r["injective"], "isomorphism at 0": r["isomorphism at 0"]})
    aff = []
    for A in gen.small_monoids(3):
        S = sp.spectrum(A)
        for q in cyclic_modules(A):
            aff.append({"vanishes": sp.affine_vanishing(S, q.target)["vanishes"]})
    t, ta = _tally(rows), _tally(aff)
    ok = _all(t) and _all(ta)
    criteria.record("base change and affine vanishing", ok,
                    f"{len(rows)} sheaves: {_fmt(t)}; {len(aff)} (A, cyclic M): {_fmt(ta)}")
    assert ok, (t, ta)


def _run(case):
    cmd = [sys.executable, "-m", "belian.cli", case["command"], "--input", case["input"], "--format", "json"]
    cmd += case.get("flags", [])
    env = dict(os.environ, PYTHONPATH=os.path.join(ROOT, "src"))
    p = subprocess.run(cmd, cwd=EXAMPLES, capture_output=True, env=env)
    return p.returncode, p.stdout


def test_cli_determinism(criteria):
    with open(os.path.join(EXAMPLES, "manifest.json")) as fh:
        cases = json.load(fh)["cases"]
    bad = []
    for case in cases:
        c1, o1 = _run(case)
        c2, o2 = _run(case)
        with open(os.path.join(EXAMPLES, "golden", case["name"] + ".json"), "rb") as fh:
            gold = fh.read()
        if not (c1 == c2 == case["exit"] and o1 == o2 == gold):
            bad.append(case["name"])
    commands = {c["command"] for c in cases}
    ok = not bad and len(commands) == 19
    criteria.record("CLI determinism", ok, f"{len(cases)} cases over {len(commands)} commands; mismatches {bad}")
    assert ok, bad
