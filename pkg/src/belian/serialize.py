"""JSON forms of monoids, modules, morphisms, complexes, snake diagrams, spaces
and sheaves, with canonical output and error locations as JSON pointers."""
from __future__ import annotations

import json

from .complexes import Complex
from .errors import StructuralError, ValidationError
from .monoid import Monoid, validate_monoid
from .pmod.module import ModMorphism, PointedModule, validate_module, validate_morphism
from .engine.snake import SnakeDiagram
from .sheaf.sheaf import MonoidedSpace, Presheaf, Sheaf, sheaf_from_presheaf
from .sheaf.space import FinSpace

SNAKE_KEYS = ("g1", "g2", "f1", "f2", "f3", "h1", "h2")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def pointer(base: str, *keys) -> str:
    for k in keys:
        base += "/" + str(k).replace("~", "~0").replace("/", "~1")
    return base


def split_pair(key: str, left, right):
    """Split "a,m" with a in ``left`` and m in ``right``; names may contain commas."""
    hits = [(key[:i], key[i + 1:]) for i, ch in enumerate(key) if ch == ","
            if key[:i] in left and key[i + 1:] in right]
    return hits[0] if len(hits) == 1 else None


# dumping -----------------------------------------------------------------------------

def dump_monoid(A: Monoid) -> dict:
    e = A.elements
    return {"elements": list(e), "identity": e[A.identity],
            "mult": {f"{e[a]},{e[b]}": e[A.mult[a][b]] for a in range(len(A)) for b in range(len(A))}}


def dump_module(M: PointedModule, monoid_ref=None) -> dict:
    A = M.monoid
    e = M.elements
    out = {"elements": list(e), "basepoint": e[M.basepoint],
           "action": {f"{A.elements[a]},{e[m]}": e[M.action[a][m]] for a in range(len(A)) for m in range(len(M))}}
    out["monoid"] = monoid_ref if monoid_ref is not None else dump_monoid(A)
    return out


def dump_carrier(M: PointedModule) -> dict:
    """Elements and basepoint only, for reports over a known monoid."""
    return {"elements": list(M.elements), "basepoint": M.elements[M.basepoint], "size": len(M)}


def dump_map(f: ModMorphism) -> dict:
    return {f.source.elements[m]: f.target.elements[v] for m, v in enumerate(f.table)}


def dump_morphism(f: ModMorphism, monoid_ref=None) -> dict:
    return {"source": dump_module(f.source, monoid_ref), "target": dump_module(f.target, monoid_ref),
            "map": dump_map(f)}


def dump_complex(C: Complex, monoid_ref=None) -> dict:
    return {"degrees": [C.lo, C.hi],
            "objects": {str(i): dump_module(C.obj(i), monoid_ref) for i in C.degrees()},
            "differentials": {str(i): dump_map(C.d(i)) for i in range(C.lo, C.hi)}}


def open_key(X: FinSpace, U) -> str:
    return "{" + ",".join(X.points[x] for x in sorted(U)) + "}"


def dump_space(X: FinSpace) -> dict:
    return {"points": list(X.points), "opens": [[X.points[x] for x in sorted(U)] for U in X.opens]}


def dump_sheaf(F: Sheaf) -> dict:
    """Stalk form: values on the minimal opens, restrictions between them."""
    X = F.space
    secs = {open_key(X, X.minimal[x]): {"elements": list(F.stalks[x].elements),
                                        "basepoint": F.stalks[x].elements[F.stalks[x].basepoint]}
            for x in range(len(X))}
    restr = {}
    for (x, y), t in F.restr.items():
        if x != y:
            restr[open_key(X, X.minimal[x]) + ">" + open_key(X, X.minimal[y])] = {
                F.stalks[x].elements[s]: F.stalks[y].elements[v] for s, v in enumerate(t)}
    return {"space": dump_space(X), "sections": secs, "restrictions": restr}


# loading -----------------------------------------------------------------------------

class Loader:
    """Resolves an input document. Strings in monoid/module/complex positions
    refer to the top-level "monoids", "modules" and "complexes" tables."""

    def __init__(self, doc, path="<input>"):
        if not isinstance(doc, dict):
            raise StructuralError("input must be a JSON object", location=f"{path}#")
        self.doc = doc
        self.path = path
        self._cache = {}

    def loc(self, ptr):
        return f"{self.path}#{ptr}"

    def fail(self, msg, ptr):
        raise StructuralError(msg, location=self.loc(ptr))

    def get(self, obj, key, ptr, kind=None):
        if not isinstance(obj, dict) or key not in obj:
            self.fail(f"missing field {key!r}", ptr)
        v = obj[key]
        if kind is not None and not isinstance(v, kind):
            self.fail(f"field {key!r} has the wrong type", pointer(ptr, key))
        return v

    def field(self, key, kind=None):
        return self.get(self.doc, key, "", kind)

    def _ref(self, table, name, ptr):
        t = self.doc.get(table)
        if not isinstance(t, dict) or name not in t:
            self.fail(f"unknown reference {name!r} (no entry in {table!r})", ptr)
        return t[name], pointer("", table, name)

    # monoids

    def monoid(self, obj, ptr) -> Monoid:
        if isinstance(obj, str):
            key = ("monoid", obj)
            if key not in self._cache:
                body, bptr = self._ref("monoids", obj, ptr)
                self._cache[key] = self.monoid(body, bptr)
            return self._cache[key]
        elems = self.get(obj, "elements", ptr, list)
        if not elems or not all(isinstance(e, str) for e in elems):
            self.fail("elements must be a nonempty list of names", pointer(ptr, "elements"))
        if len(set(elems)) != len(elems):
            self.fail("duplicate element names", pointer(ptr, "elements"))
        ident = self.get(obj, "identity", ptr, str)
        if ident not in elems:
            self.fail(f"identity {ident!r} is not an element", pointer(ptr, "identity"))
        mult = self.get(obj, "mult", ptr, dict)
        idx = {e: i for i, e in enumerate(elems)}
        table = [[None] * len(elems) for _ in elems]
        for key, v in mult.items():
            sp = split_pair(key, idx, idx)
            if sp is None:
                self.fail(f"bad table key {key!r}", pointer(ptr, "mult", key))
            if v not in idx:
                self.fail(f"unknown product {v!r}", pointer(ptr, "mult", key))
            table[idx[sp[0]]][idx[sp[1]]] = idx[v]
        for a, row in enumerate(table):
            for b, c in enumerate(row):
                if c is None:
                    self.fail(f"missing product {elems[a]},{elems[b]}", pointer(ptr, "mult"))
        return Monoid(tuple(elems), idx[ident], tuple(tuple(r) for r in table))

    def valid_monoid(self, obj, ptr) -> Monoid:
        A = self.monoid(obj, ptr)
        bad = validate_monoid(A)
        if bad:
            raise ValidationError("monoid laws violated", bad, location=self.loc(ptr))
        return A

    # modules

    def module(self, obj, ptr, monoid=None) -> PointedModule:
        if isinstance(obj, str):
            key = ("module", obj)
            if key not in self._cache:
                body, bptr = self._ref("modules", obj, ptr)
                self._cache[key] = self.module(body, bptr, monoid)
            return self._cache[key]
        if "monoid" in obj:
            A = self.valid_monoid(obj["monoid"], pointer(ptr, "monoid"))
        elif monoid is not None:
            A = monoid
        else:
            A = Monoid.trivial()
        elems = self.get(obj, "elements", ptr, list)
        if not elems or not all(isinstance(e, str) for e in elems) or len(set(elems)) != len(elems):
            self.fail("elements must be distinct names", pointer(ptr, "elements"))
        base = self.get(obj, "basepoint", ptr, str)
        idx = {e: i for i, e in enumerate(elems)}
        if base not in idx:
            self.fail(f"basepoint {base!r} is not an element", pointer(ptr, "basepoint"))
        aidx = {e: i for i, e in enumerate(A.elements)}
        action = [list(range(len(elems))) if a == A.identity else [None] * len(elems) for a in range(len(A))]
        act = obj.get("action", {})
        if not isinstance(act, dict):
            self.fail("action must be an object", pointer(ptr, "action"))
        for key, v in act.items():
            sp = split_pair(key, aidx, idx)
            if sp is None:
                self.fail(f"bad action key {key!r}", pointer(ptr, "action", key))
            if v not in idx:
                self.fail(f"unknown element {v!r}", pointer(ptr, "action", key))
            action[aidx[sp[0]]][idx[sp[1]]] = idx[v]
        for a, row in enumerate(action):
            for m, v in enumerate(row):
                if v is None:
                    if len(A) == 1:
                        row[m] = m
                    else:
                        self.fail(f"missing action {A.elements[a]},{elems[m]}", pointer(ptr, "action"))
        return PointedModule(A, tuple(elems), idx[base], tuple(tuple(r) for r in action))

    def valid_module(self, obj, ptr, monoid=None) -> PointedModule:
        M = self.module(obj, ptr, monoid)
        bad = validate_module(M)
        if bad:
            raise ValidationError("module laws violated", bad, location=self.loc(ptr))
        return M

    def table_map(self, mapping, S: PointedModule, T: PointedModule, ptr) -> tuple:
        if not isinstance(mapping, dict):
            self.fail("map must be an object", ptr)
        table = []
        for m in S.elements:
            if m not in mapping:
                self.fail(f"map misses element {m!r}", ptr)
            v = mapping[m]
            if v not in T._index:
                self.fail(f"unknown target element {v!r}", pointer(ptr, m))
            table.append(T.index(v))
        extra = set(mapping) - set(S.elements)
        if extra:
            self.fail(f"map mentions unknown elements {sorted(extra)}", ptr)
        return tuple(table)

    def morphism(self, obj, ptr, monoid=None) -> ModMorphism:
        S = self.valid_module(self.get(obj, "source", ptr), pointer(ptr, "source"), monoid)
        T = self.valid_module(self.get(obj, "target", ptr), pointer(ptr, "target"), S.monoid)
        if S.monoid != T.monoid:
            self.fail("source and target are over different monoids", ptr)
        f = ModMorphism(S, T, self.table_map(self.get(obj, "map", ptr), S, T, pointer(ptr, "map")))
        bad = validate_morphism(f)
        if bad:
            raise ValidationError("not a morphism of pointed modules", bad, location=self.loc(ptr))
        return f

    # complexes

    def complex(self, obj, ptr) -> Complex:
        if isinstance(obj, str):
            key = ("complex", obj)
            if key not in self._cache:
                body, bptr = self._ref("complexes", obj, ptr)
                self._cache[key] = self.complex(body, bptr)
            return self._cache[key]
        degs = self.get(obj, "degrees", ptr, list)
        if len(degs) != 2 or not all(isinstance(d, int) for d in degs) or degs[0] > degs[1]:
            self.fail("degrees must be [lo, hi] with lo <= hi", pointer(ptr, "degrees"))
        lo, hi = degs
        objs_j = self.get(obj, "objects", ptr, dict)
        diffs_j = obj.get("differentials", {})
        A = None
        objs = []
        for i in range(lo, hi + 1):
            M = self.valid_module(self.get(objs_j, str(i), pointer(ptr, "objects")), pointer(ptr, "objects", i), A)
            A = M.monoid if A is None else A
            if M.monoid != A:
                self.fail("objects are over different monoids", pointer(ptr, "objects", i))
            objs.append(M)
        diffs = []
        for i in range(lo, hi):
            dptr = pointer(ptr, "differentials", i)
            if str(i) not in diffs_j:
                self.fail(f"missing differential {i}", pointer(ptr, "differentials"))
            f = ModMorphism(objs[i - lo], objs[i - lo + 1],
                            self.table_map(diffs_j[str(i)], objs[i - lo], objs[i - lo + 1], dptr))
            bad = validate_morphism(f)
            if bad:
                raise ValidationError("differential is not a morphism", bad, location=self.loc(dptr))
            diffs.append(f)
        C = Complex(A, lo, tuple(objs), tuple(diffs))
        bad = C.check()
        if bad:
            raise ValidationError("not a complex", bad, location=self.loc(ptr))
        return C

    def complex_map(self, obj, ptr, S: Complex, T: Complex) -> dict:
        if not isinstance(obj, dict):
            self.fail("complex map must be an object of degree -> map", ptr)
        out = {}
        for i in range(min(S.lo, T.lo), max(S.hi, T.hi) + 1):
            if str(i) in obj:
                out[i] = ModMorphism(S.obj(i), T.obj(i), self.table_map(obj[str(i)], S.obj(i), T.obj(i),
                                                                       pointer(ptr, i)))
        return out

    # snake

    def snake(self, obj, ptr) -> SnakeDiagram:
        maps = {}
        A = None
        for k in SNAKE_KEYS:
            maps[k] = self.morphism(self.get(obj, k, ptr), pointer(ptr, k), A)
            A = maps[k].source.monoid
        D = SnakeDiagram(**maps)
        bad = D.check()
        if bad:
            raise ValidationError("not a snake diagram", bad, location=self.loc(ptr))
        return D

    # spaces and sheaves

    def space(self, obj, ptr) -> FinSpace:
        pts = self.get(obj, "points", ptr, list)
        if not pts or not all(isinstance(p, str) for p in pts) or len(set(pts)) != len(pts):
            self.fail("points must be distinct names", pointer(ptr, "points"))
        idx = {p: i for i, p in enumerate(pts)}
        opens = []
        for k, U in enumerate(self.get(obj, "opens", ptr, list)):
            if not isinstance(U, list) or any(p not in idx for p in U):
                self.fail("open sets must list known points", pointer(ptr, "opens", k))
            opens.append(frozenset(idx[p] for p in U))
        X = FinSpace.from_opens(pts, opens, check=False)
        bad = X.check()
        if bad:
            raise ValidationError("not a topology", bad, location=self.loc(ptr))
        return X

    def sheaf(self, obj, ptr, X: FinSpace | None = None) -> Sheaf:
        if X is None:
            X = self.space(self.get(obj, "space", ptr), pointer(ptr, "space"))
        keys = {open_key(X, U): U for U in X.opens}
        secs = self.get(obj, "sections", ptr, dict)
        restr_j = obj.get("restrictions", {})
        values = {}
        for k, v in secs.items():
            if k not in keys:
                self.fail(f"{k!r} is not an open set", pointer(ptr, "sections", k))
            values[keys[k]] = self.module(v, pointer(ptr, "sections", k))
        minimal = set(X.minimal)
        for U in minimal:
            if U not in values:
                self.fail(f"missing sections over minimal open {open_key(X, U)}", pointer(ptr, "sections"))
        restr = {}
        for k, v in restr_j.items():
            parts = k.split(">")
            if len(parts) != 2 or parts[0] not in keys or parts[1] not in keys:
                self.fail(f"bad restriction key {k!r}", pointer(ptr, "restrictions", k))
            U, V = keys[parts[0]], keys[parts[1]]
            if not V <= U or U not in values or V not in values:
                self.fail("restriction needs V inside U with sections on both", pointer(ptr, "restrictions", k))
            restr[(U, V)] = self.table_map(v, values[U], values[V], pointer(ptr, "restrictions", k))
        for U in values:
            restr.setdefault((U, U), tuple(range(len(values[U]))))
        if set(values) == set(X.opens):
            for U in X.opens:
                for V in X.opens:
                    if V <= U and (U, V) not in restr:
                        self.fail(f"missing restriction {open_key(X, U)}>{open_key(X, V)}",
                                  pointer(ptr, "restrictions"))
            return sheaf_from_presheaf(Presheaf(X, values, restr))
        if set(values) != minimal:
            self.fail("give sections either on every open or on the minimal opens only", pointer(ptr, "sections"))
        B = MonoidedSpace.trivial(X)
        stalks = []
        one = B.monoids[0]
        for x in range(len(X)):
            M = values[X.minimal[x]]
            stalks.append(PointedModule(one, M.elements, M.basepoint, (tuple(range(len(M))),)))
        tables = {}
        for x in range(len(X)):
            for y in X.minimal[x]:
                key = (X.minimal[x], X.minimal[y])
                if key not in restr:
                    self.fail(f"missing restriction {open_key(X, key[0])}>{open_key(X, key[1])}",
                              pointer(ptr, "restrictions"))
                tables[(x, y)] = restr[key]
        F = Sheaf(B, tuple(stalks), tables)
        bad = F.check()
        if bad:
            raise ValidationError("not a sheaf", bad, location=self.loc(ptr))
        return F
