import json
import random

import pytest

from belian import generate as gen
from belian.errors import StructuralError, ValidationError
from belian.serialize import (Loader, canonical_json, dump_complex, dump_module, dump_monoid, dump_morphism,
                              dump_sheaf, pointer, split_pair)
from belian.sheaf.sheaf import MonoidedSpace

from corpus import spaces


def test_pointer_escaping():
    assert pointer("", "modules", "a/b", "x~y") == "/modules/a~1b/x~0y"


def test_split_pair_with_commas_in_names():
    assert split_pair("a,b,c", {"a", "a,b"}, {"c"}) == ("a,b", "c")
    assert split_pair("a,b,c", {"a", "a,b"}, {"b,c", "c"}) is None


def test_monoid_and_module_round_trip():
    rng = random.Random(0)
    for A in gen.small_monoids(3):
        B = Loader({}).monoid(dump_monoid(A), "")
        assert B.mult == A.mult and B.elements == A.elements
        M = gen.random_module(rng, A, 4)
        N = Loader({}).module(dump_module(M), "")
        assert N.action == M.action and N.basepoint == M.basepoint


def test_morphism_and_complex_round_trip():
    rng = random.Random(1)
    for _ in range(10):
        f = gen.random_pair(rng, 3, 4)
        g = Loader({}).morphism(json.loads(canonical_json(dump_morphism(f))), "")
        assert g.table == f.table
        C = gen.random_complex(rng, gen.random_monoid(rng, 2), 3, 4)
        D = Loader({}).complex(dump_complex(C), "")
        assert all(D.d(i).table == C.d(i).table for i in range(C.lo, C.hi))


def test_sheaf_round_trip():
    rng = random.Random(2)
    for X in spaces(3):
        F = gen.random_sheaf(rng, MonoidedSpace.trivial(X), 3)
        G = Loader({}).sheaf(dump_sheaf(F), "")
        assert dump_sheaf(G) == dump_sheaf(F)
        assert all(len(G.sections(U)) == len(F.sections(U)) for U in X.opens)


def test_references_and_locations():
    A = gen.small_monoids(2)[-1]
    doc = {"monoids": {"A": dump_monoid(A)}, "modules": {"M": dump_module(gen.random_module(random.Random(3), A, 3), "A")}}
    L = Loader(doc, "in.json")
    assert L.module("M", "/m").monoid.mult == A.mult
    with pytest.raises(StructuralError) as exc:
        L.module("missing", "/target")
    assert exc.value.location == "in.json#/target"


def test_invalid_monoid_is_a_validation_error():
    A = gen.small_monoids(2)[-1]
    d = dump_monoid(A)
    e = A.elements
    d["mult"][f"{e[0]},{e[1]}"] = e[0]
    with pytest.raises(ValidationError):
        Loader({}).valid_monoid(d, "/monoid")


def test_canonical_json_is_sorted():
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
