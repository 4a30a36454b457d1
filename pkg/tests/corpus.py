"""Seeded corpora shared by the acceptance and unit suites."""
import random
from functools import lru_cache

from belian import generate as gen
from belian.sheaf.sheaf import MonoidedSpace, godement
from belian.sheaf.space import t0_spaces


@lru_cache(maxsize=None)
def spaces(max_points=4):
    return tuple(t0_spaces(max_points))


@lru_cache(maxsize=None)
def sheaf_corpus(per_space=3, seed=0):
    """(space index, sheaf) pairs: random sheaves on every T0 space with at
    most four points, plus the Godement sheaf of the first one on each space."""
    rng = random.Random(seed)
    out = []
    for k, X in enumerate(spaces()):
        B = MonoidedSpace.trivial(X)
        fs = [gen.random_sheaf(rng, B, 2 if len(X) == 4 else 3) for _ in range(per_space)]
        out.extend((k, F) for F in fs)
        if len(X) <= 3:
            out.append((k, godement(fs[0])[0].sheaf))
    return tuple(out)


@lru_cache(maxsize=None)
def morphism_corpus(per_monoid=25, seed=0, max_size=5):
    rng = random.Random(seed)
    out = []
    for A in gen.small_monoids(3):
        for _ in range(per_monoid):
            S = gen.random_module(rng, A, max_size)
            T = gen.random_module(rng, A, max_size)
            out.append(gen.random_morphism(rng, S, T))
    return tuple(out)
