"""Finite commutative monoids given by multiplication tables.

Elements are opaque string names; all algebra works on indices into
``Monoid.elements``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product

from .errors import SizeGuardError, StructuralError, ValidationError, Violation

SUBSET_GUARD = 16


@dataclass(frozen=True)
class Monoid:
    elements: tuple
    identity: int
    mult: tuple

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise StructuralError("a monoid needs at least one element")
        if len(set(self.elements)) != n:
            raise StructuralError("duplicate element names")
        if not 0 <= self.identity < n:
            raise StructuralError(f"identity index {self.identity} out of range")
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise StructuralError("multiplication table must be total (n x n)")
        for row in self.mult:
            for c in row:
                if not (isinstance(c, int) and 0 <= c < n):
                    raise StructuralError(f"table entry {c!r} out of range")

    @classmethod
    def trivial(cls, name="1"):
        return cls((name,), 0, ((0,),))

    @classmethod
    def from_names(cls, elements, identity, table):
        """Build from ``table[(x, y)] = z`` keyed by element names."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        try:
            mult = tuple(tuple(idx[table[(x, y)]] for y in elements) for x in elements)
            ident = idx[identity]
        except KeyError as exc:
            raise StructuralError(f"missing or unknown entry {exc.args[0]!r}") from None
        return cls(elements, ident, mult)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Monoid({list(self.elements)})"

    @cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"unknown monoid element {name!r}") from None

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def power_closure(self, gens) -> frozenset:
        """Smallest multiplicatively closed subset containing 1 and ``gens``."""
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mult[x][g]
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    @cached_property
    def units(self) -> frozenset:
        return frozenset(a for a in range(len(self)) if self.identity in self.mult[a])

    def is_closed(self, subset) -> bool:
        s = set(subset)
        return all(self.mult[a][b] in s for a in s for b in s)


def validate_monoid(m: Monoid) -> list:
    """Every violated monoid law, each with a witnessing pair or triple."""
    out = []
    n = len(m)
    e = m.identity
    names = m.elements
    for x in range(n):
        if m.mult[e][x] != x or m.mult[x][e] != x:
            out.append(Violation("identity", f"{names[x]}*1 != {names[x]}", (names[x], names[e])))
    for x in range(n):
        for y in range(x + 1, n):
            if m.mult[x][y] != m.mult[y][x]:
                out.append(Violation("commutativity", f"{names[x]}*{names[y]} != {names[y]}*{names[x]}",
                                     (names[x], names[y])))
    for x, y, z in product(range(n), repeat=3):
        if m.mult[m.mult[x][y]][z] != m.mult[x][m.mult[y][z]]:
            out.append(Violation("associativity", f"({names[x]}{names[y]}){names[z]} != {names[x]}({names[y]}{names[z]})",
                                 (names[x], names[y], names[z])))
    return out


def require_valid(m: Monoid) -> Monoid:
    problems = validate_monoid(m)
    if problems:
        raise ValidationError("monoid laws violated", problems)
    return m


def shortlex(subsets):
    return sorted(subsets, key=lambda s: (len(s), sorted(s)))


def _guard(m: Monoid):
    if len(m) > SUBSET_GUARD:
        raise SizeGuardError(f"monoid has {len(m)} elements; subset enumeration is limited to {SUBSET_GUARD}")


def is_ideal(m: Monoid, subset) -> bool:
    s = set(subset)
    return all(m.mult[a][i] in s for a in range(len(m)) for i in s)


def ideals(m: Monoid) -> list:
    """All ideals (including the empty one and A), in shortlex order."""
    _guard(m)
    n = len(m)
    found = []
    for r in range(n + 1):
        for combo in combinations(range(n), r):
            if is_ideal(m, combo):
                found.append(frozenset(combo))
    return shortlex(found)


def is_prime(m: Monoid, subset) -> bool:
    s = set(subset)
    if not is_ideal(m, s):
        return False
    comp = set(range(len(m))) - s
    return m.identity in comp and m.is_closed(comp)


def prime_ideals(m: Monoid) -> list:
    return [p for p in ideals(m) if is_prime(m, p)]


def localize(m: Monoid, s):
    """Localization ``S^-1 A`` together with the canonical map ``A -> S^-1 A``.

    Classes of pairs ``(a, s)`` under ``(a,s) ~ (b,t)`` iff ``u*a*t == u*b*s``
    for some ``u`` in ``S``. A class is named after its least pair ``(a, s)``:
    ``a`` when ``s`` is the identity, ``a/s`` otherwise.
    """
    loc, cls_of = localize_pairs(m, s)
    return loc, tuple(cls_of[(a, m.identity)] for a in range(len(m)))


def localize_pairs(m: Monoid, s):
    """``(S^-1 A, cls_of)`` with ``cls_of[(a, t)]`` the class of a/t for t in S."""
    s = sorted(set(s))
    if m.identity not in s or not m.is_closed(s):
        raise ValidationError("localizing set must contain 1 and be multiplicatively closed",
                              [Violation("multiplicative", "not a submonoid", tuple(m.elements[i] for i in s))])
    mul = m.mult
    pairs = [(a, t) for a in range(len(m)) for t in s]

    def equiv(p, q):
        (a, t), (b, r) = p, q
        return any(mul[mul[u][a]][r] == mul[mul[u][b]][t] for u in s)

    classes = []
    cls_of = {}
    for p in pairs:
        for k, rep in enumerate(classes):
            if equiv(rep, p):
                cls_of[p] = k
                break
        else:
            cls_of[p] = len(classes)
            classes.append(p)

    def name(p):
        a, t = p
        return m.elements[a] if t == m.identity else f"{m.elements[a]}/{m.elements[t]}"

    table = tuple(
        tuple(cls_of[(mul[a][b], mul[t][r])] for (b, r) in classes)
        for (a, t) in classes
    )
    loc = Monoid(tuple(name(p) for p in classes), cls_of[(m.identity, m.identity)], table)
    return loc, cls_of


def is_monoid_map(src: Monoid, dst: Monoid, table) -> bool:
    if table[src.identity] != dst.identity:
        return False
    return all(table[src.mult[a][b]] == dst.mult[table[a]][table[b]]
               for a in range(len(src)) for b in range(len(src)))


def is_isomorphic(m1: Monoid, m2: Monoid):
    """An isomorphism table ``m1 -> m2`` or ``None``."""
    if len(m1) != len(m2):
        return None
    for perm in permutations(range(len(m2))):
        if is_monoid_map(m1, m2, perm):
            return perm
    return None


def ideal_chains(m: Monoid) -> list:
    """Maximal strictly increasing chains of ideals, each a list of frozensets."""
    ids = ideals(m)
    covers = {i: [j for j in ids if i < j and not any(i < k < j for k in ids)] for i in ids}
    chains = []

    def walk(chain):
        nxt = covers[chain[-1]]
        if not nxt:
            chains.append(list(chain))
            return
        for j in nxt:
            walk(chain + [j])

    walk([ids[0]])
    return chains


def enumerate_monoids(n: int) -> list:
    """All commutative monoids of order ``n`` up to isomorphism.

    Index 0 is the identity; element names are ``1, a, b, ...``.
    """
    if n < 1:
        return []
    names = ("1",) + tuple("abcdefghijklmnop"[: n - 1])
    others = range(1, n)
    cells = [(x, y) for x in others for y in others if x <= y]
    found = []
    for values in product(range(n), repeat=len(cells)):
        mult = [[0] * n for _ in range(n)]
        for x in range(n):
            mult[0][x] = mult[x][0] = x
        for (x, y), v in zip(cells, values):
            mult[x][y] = mult[y][x] = v
        cand = Monoid(names, 0, tuple(tuple(r) for r in mult))
        if any(v.law == "associativity" for v in validate_monoid(cand)):
            continue
        if any(is_isomorphic(cand, f) for f in found):
            continue
        found.append(cand)
    return found
