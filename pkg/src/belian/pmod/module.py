"""Finite pointed modules over a finite commutative monoid and their morphisms."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import StructuralError, ValidationError, Violation
from ..monoid import Monoid


@dataclass(frozen=True, eq=False)
class PointedModule:
    monoid: Monoid
    elements: tuple
    basepoint: int
    action: tuple  # action[a][m]

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise StructuralError("a pointed module needs a basepoint")
        if len(set(self.elements)) != n:
            raise StructuralError("duplicate module element names")
        if not 0 <= self.basepoint < n:
            raise StructuralError("basepoint out of range")
        if len(self.action) != len(self.monoid) or any(len(r) != n for r in self.action):
            raise StructuralError("action table must be |A| x |M|")
        for row in self.action:
            for c in row:
                if not (isinstance(c, int) and 0 <= c < n):
                    raise StructuralError(f"action entry {c!r} out of range")

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"PointedModule({list(self.elements)}, 0={self.elements[self.basepoint]!r})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PointedModule):
            return NotImplemented
        return (self.elements == other.elements and self.basepoint == other.basepoint
                and self.action == other.action and self.monoid == other.monoid)

    def __hash__(self):
        return hash((self.elements, self.basepoint, self.action))

    @cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"unknown module element {name!r}") from None

    def act(self, a: int, m: int) -> int:
        return self.action[a][m]

    @property
    def zero(self) -> int:
        return self.basepoint

    def is_zero(self) -> bool:
        return len(self.elements) == 1

    def orbit(self, m: int) -> frozenset:
        """The cyclic submodule A*m together with the basepoint."""
        return frozenset([self.basepoint]) | frozenset(row[m] for row in self.action)

    def closure(self, gens) -> frozenset:
        out = {self.basepoint}
        for g in gens:
            out |= self.orbit(g)
        return frozenset(out)

    @cached_property
    def nonzero(self) -> tuple:
        return tuple(i for i in range(len(self.elements)) if i != self.basepoint)

    def identity(self) -> "ModMorphism":
        return ModMorphism(self, self, tuple(range(len(self))))

    def relabel(self, names) -> "PointedModule":
        return PointedModule(self.monoid, tuple(names), self.basepoint, self.action)


def validate_module(m: PointedModule) -> list:
    out = []
    A = m.monoid
    names = m.elements
    for x in range(len(m)):
        if m.action[A.identity][x] != x:
            out.append(Violation("unit", f"1*{names[x]} != {names[x]}", (A.elements[A.identity], names[x])))
    for a in range(len(A)):
        if m.action[a][m.basepoint] != m.basepoint:
            out.append(Violation("basepoint", f"{A.elements[a]}*0 != 0", (A.elements[a], names[m.basepoint])))
    for a in range(len(A)):
        for b in range(len(A)):
            ab = A.mult[a][b]
            for x in range(len(m)):
                if m.action[ab][x] != m.action[a][m.action[b][x]]:
                    out.append(Violation("associativity", f"({A.elements[a]}{A.elements[b]}){names[x]} mismatch",
                                         (A.elements[a], A.elements[b], names[x])))
    return out


def require_module(m: PointedModule) -> PointedModule:
    bad = validate_module(m)
    if bad:
        raise ValidationError("module laws violated", bad)
    return m


@dataclass(frozen=True, eq=False)
class ModMorphism:
    source: PointedModule
    target: PointedModule
    table: tuple

    def __post_init__(self):
        if len(self.table) != len(self.source):
            raise StructuralError("morphism table must cover the whole source")
        n = len(self.target)
        for c in self.table:
            if not (isinstance(c, int) and 0 <= c < n):
                raise StructuralError(f"morphism value {c!r} out of range")

    def __call__(self, m: int) -> int:
        return self.table[m]

    def __matmul__(self, other: "ModMorphism") -> "ModMorphism":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise StructuralError("composition of non-composable morphisms")
        return ModMorphism(other.source, self.target, tuple(self.table[x] for x in other.table))

    def __eq__(self, other):
        if not isinstance(other, ModMorphism):
            return NotImplemented
        return self.table == other.table and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        pairs = ", ".join(f"{self.source.elements[i]}->{self.target.elements[j]}" for i, j in enumerate(self.table))
        return f"ModMorphism({pairs})"

    @cached_property
    def image_set(self) -> frozenset:
        return frozenset(self.table)

    @cached_property
    def kernel_set(self) -> frozenset:
        z = self.target.basepoint
        return frozenset(i for i, v in enumerate(self.table) if v == z)

    def is_zero(self) -> bool:
        return self.kernel_set == frozenset(range(len(self.source)))

    def is_injective(self) -> bool:
        return len(self.image_set) == len(self.table)

    def is_surjective(self) -> bool:
        return len(self.image_set) == len(self.target)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> "ModMorphism":
        if not self.is_bijective():
            raise ValidationError("morphism is not bijective")
        inv = [0] * len(self.table)
        for i, v in enumerate(self.table):
            inv[v] = i
        return ModMorphism(self.target, self.source, tuple(inv))


def validate_morphism(f: ModMorphism) -> list:
    out = []
    S, T = f.source, f.target
    if S.monoid != T.monoid:
        out.append(Violation("monoid", "source and target over different monoids"))
        return out
    if f.table[S.basepoint] != T.basepoint:
        out.append(Violation("basepoint", "basepoint not preserved", (S.elements[S.basepoint],)))
    for a in range(len(S.monoid)):
        for x in range(len(S)):
            if f.table[S.action[a][x]] != T.action[a][f.table[x]]:
                out.append(Violation("equivariance", f"f({S.monoid.elements[a]}*{S.elements[x]}) mismatch",
                                     (S.monoid.elements[a], S.elements[x])))
    return out


def require_morphism(f: ModMorphism) -> ModMorphism:
    bad = validate_morphism(f)
    if bad:
        raise ValidationError("morphism laws violated", bad)
    return f


def morphism_from_names(source, target, mapping) -> ModMorphism:
    return ModMorphism(source, target, tuple(target.index(mapping[e]) for e in source.elements))


def zero_module(A: Monoid, name="0") -> PointedModule:
    return PointedModule(A, (name,), 0, tuple((0,) for _ in range(len(A))))


def zero_morphism(S: PointedModule, T: PointedModule) -> ModMorphism:
    return ModMorphism(S, T, (T.basepoint,) * len(S))


def free_cyclic(A: Monoid) -> PointedModule:
    """A with an adjoined basepoint, acting on itself by multiplication."""
    els = tuple(A.elements) + ("0",) if "0" not in A.elements else tuple(A.elements) + ("*0",)
    z = len(A)
    action = tuple(tuple(A.mult[a][b] for b in range(len(A))) + (z,) for a in range(len(A)))
    return PointedModule(A, els, z, action)


def pointed_set(names, basepoint=0) -> PointedModule:
    """A pointed set, i.e. a module over the trivial monoid."""
    names = tuple(names)
    return PointedModule(Monoid.trivial(), names, basepoint, (tuple(range(len(names))),))


@dataclass(frozen=True, eq=False)
class SubModule:
    parent: PointedModule
    members: frozenset

    @cached_property
    def order(self) -> tuple:
        return tuple(sorted(self.members))

    @cached_property
    def module(self) -> PointedModule:
        P = self.parent
        pos = {m: i for i, m in enumerate(self.order)}
        action = tuple(tuple(pos[P.action[a][m]] for m in self.order) for a in range(len(P.monoid)))
        return PointedModule(P.monoid, tuple(P.elements[m] for m in self.order), pos[P.basepoint], action)

    @cached_property
    def inclusion(self) -> ModMorphism:
        return ModMorphism(self.module, self.parent, self.order)

    def __len__(self):
        return len(self.members)


def submodule(parent: PointedModule, members) -> SubModule:
    members = frozenset(members) | {parent.basepoint}
    for a in range(len(parent.monoid)):
        for m in members:
            if parent.action[a][m] not in members:
                raise ValidationError("subset is not closed under the action",
                                      [Violation("closure", "not a submodule", (parent.elements[m],))])
    return SubModule(parent, members)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True


def congruence_closure(M: PointedModule, pairs) -> list:
    """Class representative (least index) of each element under the smallest
    action-compatible equivalence containing ``pairs``."""
    uf = _UnionFind(len(M))
    todo = list(pairs)
    while todo:
        x, y = todo.pop()
        if uf.union(x, y):
            for row in M.action:
                todo.append((row[x], row[y]))
    return [uf.find(x) for x in range(len(M))]


def quotient(M: PointedModule, pairs) -> ModMorphism:
    """Projection onto M modulo the congruence generated by ``pairs``."""
    rep = congruence_closure(M, pairs)
    return quotient_by_reps(M, rep)


def quotient_by_reps(M: PointedModule, rep) -> ModMorphism:
    reps = sorted(set(rep))
    pos = {r: i for i, r in enumerate(reps)}
    action = tuple(tuple(pos[rep[row[r]]] for r in reps) for row in M.action)
    Q = PointedModule(M.monoid, tuple(f"[{M.elements[r]}]" for r in reps), pos[rep[M.basepoint]], action)
    return ModMorphism(M, Q, tuple(pos[rep[x]] for x in range(len(M))))


def collapse(M: PointedModule, members) -> ModMorphism:
    """Projection M -> M/N identifying the submodule N with the basepoint."""
    members = set(members) | {M.basepoint}
    if len(members) == 1:
        return M.identity()
    low = min(members)
    rep = [low if x in members else x for x in range(len(M))]
    return quotient_by_reps(M, rep)
